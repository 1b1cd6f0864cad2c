#include <cmath>
#include <numbers>
#include <random>

#include "bellcorr/errors.h"
#include "bellcorr/quantum_sim.h"
#include "doctest.h"
#include "oracles.h"

using namespace bellcorr;
using std::numbers::pi;

namespace {

const SimOptions kGeneral{.max_qubits = 20, .ghz_fast_path = false};
const double kHalf = 1.0 / std::numbers::sqrt2;

double prediction_by_transform(const PureState &state, const MeasurementSettings &settings) {
    return sum_abs(coefficients_from_values(correlation_values_all(state, settings)));
}

}  // namespace

TEST_CASE("equatorial measurement on |0> is unbiased") {
    PureState zero = PureState::from_amplitudes({1.0, 0.0});
    for (double phi : {0.0, 0.3, -2.0, pi}) {
        MeasurementSettings s({{phi, phi + 1}});
        for (const SimOptions &opt : {SimOptions{}, kGeneral}) {
            auto d = outcome_probabilities(zero, s, 0, opt);
            CHECK(std::abs(d.probs[0] - 0.5) <= 1e-15);
            CHECK(std::abs(d.probs[1] - 0.5) <= 1e-15);
        }
    }
}

TEST_CASE("balanced GHZ at zero phases has perfectly correlated outcomes") {
    PureState ghz = PureState::ghz(2, kHalf, kHalf);
    MeasurementSettings s({{0, 0}, {0, 0}});
    auto oracle_probs = oracle::kron_outcome_probabilities(ghz.amplitudes, s, 0);
    CHECK(std::abs(oracle_probs[0b00] - 0.5) <= 1e-15);
    CHECK(std::abs(oracle_probs[0b11] - 0.5) <= 1e-15);
    CHECK(std::abs(oracle_probs[0b01]) <= 1e-15);
    CHECK(std::abs(oracle_probs[0b10]) <= 1e-15);
    for (const SimOptions &opt : {SimOptions{}, kGeneral}) {
        auto d = outcome_probabilities(ghz, s, 0, opt);
        for (size_t m = 0; m < 4; m++) CHECK(std::abs(d.probs[m] - oracle_probs[m]) <= 1e-15);
    }
}

TEST_CASE("outcome probabilities match the Kronecker-product oracle and sum to one") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; trial++) {
        int n = 1 + trial % 5;
        PureState state = PureState::from_amplitudes(oracle::random_amplitudes(n, rng));
        MeasurementSettings s = oracle::random_settings(n, rng);
        uint64_t k = rng() % (uint64_t{1} << n);
        auto d = outcome_probabilities(state, s, k);
        auto expected = oracle::kron_outcome_probabilities(state.amplitudes, s, k);
        double total = 0.0;
        for (size_t m = 0; m < d.probs.size(); m++) {
            CHECK(std::abs(d.probs[m] - expected[m]) <= 1e-13);
            CHECK(d.probs[m] >= 0.0);
            total += d.probs[m];
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK(std::abs(correlation_value(state, s, k) - oracle::kron_correlation(state.amplitudes, s, k)) <= 1e-12);
    }
}

TEST_CASE("GHZ correlation examples") {
    PureState ghz3 = PureState::ghz(3, kHalf, kHalf);
    MeasurementSettings zero({{0, 0}, {0, 0}, {0, 0}});
    CHECK(std::abs(correlation_value(ghz3, zero, 0) - 1.0) <= 1e-15);
    MeasurementSettings to_pi({{0.5, 0}, {1.0, 0}, {pi - 1.5, 0}});
    CHECK(std::abs(correlation_value(ghz3, to_pi, 0) + 1.0) <= 1e-12);
    CHECK(std::abs(correlation_value(ghz3, to_pi, 0, kGeneral) + 1.0) <= 1e-12);
}

TEST_CASE("statevector correlations agree with 2 Re[alpha beta* e^{-i sum phi}]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + trial % 7;
        auto params = oracle::random_params(n, rng);
        PureState state = PureState::ghz(n, params.alpha, params.beta);
        MeasurementSettings s = oracle::random_settings(n, rng);
        auto expected = oracle::ghz_correlations(params.alpha, params.beta, s);
        auto fast = correlation_values_all(state, s);
        auto general = correlation_values_all(state, s, kGeneral);
        for (size_t k = 0; k < expected.size(); k++) {
            CHECK(std::abs(fast.values[k] - expected[k]) <= 1e-12);
            CHECK(std::abs(general.values[k] - expected[k]) <= 1e-12);
        }
    }
}

TEST_CASE("correlation_values_all examples") {
    PureState zero = PureState::from_amplitudes({1.0, 0.0});
    auto values = correlation_values_all(zero, MeasurementSettings({{0.4, 1.3}}));
    CHECK(values.n == 1);
    CHECK(std::abs(values.values[0]) <= 1e-15);
    CHECK(std::abs(values.values[1]) <= 1e-15);

    // CHSH-type settings on the two-qubit GHZ state.
    PureState ghz2 = PureState::ghz(2, kHalf, kHalf);
    MeasurementSettings chsh({{0, pi / 2}, {pi / 4, -pi / 4}});
    CHECK(std::abs(prediction_by_transform(ghz2, chsh) - std::sqrt(2.0)) <= 1e-12);

    // Two-angle settings l = 1, theta1 = pi/2, theta2 = pi/4 on four qubits.
    PureState ghz4 = PureState::ghz(4, kHalf, kHalf);
    MeasurementSettings two_angle({{0, pi / 2}, {pi / 4, -pi / 4}, {pi / 4, -pi / 4}, {pi / 4, -pi / 4}});
    CHECK(std::abs(prediction_by_transform(ghz4, two_angle) - 2 * std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(sum_abs(coefficients_from_values(correlation_values_all(ghz4, two_angle, kGeneral))) -
                   2 * std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("global phase does not change any probability") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0, 2 * pi);
    for (int trial = 0; trial < 40; trial++) {
        int n = 1 + trial % 4;
        auto amps = oracle::random_amplitudes(n, rng);
        Complex phase = std::polar(1.0, angle(rng));
        auto rotated = amps;
        for (auto &a : rotated) a *= phase;
        PureState a = PureState::from_amplitudes(amps);
        PureState b = PureState::from_amplitudes(rotated);
        MeasurementSettings s = oracle::random_settings(n, rng);
        uint64_t k = rng() % (uint64_t{1} << n);
        auto pa = outcome_probabilities(a, s, k).probs;
        auto pb = outcome_probabilities(b, s, k).probs;
        for (size_t m = 0; m < pa.size(); m++) CHECK(std::abs(pa[m] - pb[m]) <= 1e-15);
    }
}

TEST_CASE("relabeling sites together with settings permutes outcomes") {
    std::mt19937_64 rng(29);
    int n = 3;
    auto amps = oracle::random_amplitudes(n, rng);
    // Swap sites 1 and 3: bit 2 <-> bit 0.
    auto swap_bits = [](uint64_t x) { return (x & 0b010) | ((x & 1u) << 2) | ((x >> 2) & 1u); };
    std::vector<Complex> swapped(amps.size());
    for (uint64_t i = 0; i < amps.size(); i++) swapped[swap_bits(i)] = amps[i];
    MeasurementSettings s = oracle::random_settings(n, rng);
    MeasurementSettings s_swapped({s.phases[2], s.phases[1], s.phases[0]});
    PureState a = PureState::from_amplitudes(amps);
    PureState b = PureState::from_amplitudes(swapped);
    for (uint64_t k = 0; k < 8; k++) {
        auto pa = outcome_probabilities(a, s, k).probs;
        auto pb = outcome_probabilities(b, s_swapped, swap_bits(k)).probs;
        for (uint64_t m = 0; m < 8; m++) CHECK(std::abs(pa[m] - pb[swap_bits(m)]) <= 1e-14);
    }
}

TEST_CASE("product GHZ endpoints have zero correlation") {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 6; n++) {
        MeasurementSettings s = oracle::random_settings(n, rng);
        for (auto [a, b] : {std::pair<Complex, Complex>{1.0, 0.0}, {0.0, Complex{0.0, 1.0}}}) {
            auto values = correlation_values_all(PureState::ghz(n, a, b), s);
            for (double v : values.values) CHECK(std::abs(v) <= 1e-15);
        }
    }
}

TEST_CASE("simulator validation errors") {
    CHECK_THROWS_AS(PureState::from_amplitudes({1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(PureState::from_amplitudes({1.0, 0.0, 0.0}), MalformedInputError);
    CHECK_THROWS_AS(MeasurementSettings({{0.0, NAN}}), ValidationError);

    PureState ghz2 = PureState::ghz(2, kHalf, kHalf);
    CHECK_THROWS_AS(correlation_value(ghz2, MeasurementSettings({{0, 0}}), 0), ValidationError);

    PureState raw;
    raw.n = 1;
    raw.amplitudes = {0.5, 0.5};
    CHECK_THROWS_AS(correlation_value(raw, MeasurementSettings({{0, 0}}), 0), ValidationError);

    SimOptions small{.max_qubits = 3};
    PureState ghz4 = PureState::ghz(4, kHalf, kHalf);
    MeasurementSettings s4({{0, 0}, {0, 0}, {0, 0}, {0, 0}});
    try {
        correlation_values_all(ghz4, s4, small);
        FAIL("expected ResourceLimitError");
    } catch (const ResourceLimitError &e) {
        CHECK(e.limit() == 3);
        CHECK(std::string(e.what()).find("n <= 3") != std::string::npos);
    }
}

TEST_CASE("GHZ fast path scales to the statevector guard") {
    std::mt19937_64 rng(37);
    int n = 16;
    auto params = oracle::random_params(n, rng);
    MeasurementSettings s = oracle::random_settings(n, rng);
    auto values = correlation_values_all(PureState::ghz(n, params.alpha, params.beta), s);
    for (uint64_t k : {uint64_t{0}, uint64_t{12345}, (uint64_t{1} << n) - 1}) {
        double total = 0.0;
        for (int site = 0; site < n; site++) total += oracle::chosen_phase(s, site, k);
        double expected = 2 * std::real(params.alpha * std::conj(params.beta) * std::exp(Complex{0, -total}));
        CHECK(std::abs(values.values[k] - expected) <= 1e-12);
    }
}
