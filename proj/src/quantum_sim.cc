#include "bellcorr/quantum_sim.h"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bellcorr/errors.h"
#include "bellcorr/parallel.h"

namespace bellcorr {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kClampFloor = -1e-15;

void check_normalized(const PureState &state) {
    if (state.amplitudes.size() != (size_t{1} << state.n)) {
        throw ValidationError("state has " + std::to_string(state.amplitudes.size()) + " amplitudes, expected 2^" +
                              std::to_string(state.n));
    }
    double norm = 0.0;
    for (const auto &a : state.amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "state is not normalized: sum |amplitude|^2 = " << norm;
        throw ValidationError(msg.str());
    }
}

void check_compatible(const PureState &state, const MeasurementSettings &settings, const SimOptions &options) {
    if (state.n > options.max_qubits) {
        throw ResourceLimitError("statevector simulation limited to n <= " + std::to_string(options.max_qubits) +
                                     " qubits, got n = " + std::to_string(state.n),
                                 options.max_qubits);
    }
    if (settings.n() != state.n) {
        throw ValidationError("dimension mismatch: settings have " + std::to_string(settings.n()) +
                              " sites but the state has " + std::to_string(state.n) + " qubits");
    }
    check_normalized(state);
}

double clamp_probability(double p) {
    if (p >= 0.0) {
        return p;
    }
    if (p >= kClampFloor) {
        return 0.0;
    }
    std::ostringstream msg;
    msg << "internal error: negative outcome probability " << p;
    throw std::logic_error(msg.str());
}

int parity(uint64_t x) { return std::popcount(x) & 1; }

// Outcome amplitudes by applying <m, phi| on every site: the bit-0 (m=+1)
// component becomes (a0 + e^{i phi} a1)/sqrt2, the bit-1 component (a0 - e^{i phi} a1)/sqrt2.
std::vector<Complex> outcome_amplitudes(const PureState &state, const MeasurementSettings &settings,
                                        uint64_t choice) {
    std::vector<Complex> amps = state.amplitudes;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const size_t dim = amps.size();
    for (int site = 0; site < state.n; site++) {
        Complex phase = std::polar(1.0, settings.phase(site, site_bit(choice, site, state.n)));
        size_t stride = size_t{1} << (state.n - 1 - site);
        for (size_t base = 0; base < dim; base += 2 * stride) {
            for (size_t i = base; i < base + stride; i++) {
                Complex a0 = amps[i];
                Complex a1 = phase * amps[i + stride];
                amps[i] = (a0 + a1) * inv_sqrt2;
                amps[i + stride] = (a0 - a1) * inv_sqrt2;
            }
        }
    }
    return amps;
}

// For alpha|0..0> + beta|1..1> every outcome amplitude is
// (alpha + s beta e^{i Phi}) / 2^{n/2} where s is the outcome sign product.
std::array<double, 2> ghz_parity_probabilities(const PureState &state, const MeasurementSettings &settings,
                                               uint64_t choice) {
    Complex alpha = state.amplitudes.front();
    Complex beta = state.amplitudes.back();
    Complex rotated = beta * std::polar(1.0, settings.selected_phase_sum(choice));
    double scale = std::ldexp(1.0, -state.n);
    return {std::norm(alpha + rotated) * scale, std::norm(alpha - rotated) * scale};
}

double correlation_value_unchecked(const PureState &state, const MeasurementSettings &settings, uint64_t choice,
                                   bool fast) {
    if (fast) {
        auto [p_even, p_odd] = ghz_parity_probabilities(state, settings, choice);
        // 2^{n-1} outcomes in each parity class.
        double half = std::ldexp(1.0, state.n - 1);
        return half * (clamp_probability(p_even) - clamp_probability(p_odd));
    }
    auto amps = outcome_amplitudes(state, settings, choice);
    double total = 0.0;
    for (size_t m = 0; m < amps.size(); m++) {
        double p = clamp_probability(std::norm(amps[m]));
        total += parity(m) ? -p : p;
    }
    return total;
}

}  // namespace

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
    int n = sites_from_length(amplitudes.size());
    PureState state{n, std::move(amplitudes)};
    check_normalized(state);
    return state;
}

PureState PureState::ghz(int n, Complex alpha, Complex beta) {
    if (n < 1 || n > 62) {
        throw ValidationError("qubit count must be in [1, 62], got " + std::to_string(n));
    }
    std::vector<Complex> amps(size_t{1} << n, Complex{0.0, 0.0});
    amps.front() += alpha;
    amps.back() += beta;
    return from_amplitudes(std::move(amps));
}

bool PureState::is_ghz_like() const {
    for (size_t i = 1; i + 1 < amplitudes.size(); i++) {
        if (amplitudes[i] != Complex{0.0, 0.0}) {
            return false;
        }
    }
    return true;
}

MeasurementSettings::MeasurementSettings(std::vector<std::array<double, 2>> phases) : phases(std::move(phases)) {
    if (this->phases.empty()) {
        throw ValidationError("measurement settings need at least one site");
    }
    for (size_t site = 0; site < this->phases.size(); site++) {
        for (int k = 0; k < 2; k++) {
            if (!std::isfinite(this->phases[site][k])) {
                throw ValidationError("phase " + std::to_string(k) + " at site " + std::to_string(site + 1) +
                                      " is not finite");
            }
        }
    }
}

double MeasurementSettings::selected_phase_sum(uint64_t choice) const {
    double total = 0.0;
    for (int site = 0; site < n(); site++) {
        total += phase(site, site_bit(choice, site, n()));
    }
    return total;
}

OutcomeDistribution outcome_probabilities(const PureState &state, const MeasurementSettings &settings,
                                          uint64_t choice, const SimOptions &options) {
    check_compatible(state, settings, options);
    OutcomeDistribution out{state.n, choice, std::vector<double>(state.amplitudes.size())};
    if (options.ghz_fast_path && state.is_ghz_like()) {
        auto [p_even, p_odd] = ghz_parity_probabilities(state, settings, choice);
        for (size_t m = 0; m < out.probs.size(); m++) {
            out.probs[m] = clamp_probability(parity(m) ? p_odd : p_even);
        }
        return out;
    }
    auto amps = outcome_amplitudes(state, settings, choice);
    for (size_t m = 0; m < amps.size(); m++) {
        out.probs[m] = clamp_probability(std::norm(amps[m]));
    }
    return out;
}

double correlation_value(const PureState &state, const MeasurementSettings &settings, uint64_t choice,
                         const SimOptions &options) {
    check_compatible(state, settings, options);
    return correlation_value_unchecked(state, settings, choice, options.ghz_fast_path && state.is_ghz_like());
}

CorrelationValues correlation_values_all(const PureState &state, const MeasurementSettings &settings,
                                         const SimOptions &options) {
    check_compatible(state, settings, options);
    bool fast = options.ghz_fast_path && state.is_ghz_like();
    CorrelationValues out{state.n, std::vector<double>(state.amplitudes.size())};
    parallel_for(out.values.size(), [&](size_t k) {
        out.values[k] = correlation_value_unchecked(state, settings, k, fast);
    });
    return out;
}

}  // namespace bellcorr
