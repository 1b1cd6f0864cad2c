#include "bellcorr/lhv.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bellcorr/errors.h"
#include "bellcorr/parallel.h"

namespace bellcorr {

namespace {

constexpr double kWeightTolerance = 1e-12;

// Sign pair encoded by a base-4 enumeration digit: high bit -> s^0, low bit -> s^1.
std::array<int, 2> signs_for_digit(unsigned digit) {
    return {(digit & 2u) ? -1 : 1, (digit & 1u) ? -1 : 1};
}

void check_strategy(const DeterministicStrategy &strategy) {
    if (strategy.signs.empty()) {
        throw ValidationError("strategy needs at least one site");
    }
    for (size_t site = 0; site < strategy.signs.size(); site++) {
        for (int s : strategy.signs[site]) {
            if (s != 1 && s != -1) {
                throw ValidationError("strategy sign at site " + std::to_string(site + 1) + " is " +
                                      std::to_string(s) + ", expected +1 or -1");
            }
        }
    }
}

}  // namespace

int DeterministicStrategy::vertex_digit(int site) const {
    const auto &s = signs[site];
    for (int d = 0; d < 4; d++) {
        if (kAVectors[d][0] == s[0] && kAVectors[d][1] == s[1]) {
            return d;
        }
    }
    throw ValidationError("strategy sign pair at site " + std::to_string(site + 1) + " is not in {-1,+1}^2");
}

CorrelationValues strategy_correlations(const DeterministicStrategy &strategy) {
    check_strategy(strategy);
    int n = strategy.n();
    std::vector<double> values(size_t{1} << n);
    for (uint64_t k = 0; k < values.size(); k++) {
        int product = 1;
        for (int site = 0; site < n; site++) {
            product *= strategy.signs[site][site_bit(k, site, n)];
        }
        values[k] = product;
    }
    return CorrelationValues{n, std::move(values)};
}

DeterministicStrategy strategy_at(int n, uint64_t index) {
    DeterministicStrategy out;
    out.signs.reserve(n);
    for (int site = 0; site < n; site++) {
        out.signs.push_back(signs_for_digit(static_cast<unsigned>((index >> (2 * (n - 1 - site))) & 3u)));
    }
    return out;
}

void check_enumeration_guard(int n, const LhvOptions &options) {
    if (n < 1) {
        throw ValidationError("site count must be positive, got " + std::to_string(n));
    }
    if (n > options.enumeration_guard) {
        std::ostringstream msg;
        msg << "exhaustive enumeration limited to n <= " << options.enumeration_guard << " (4^"
            << options.enumeration_guard << " vertices), got n = " << n
            << "; use random vertex sampling for larger n";
        throw ResourceLimitError(msg.str(), options.enumeration_guard);
    }
}

CertificationReport certify_bound(int n, const LhvOptions &options) {
    check_enumeration_guard(n, options);
    uint64_t count = strategy_count(n);
    std::vector<double> sums(count);
    parallel_for(count, [&](size_t index) {
        sums[index] = sum_abs(coefficients_from_values(strategy_correlations(strategy_at(n, index))));
    });
    auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    return CertificationReport{n, *hi, *lo, count, true, 0};
}

CertificationReport sample_bound(int n, uint64_t samples, uint64_t seed) {
    if (n < 1 || n > 24) {
        throw ValidationError("sampled certification needs 1 <= n <= 24, got " + std::to_string(n));
    }
    if (samples == 0) {
        throw ValidationError("sampled certification needs at least one sample");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> pick(0, strategy_count(n) - 1);
    CertificationReport report{n, -std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity(), samples, false, seed};
    for (uint64_t i = 0; i < samples; i++) {
        double value = sum_abs(coefficients_from_values(strategy_correlations(strategy_at(n, pick(rng)))));
        report.max_sum_abs = std::max(report.max_sum_abs, value);
        report.min_sum_abs = std::min(report.min_sum_abs, value);
    }
    return report;
}

CorrelationValues mixture_correlations(const LhvMixture &mix) {
    if (mix.strategies.empty() || mix.strategies.size() != mix.weights.size()) {
        throw ValidationError("mixture needs a nonempty list of strategies with one weight each");
    }
    int n = mix.strategies.front().n();
    double total = 0.0;
    for (size_t i = 0; i < mix.weights.size(); i++) {
        if (!(mix.weights[i] >= 0.0)) {
            throw ValidationError("mixture weight " + std::to_string(i) + " is negative");
        }
        if (mix.strategies[i].n() != n) {
            throw ValidationError("mixture strategy " + std::to_string(i) + " has a different site count");
        }
        total += mix.weights[i];
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        std::ostringstream msg;
        msg << "mixture weights sum to " << total << ", expected 1";
        throw ValidationError(msg.str());
    }

    std::vector<double> values(size_t{1} << n, 0.0);
    for (size_t i = 0; i < mix.strategies.size(); i++) {
        auto vertex = strategy_correlations(mix.strategies[i]);
        for (size_t k = 0; k < values.size(); k++) {
            values[k] += mix.weights[i] * vertex.values[k];
        }
    }
    return CorrelationValues{n, std::move(values)};
}

std::vector<double> mixture_probabilities(const LhvMixture &mix) {
    // Validates the mixture as a side effect.
    int n = mixture_correlations(mix).n;
    std::vector<double> probs(size_t{1} << (2 * n), 0.0);
    std::vector<int> digits(n);
    for (size_t i = 0; i < mix.strategies.size(); i++) {
        for (int site = 0; site < n; site++) {
            digits[site] = mix.strategies[i].vertex_digit(site);
        }
        probs[quaternary_index(digits)] += mix.weights[i];
    }
    return probs;
}

LhvMixture random_mixture(int n, size_t count, std::mt19937_64 &rng) {
    if (count == 0) {
        throw ValidationError("mixture needs at least one strategy");
    }
    std::uniform_int_distribution<uint64_t> pick(0, strategy_count(n) - 1);
    std::exponential_distribution<double> gamma1(1.0);
    LhvMixture mix;
    double total = 0.0;
    for (size_t i = 0; i < count; i++) {
        mix.strategies.push_back(strategy_at(n, pick(rng)));
        double w = gamma1(rng);
        mix.weights.push_back(w);
        total += w;
    }
    for (double &w : mix.weights) {
        w /= total;
    }
    return mix;
}

}  // namespace bellcorr
