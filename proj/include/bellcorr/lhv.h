#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <ranges>
#include <vector>

#include "bellcorr/correlation.h"

namespace bellcorr {

/// One LHV vertex: predetermined outcomes (s^0, s^1) in {-1,+1}^2 per site.
struct DeterministicStrategy {
    std::vector<std::array<int, 2>> signs;

    int n() const { return static_cast<int>(signs.size()); }
    /// Index of the A-vector equal to (s^0, s^1) at `site` (0..3).
    int vertex_digit(int site) const;
};

/// Convex combination of deterministic strategies.
struct LhvMixture {
    std::vector<DeterministicStrategy> strategies;
    std::vector<double> weights;
};

struct LhvOptions {
    /// Largest n for which exhaustive enumeration is allowed (4^8 = 65536 vertices).
    int enumeration_guard = 8;
};

struct CertificationReport {
    int n = 0;
    double max_sum_abs = 0.0;
    double min_sum_abs = 0.0;
    uint64_t num_strategies = 0;
    bool exhaustive = true;
    /// Only meaningful for sampled reports.
    uint64_t seed = 0;
};

/// E(k) = prod_i s_i^{k_i}.
CorrelationValues strategy_correlations(const DeterministicStrategy &strategy);

/// The strategy at position `index` of the lexicographic enumeration. Each
/// site is a base-4 digit (site 1 most significant) ordering the sign pairs
/// (+,+), (+,-), (-,+), (-,-).
DeterministicStrategy strategy_at(int n, uint64_t index);

inline uint64_t strategy_count(int n) { return uint64_t{1} << (2 * n); }

/// Throws ResourceLimitError if n is outside [1, enumeration_guard].
void check_enumeration_guard(int n, const LhvOptions &options);

/// Lazily yields all 4^n strategies in lexicographic order.
/// Throws ResourceLimitError if n exceeds the enumeration guard.
inline auto enumerate_strategies(int n, const LhvOptions &options = {}) {
    check_enumeration_guard(n, options);
    return std::views::iota(uint64_t{0}, strategy_count(n)) |
           std::views::transform([n](uint64_t index) { return strategy_at(n, index); });
}

/// Exhaustive check of sum_abs over every vertex.
CertificationReport certify_bound(int n, const LhvOptions &options = {});

/// Non-exhaustive alternative for n beyond the guard: `samples` uniformly
/// drawn vertices from a seeded generator.
CertificationReport sample_bound(int n, uint64_t samples, uint64_t seed);

/// E(k) = sum_lambda w_lambda E_lambda(k). Throws ValidationError on bad weights.
CorrelationValues mixture_correlations(const LhvMixture &mix);

/// Dense 4^n table of the probability that the outcome vectors equal
/// A^{j_1} x ... x A^{j_n}, induced by the mixture.
std::vector<double> mixture_probabilities(const LhvMixture &mix);

/// Mixture of `count` uniformly drawn vertices with weights from a flat
/// Dirichlet distribution.
LhvMixture random_mixture(int n, size_t count, std::mt19937_64 &rng);

}  // namespace bellcorr
