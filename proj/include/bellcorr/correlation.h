#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace bellcorr {

/// Tolerance for structural checks (normalization, value ranges).
inline constexpr double kStructuralTolerance = 1e-9;
/// Tolerance for asserting that two computational paths agree.
inline constexpr double kPathTolerance = 1e-12;

// Bit convention used everywhere in the library: an integer index k over n
// sites encodes the per-site choice k_1..k_n with site 1 in the MOST
// significant bit, i.e. k_i = (k >> (n - i)) & 1 for 1-based i.

/// Bit belonging to 0-based `site` in an n-site index.
inline int site_bit(uint64_t index, int site, int n) {
    return static_cast<int>((index >> (n - 1 - site)) & 1u);
}

/// Builds an index from per-site bits (site 1 first).
uint64_t index_from_bits(std::span<const int> bits);

/// The fixed A-vector basis: A^0=(1,1), A^1=(1,-1), A^2=-A^0, A^3=-A^1.
inline constexpr std::array<std::array<int, 2>, 4> kAVectors{{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};

/// Correlation values E(k) for all 2^n setting choices.
struct CorrelationValues {
    int n = 0;
    std::vector<double> values;

    /// Validates length 2^n and every entry within [-1, 1] (up to the
    /// structural tolerance). Throws MalformedInputError / ValidationError.
    static CorrelationValues from(std::vector<double> values);
};

/// Coefficients c_j (LHV) or q_j (quantum) indexed by j in {0,1}^n.
struct CorrelationTensor {
    int n = 0;
    std::vector<double> coeffs;
};

/// Number of sites for a buffer of `length` entries; throws MalformedInputError
/// if the length is not a positive power of two.
int sites_from_length(size_t length);

/// Unnormalized in-place sign transform x_j <- sum_k (-1)^{k.j} x_k.
/// O(n 2^n) butterfly; applying it twice multiplies by 2^n.
void sign_transform_inplace(std::span<double> data);

/// c_j = 2^{-n} sum_k (-1)^{k.j} E(k).
CorrelationTensor coefficients_from_values(std::span<const double> values);
CorrelationTensor coefficients_from_values(const CorrelationValues &values);

/// Sum of |coeffs_j| accumulated in ascending index order.
double sum_abs(const CorrelationTensor &tensor);
double sum_abs(std::span<const double> coeffs);

/// Index into a dense {0,1,2,3}^n table (site 1 is the most significant base-4 digit).
uint64_t quaternary_index(std::span<const int> digits);

/// Coefficients from the probabilities p_{j_1..j_n} that the local outcome
/// vectors equal A^{j_1} x ... x A^{j_n}. `probs` is dense with 4^n entries
/// addressed by quaternary_index. Each c_j collects p_{j + 2s} with sign
/// (-1)^{|s|} over all shift patterns s in {0,1}^n.
CorrelationTensor coefficients_from_probabilities(int n, std::span<const double> probs);

}  // namespace bellcorr
