#include "bellcorr/correlation.h"

#include <bit>
#include <cmath>
#include <sstream>

#include "bellcorr/errors.h"

namespace bellcorr {

uint64_t index_from_bits(std::span<const int> bits) {
    uint64_t index = 0;
    for (int b : bits) {
        index = (index << 1) | static_cast<uint64_t>(b & 1);
    }
    return index;
}

int sites_from_length(size_t length) {
    if (length < 2 || !std::has_single_bit(length)) {
        std::ostringstream msg;
        msg << "malformed input: expected a length 2^n with n >= 1, got " << length;
        throw MalformedInputError(msg.str(), length);
    }
    return std::countr_zero(length);
}

CorrelationValues CorrelationValues::from(std::vector<double> values) {
    int n = sites_from_length(values.size());
    for (size_t k = 0; k < values.size(); k++) {
        if (!std::isfinite(values[k]) || std::abs(values[k]) > 1.0 + kStructuralTolerance) {
            std::ostringstream msg;
            msg << "correlation value at index " << k << " is " << values[k] << ", outside [-1, 1]";
            throw ValidationError(msg.str());
        }
    }
    return CorrelationValues{n, std::move(values)};
}

void sign_transform_inplace(std::span<double> data) {
    sites_from_length(data.size());
    size_t len = data.size();
    for (size_t h = 1; h < len; h *= 2) {
        for (size_t i = 0; i < len; i += h * 2) {
            for (size_t j = i; j < i + h; j++) {
                double x = data[j];
                double y = data[j + h];
                data[j] = x + y;
                data[j + h] = x - y;
            }
        }
    }
}

CorrelationTensor coefficients_from_values(std::span<const double> values) {
    int n = sites_from_length(values.size());
    CorrelationTensor out{n, std::vector<double>(values.begin(), values.end())};
    sign_transform_inplace(out.coeffs);
    double scale = std::ldexp(1.0, -n);
    for (double &c : out.coeffs) {
        c *= scale;
    }
    return out;
}

CorrelationTensor coefficients_from_values(const CorrelationValues &values) {
    return coefficients_from_values(std::span<const double>(values.values));
}

double sum_abs(std::span<const double> coeffs) {
    double total = 0.0;
    for (double c : coeffs) {
        total += std::abs(c);
    }
    return total;
}

double sum_abs(const CorrelationTensor &tensor) {
    sites_from_length(tensor.coeffs.size());
    return sum_abs(std::span<const double>(tensor.coeffs));
}

uint64_t quaternary_index(std::span<const int> digits) {
    uint64_t index = 0;
    for (int d : digits) {
        index = (index << 2) | static_cast<uint64_t>(d & 3);
    }
    return index;
}

CorrelationTensor coefficients_from_probabilities(int n, std::span<const double> probs) {
    if (n < 1 || n > 31) {
        throw ValidationError("site count must be in [1, 31], got " + std::to_string(n));
    }
    size_t expected = size_t{1} << (2 * n);
    if (probs.size() != expected) {
        std::ostringstream msg;
        msg << "probability table must have 4^" << n << " = " << expected << " entries, got " << probs.size();
        throw MalformedInputError(msg.str(), probs.size());
    }
    double total = 0.0;
    for (size_t i = 0; i < probs.size(); i++) {
        if (!(probs[i] >= 0.0)) {
            std::ostringstream msg;
            msg << "probability at index " << i << " is negative (" << probs[i] << ")";
            throw ValidationError(msg.str());
        }
        total += probs[i];
    }
    if (std::abs(total - 1.0) > kStructuralTolerance) {
        std::ostringstream msg;
        msg << "probabilities sum to " << total << ", expected 1";
        throw ValidationError(msg.str());
    }

    // Base-4 digit d = j + 2s: the low bit of each digit is j_i, the high bit
    // is the shift s_i. Each shift flips the sign since A^{j+2} = -A^j.
    CorrelationTensor out{n, std::vector<double>(size_t{1} << n, 0.0)};
    for (uint64_t idx = 0; idx < expected; idx++) {
        uint64_t j = 0;
        int shifts = 0;
        for (int site = 0; site < n; site++) {
            uint64_t digit = (idx >> (2 * (n - 1 - site))) & 3u;
            j = (j << 1) | (digit & 1u);
            shifts += static_cast<int>(digit >> 1);
        }
        out.coeffs[j] += (shifts % 2 == 0) ? probs[idx] : -probs[idx];
    }
    return out;
}

}  // namespace bellcorr
