#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "bellcorr/correlation.h"

namespace bellcorr {

using Complex = std::complex<double>;

/// Pure n-qubit state in the computational basis (site 1 = most significant bit).
struct PureState {
    int n = 0;
    std::vector<Complex> amplitudes;

    /// Validates length 2^n and unit norm within 1e-12.
    static PureState from_amplitudes(std::vector<Complex> amplitudes);
    /// alpha|0...0> + beta|1...1>.
    static PureState ghz(int n, Complex alpha, Complex beta);

    /// True when only the all-zeros and all-ones amplitudes are nonzero.
    bool is_ghz_like() const;
};

/// Per-site pair of local phase angles (phi^0, phi^1), radians.
struct MeasurementSettings {
    std::vector<std::array<double, 2>> phases;

    MeasurementSettings() = default;
    explicit MeasurementSettings(std::vector<std::array<double, 2>> phases);

    int n() const { return static_cast<int>(phases.size()); }
    double phase(int site, int choice) const { return phases[site][choice]; }
    /// Sum over sites of the phase selected by setting-choice index k.
    double selected_phase_sum(uint64_t choice) const;
};

/// Outcome probabilities for one setting choice. Outcome index bit 0 means
/// m = +1 and bit 1 means m = -1, with the usual site ordering.
struct OutcomeDistribution {
    int n = 0;
    uint64_t choice = 0;
    std::vector<double> probs;
};

struct SimOptions {
    int max_qubits = 20;
    /// Use the two-amplitude shortcut when the state is GHZ-like.
    bool ghz_fast_path = true;
};

/// Probabilities |<m_1,phi_1| ... <m_n,phi_n|psi>|^2 with
/// |m,phi> = (|0> + m e^{-i phi}|1>)/sqrt(2).
OutcomeDistribution outcome_probabilities(const PureState &state, const MeasurementSettings &settings,
                                          uint64_t choice, const SimOptions &options = {});

/// E = sum_m p(m) m_1 ... m_n.
double correlation_value(const PureState &state, const MeasurementSettings &settings, uint64_t choice,
                         const SimOptions &options = {});

/// E(k) for all 2^n setting choices k.
CorrelationValues correlation_values_all(const PureState &state, const MeasurementSettings &settings,
                                         const SimOptions &options = {});

}  // namespace bellcorr
