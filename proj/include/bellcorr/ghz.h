#pragma once

#include <cstdint>
#include <vector>

#include "bellcorr/quantum_sim.h"

namespace bellcorr {

/// Generalized GHZ state alpha|0...0> + beta|1...1>.
struct GhzParams {
    int n = 0;
    Complex alpha;
    Complex beta;

    /// Validates n >= 1 and |alpha|^2 + |beta|^2 = 1 within 1e-12.
    static GhzParams make(int n, Complex alpha, Complex beta);
    /// Equal-weight real state alpha = beta = 1/sqrt(2).
    static GhzParams balanced(int n);

    /// |alpha beta*|.
    double coupling() const;
    /// phi defined by alpha beta* = |alpha beta*| e^{-i phi}, i.e. phi = -arg(alpha beta*).
    double state_phase() const;
    PureState to_state() const;
};

/// Per-site half-sum / half-difference angles.
struct AngleDecomposition {
    /// Sum over sites of (phi^1 + phi^0)/2.
    double sum_alpha = 0.0;
    /// (phi^1 - phi^0)/2 per site.
    std::vector<double> betas;
};

/// Two-parameter family: sites 1..l use (0, theta1), sites l+1..n use (theta2, -theta2).
struct TwoAngleConfig {
    int n = 0;
    int l = 0;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

AngleDecomposition decompose(const MeasurementSettings &settings);

/// Closed-form correlation 2|alpha beta*| cos(phi + sum_i phi_i^{k_i}).
double ghz_correlation(const GhzParams &params, const MeasurementSettings &settings, uint64_t choice);

/// Exact quantum prediction sum_j |q_j| for the GHZ state:
/// |ab*| { (|cos T| + |sin T|) prod(|cos b_l| + |sin b_l|) + (|cos T| - |sin T|) prod(|cos b_l| - |sin b_l|) }
/// with T = phi + sum_alpha.
double prediction_closed_form(const GhzParams &params, const AngleDecomposition &angles);
double prediction_closed_form(const GhzParams &params, const MeasurementSettings &settings);

/// |alpha beta*| 2^{(n+1)/2}.
double max_prediction(const GhzParams &params);

/// One optimal configuration: site 1 gets (-phi, pi/2 - phi), every other
/// site gets (-pi/4, pi/4), so that phi + sum_alpha = pi/4 and all betas are
/// pi/4. Any beta_l = (2k+1) pi/4 is equally optimal.
/// Throws NoOptimumError when alpha beta* = 0.
MeasurementSettings optimal_settings(const GhzParams &params);

/// Settings of the two-angle family. Throws ValidationError if l is out of [0, n].
MeasurementSettings two_angle_settings(const TwoAngleConfig &cfg);

/// Direct evaluation of the two-angle prediction formula (real alpha, beta).
/// Throws ValidationError if l is out of range, the sizes disagree, or the
/// amplitudes are not real.
double two_angle_prediction(const GhzParams &params, const TwoAngleConfig &cfg);

/// 2^{-(n+1)/2}: the coupling above which the optimal settings violate the LHV bound.
double violation_threshold(int n);
/// 2^{-(n-1)/2}: the same threshold expressed for sin(2 xi).
double angle_violation_threshold(int n);

/// |alpha beta*| > 2^{-(n+1)/2} (strict).
bool violates(const GhzParams &params);
bool coupling_violates(int n, double coupling);
/// For alpha = cos xi, beta = sin xi: |sin 2xi| > 2^{-(n-1)/2} (strict).
bool violates_angle(int n, double xi);

}  // namespace bellcorr
