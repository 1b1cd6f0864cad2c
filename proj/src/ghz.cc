#include "bellcorr/ghz.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bellcorr/errors.h"

namespace bellcorr {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kRealTolerance = 1e-12;

}  // namespace

GhzParams GhzParams::make(int n, Complex alpha, Complex beta) {
    if (n < 1) {
        throw ValidationError("qubit count must be positive, got " + std::to_string(n));
    }
    double norm = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "GHZ amplitudes are not normalized: |alpha|^2 + |beta|^2 = " << norm;
        throw ValidationError(msg.str());
    }
    return GhzParams{n, alpha, beta};
}

GhzParams GhzParams::balanced(int n) {
    double a = 1.0 / std::sqrt(2.0);
    return make(n, {a, 0.0}, {a, 0.0});
}

double GhzParams::coupling() const { return std::abs(alpha * std::conj(beta)); }

double GhzParams::state_phase() const {
    Complex product = alpha * std::conj(beta);
    if (product == Complex{0.0, 0.0}) {
        return 0.0;
    }
    return -std::arg(product);
}

PureState GhzParams::to_state() const { return PureState::ghz(n, alpha, beta); }

AngleDecomposition decompose(const MeasurementSettings &settings) {
    AngleDecomposition out;
    out.betas.reserve(settings.phases.size());
    for (const auto &[phi0, phi1] : settings.phases) {
        out.sum_alpha += (phi1 + phi0) / 2;
        out.betas.push_back((phi1 - phi0) / 2);
    }
    return out;
}

double ghz_correlation(const GhzParams &params, const MeasurementSettings &settings, uint64_t choice) {
    return 2 * params.coupling() * std::cos(params.state_phase() + settings.selected_phase_sum(choice));
}

double prediction_closed_form(const GhzParams &params, const AngleDecomposition &angles) {
    double total_angle = params.state_phase() + angles.sum_alpha;
    double c0 = std::abs(std::cos(total_angle));
    double s0 = std::abs(std::sin(total_angle));
    double plus = 1.0;
    double minus = 1.0;
    for (double b : angles.betas) {
        double c = std::abs(std::cos(b));
        double s = std::abs(std::sin(b));
        plus *= c + s;
        minus *= c - s;
    }
    return params.coupling() * ((c0 + s0) * plus + (c0 - s0) * minus);
}

double prediction_closed_form(const GhzParams &params, const MeasurementSettings &settings) {
    if (settings.n() != params.n) {
        throw ValidationError("dimension mismatch: settings have " + std::to_string(settings.n()) +
                              " sites but n = " + std::to_string(params.n));
    }
    return prediction_closed_form(params, decompose(settings));
}

double max_prediction(const GhzParams &params) {
    return params.coupling() * std::pow(2.0, (params.n + 1) / 2.0);
}

MeasurementSettings optimal_settings(const GhzParams &params) {
    if (params.coupling() == 0.0) {
        throw NoOptimumError("alpha beta* = 0: the prediction is 0 for every setting, no optimum is defined");
    }
    constexpr double pi = std::numbers::pi;
    double shift = params.state_phase();
    std::vector<std::array<double, 2>> phases(params.n, {-pi / 4, pi / 4});
    phases[0] = {-shift, pi / 2 - shift};
    return MeasurementSettings(std::move(phases));
}

MeasurementSettings two_angle_settings(const TwoAngleConfig &cfg) {
    if (cfg.n < 1 || cfg.l < 0 || cfg.l > cfg.n) {
        throw ValidationError("two-angle family needs 0 <= l <= n with n >= 1, got n = " + std::to_string(cfg.n) +
                              ", l = " + std::to_string(cfg.l));
    }
    std::vector<std::array<double, 2>> phases;
    phases.reserve(cfg.n);
    for (int i = 0; i < cfg.n; i++) {
        if (i < cfg.l) {
            phases.push_back({0.0, cfg.theta1});
        } else {
            phases.push_back({cfg.theta2, -cfg.theta2});
        }
    }
    return MeasurementSettings(std::move(phases));
}

double two_angle_prediction(const GhzParams &params, const TwoAngleConfig &cfg) {
    if (cfg.l < 0 || cfg.l > cfg.n) {
        throw ValidationError("l = " + std::to_string(cfg.l) + " is outside [0, " + std::to_string(cfg.n) + "]");
    }
    if (cfg.n != params.n) {
        throw ValidationError("dimension mismatch: two-angle config has n = " + std::to_string(cfg.n) +
                              " but the state has n = " + std::to_string(params.n));
    }
    if (std::abs(params.alpha.imag()) > kRealTolerance || std::abs(params.beta.imag()) > kRealTolerance) {
        throw ValidationError("two-angle prediction requires real alpha and beta");
    }
    const double l = cfg.l;
    const double half_sum = l * cfg.theta1 / 2;
    const double half1 = cfg.theta1 / 2;
    const double t2 = cfg.theta2;
    double c_sum = std::abs(std::cos(half_sum)), s_sum = std::abs(std::sin(half_sum));
    double c1 = std::abs(std::cos(half1)), s1 = std::abs(std::sin(half1));
    double c2 = std::abs(std::cos(t2)), s2 = std::abs(std::sin(t2));
    int rest = cfg.n - cfg.l;
    double first = (c_sum + s_sum) * std::pow(c1 + s1, cfg.l) * std::pow(c2 + s2, rest);
    double second = (c_sum - s_sum) * std::pow(c1 - s1, cfg.l) * std::pow(c2 - s2, rest);
    return std::abs(params.alpha.real() * params.beta.real()) * (first + second);
}

double violation_threshold(int n) { return std::pow(2.0, -(n + 1) / 2.0); }

double angle_violation_threshold(int n) { return std::pow(2.0, -(n - 1) / 2.0); }

bool coupling_violates(int n, double coupling) { return coupling > violation_threshold(n); }

bool violates(const GhzParams &params) { return coupling_violates(params.n, params.coupling()); }

bool violates_angle(int n, double xi) { return std::abs(std::sin(2 * xi)) > angle_violation_threshold(n); }

}  // namespace bellcorr
