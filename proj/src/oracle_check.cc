#include "bellcorr/oracle_check.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "bellcorr/correlation.h"
#include "bellcorr/ghz.h"
#include "bellcorr/lhv.h"
#include "bellcorr/quantum_sim.h"

namespace bellcorr {

namespace {

// O(4^n) double sum, kept deliberately naive.
std::vector<double> naive_coefficients(const std::vector<double> &values, int n) {
    std::vector<double> out(values.size(), 0.0);
    for (uint64_t j = 0; j < values.size(); j++) {
        for (uint64_t k = 0; k < values.size(); k++) {
            double sign = (std::popcount(j & k) % 2 == 0) ? 1.0 : -1.0;
            out[j] += sign * values[k];
        }
        out[j] /= std::ldexp(1.0, n);
    }
    return out;
}

GhzParams random_params(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    Complex a{gauss(rng), gauss(rng)};
    Complex b{gauss(rng), gauss(rng)};
    double norm = std::sqrt(std::norm(a) + std::norm(b));
    return GhzParams::make(n, a / norm, b / norm);
}

MeasurementSettings random_settings(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
    std::vector<std::array<double, 2>> phases(n);
    for (auto &p : phases) {
        p = {angle(rng), angle(rng)};
    }
    return MeasurementSettings(std::move(phases));
}

struct CheckLine {
    std::ostream &out;
    bool all_pass = true;

    void report(const std::string &name, int cases, double deviation, double tolerance) {
        bool pass = deviation <= tolerance;
        all_pass = all_pass && pass;
        out << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << cases << " cases, max deviation " << deviation
            << " (tolerance " << tolerance << ")\n";
    }
};

}  // namespace

bool run_oracle_check(const OracleCheckOptions &options, std::ostream &out) {
    std::mt19937_64 rng(options.seed);
    CheckLine line{out};
    out << "oracle-check seed " << options.seed << '\n';
    int max_n = std::max(1, options.max_n);

    {
        double worst = 0.0;
        int cases = 0;
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int n = 1; n <= std::min(max_n, 10); n++) {
            for (int c = 0; c < options.cases; c++, cases++) {
                std::vector<double> values(size_t{1} << n);
                for (double &v : values) v = unit(rng);
                auto fast = coefficients_from_values(values).coeffs;
                auto slow = naive_coefficients(values, n);
                for (size_t j = 0; j < fast.size(); j++) worst = std::max(worst, std::abs(fast[j] - slow[j]));
            }
        }
        line.report("butterfly transform vs naive double sum", cases, worst, kPathTolerance);
    }

    {
        double worst = 0.0;
        int cases = 0;
        SimOptions general{.max_qubits = 20, .ghz_fast_path = false};
        for (int n = 1; n <= std::min(max_n, 8); n++) {
            for (int c = 0; c < options.cases; c++, cases++) {
                GhzParams params = random_params(n, rng);
                MeasurementSettings settings = random_settings(n, rng);
                PureState state = params.to_state();
                uint64_t k = std::uniform_int_distribution<uint64_t>(0, (uint64_t{1} << n) - 1)(rng);
                double sim = correlation_value(state, settings, k, general);
                worst = std::max(worst, std::abs(sim - ghz_correlation(params, settings, k)));
            }
        }
        line.report("GHZ correlation closed form vs statevector", cases, worst, kPathTolerance);
    }

    {
        double worst = 0.0;
        int cases = 0;
        for (int n = 1; n <= std::min(max_n, 12); n++) {
            for (int c = 0; c < options.cases; c++, cases++) {
                GhzParams params = random_params(n, rng);
                MeasurementSettings settings = random_settings(n, rng);
                double transform =
                    sum_abs(coefficients_from_values(correlation_values_all(params.to_state(), settings)));
                worst = std::max(worst, std::abs(transform - prediction_closed_form(params, settings)));
            }
        }
        line.report("prediction closed form vs transform path", cases, worst, kPathTolerance);
    }

    {
        double worst = 0.0;
        int cases = 0;
        std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
        std::uniform_real_distribution<double> xi(0.0, std::numbers::pi / 2);
        for (int n = 1; n <= max_n; n++) {
            for (int c = 0; c < options.cases; c++, cases++) {
                double x = xi(rng);
                GhzParams params = GhzParams::make(n, std::cos(x), std::sin(x));
                int l = std::uniform_int_distribution<int>(0, n)(rng);
                TwoAngleConfig cfg{n, l, angle(rng), angle(rng)};
                double direct = two_angle_prediction(params, cfg);
                worst = std::max(worst, std::abs(direct - prediction_closed_form(params, two_angle_settings(cfg))));
            }
        }
        line.report("two-angle formula vs general closed form", cases, worst, kPathTolerance);
    }

    {
        double worst = 0.0;
        int cases = 0;
        for (int n = 1; n <= max_n; n++) {
            for (int c = 0; c < options.cases; c++, cases++) {
                GhzParams params = random_params(n, rng);
                double value = prediction_closed_form(params, optimal_settings(params));
                worst = std::max(worst, std::abs(value - max_prediction(params)));
            }
        }
        line.report("optimal settings attain the analytic maximum", cases, worst, kPathTolerance);
    }

    {
        double worst = 0.0;
        int cases = 0;
        for (int n = 1; n <= std::min(max_n, 6); n++) {
            CertificationReport report = certify_bound(n);
            cases += static_cast<int>(report.num_strategies);
            worst = std::max({worst, std::abs(report.max_sum_abs - 1.0), std::abs(report.min_sum_abs - 1.0)});
        }
        line.report("LHV vertices saturate sum|c| = 1", cases, worst, kPathTolerance);
    }

    out << (line.all_pass ? "all checks passed" : "some checks FAILED") << '\n';
    return line.all_pass;
}

}  // namespace bellcorr
