#include "bellcorr/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bellcorr/errors.h"
#include "bellcorr/ghz.h"
#include "bellcorr/lhv.h"
#include "bellcorr/optimizer.h"
#include "bellcorr/oracle_check.h"
#include "bellcorr/settings_io.h"

namespace bellcorr {

namespace {

constexpr double kCliNormTolerance = 1e-9;
constexpr double kDegree = std::numbers::pi / 180.0;

struct StateArgs {
    double alpha_re = 1.0 / std::numbers::sqrt2;
    double alpha_im = 0.0;
    double beta_re = 1.0 / std::numbers::sqrt2;
    double beta_im = 0.0;
    bool normalize = false;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--alpha-re", alpha_re, "Real part of alpha")->capture_default_str();
        cmd->add_option("--alpha-im", alpha_im, "Imaginary part of alpha")->capture_default_str();
        cmd->add_option("--beta-re", beta_re, "Real part of beta")->capture_default_str();
        cmd->add_option("--beta-im", beta_im, "Imaginary part of beta")->capture_default_str();
        cmd->add_flag("--normalize", normalize, "Rescale alpha, beta to unit norm instead of failing");
    }

    GhzParams params(int n) const {
        Complex alpha{alpha_re, alpha_im};
        Complex beta{beta_re, beta_im};
        double norm = std::norm(alpha) + std::norm(beta);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw ValidationError("normalization failure: alpha and beta are both zero or not finite");
        }
        if (std::abs(norm - 1.0) > kCliNormTolerance && !normalize) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "normalization failure: |alpha|^2 + |beta|^2 = " << norm << " (pass --normalize to rescale)";
            throw ValidationError(msg.str());
        }
        if (std::abs(norm - 1.0) > 1e-12) {
            double scale = 1.0 / std::sqrt(norm);
            alpha *= scale;
            beta *= scale;
        }
        return GhzParams::make(n, alpha, beta);
    }
};

struct Printer {
    std::ostream &out;
    explicit Printer(std::ostream &o) : out(o) { out.precision(15); }
};

std::string verdict(bool violated) { return violated ? "VIOLATED" : "NOT-VIOLATED"; }

std::ostream &print_settings(std::ostream &out, const MeasurementSettings &settings) {
    for (int site = 0; site < settings.n(); site++) {
        out << "  site " << site + 1 << ": (" << format_double(settings.phase(site, 0)) << ", "
            << format_double(settings.phase(site, 1)) << ")\n";
    }
    return out;
}

void write_scan_output(const std::string &path, const std::string &format, const ScanResult &result, int n, int l) {
    std::ofstream file(path);
    if (!file) {
        throw ValidationError("cannot write output file: " + path);
    }
    if (format == "json") {
        write_scan_json(file, result, n, l);
    } else {
        write_scan_csv(file, result);
    }
    if (!file) {
        throw ValidationError("failed writing output file: " + path);
    }
}

void print_argmax(std::ostream &out, const ScanResult &result) {
    out << "argmax: theta1=" << format_double(result.argmax.theta1)
        << " theta2=" << format_double(result.argmax.theta2) << " value=" << format_double(result.argmax.value)
        << '\n';
}

int cmd_predict(int n, const StateArgs &state, const std::string &settings_path, const std::string &method,
                bool degrees, std::ostream &out) {
    GhzParams params = state.params(n);
    MeasurementSettings settings = read_settings_file(settings_path, degrees);
    if (settings.n() != n) {
        throw ValidationError("dimension mismatch: settings file has n = " + std::to_string(settings.n()) +
                              " but --n = " + std::to_string(n));
    }
    Printer p(out);
    double reported = 0.0;
    std::optional<double> closed, statevector;
    if (method == "closed" || method == "both") {
        closed = prediction_closed_form(params, settings);
        reported = *closed;
    }
    if (method == "statevector" || method == "both") {
        statevector = sum_abs(coefficients_from_values(correlation_values_all(params.to_state(), settings)));
        if (!closed) {
            reported = *statevector;
        }
    }
    out << "n: " << n << '\n';
    if (closed) {
        out << "quantum prediction (closed form): " << *closed << '\n';
    }
    if (statevector) {
        out << "quantum prediction (statevector): " << *statevector << '\n';
    }
    if (closed && statevector) {
        out << "absolute difference: " << std::scientific << std::abs(*closed - *statevector) << std::defaultfloat
            << '\n';
    }
    out << "LHV bound: 1\n";
    out << "ratio: " << reported << '\n';
    out << "verdict: " << verdict(reported > 1.0) << '\n';
    return kExitOk;
}

int cmd_scan(const GhzParams &params, int l, const ScanGrid &grid, const std::string &out_path,
             const std::string &format, std::ostream &out) {
    ScanResult result = scan_two_angle(params, l, grid);
    if (!out_path.empty()) {
        write_scan_output(out_path, format, result, params.n, l);
        out << "wrote " << result.values.size() << " rows to " << out_path << '\n';
    }
    print_argmax(out, result);
    return kExitOk;
}

int cmd_verify_lhv(int n, int guard, uint64_t samples, uint64_t seed, std::ostream &out) {
    CertificationReport report;
    if (samples > 0) {
        report = sample_bound(n, samples, seed);
    } else {
        report = certify_bound(n, LhvOptions{guard});
    }
    bool pass = std::abs(report.max_sum_abs - 1.0) <= kPathTolerance &&
                std::abs(report.min_sum_abs - 1.0) <= kPathTolerance;
    out << "n: " << n << '\n';
    if (report.exhaustive) {
        out << "vertices: " << report.num_strategies << " (exhaustive)\n";
    } else {
        out << "vertices: " << report.num_strategies << " (sampled, seed " << report.seed << ", not exhaustive)\n";
    }
    out << "max sum|c|: " << format_double(report.max_sum_abs) << '\n';
    out << "min sum|c|: " << format_double(report.min_sum_abs) << '\n';
    out << "result: " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_criterion(int n, const StateArgs &state, std::optional<double> xi, std::ostream &out) {
    Printer p(out);
    out << "n: " << n << '\n';
    if (xi) {
        double s = std::abs(std::sin(2 * *xi));
        out << "|sin 2xi|: " << s << '\n';
        out << "threshold 2^{-(n-1)/2}: " << angle_violation_threshold(n) << '\n';
        out << "verdict: " << verdict(violates_angle(n, *xi)) << '\n';
        return kExitOk;
    }
    GhzParams params = state.params(n);
    out << "|alpha beta*|: " << params.coupling() << '\n';
    out << "threshold 2^{-(n+1)/2}: " << violation_threshold(n) << '\n';
    out << "verdict: " << verdict(violates(params)) << '\n';
    return kExitOk;
}

int cmd_optimal(int n, const StateArgs &state, bool verify, int starts, uint64_t seed, const std::string &out_path,
                std::ostream &out) {
    GhzParams params = state.params(n);
    MeasurementSettings settings = optimal_settings(params);
    Printer p(out);
    out << "n: " << n << '\n';
    out << "optimal settings (radians; any beta_l = (2k+1)pi/4 is equally optimal):\n";
    print_settings(out, settings);
    double analytic = max_prediction(params);
    out << "analytic maximum: " << analytic << '\n';
    out << "closed form at settings: " << prediction_closed_form(params, settings) << '\n';
    if (verify) {
        double statevector = sum_abs(coefficients_from_values(correlation_values_all(params.to_state(), settings)));
        RefineResult refined = refine_full(params, starts, seed);
        out << "statevector at settings: " << statevector << '\n';
        out << "refinement search: " << refined.best_value << " (starts " << refined.starts << ", seed "
            << refined.seed << ")\n";
        double spread = std::max({std::abs(statevector - analytic), std::abs(refined.best_value - analytic)});
        out << "max deviation from analytic: " << std::scientific << spread << std::defaultfloat << '\n';
    }
    if (!out_path.empty()) {
        write_settings_file(out_path, settings);
        out << "wrote settings to " << out_path << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multipartite Bell-correlation calculator for generalized GHZ states"};
    app.require_subcommand(1);

    // predict
    auto *predict = app.add_subcommand("predict", "Quantum prediction sum|q| for settings read from a JSON file");
    int predict_n = 0;
    std::string settings_path, method = "closed";
    bool predict_degrees = false;
    StateArgs predict_state;
    predict->add_option("--n", predict_n, "Number of qubits")->required();
    predict->add_option("--settings", settings_path, "Settings JSON file")->required();
    predict->add_option("--method", method, "closed | statevector | both")
        ->check(CLI::IsMember({"closed", "statevector", "both"}))
        ->capture_default_str();
    predict->add_flag("--degrees", predict_degrees, "Settings file phases are in degrees");
    predict_state.add_to(predict);

    // scan
    auto *scan = app.add_subcommand("scan", "Two-angle prediction over a (theta1, theta2) grid");
    int scan_n = 4, scan_l = 1;
    ScanGrid grid = default_scan_grid();
    std::string scan_out, scan_format = "csv";
    bool scan_degrees = false;
    StateArgs scan_state;
    scan->add_option("--n", scan_n)->capture_default_str();
    scan->add_option("--l", scan_l, "Sites using (0, theta1)")->capture_default_str();
    auto *t1lo = scan->add_option("--theta1-lo", grid.theta1.lo);
    auto *t1hi = scan->add_option("--theta1-hi", grid.theta1.hi);
    scan->add_option("--steps1", grid.theta1.steps)->capture_default_str();
    auto *t2lo = scan->add_option("--theta2-lo", grid.theta2.lo);
    auto *t2hi = scan->add_option("--theta2-hi", grid.theta2.hi);
    scan->add_option("--steps2", grid.theta2.steps)->capture_default_str();
    scan->add_option("--out", scan_out, "Output file");
    scan->add_option("--format", scan_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    scan->add_flag("--degrees", scan_degrees, "Angle arguments are in degrees");
    scan_state.add_to(scan);

    // slice
    auto *slice = app.add_subcommand("slice", "Two-angle prediction along theta2 at fixed theta1");
    int slice_n = 4, slice_l = 1;
    double slice_theta1 = std::numbers::pi / 2;
    Axis slice_axis{0.0, std::numbers::pi / 2, 91};
    std::string slice_out, slice_format = "csv";
    bool slice_degrees = false;
    StateArgs slice_state;
    slice->add_option("--n", slice_n)->capture_default_str();
    slice->add_option("--l", slice_l)->capture_default_str();
    auto *s_t1 = slice->add_option("--theta1", slice_theta1);
    auto *s_lo = slice->add_option("--theta2-lo", slice_axis.lo);
    auto *s_hi = slice->add_option("--theta2-hi", slice_axis.hi);
    slice->add_option("--steps", slice_axis.steps)->capture_default_str();
    slice->add_option("--out", slice_out, "Output file");
    slice->add_option("--format", slice_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    slice->add_flag("--degrees", slice_degrees, "Angle arguments are in degrees");
    slice_state.add_to(slice);

    // verify-lhv
    auto *verify_lhv = app.add_subcommand("verify-lhv", "Certify sum|c| <= 1 over deterministic LHV strategies");
    int lhv_n = 0, lhv_guard = LhvOptions{}.enumeration_guard;
    uint64_t lhv_samples = 0, lhv_seed = 1;
    verify_lhv->add_option("--n", lhv_n)->required();
    verify_lhv->add_option("--guard", lhv_guard, "Largest n enumerated exhaustively")->capture_default_str();
    verify_lhv->add_option("--sample", lhv_samples, "Check this many random vertices instead (non-exhaustive)");
    verify_lhv->add_option("--seed", lhv_seed)->capture_default_str();

    // criterion
    auto *criterion = app.add_subcommand("criterion", "Violation criterion under optimal settings");
    int crit_n = 0;
    double crit_xi = 0.0;
    bool crit_degrees = false;
    StateArgs crit_state;
    criterion->add_option("--n", crit_n)->required();
    auto *xi_opt = criterion->add_option("--xi", crit_xi, "Use alpha = cos xi, beta = sin xi");
    criterion->add_flag("--degrees", crit_degrees, "xi is in degrees");
    crit_state.add_to(criterion);

    // optimal
    auto *optimal = app.add_subcommand("optimal", "Canonical optimal settings and the maximal prediction");
    int opt_n = 0, opt_starts = 32;
    uint64_t opt_seed = 1;
    bool opt_verify = false;
    std::string opt_out;
    StateArgs opt_state;
    optimal->add_option("--n", opt_n)->required();
    optimal->add_flag("--verify", opt_verify, "Also evaluate the statevector path and a refinement search");
    optimal->add_option("--starts", opt_starts)->capture_default_str();
    optimal->add_option("--seed", opt_seed)->capture_default_str();
    optimal->add_option("--out", opt_out, "Write the settings to this JSON file");
    opt_state.add_to(optimal);

    // oracle-check
    auto *oracle = app.add_subcommand("oracle-check", "Run the cross-path consistency battery");
    OracleCheckOptions oracle_opts;
    oracle->add_option("--seed", oracle_opts.seed)->capture_default_str();
    oracle->add_option("--cases", oracle_opts.cases)->capture_default_str();
    oracle->add_option("--max-n", oracle_opts.max_n)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (*predict) {
            return cmd_predict(predict_n, predict_state, settings_path, method, predict_degrees, out);
        }
        if (*scan) {
            if (scan_degrees) {
                if (t1lo->count()) grid.theta1.lo *= kDegree;
                if (t1hi->count()) grid.theta1.hi *= kDegree;
                if (t2lo->count()) grid.theta2.lo *= kDegree;
                if (t2hi->count()) grid.theta2.hi *= kDegree;
            }
            return cmd_scan(scan_state.params(scan_n), scan_l, grid, scan_out, scan_format, out);
        }
        if (*slice) {
            if (slice_degrees) {
                if (s_t1->count()) slice_theta1 *= kDegree;
                if (s_lo->count()) slice_axis.lo *= kDegree;
                if (s_hi->count()) slice_axis.hi *= kDegree;
            }
            ScanGrid slice_grid{Axis{slice_theta1, slice_theta1, 1}, slice_axis};
            return cmd_scan(slice_state.params(slice_n), slice_l, slice_grid, slice_out, slice_format, out);
        }
        if (*verify_lhv) {
            return cmd_verify_lhv(lhv_n, lhv_guard, lhv_samples, lhv_seed, out);
        }
        if (*criterion) {
            std::optional<double> xi;
            if (xi_opt->count()) {
                xi = crit_degrees ? crit_xi * kDegree : crit_xi;
            }
            return cmd_criterion(crit_n, crit_state, xi, out);
        }
        if (*optimal) {
            return cmd_optimal(opt_n, opt_state, opt_verify, opt_starts, opt_seed, opt_out, out);
        }
        if (*oracle) {
            return run_oracle_check(oracle_opts, out) ? kExitOk : kExitCheckFailed;
        }
    } catch (const ResourceLimitError &e) {
        err << "error: " << e.what() << '\n';
        return kExitResourceGuard;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace bellcorr
