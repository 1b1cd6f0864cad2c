#include "bellcorr/optimizer.h"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bellcorr/errors.h"
#include "bellcorr/parallel.h"

namespace bellcorr {

namespace {

constexpr double kCeilingSlack = 1e-9;

ScanPoint find_argmax(const ScanGrid &grid, const std::vector<double> &values) {
    size_t best = 0;
    for (size_t i = 1; i < values.size(); i++) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    int cols = grid.theta2.steps;
    return ScanPoint{grid.theta1.at(static_cast<int>(best / cols)), grid.theta2.at(static_cast<int>(best % cols)),
                     values[best]};
}

// Closed-form prediction over the flat phase vector (phi_1^0, phi_1^1, phi_2^0, ...),
// caching the per-site factors |cos b| +- |sin b| so that moving one
// coordinate only re-evaluates that site. Every evaluation is checked against
// the analytic ceiling.
class CoordinateObjective {
   public:
    CoordinateObjective(const GhzParams &params, std::vector<double> phases)
        : coupling_(params.coupling()),
          phase_(params.state_phase()),
          ceiling_(max_prediction(params) + kCeilingSlack),
          phases_(std::move(phases)),
          plus_(phases_.size() / 2),
          minus_(phases_.size() / 2) {
        for (size_t site = 0; site < plus_.size(); site++) {
            refresh_site(site);
        }
        value_ = evaluate(phases_.size(), 0.0);
    }

    double value() const { return value_; }
    const std::vector<double> &phases() const { return phases_; }
    size_t dims() const { return phases_.size(); }

    /// Objective if coordinate `coord` were moved to `candidate`.
    double trial(size_t coord, double candidate) const { return evaluate(coord, candidate); }

    void commit(size_t coord, double candidate, double value) {
        phases_[coord] = candidate;
        refresh_site(coord / 2);
        value_ = value;
    }

   private:
    static std::array<double, 2> site_factors(double phi0, double phi1) {
        double b = (phi1 - phi0) / 2;
        double c = std::abs(std::cos(b));
        double s = std::abs(std::sin(b));
        return {c + s, c - s};
    }

    void refresh_site(size_t site) {
        auto [p, m] = site_factors(phases_[2 * site], phases_[2 * site + 1]);
        plus_[site] = p;
        minus_[site] = m;
    }

    // coord == dims() evaluates the current point.
    double evaluate(size_t coord, double candidate) const {
        const size_t moved_site = coord / 2;
        double sum_alpha = 0.0;
        double plus = 1.0;
        double minus = 1.0;
        for (size_t site = 0; site < plus_.size(); site++) {
            double phi0 = phases_[2 * site];
            double phi1 = phases_[2 * site + 1];
            if (site == moved_site) {
                (coord % 2 == 0 ? phi0 : phi1) = candidate;
                auto [p, m] = site_factors(phi0, phi1);
                plus *= p;
                minus *= m;
            } else {
                plus *= plus_[site];
                minus *= minus_[site];
            }
            sum_alpha += (phi1 + phi0) / 2;
        }
        double total_angle = phase_ + sum_alpha;
        double c0 = std::abs(std::cos(total_angle));
        double s0 = std::abs(std::sin(total_angle));
        double value = coupling_ * ((c0 + s0) * plus + (c0 - s0) * minus);
        if (value > ceiling_) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "internal error: objective " << value << " exceeds the analytic ceiling " << ceiling_;
            throw std::logic_error(msg.str());
        }
        return value;
    }

    double coupling_;
    double phase_;
    double ceiling_;
    std::vector<double> phases_;
    std::vector<double> plus_;
    std::vector<double> minus_;
    double value_ = 0.0;
};

struct LocalResult {
    std::vector<double> phases;
    double value = 0.0;
    int sweeps = 0;
};

LocalResult coordinate_descent(const GhzParams &params, std::vector<double> start, const RefineOptions &options) {
    CoordinateObjective objective(params, std::move(start));
    double step = options.initial_step;
    int sweeps = 0;
    while (step >= options.min_step && sweeps < options.max_sweeps) {
        bool improved = false;
        for (size_t i = 0; i < objective.dims(); i++) {
            for (double direction : {1.0, -1.0}) {
                double candidate = objective.phases()[i] + direction * step;
                double value = objective.trial(i, candidate);
                if (value > objective.value()) {
                    objective.commit(i, candidate, value);
                    improved = true;
                    break;
                }
            }
        }
        sweeps++;
        if (!improved) {
            step /= 2;
        }
    }
    return LocalResult{objective.phases(), objective.value(), sweeps};
}

}  // namespace

double Axis::at(int i) const {
    if (steps == 1) {
        return lo;
    }
    if (i == steps - 1) {
        return hi;
    }
    return lo + (hi - lo) * (static_cast<double>(i) / (steps - 1));
}

void Axis::validate(const char *name) const {
    std::ostringstream msg;
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        msg << "malformed " << name << " axis: bounds must be finite";
    } else if (steps == 1) {
        if (lo != hi) {
            msg << "malformed " << name << " axis: a single-node axis needs lo == hi";
        }
    } else if (steps < 2) {
        msg << "malformed " << name << " axis: steps must be >= 2, got " << steps;
    } else if (!(hi > lo)) {
        msg << "malformed " << name << " axis: hi must exceed lo";
    }
    if (!msg.str().empty()) {
        throw ValidationError(msg.str());
    }
}

ScanGrid default_scan_grid() {
    constexpr double half_pi = std::numbers::pi / 2;
    return ScanGrid{Axis{0.0, half_pi, 181}, Axis{0.0, half_pi, 91}};
}

ScanResult scan_two_angle(const GhzParams &params, int l, const ScanGrid &grid) {
    grid.theta1.validate("theta1");
    grid.theta2.validate("theta2");
    // Validates l and the amplitudes once, up front.
    two_angle_prediction(params, TwoAngleConfig{params.n, l, 0.0, 0.0});

    ScanResult result{grid, std::vector<double>(static_cast<size_t>(grid.theta1.steps) * grid.theta2.steps), {}};
    int cols = grid.theta2.steps;
    parallel_for(static_cast<size_t>(grid.theta1.steps), [&](size_t row) {
        double theta1 = grid.theta1.at(static_cast<int>(row));
        for (int col = 0; col < cols; col++) {
            TwoAngleConfig cfg{params.n, l, theta1, grid.theta2.at(col)};
            result.values[row * cols + col] = two_angle_prediction(params, cfg);
        }
    });
    result.argmax = find_argmax(grid, result.values);
    return result;
}

ScanResult slice_theta(const GhzParams &params, int l, double theta1_fixed, const Axis &theta2_axis) {
    return scan_two_angle(params, l, ScanGrid{Axis{theta1_fixed, theta1_fixed, 1}, theta2_axis});
}

RefineResult refine_full(const GhzParams &params, int starts, uint64_t seed, const RefineOptions &options) {
    if (starts < 1) {
        throw ValidationError("refinement needs at least one start, got " + std::to_string(starts));
    }
    const size_t dims = 2 * static_cast<size_t>(params.n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 2 * std::numbers::pi);
    std::vector<std::vector<double>> initial(starts, std::vector<double>(dims));
    for (auto &point : initial) {
        for (double &x : point) {
            x = uniform(rng);
        }
    }

    std::vector<LocalResult> locals(starts);
    parallel_for(static_cast<size_t>(starts),
                 [&](size_t i) { locals[i] = coordinate_descent(params, initial[i], options); });

    size_t best = 0;
    int sweeps = 0;
    for (size_t i = 0; i < locals.size(); i++) {
        sweeps += locals[i].sweeps;
        if (locals[i].value > locals[best].value) {
            best = i;
        }
    }
    std::vector<std::array<double, 2>> phases(params.n);
    for (int site = 0; site < params.n; site++) {
        phases[site] = {locals[best].phases[2 * site], locals[best].phases[2 * site + 1]};
    }
    return RefineResult{MeasurementSettings(std::move(phases)), locals[best].value, starts, sweeps, seed};
}

}  // namespace bellcorr
