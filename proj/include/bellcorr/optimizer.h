#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "bellcorr/ghz.h"

namespace bellcorr {

/// Inclusive, evenly spaced axis. A single-node axis has steps == 1 and lo == hi.
struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 2;

    double at(int i) const;
    /// Throws ValidationError naming `name` on a malformed axis.
    void validate(const char *name) const;
};

struct ScanGrid {
    Axis theta1;
    Axis theta2;
};

struct ScanPoint {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double value = 0.0;
};

struct ScanResult {
    ScanGrid grid;
    /// Row-major: one row per theta1 node, one column per theta2 node.
    std::vector<double> values;
    ScanPoint argmax;

    int rows() const { return grid.theta1.steps; }
    int cols() const { return grid.theta2.steps; }
    double at(int row, int col) const { return values[static_cast<size_t>(row) * cols() + col]; }
};

/// Default Fig. 1 style grid: 181 x 91 nodes over [0, pi/2]^2.
ScanGrid default_scan_grid();

/// Two-angle prediction on every grid node. Argmax ties resolve to the
/// lowest row-major index.
ScanResult scan_two_angle(const GhzParams &params, int l, const ScanGrid &grid);

/// 1 x m curve at fixed theta1.
ScanResult slice_theta(const GhzParams &params, int l, double theta1_fixed, const Axis &theta2_axis);

struct RefineOptions {
    double initial_step = std::numbers::pi / 8;
    double min_step = 1e-9;
    int max_sweeps = 200;
};

struct RefineResult {
    MeasurementSettings best_settings;
    double best_value = 0.0;
    int starts = 0;
    /// Total coordinate sweeps over all starts.
    int iterations = 0;
    uint64_t seed = 0;
};

/// Multi-start coordinate descent over all 2n phases maximizing the closed-form
/// prediction. Starts are drawn uniformly from [0, 2 pi)^{2n}. Every objective
/// evaluation is checked against max_prediction; exceeding it by more than
/// 1e-9 throws std::logic_error.
RefineResult refine_full(const GhzParams &params, int starts, uint64_t seed, const RefineOptions &options = {});

}  // namespace bellcorr
