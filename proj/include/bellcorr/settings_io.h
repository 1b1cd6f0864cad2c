#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bellcorr/optimizer.h"
#include "bellcorr/quantum_sim.h"

namespace bellcorr {

inline constexpr int kSettingsSchemaVersion = 1;

/// Parses `{"schema": 1, "n": int, "phases": [[f, f], ...]}`. Errors name the
/// offending field and index. `degrees` converts phases to radians on read.
MeasurementSettings parse_settings_json(const std::string &text, bool degrees = false);
/// Same, reading from a file. Throws ValidationError if the file cannot be opened.
MeasurementSettings read_settings_file(const std::string &path, bool degrees = false);

std::string settings_to_json(const MeasurementSettings &settings);
void write_settings_file(const std::string &path, const MeasurementSettings &settings);

/// Shortest decimal that round-trips to the same double; always uses '.'.
std::string format_double(double value);

/// `theta1,theta2,prediction` header followed by one row per cell, row-major.
void write_scan_csv(std::ostream &out, const ScanResult &result);
void write_scan_json(std::ostream &out, const ScanResult &result, int n, int l);

struct ScanRow {
    double theta1;
    double theta2;
    double prediction;
};
/// Parses a CSV produced by write_scan_csv.
std::vector<ScanRow> read_scan_csv(std::istream &in);

}  // namespace bellcorr
