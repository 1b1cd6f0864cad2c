#include "bellcorr/settings_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bellcorr/errors.h"
#include "json.hpp"

namespace bellcorr {

using json = nlohmann::json;

MeasurementSettings parse_settings_json(const std::string &text, bool degrees) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("settings parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("settings: top level must be a JSON object");
    }
    if (doc.contains("schema")) {
        if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != kSettingsSchemaVersion) {
            throw ValidationError("settings: field 'schema' must be " + std::to_string(kSettingsSchemaVersion));
        }
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw ValidationError("settings: field 'n' is missing or not an integer");
    }
    int n = doc["n"].get<int>();
    if (n < 1) {
        throw ValidationError("settings: field 'n' must be positive, got " + std::to_string(n));
    }
    if (!doc.contains("phases") || !doc["phases"].is_array()) {
        throw ValidationError("settings: field 'phases' is missing or not an array");
    }
    const auto &list = doc["phases"];
    if (static_cast<int>(list.size()) != n) {
        throw ValidationError("settings: field 'phases' has " + std::to_string(list.size()) +
                              " entries but n = " + std::to_string(n));
    }
    const double scale = degrees ? std::numbers::pi / 180.0 : 1.0;
    std::vector<std::array<double, 2>> phases(n);
    for (int site = 0; site < n; site++) {
        const auto &pair = list[site];
        if (!pair.is_array() || pair.size() != 2) {
            throw ValidationError("settings: phases[" + std::to_string(site) + "] must be a two-element list");
        }
        for (int k = 0; k < 2; k++) {
            if (!pair[k].is_number()) {
                throw ValidationError("settings: phases[" + std::to_string(site) + "][" + std::to_string(k) +
                                      "] is not a number");
            }
            double value = pair[k].get<double>() * scale;
            if (!std::isfinite(value)) {
                throw ValidationError("settings: phases[" + std::to_string(site) + "][" + std::to_string(k) +
                                      "] is not finite");
            }
            phases[site][k] = value;
        }
    }
    return MeasurementSettings(std::move(phases));
}

MeasurementSettings read_settings_file(const std::string &path, bool degrees) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("settings file not found or unreadable: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_settings_json(buffer.str(), degrees);
}

std::string settings_to_json(const MeasurementSettings &settings) {
    json doc;
    doc["schema"] = kSettingsSchemaVersion;
    doc["n"] = settings.n();
    doc["phases"] = json::array();
    for (const auto &[phi0, phi1] : settings.phases) {
        doc["phases"].push_back({phi0, phi1});
    }
    return doc.dump(2) + "\n";
}

void write_settings_file(const std::string &path, const MeasurementSettings &settings) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write settings file: " + path);
    }
    out << settings_to_json(settings);
    if (!out) {
        throw ValidationError("failed writing settings file: " + path);
    }
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

void write_scan_csv(std::ostream &out, const ScanResult &result) {
    out << "theta1,theta2,prediction\n";
    for (int row = 0; row < result.rows(); row++) {
        std::string t1 = format_double(result.grid.theta1.at(row));
        for (int col = 0; col < result.cols(); col++) {
            out << t1 << ',' << format_double(result.grid.theta2.at(col)) << ',' << format_double(result.at(row, col))
                << '\n';
        }
    }
}

void write_scan_json(std::ostream &out, const ScanResult &result, int n, int l) {
    json doc;
    doc["schema"] = 1;
    doc["n"] = n;
    doc["l"] = l;
    auto axis = [](const Axis &a) {
        json values = json::array();
        for (int i = 0; i < a.steps; i++) {
            values.push_back(a.at(i));
        }
        return values;
    };
    doc["theta1"] = axis(result.grid.theta1);
    doc["theta2"] = axis(result.grid.theta2);
    json rows = json::array();
    for (int row = 0; row < result.rows(); row++) {
        json cells = json::array();
        for (int col = 0; col < result.cols(); col++) {
            cells.push_back(result.at(row, col));
        }
        rows.push_back(std::move(cells));
    }
    doc["values"] = std::move(rows);
    doc["argmax"] = {{"theta1", result.argmax.theta1},
                     {"theta2", result.argmax.theta2},
                     {"value", result.argmax.value}};
    out << doc.dump() << '\n';
}

std::vector<ScanRow> read_scan_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "theta1,theta2,prediction") {
        throw ValidationError("scan CSV: missing or unexpected header");
    }
    std::vector<ScanRow> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        double fields[3];
        const char *p = line.data();
        const char *end = line.data() + line.size();
        for (int f = 0; f < 3; f++) {
            auto [next, ec] = std::from_chars(p, end, fields[f]);
            bool separator_ok = (f < 2) ? (next < end && *next == ',') : (next == end);
            if (ec != std::errc() || !separator_ok) {
                throw ValidationError("scan CSV: malformed line " + std::to_string(line_no));
            }
            p = next + 1;
        }
        rows.push_back(ScanRow{fields[0], fields[1], fields[2]});
    }
    return rows;
}

}  // namespace bellcorr
