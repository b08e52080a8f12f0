#include "femtosim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace femtosim {

const char* const kCurveCsvHeader =
    "sweep_value,proposed_snir_db,existing_snir_db,proposed_throughput_bps,"
    "existing_throughput_bps,proposed_active_fraction,energy_duty,"
    "snir_db_std,trials";

std::vector<CurveRow> curve_rows(const SweepResult& result) {
    std::vector<CurveRow> rows;
    rows.reserve(result.points.size());
    for (const SweepPoint& pt : result.points) {
        CurveRow row;
        row.sweep_value = pt.sweep_value;
        row.proposed_snir_db = pt.proposed.snir_db_mean;
        row.existing_snir_db = pt.existing.snir_db_mean;
        row.proposed_throughput_bps = pt.proposed.throughput_bps;
        row.existing_throughput_bps = pt.existing.throughput_bps;
        row.proposed_active_fraction = pt.proposed_active_fraction;
        row.energy_duty = pt.energy_duty;
        row.snir_db_std = pt.proposed.snir_db_std;
        row.trials = pt.trials;
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double field_double(const std::string& field, int line_no) {
    if (field.empty()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": empty field");
    }
    char* end = nullptr;
    const double out = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": bad number '" + field + "'");
    }
    return out;
}

long long field_int(const std::string& field, int line_no) {
    if (field.empty()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": empty field");
    }
    char* end = nullptr;
    const long long out = std::strtoll(field.c_str(), &end, 10);
    if (end != field.c_str() + field.size()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": bad integer '" + field + "'");
    }
    return out;
}

}  // namespace

std::string to_csv(const std::vector<CurveRow>& rows) {
    std::string out = kCurveCsvHeader;
    out += "\n";
    for (const CurveRow& r : rows) {
        out += num(r.sweep_value);
        out += ",";
        out += num(r.proposed_snir_db);
        out += ",";
        out += num(r.existing_snir_db);
        out += ",";
        out += num(r.proposed_throughput_bps);
        out += ",";
        out += num(r.existing_throughput_bps);
        out += ",";
        out += num(r.proposed_active_fraction);
        out += ",";
        out += num(r.energy_duty);
        out += ",";
        out += num(r.snir_db_std);
        out += ",";
        out += std::to_string(r.trials);
        out += "\n";
    }
    return out;
}

std::vector<CurveRow> parse_curve_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) {
        throw std::runtime_error("csv line 1: missing header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCurveCsvHeader) {
        throw std::runtime_error("csv line 1: unexpected header");
    }

    std::vector<CurveRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(line);
        while (std::getline(fs, field, ',')) fields.push_back(field);
        if (fields.size() != 9) {
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": expected 9 fields, got " +
                                     std::to_string(fields.size()));
        }
        CurveRow row;
        row.sweep_value = field_double(fields[0], line_no);
        row.proposed_snir_db = field_double(fields[1], line_no);
        row.existing_snir_db = field_double(fields[2], line_no);
        row.proposed_throughput_bps = field_double(fields[3], line_no);
        row.existing_throughput_bps = field_double(fields[4], line_no);
        row.proposed_active_fraction = field_double(fields[5], line_no);
        row.energy_duty = field_double(fields[6], line_no);
        row.snir_db_std = field_double(fields[7], line_no);
        row.trials = field_int(fields[8], line_no);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace femtosim
