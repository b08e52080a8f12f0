#pragma once

#include <string>
#include <vector>

#include "femtosim/engine.hpp"

namespace femtosim {

// One curve-file row. Column order is fixed; both series appear so plots
// and comparisons need no second file.
struct CurveRow {
    double sweep_value = 0.0;
    double proposed_snir_db = 0.0;
    double existing_snir_db = 0.0;
    double proposed_throughput_bps = 0.0;
    double existing_throughput_bps = 0.0;
    double proposed_active_fraction = 0.0;
    double energy_duty = 0.0;
    double snir_db_std = 0.0;
    long long trials = 0;

    bool operator==(const CurveRow&) const = default;
};

extern const char* const kCurveCsvHeader;

std::vector<CurveRow> curve_rows(const SweepResult& result);

// Header plus one row per point, 6 significant digits, LF endings.
std::string to_csv(const std::vector<CurveRow>& rows);

// Strict inverse of to_csv: exact header, 9 numeric fields per row.
// Throws std::runtime_error naming the offending line.
std::vector<CurveRow> parse_curve_csv(const std::string& text);

}  // namespace femtosim
