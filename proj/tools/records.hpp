#pragma once

// Output rows of the command-line tool and their CSV / JSON encodings.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bwp/model.hpp"

namespace bwp::cli {

/// One emitted row: the full input echo, one metric, and metadata. Inputs
/// that do not apply to the metric stay unset and are written empty / null.
struct SweepRecord {
    NetworkParams params;
    Mode mode = Mode::AdaptiveSir;
    int n_subbands = 1;
    std::optional<double> epsilon;
    std::optional<double> b;
    std::optional<double> d_max;
    std::string metric;
    double value = 0.0;  // +inf is written as "inf"
    std::optional<double> std_error;
    std::string method;
    std::optional<unsigned long long> seed;
    std::optional<int> realizations;
    std::optional<int> max_slots;
    std::optional<double> window_radius;
    std::string note;
};

enum class Format { Csv, Json };

/// Locale-independent shortest form with at most 17 significant digits;
/// "inf" for +inf.
std::string format_number(double v);

/// Inverse of format_number; throws std::invalid_argument.
double parse_number(const std::string& text);

const std::vector<std::string>& csv_columns();

void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows);

/// {"meta": {...}, "rows": [...]} with one object per row.
void write_json(std::ostream& out, const std::map<std::string, std::string>& meta,
                const std::vector<SweepRecord>& rows);

/// Splits CSV text written by write_csv into header-keyed maps.
std::vector<std::map<std::string, std::string>> read_csv(const std::string& text);

}  // namespace bwp::cli
