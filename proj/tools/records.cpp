#include "records.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bwp::cli {

namespace {

constexpr const char* kVersion = BWP_VERSION;

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

nlohmann::ordered_json json_number(double v) {
    if (std::isinf(v) && v > 0.0) return "inf";
    return v;
}

nlohmann::ordered_json json_optional(const std::optional<double>& v) {
    return v ? json_number(*v) : nlohmann::ordered_json(nullptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[64];
    // Shortest representation that round-trips; never more than 17 digits.
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{
        "lambda", "alpha",  "rate",   "bandwidth", "mode",         "n",         "epsilon",       "b",
        "d_max",  "metric", "value",  "stderr",    "method",       "seed",      "realizations",  "max_slots",
        "window_radius", "version", "note"};
    return cols;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : rows) {
        const std::vector<std::string> fields{format_number(r.params.lambda),
                                              format_number(r.params.alpha),
                                              format_number(r.params.rate),
                                              format_number(r.params.bandwidth),
                                              std::string(to_string(r.mode)),
                                              std::to_string(r.n_subbands),
                                              opt(r.epsilon),
                                              opt(r.b),
                                              opt(r.d_max),
                                              r.metric,
                                              format_number(r.value),
                                              opt(r.std_error),
                                              r.method,
                                              r.seed ? std::to_string(*r.seed) : std::string(),
                                              r.realizations ? std::to_string(*r.realizations) : std::string(),
                                              r.max_slots ? std::to_string(*r.max_slots) : std::string(),
                                              opt(r.window_radius),
                                              kVersion,
                                              r.note};
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const std::map<std::string, std::string>& meta,
                const std::vector<SweepRecord>& rows) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    m["version"] = kVersion;
    for (const auto& [k, v] : meta) m[k] = v;
    doc["meta"] = m;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["lambda"] = json_number(r.params.lambda);
        j["alpha"] = json_number(r.params.alpha);
        j["rate"] = json_number(r.params.rate);
        j["bandwidth"] = json_number(r.params.bandwidth);
        j["mode"] = std::string(to_string(r.mode));
        j["n"] = r.n_subbands;
        j["epsilon"] = json_optional(r.epsilon);
        j["b"] = json_optional(r.b);
        j["d_max"] = json_optional(r.d_max);
        j["metric"] = r.metric;
        j["value"] = json_number(r.value);
        j["stderr"] = json_optional(r.std_error);
        j["method"] = r.method;
        j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
        j["realizations"] = r.realizations ? nlohmann::ordered_json(*r.realizations) : nlohmann::ordered_json(nullptr);
        j["max_slots"] = r.max_slots ? nlohmann::ordered_json(*r.max_slots) : nlohmann::ordered_json(nullptr);
        j["window_radius"] = json_optional(r.window_radius);
        j["version"] = kVersion;
        j["note"] = r.note;
        doc["rows"].push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

std::vector<std::map<std::string, std::string>> read_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return {};
    const auto header = split_csv_line(line);
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) throw std::invalid_argument("CSV row width differs from header");
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace bwp::cli
