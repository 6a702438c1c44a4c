#ifndef BOXFENCE_IO_HPP
#define BOXFENCE_IO_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analyze.hpp"
#include "errors.hpp"
#include "sample.hpp"
#include "simulate.hpp"

// Input parsing (CSV with a header row, or JSON arrays/objects) and report
// serialization. All serializers are deterministic: JSON uses insertion-
// ordered objects with shortest-round-trip doubles, CSV and table output
// use fixed formats, so identical analyses produce identical bytes.

namespace boxfence::io {

using ordered_json = nlohmann::ordered_json;

enum class Format { Auto, CSV, JSON };

namespace detail {

inline std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// One CSV record; handles quoted fields with doubled-quote escapes.
inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

inline double parse_cell(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string cell = trim(raw);
    const auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << "row " << row << ", column '" << column << "': " << why;
        throw parse_error(os.str());
    };
    if (cell.empty()) fail("empty cell");
    // from_chars rejects an explicit plus sign.
    const char* begin = cell.data() + (cell[0] == '+' && cell.size() > 1 ? 1 : 0);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(begin, cell.data() + cell.size(), v);
    if (ec != std::errc{} || p != cell.data() + cell.size())
        fail("cannot parse '" + cell + "' as a number");
    if (!std::isfinite(v)) fail("non-finite value '" + cell + "'");
    return v;
}

struct GroupBuilder {
    std::vector<std::pair<std::string, std::vector<double>>> groups;
    std::map<std::string, std::size_t> index;

    void add(const std::string& label, double v) {
        auto it = index.find(label);
        if (it == index.end()) {
            index.emplace(label, groups.size());
            groups.emplace_back(label, std::vector<double>{v});
        } else {
            groups[it->second].second.push_back(v);
        }
    }

    std::vector<std::pair<std::string, Sample>> finish() && {
        std::vector<std::pair<std::string, Sample>> out;
        out.reserve(groups.size());
        for (auto& [label, values] : groups)
            out.emplace_back(label, Sample(std::move(values)));
        return out;
    }
};

} // namespace detail

// CSV input: first line is the header; `column` names the value column
// (required) and `group_column`, when non-empty, splits rows into groups in
// first-appearance order. Blank lines are skipped; anything else that
// cannot yield a number is an error with its row number.
inline std::vector<std::pair<std::string, Sample>> parse_csv(
    std::istream& in, const std::string& column, const std::string& group_column = "") {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty input: no header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = detail::split_csv(line);
    const auto find_col = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (detail::trim(header[i]) == name) return i;
        std::ostringstream os;
        os << "unknown column '" << name << "'; header has:";
        for (const auto& h : header) os << " '" << detail::trim(h) << "'";
        throw parse_error(os.str());
    };

    if (column.empty()) throw parse_error("no value column named");
    const std::size_t vcol = find_col(column);
    const bool grouped = !group_column.empty();
    const std::size_t gcol = grouped ? find_col(group_column) : 0;

    detail::GroupBuilder builder;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> fields = detail::split_csv(line);
        const std::size_t need = std::max(vcol, grouped ? gcol : vcol) + 1;
        if (fields.size() < need) {
            std::ostringstream os;
            os << "row " << row << ": expected at least " << need << " fields, got "
               << fields.size();
            throw parse_error(os.str());
        }
        const double v = detail::parse_cell(fields[vcol], row, column);
        builder.add(grouped ? detail::trim(fields[gcol]) : "", v);
    }
    if (builder.groups.empty()) throw parse_error("no data rows in input");
    return std::move(builder).finish();
}

// JSON input: either a flat array of numbers (one unnamed group) or an
// object mapping group labels to arrays. Key order in the file is the
// group order in the result.
inline std::vector<std::pair<std::string, Sample>> parse_json(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }

    const auto to_values = [](const ordered_json& arr, const std::string& label) {
        if (!arr.is_array())
            throw parse_error("group '" + label + "': expected an array of numbers");
        if (arr.empty()) throw parse_error("group '" + label + "': empty array");
        std::vector<double> v;
        v.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number()) {
                std::ostringstream os;
                os << "group '" << label << "', element " << i << ": expected a number";
                throw parse_error(os.str());
            }
            const double x = arr[i].get<double>();
            if (!std::isfinite(x)) {
                std::ostringstream os;
                os << "group '" << label << "', element " << i << ": non-finite value";
                throw parse_error(os.str());
            }
            v.push_back(x);
        }
        return v;
    };

    std::vector<std::pair<std::string, Sample>> out;
    if (j.is_array()) {
        out.emplace_back("", Sample(to_values(j, "")));
    } else if (j.is_object()) {
        if (j.empty()) throw parse_error("no groups in input object");
        for (const auto& [key, value] : j.items())
            out.emplace_back(key, Sample(to_values(value, key)));
    } else {
        throw parse_error("top-level JSON must be an array of numbers or an object of arrays");
    }
    return out;
}

inline Format detect_format(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".json") return Format::JSON;
    return Format::CSV;
}

inline std::vector<std::pair<std::string, Sample>> load_groups(
    const std::string& path, Format fmt, const std::string& column = "",
    const std::string& group_column = "") {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file: " + path);
    if (fmt == Format::Auto) fmt = detect_format(path);
    return fmt == Format::JSON ? parse_json(in) : parse_csv(in, column, group_column);
}

namespace detail {

// Shortest decimal string that round-trips the double.
inline std::string dtos(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Fixed 6-significant-digit rendering for the human-readable table.
inline std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
}

inline const char* side_of(double value, const FenceSpec& f) {
    return value < 0.5 * (f.lower + f.upper) ? "low" : "high";
}

} // namespace detail

// Canonical JSON report for a single analyzed sample. Field order is fixed;
// optional fields (k, alpha, coefficient, threshold, degenerate_scale)
// appear only when the method defines them.
inline ordered_json report_json(const BoxplotStats& st) {
    const Method m = st.fences.method;
    ordered_json params;
    if (m == Method::Tukey) params["k"] = *st.fences.coefficient;
    if (m == Method::HolmFWER || m == Method::BH_FDR) params["alpha"] = *st.fences.alpha;
    params["convention"] = convention_name(st.summary.convention);

    ordered_json fences;
    fences["lower"] = st.fences.lower;
    fences["upper"] = st.fences.upper;
    if (m == Method::Tukey || m == Method::Chauvenet)
        fences["coefficient"] = *st.fences.coefficient;
    if (st.outliers.effective_threshold)
        fences["threshold"] = *st.outliers.effective_threshold;

    ordered_json outs = ordered_json::array();
    for (std::size_t i = 0; i < st.outliers.indices.size(); ++i) {
        ordered_json o;
        o["index"] = st.outliers.indices[i];
        o["value"] = st.outliers.values[i];
        o["side"] = detail::side_of(st.outliers.values[i], st.fences);
        outs.push_back(std::move(o));
    }

    ordered_json r;
    r["method"] = method_name(m);
    r["params"] = std::move(params);
    r["n"] = st.summary.n;
    r["quartiles"] = {{"q1", st.summary.q1},
                      {"median", st.summary.median},
                      {"q3", st.summary.q3},
                      {"iqr", st.summary.iqr}};
    r["fences"] = std::move(fences);
    r["whiskers"] = {{"low", st.whisker_low}, {"high", st.whisker_high}};
    r["outliers"] = std::move(outs);
    r["counts"] = {{"low", st.outliers.count_low}, {"high", st.outliers.count_high}};
    if (st.outliers.degenerate_scale) r["degenerate_scale"] = true;
    return r;
}

// Group batch -> JSON. A single unnamed group serializes as a bare report;
// anything else nests under "groups" with labels and per-group errors.
inline ordered_json reports_json(const std::vector<GroupResult>& groups) {
    if (groups.size() == 1 && groups[0].label.empty() && groups[0].stats)
        return report_json(*groups[0].stats);
    ordered_json arr = ordered_json::array();
    for (const auto& g : groups) {
        ordered_json item;
        item["label"] = g.label;
        if (g.stats) {
            ordered_json rep = report_json(*g.stats);
            for (auto& [key, value] : rep.items()) item[key] = std::move(value);
        } else {
            item["error"] = g.error;
        }
        arr.push_back(std::move(item));
    }
    return ordered_json{{"groups", std::move(arr)}};
}

// Flat CSV of flagged observations across all successful groups.
inline std::string reports_csv(const std::vector<GroupResult>& groups) {
    std::string out = "group,index,value,side\n";
    for (const auto& g : groups) {
        if (!g.stats) continue;
        const auto& st = *g.stats;
        for (std::size_t i = 0; i < st.outliers.indices.size(); ++i) {
            out += g.label;
            out += ',';
            out += std::to_string(st.outliers.indices[i]);
            out += ',';
            out += detail::dtos(st.outliers.values[i]);
            out += ',';
            out += detail::side_of(st.outliers.values[i], st.fences);
            out += '\n';
        }
    }
    return out;
}

inline std::string report_table(const std::vector<GroupResult>& groups) {
    std::ostringstream os;
    bool first = true;
    for (const auto& g : groups) {
        if (!first) os << '\n';
        first = false;
        if (!g.label.empty() || groups.size() > 1) os << "group: " << g.label << '\n';
        if (!g.stats) {
            os << "  error: " << g.error << '\n';
            continue;
        }
        const auto& st = *g.stats;
        os << "  method: " << method_name(st.fences.method)
           << "   convention: " << convention_name(st.summary.convention) << '\n';
        os << "  n: " << st.summary.n << "   outliers: " << st.outliers.indices.size()
           << " (low " << st.outliers.count_low << ", high " << st.outliers.count_high
           << ")" << '\n';
        os << "  quartiles: q1=" << detail::fmt6(st.summary.q1)
           << "  median=" << detail::fmt6(st.summary.median)
           << "  q3=" << detail::fmt6(st.summary.q3)
           << "  iqr=" << detail::fmt6(st.summary.iqr) << '\n';
        os << "  fences: [" << detail::fmt6(st.fences.lower) << ", "
           << detail::fmt6(st.fences.upper) << "]";
        if (st.fences.coefficient) os << "  coefficient=" << detail::fmt6(*st.fences.coefficient);
        if (st.outliers.effective_threshold)
            os << "  threshold=" << detail::fmt6(*st.outliers.effective_threshold);
        os << '\n';
        os << "  whiskers: [" << detail::fmt6(st.whisker_low) << ", "
           << detail::fmt6(st.whisker_high) << "]" << '\n';
        if (st.outliers.degenerate_scale) os << "  note: degenerate scale (zero IQR)\n";
        for (std::size_t i = 0; i < st.outliers.indices.size(); ++i)
            os << "    [" << st.outliers.indices[i] << "] "
               << detail::fmt6(st.outliers.values[i]) << " "
               << detail::side_of(st.outliers.values[i], st.fences) << '\n';
    }
    return os.str();
}

// Simulation summary as ordered JSON (means only; per-replicate counts are
// available through the library API).
inline ordered_json sim_json(const sim::SimResult& res) {
    ordered_json sc;
    sc["n"] = res.scenario.n;
    sc["contaminants"] = res.scenario.contaminant_count;
    sc["contaminant_mean"] = res.scenario.contaminant_mean;
    sc["contaminant_sd"] = res.scenario.contaminant_sd;
    sc["null_mean"] = res.scenario.null_mean;
    sc["null_sd"] = res.scenario.null_sd;
    sc["replicates"] = res.scenario.replicates;
    sc["seed"] = res.scenario.seed;

    ordered_json methods = ordered_json::array();
    for (const auto& ms : res.per_method) {
        ordered_json m;
        m["method"] = method_name(ms.method.method);
        if (ms.method.method == Method::Tukey) m["k"] = ms.method.k;
        if (ms.method.method == Method::HolmFWER || ms.method.method == Method::BH_FDR)
            m["alpha"] = ms.method.alpha;
        m["mean_flagged_total"] = ms.mean_flagged_total;
        m["mean_true_flagged"] = ms.mean_true_flagged;
        m["mean_false_flagged"] = ms.mean_false_flagged;
        methods.push_back(std::move(m));
    }

    ordered_json r;
    r["scenario"] = std::move(sc);
    r["convention"] = convention_name(res.convention);
    r["methods"] = std::move(methods);
    return r;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    out << content;
    if (!out) throw io_error("failed writing output file: " + path);
}

} // namespace boxfence::io

#endif // BOXFENCE_IO_HPP
