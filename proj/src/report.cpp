#include "nullgeom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "json.hpp"

namespace nullgeom {

namespace {

std::string point_text(const std::vector<double> &p)
{
    std::string s;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) {
            s += ';';
        }
        s += format_double(p[k]);
    }
    return s;
}

std::string csv_field(const std::string &f)
{
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
        return f;
    }
    std::string q = "\"";
    for (char c : f) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + "\"";
}

double parse_double(const std::string &s)
{
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') {
        throw std::runtime_error("malformed number '" + s + "' in report");
    }
    return v;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            rec.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            if (any || !field.empty()) {
                rec.push_back(std::move(field));
                records.push_back(std::move(rec));
            }
            rec.clear();
            field.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) {
        throw std::runtime_error("unterminated quoted field in report CSV");
    }
    if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    return records;
}

// Non-finite values are written as the strings "nan", "inf", "-inf".
double json_number(const nlohmann::json &j)
{
    if (j.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (j.is_string()) {
        return parse_double(j.get<std::string>());
    }
    return j.get<double>();
}

nlohmann::ordered_json json_value(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return format_double(v);
}

nlohmann::ordered_json json_values(const std::vector<double> &v)
{
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (double x : v) {
        a.push_back(json_value(x));
    }
    return a;
}

} // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Report::add(std::string check_id, std::string anchor, std::vector<double> point, double residual,
                 double tolerance)
{
    ReportRow row;
    row.check_id = std::move(check_id);
    row.anchor = std::move(anchor);
    row.point = std::move(point);
    row.residual = residual;
    row.tolerance = tolerance;
    row.pass = residual <= tolerance;
    add_row(std::move(row));
}

void Report::add_row(ReportRow row)
{
    if (!keys_.insert({row.check_id, row.point}).second) {
        throw DuplicateRow("duplicate report row for check '" + row.check_id + "' at point (" +
                           point_text(row.point) + ")");
    }
    row.pass = row.residual <= row.tolerance;
    rows_.push_back(std::move(row));
}

void Report::info(std::string key, std::vector<double> point, double value, std::string note)
{
    infos_.push_back({std::move(key), std::move(point), value, std::move(note)});
}

bool Report::passed() const
{
    return std::all_of(rows_.begin(), rows_.end(), [](const ReportRow &r) { return r.pass; });
}

std::size_t Report::failures() const
{
    return static_cast<std::size_t>(
        std::count_if(rows_.begin(), rows_.end(), [](const ReportRow &r) { return !r.pass; }));
}

std::map<std::string, double> Report::max_residuals() const
{
    std::map<std::string, double> m;
    for (const auto &r : rows_) {
        auto it = m.find(r.check_id);
        if (it == m.end()) {
            m.emplace(r.check_id, r.residual);
        } else if (std::isnan(r.residual) || r.residual > it->second) {
            it->second = r.residual;
        }
    }
    return m;
}

bool Report::has_check(const std::string &check_id) const
{
    return std::any_of(rows_.begin(), rows_.end(), [&](const ReportRow &r) { return r.check_id == check_id; });
}

void Report::sort()
{
    std::stable_sort(rows_.begin(), rows_.end(),
                     [](const ReportRow &a, const ReportRow &b) { return a.check_id < b.check_id; });
}

Report Report::merge(const std::vector<Report> &reports)
{
    Report out;
    for (const auto &r : reports) {
        for (const auto &row : r.rows_) {
            out.add_row(row);
        }
        out.infos_.insert(out.infos_.end(), r.infos_.begin(), r.infos_.end());
    }
    out.sort();
    return out;
}

std::string to_csv(const Report &r)
{
    std::string s = "check_id,anchor,point,residual,tolerance,pass\n";
    for (const auto &row : r.rows()) {
        s += csv_field(row.check_id);
        s += ',';
        s += csv_field(row.anchor);
        s += ',';
        s += csv_field(point_text(row.point));
        s += ',';
        s += format_double(row.residual);
        s += ',';
        s += format_double(row.tolerance);
        s += ',';
        s += row.pass ? "true" : "false";
        s += '\n';
    }
    return s;
}

Report report_from_csv(const std::string &text)
{
    auto records = parse_csv(text);
    if (records.empty()) {
        throw std::runtime_error("report CSV has no header");
    }
    const std::vector<std::string> header = {"check_id", "anchor", "point", "residual", "tolerance", "pass"};
    if (records[0] != header) {
        throw std::runtime_error("unexpected report CSV header");
    }
    Report rep;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto &f = records[i];
        if (f.size() != header.size()) {
            throw std::runtime_error("report CSV line " + std::to_string(i + 1) + " has " + std::to_string(f.size()) +
                                     " fields");
        }
        ReportRow row;
        row.check_id = f[0];
        row.anchor = f[1];
        std::size_t start = 0;
        while (!f[2].empty() && start <= f[2].size()) {
            const std::size_t end = f[2].find(';', start);
            row.point.push_back(parse_double(f[2].substr(start, end - start)));
            if (end == std::string::npos) {
                break;
            }
            start = end + 1;
        }
        row.residual = parse_double(f[3]);
        row.tolerance = parse_double(f[4]);
        rep.add_row(std::move(row));
        if ((f[5] == "true") != rep.rows().back().pass) {
            throw std::runtime_error("report CSV line " + std::to_string(i + 1) + " has an inconsistent verdict");
        }
    }
    return rep;
}

std::string to_json(const Report &r, int indent)
{
    using nlohmann::ordered_json;
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows()) {
        ordered_json j;
        j["check_id"] = row.check_id;
        j["anchor"] = row.anchor;
        j["point"] = json_values(row.point);
        j["residual"] = json_value(row.residual);
        j["tolerance"] = json_value(row.tolerance);
        j["pass"] = row.pass;
        rows.push_back(std::move(j));
    }
    ordered_json info = ordered_json::array();
    for (const auto &item : r.infos()) {
        ordered_json j;
        j["key"] = item.key;
        j["point"] = json_values(item.point);
        j["value"] = json_value(item.value);
        j["note"] = item.note;
        info.push_back(std::move(j));
    }
    ordered_json summary;
    ordered_json maxes = ordered_json::object();
    for (const auto &[id, v] : r.max_residuals()) {
        maxes[id] = json_value(v);
    }
    summary["max_residual"] = std::move(maxes);
    summary["rows"] = r.rows().size();
    summary["failures"] = r.failures();
    summary["pass"] = r.passed();

    ordered_json doc;
    doc["rows"] = std::move(rows);
    doc["info"] = std::move(info);
    doc["summary"] = std::move(summary);
    return doc.dump(indent) + "\n";
}

Report report_from_json(const std::string &text)
{
    const auto doc = nlohmann::json::parse(text);
    Report rep;
    for (const auto &j : doc.at("rows")) {
        ReportRow row;
        row.check_id = j.at("check_id").get<std::string>();
        row.anchor = j.at("anchor").get<std::string>();
        for (const auto &p : j.at("point")) {
            row.point.push_back(json_number(p));
        }
        row.residual = json_number(j.at("residual"));
        row.tolerance = json_number(j.at("tolerance"));
        rep.add_row(std::move(row));
    }
    if (doc.contains("info")) {
        for (const auto &j : doc.at("info")) {
            std::vector<double> p;
            for (const auto &x : j.at("point")) {
                p.push_back(json_number(x));
            }
            rep.info(j.at("key").get<std::string>(), std::move(p), json_number(j.at("value")),
                     j.value("note", std::string{}));
        }
    }
    return rep;
}

} // namespace nullgeom
