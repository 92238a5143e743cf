#ifndef NULLGEOM_REPORT_HPP
#define NULLGEOM_REPORT_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nullgeom {

struct ReportRow {
    std::string check_id;
    std::string anchor;
    std::vector<double> point;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

/// Descriptive value that is reported but never gates the verdict.
struct InfoItem {
    std::string key;
    std::vector<double> point;
    double value = 0.0;
    std::string note;
};

class DuplicateRow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Report {
public:
    /// pass = residual <= tolerance; a NaN residual fails.
    void add(std::string check_id, std::string anchor, std::vector<double> point, double residual, double tolerance);
    void add_row(ReportRow row);
    void info(std::string key, std::vector<double> point, double value, std::string note = {});

    const std::vector<ReportRow> &rows() const noexcept { return rows_; }
    const std::vector<InfoItem> &infos() const noexcept { return infos_; }

    bool passed() const;
    std::map<std::string, double> max_residuals() const;
    bool has_check(const std::string &check_id) const;
    std::size_t failures() const;

    /// Rows stably sorted by check id, preserving producer order within an id.
    void sort();

    static Report merge(const std::vector<Report> &reports);

private:
    std::vector<ReportRow> rows_;
    std::vector<InfoItem> infos_;
    std::set<std::pair<std::string, std::vector<double>>> keys_;
};

std::string to_csv(const Report &r);
std::string to_json(const Report &r, int indent = 2);
Report report_from_csv(const std::string &text);
Report report_from_json(const std::string &text);

/// "%.17g", with "nan"/"inf"/"-inf" spelled out.
std::string format_double(double v);

} // namespace nullgeom

#endif
