#ifndef NULLGEOM_RUNNER_HPP
#define NULLGEOM_RUNNER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "nullgeom/config.hpp"
#include "nullgeom/report.hpp"

namespace nullgeom {

/// Geometry failure at a sampled chart point (radical rank, singular frame,
/// expression outside its domain).
class PointError : public std::runtime_error {
public:
    PointError(std::vector<double> point, const std::string &what);
    const std::vector<double> &point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

struct RunOptions {
    double tol_scale = 1.0;
    /// 0 reads NULLGEOM_WORKERS, falling back to one worker.
    int workers = 0;
};

int worker_count(int requested);

/// All selected suites at one chart point.
Report verify_point(const Config &cfg, const std::vector<double> &u, double tol_scale);

/// Suites that do not depend on the sample (space-form tables, the exact
/// substitution check).
Report verify_global(const Config &cfg);

/// Every sampled point on a worker pool, merged in sample order. The result
/// does not depend on the number of workers.
Report verify(const Config &cfg, const RunOptions &opt);

/// Frame, forms and mean curvatures at every sampled point, as JSON.
std::string analyze(const Config &cfg, const RunOptions &opt);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace nullgeom

#endif
