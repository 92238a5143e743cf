#ifndef NULLGEOM_CONFIG_HPP
#define NULLGEOM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nullgeom/foliation.hpp"
#include "nullgeom/halflightlike.hpp"
#include "nullgeom/spaceform.hpp"

namespace nullgeom {

/// Schema violation; `pointer` is a JSON pointer into the config document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string &msg)
        : std::runtime_error("config " + (pointer.empty() ? std::string("/") : pointer) + ": " + msg),
          pointer_(std::move(pointer))
    {
    }
    const std::string &pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

inline const std::vector<std::string> &all_suites()
{
    static const std::vector<std::string> s = {"structure", "integrability", "newton",   "foliation",
                                               "lemma3",    "theorems12",    "spaceform", "umbilic"};
    return s;
}

struct Samples {
    /// "random", "grid", or "mixed" (random points plus a grid sweep).
    std::string mode = "mixed";
    int count = 50;      // random points
    int grid = 11;       // points per parameter sweep
    std::uint64_t seed = 1;
};

struct Config {
    Immersion immersion;
    std::vector<std::pair<double, double>> domain;
    /// Fraction of each interval cut off at both ends.
    double margin = 0.05;
    LCoeffs L;
    Rational c_curvature = 0;
    std::set<std::string> suites;
    Samples samples;
    /// Per-suite multipliers on the built-in tolerances.
    std::map<std::string, double> tolerance_scale;

    bool has(const std::string &suite) const { return suites.count(suite) > 0; }
};

Config parse_config(const std::string &json_text);
Config load_config(const std::string &path);

/// Random points first, then for each parameter a sweep with the others
/// held at the interval midpoints. Deterministic for a fixed seed.
std::vector<std::vector<double>> sample_points(const Config &cfg);

} // namespace nullgeom

#endif
