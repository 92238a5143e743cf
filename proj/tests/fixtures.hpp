#ifndef NULLGEOM_TESTS_FIXTURES_HPP
#define NULLGEOM_TESTS_FIXTURES_HPP

#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nullgeom/foliation.hpp"
#include "nullgeom/halflightlike.hpp"

namespace fixtures {

using namespace nullgeom;

inline const std::vector<std::string> &params()
{
    static const std::vector<std::string> p = {"p1", "p2", "p3"};
    return p;
}

/// x = (p1, sin p2 sin p3, p1, cos p2 sin p3, cos p3) in R^5_1.
inline Immersion example1()
{
    return Immersion::from_strings(Signature::lorentzian(5), params(),
                                   {"p1", "sin(p2)*sin(p3)", "p1", "cos(p2)*sin(p3)", "cos(p3)"});
}

/// x1 = x2, x5 = 0.
inline Immersion geodesic()
{
    Immersion imm = Immersion::from_strings(Signature::lorentzian(5), params(), {"p1", "p1", "p2", "p3", "0"});
    imm.orientation = -1;
    return imm;
}

/// Null line times a triaxial ellipsoid; its leaves are the ellipsoids.
inline Immersion ellipsoid()
{
    return Immersion::from_strings(Signature::lorentzian(5), params(),
                                   {"p1", "sin(p2)*sin(p3)", "p1", "0.8*cos(p2)*sin(p3)", "0.6*cos(p3)"});
}

/// Future light cone of R^4_1 inside R^5_1, p1 > 0. Totally umbilical with
/// umbilical screen: H1 = -1/p1, K = -1/(2 p1).
inline Immersion lightcone()
{
    return Immersion::from_strings(Signature::lorentzian(5), params(),
                                   {"p1", "p1*cos(p2)*sin(p3)", "p1*sin(p2)*sin(p3)", "p1*cos(p3)", "0"});
}

/// L = E + N/2 + W.
inline LCoeffs tilted_L()
{
    return LCoeffs::from_strings("1", "0.5", "1", params());
}

inline std::vector<double> random_point(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> a(-1.0, 1.0), b(0.0, 2 * std::numbers::pi), c(0.2, 1.3);
    return {a(rng), b(rng), c(rng)};
}

inline std::vector<double> random_cone_point(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> a(0.5, 2.0), b(0.0, 2 * std::numbers::pi), c(0.2, 1.3);
    return {a(rng), b(rng), c(rng)};
}

} // namespace fixtures

#endif
