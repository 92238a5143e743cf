#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nullgeom/semimetric.hpp"

using namespace nullgeom;

namespace {

const Signature kLor = Signature::lorentzian(5);

Vec<double> unit(int i, int d = 5)
{
    Vec<double> v(d, 0.0);
    v[i] = 1.0;
    return v;
}

// Tangent vectors of the example immersion, written out by hand.
std::vector<Vec<double>> example_tangents(double p2, double p3)
{
    using std::cos;
    using std::sin;
    return {{1, 0, 1, 0, 0},
            {0, cos(p2) * sin(p3), 0, -sin(p2) * sin(p3), 0},
            {0, sin(p2) * cos(p3), 0, cos(p2) * cos(p3), -sin(p3)}};
}

// Euclidean orthogonal projector onto span(vs).
Mat<double> projector(const std::vector<Vec<double>> &vs)
{
    const int k = static_cast<int>(vs.size());
    const int d = static_cast<int>(vs[0].size());
    Mat<double> v(d, k);
    for (int j = 0; j < k; ++j) {
        v.set_col(j, vs[j]);
    }
    return v * inverse(v.transpose() * v) * v.transpose();
}

} // namespace

TEST_CASE("inner products of the example frame")
{
    const Vec<double> e = {1, 0, 1, 0, 0};
    const Vec<double> n = {-0.5, 0, 0.5, 0, 0};
    CHECK(inner(kLor, e, e) == 0.0);
    CHECK(inner(kLor, e, n) == 1.0);
    CHECK(inner(kLor, n, n) == 0.0);
    const double s = std::sqrt(2.0) / 2;
    const Vec<double> w = {0, 0, 0, s, s};
    CHECK(inner(kLor, w, w) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(inner(kLor, e, Vec<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("radical extraction")
{
    auto span = example_tangents(0.3, 0.8);
    auto r = radical_basis(kLor, span);
    REQUIRE(r.vectors.size() == 1);
    Vec<double> e = scaled(r.vectors[0], 1.0 / r.vectors[0][0]);
    const Vec<double> expect = {1, 0, 1, 0, 0};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(e[i] - expect[i]) <= 1e-12);
    }
    // in the span and in its orthogonal complement
    for (const auto &v : span) {
        CHECK(std::abs(inner(kLor, r.vectors[0], v)) <= 1e-10);
    }

    CHECK(radical_basis(Signature::euclidean(5), span).vectors.empty());

    std::vector<Vec<double>> plane = {{1, 1, 0, 0, 0}, unit(2), unit(3)};
    auto rp = radical_basis(kLor, plane);
    REQUIRE(rp.vectors.size() == 1);
    Vec<double> ep = scaled(rp.vectors[0], 1.0 / rp.vectors[0][0]);
    CHECK(ep[1] == doctest::Approx(1.0));
    CHECK(std::abs(ep[2]) + std::abs(ep[3]) + std::abs(ep[4]) <= 1e-14);
}

TEST_CASE("indefinite Gram-Schmidt")
{
    auto r = gram_schmidt_indefinite(kLor, std::vector<Vec<double>>{unit(1), unit(3)});
    CHECK(r.signs == std::vector<int>{1, 1});
    CHECK(r.vectors[0] == unit(1));
    CHECK(r.vectors[1] == unit(3));

    auto t = gram_schmidt_indefinite(kLor, std::vector<Vec<double>>{unit(0)});
    CHECK(t.signs == std::vector<int>{-1});
    CHECK(t.vectors[0] == unit(0));

    CHECK_THROWS_AS(gram_schmidt_indefinite(kLor, std::vector<Vec<double>>{{1, 1, 0, 0, 0}}), GeometryError);

    // the example screen spans the same plane as the hand-written Z1, Z2
    const double p2 = 0.0, p3 = std::numbers::pi / 4;
    auto tang = example_tangents(p2, p3);
    auto screen = gram_schmidt_indefinite(kLor, std::vector<Vec<double>>{tang[1], tang[2]});
    const Vec<double> z1 = {0, std::cos(p3), 0, 0, -std::sin(p2) * std::sin(p3)};
    const Vec<double> z2 = {0, 0, 0, std::cos(p3), -std::cos(p2) * std::sin(p3)};
    Mat<double> diff = projector(screen.vectors) - projector({z1, z2});
    CHECK(max_magnitude(diff) <= 1e-12);
    CHECK(screen.signs == std::vector<int>{1, 1});
}

TEST_CASE("orthonormality under random signatures")
{
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + trial % 6;
        std::vector<int> signs(d);
        for (auto &s : signs) {
            s = (rng() & 1) ? 1 : -1;
        }
        Signature sig(signs);
        const int k = 1 + static_cast<int>(rng() % d);
        std::vector<Vec<double>> vs(k, Vec<double>(d));
        for (auto &v : vs) {
            for (auto &c : v) {
                c = nd(rng);
            }
        }
        OrthonormalResult<double> r;
        try {
            r = gram_schmidt_indefinite(sig, vs);
        } catch (const GeometryError &) {
            continue;
        }
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                const double expect = i == j ? r.signs[i] : 0.0;
                CHECK(std::abs(inner(sig, r.vectors[i], r.vectors[j]) - expect) <= 1e-8);
            }
            // recorded coefficients reproduce the vector
            Vec<double> back(d, 0.0);
            for (int j = 0; j < k; ++j) {
                back = axpy(back, r.coeffs(i, j), vs[j]);
            }
            for (int c = 0; c < d; ++c) {
                CHECK(std::abs(back[c] - r.vectors[i][c]) <= 1e-8 * (1 + std::abs(r.vectors[i][c])));
            }
        }
    }
}

TEST_CASE("lightlike transversal")
{
    const Vec<double> e = {1, 1, 0, 0, 0};
    Vec<double> n = solve_transversal(kLor, e, {unit(2), unit(3)}, unit(4));
    const Vec<double> expect = {-0.5, 0.5, 0, 0, 0};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(n[i] - expect[i]) <= 1e-14);
    }

    const double s = 2.5;
    Vec<double> ns = solve_transversal(kLor, scaled(e, s), {unit(2), unit(3)}, unit(4));
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(ns[i] - expect[i] / s) <= 1e-14);
    }

    const double p2 = 1.1, p3 = 0.7;
    auto tang = example_tangents(p2, p3);
    auto screen = gram_schmidt_indefinite(kLor, std::vector<Vec<double>>{tang[1], tang[2]});
    const Vec<double> w = {0, std::sin(p2) * std::sin(p3), 0, std::cos(p2) * std::sin(p3), std::cos(p3)};
    Vec<double> ne = solve_transversal(kLor, Vec<double>{1, 0, 1, 0, 0}, screen.vectors, w);
    const Vec<double> expect_e = {-0.5, 0, 0.5, 0, 0};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(ne[i] - expect_e[i]) <= 1e-12);
    }

    CHECK_THROWS_AS(solve_transversal(kLor, e, {unit(2), unit(2)}, unit(4)), GeometryError);
}
