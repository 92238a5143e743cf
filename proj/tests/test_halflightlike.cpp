#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nullgeom/halflightlike.hpp"

using namespace nullgeom;

namespace {

const std::vector<std::string> kParams = {"p1", "p2", "p3"};

Immersion example1()
{
    return Immersion::from_strings(Signature::lorentzian(5), kParams,
                                   {"p1", "sin(p2)*sin(p3)", "p1", "cos(p2)*sin(p3)", "cos(p3)"});
}

Immersion example1_hand_screen()
{
    Immersion imm = example1();
    const std::vector<std::vector<std::string>> z = {{"0", "cos(p3)", "0", "0", "-sin(p2)*sin(p3)"},
                                                     {"0", "0", "0", "cos(p3)", "-cos(p2)*sin(p3)"}};
    for (const auto &v : z) {
        std::vector<Expr> comps;
        for (const auto &s : v) {
            comps.push_back(Expr::parse(s, kParams));
        }
        imm.screen_override.push_back(std::move(comps));
    }
    return imm;
}

Immersion geodesic()
{
    Immersion imm = Immersion::from_strings(Signature::lorentzian(5), kParams, {"p1", "p1", "p2", "p3", "0"});
    imm.orientation = -1;
    return imm;
}

std::vector<double> random_point(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> a(-1.0, 1.0), b(0.0, 2 * std::numbers::pi), c(0.2, 1.3);
    return {a(rng), b(rng), c(rng)};
}

void check_vec(const Vec<Jet> &v, const std::vector<double> &expect, double tol)
{
    REQUIRE(v.size() == expect.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(std::abs(v[i].value() - expect[i]) <= tol);
    }
}

// B and D as bilinear forms on chart vectors: Q^-T M Q^-1.
Mat<double> chart_form(const FrameData &f, const Mat<Jet> &m)
{
    const Mat<double> qi = inverse(tangent_chart_matrix(f));
    return qi.transpose() * values(m) * qi;
}

} // namespace

TEST_CASE("example frame at a chart point")
{
    const std::vector<double> u = {0.0, 0.0, std::numbers::pi / 4};
    FrameData f = build_frame(example1(), u);
    const double s = std::sqrt(2.0) / 2;
    check_vec(f.E.amb, {1, 0, 1, 0, 0}, 1e-10);
    check_vec(f.N, {-0.5, 0, 0.5, 0, 0}, 1e-10);
    check_vec(f.W, {0, 0, 0, s, s}, 1e-10);
    CHECK(f.eps == 1);
    CHECK(f.eps_i == std::vector<int>{1, 1});
    // screen is the span of the hand-written Z1, Z2: both are combinations of the Z_i
    FormsData fd = fundamental_forms(f);
    for (int a = 0; a < 3; ++a) {
        CHECK(std::abs(fd.B(0, a).value()) <= 1e-12);
    }
}

TEST_CASE("example frame against the closed form W at random points")
{
    std::mt19937_64 rng(1);
    const Immersion imm = example1();
    for (int k = 0; k < 20; ++k) {
        auto u = random_point(rng);
        FrameData f = build_frame(imm, u);
        const double p2 = u[1], p3 = u[2];
        check_vec(f.E.amb, {1, 0, 1, 0, 0}, 1e-10);
        check_vec(f.N, {-0.5, 0, 0.5, 0, 0}, 1e-10);
        check_vec(f.W, {0, std::sin(p2) * std::sin(p3), 0, std::cos(p2) * std::sin(p3), std::cos(p3)}, 1e-10);
        // the W jet carries exact first derivatives
        CHECK(std::abs(f.W[4].d(2) + std::sin(p3)) <= 1e-10);
        CHECK(std::abs(f.W[1].d(1) - std::cos(p2) * std::sin(p3)) <= 1e-10);
    }
}

TEST_CASE("bracket of the hand-written screen")
{
    std::mt19937_64 rng(2);
    const Immersion imm = example1_hand_screen();
    for (int k = 0; k < 20; ++k) {
        auto u = random_point(rng);
        FrameData f = build_frame(imm, u);
        Vec<double> c = raw_bracket_coefficients(f, 0, 1);
        CHECK(std::abs(c[1] - std::cos(u[1]) * std::tan(u[2])) <= 1e-9);
        CHECK(std::abs(c[2] + std::sin(u[1]) * std::tan(u[2])) <= 1e-9);
        CHECK(std::abs(c[0]) <= 1e-9);
        CHECK(std::abs(c[3]) + std::abs(c[4]) <= 1e-9);
    }
    FrameData f0 = build_frame(imm, std::vector<double>{0.0, 0.0, std::numbers::pi / 4});
    Vec<double> c0 = raw_bracket_coefficients(f0, 0, 1);
    CHECK(c0[1] == doctest::Approx(1.0));
    CHECK(std::abs(c0[2]) <= 1e-12);
}

TEST_CASE("totally geodesic fixture")
{
    const std::vector<double> u = {0.4, -0.2, 1.5};
    FrameData f = build_frame(geodesic(), u);
    check_vec(f.E.amb, {1, 1, 0, 0, 0}, 1e-14);
    check_vec(f.N, {-0.5, 0.5, 0, 0, 0}, 1e-14);
    check_vec(f.W, {0, 0, 0, 0, 1}, 1e-14);
    FormsData fd = fundamental_forms(f);
    auto all_zero = [](const Mat<Jet> &m) { return max_magnitude(m) == 0.0; };
    CHECK(all_zero(fd.B));
    CHECK(all_zero(fd.C));
    CHECK(all_zero(fd.D));
    CHECK(all_zero(fd.A_N));
    CHECK(all_zero(fd.A_W));
    CHECK(all_zero(fd.A_E));
    for (int a = 0; a < 3; ++a) {
        CHECK(fd.tau[a].value() == 0.0);
        CHECK(fd.rho[a].value() == 0.0);
        CHECK(fd.phi[a].value() == 0.0);
    }
    Report rep;
    verify_structure(fd, f, 1e-8, rep);
    screen_integrability(f, fd, 1e-9, rep);
    for (const auto &row : rep.rows()) {
        CHECK_MESSAGE(row.residual == 0.0, row.check_id);
    }
}

TEST_CASE("structure relations on the example")
{
    std::mt19937_64 rng(3);
    const Immersion imm = example1();
    Report rep;
    for (int k = 0; k < 50; ++k) {
        auto u = random_point(rng);
        FrameData f = build_frame(imm, u);
        FormsData fd = fundamental_forms(f);
        verify_structure(fd, f, 1e-8, rep);
        screen_integrability(f, fd, 1e-9, rep);
    }
    CHECK(rep.rows().size() == 50 * 16);
    for (const auto &row : rep.rows()) {
        CHECK_MESSAGE(row.pass, row.check_id, " residual ", row.residual);
    }
}

TEST_CASE("corrupted second fundamental form is caught")
{
    FrameData f = build_frame(example1(), std::vector<double>{0.1, 0.5, 0.9});
    FormsData fd = fundamental_forms(f);
    fd.B(1, 1) += 0.1;
    Report rep;
    verify_structure(fd, f, 1e-8, rep);
    bool found = false;
    for (const auto &row : rep.rows()) {
        if (row.check_id == "structure/A_E_duality") {
            found = true;
            CHECK(row.residual >= 0.09);
            CHECK_FALSE(row.pass);
        }
    }
    CHECK(found);
}

TEST_CASE("B, D and tau do not depend on the screen on the example")
{
    std::mt19937_64 rng(4);
    const Immersion canon = example1(), hand = example1_hand_screen();
    for (int k = 0; k < 20; ++k) {
        auto u = random_point(rng);
        FrameData f1 = build_frame(canon, u), f2 = build_frame(hand, u);
        FormsData a = fundamental_forms(f1), b = fundamental_forms(f2);
        CHECK(max_magnitude(chart_form(f1, a.B) - chart_form(f2, b.B)) <= 1e-9);
        CHECK(max_magnitude(chart_form(f1, a.D) - chart_form(f2, b.D)) <= 1e-9);
        // tau as a covector on chart vectors
        Mat<double> t1(1, 3), t2(1, 3);
        for (int i = 0; i < 3; ++i) {
            t1(0, i) = a.tau[i].value();
            t2(0, i) = b.tau[i].value();
        }
        Mat<double> c1 = t1 * inverse(tangent_chart_matrix(f1)), c2 = t2 * inverse(tangent_chart_matrix(f2));
        CHECK(max_magnitude(c1 - c2) <= 1e-9);
    }
}

TEST_CASE("screen-valued shape operator of the radical")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        auto u = random_point(rng);
        FrameData f = build_frame(example1(), u);
        FormsData fd = fundamental_forms(f);
        const Mat<double> ae = values(fd.A_E);
        for (int a = 0; a < 3; ++a) {
            CHECK(std::abs(ae(a, 0)) <= 1e-12);
        }
        CHECK(std::abs(f.eps_i[0] * ae(1, 2) - f.eps_i[1] * ae(2, 1)) <= 1e-10);
    }
}

TEST_CASE("rejected geometries")
{
    const std::vector<double> u = {0.1, 0.2, 0.3};
    auto riemannian = Immersion::from_strings(Signature::lorentzian(5), kParams, {"0", "p1", "p2", "p3", "0"});
    CHECK_THROWS_AS(build_frame(riemannian, u), GeometryError);
    auto rank2 = Immersion::from_strings(Signature::lorentzian(5), kParams, {"p1+p2", "0", "p1+p2", "p3", "0"});
    CHECK_THROWS_AS(build_frame(rank2, u), GeometryError);
    CHECK_THROWS_AS(build_frame(example1(), std::vector<double>{0.1, 0.2}), std::invalid_argument);
    auto bad_screen = example1();
    bad_screen.screen_override = {{Expr::constant(1), Expr::constant(0), Expr::constant(0), Expr::constant(0),
                                   Expr::constant(0)},
                                  {Expr::constant(0), Expr::constant(1), Expr::constant(0), Expr::constant(0),
                                   Expr::constant(0)}};
    CHECK_THROWS_AS(build_frame(bad_screen, u), GeometryError);
}
