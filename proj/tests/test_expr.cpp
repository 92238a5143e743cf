#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nullgeom/expr.hpp"

using namespace nullgeom;

namespace {

const std::vector<std::string> kParams = {"p1", "p2", "p3"};

std::vector<Jet> jets_at(const std::vector<double> &u)
{
    std::vector<Jet> j;
    for (int i = 0; i < static_cast<int>(u.size()); ++i) {
        j.push_back(Jet::variable(u, i));
    }
    return j;
}

// Random well-defined expression with a directly computed reference value.
struct Gen {
    std::string text;
    std::function<double(const std::vector<double> &)> ref;
};

Gen generate(std::mt19937_64 &rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    std::uniform_real_distribution<double> cst(0.1, 3.0);
    switch (pick(rng)) {
    case 0: {
        const int i = std::uniform_int_distribution<int>(0, 2)(rng);
        return {kParams[i], [i](const std::vector<double> &u) { return u[i]; }};
    }
    case 1: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", cst(rng));
        const double v = std::strtod(buf, nullptr);
        return {buf, [v](const std::vector<double> &) { return v; }};
    }
    case 2: {
        auto a = generate(rng, depth - 1), b = generate(rng, depth - 1);
        return {"(" + a.text + ")+(" + b.text + ")", [a, b](auto &u) { return a.ref(u) + b.ref(u); }};
    }
    case 3: {
        auto a = generate(rng, depth - 1), b = generate(rng, depth - 1);
        return {"(" + a.text + ") - (" + b.text + ")", [a, b](auto &u) { return a.ref(u) - b.ref(u); }};
    }
    case 4: {
        auto a = generate(rng, depth - 1), b = generate(rng, depth - 1);
        return {"(" + a.text + ")*(" + b.text + ")", [a, b](auto &u) { return a.ref(u) * b.ref(u); }};
    }
    case 5: {
        auto a = generate(rng, depth - 1), b = generate(rng, depth - 1);
        return {"(" + a.text + ")/(2+cos(" + b.text + "))",
                [a, b](auto &u) { return a.ref(u) / (2 + std::cos(b.ref(u))); }};
    }
    case 6: {
        auto a = generate(rng, depth - 1);
        return {"sin(" + a.text + ")", [a](auto &u) { return std::sin(a.ref(u)); }};
    }
    case 7: {
        auto a = generate(rng, depth - 1);
        return {"exp(sin(" + a.text + "))", [a](auto &u) { return std::exp(std::sin(a.ref(u))); }};
    }
    case 8: {
        auto a = generate(rng, depth - 1);
        return {"log(2 + (sin(" + a.text + "))^2) * sqrt(1 + (" + a.text + ")^2)", [a](auto &u) {
                    const double x = a.ref(u);
                    return std::log(2 + std::sin(x) * std::sin(x)) * std::sqrt(1 + x * x);
                }};
    }
    default: {
        auto a = generate(rng, depth - 1);
        return {"-tan(0.3*sin(" + a.text + "))", [a](auto &u) { return -std::tan(0.3 * std::sin(a.ref(u))); }};
    }
    }
}

} // namespace

TEST_CASE("parse builds the expected tree")
{
    Expr e = Expr::parse("sin(p2)*sin(p3)", kParams);
    const Node &r = e.root();
    REQUIRE(r.kind == NodeKind::Binary);
    CHECK(r.op == '*');
    REQUIRE(r.lhs->kind == NodeKind::Call);
    CHECK(r.lhs->func == JetFunction::Sin);
    CHECK(r.lhs->lhs->kind == NodeKind::Param);
    CHECK(r.lhs->lhs->param == 1);
    CHECK(r.rhs->lhs->param == 2);

    Expr p = Expr::parse("p1", kParams);
    CHECK(p.root().kind == NodeKind::Param);
    CHECK(p.root().param == 0);
}

TEST_CASE("integer powers")
{
    std::vector<double> none;
    CHECK(Expr::parse("2^3^2", {}).eval(none) == 512.0);
    CHECK(Expr::parse("-2^2", {}).eval(none) == -4.0);
    CHECK(Expr::parse("(-2)^2", {}).eval(none) == 4.0);
    CHECK(Expr::parse("2^-1", {}).eval(none) == 0.5);
    CHECK_THROWS_AS(Expr::parse("2 ^ 2 ^ -1", {}), ParseError);
    CHECK_THROWS_AS(Expr::parse("2^99", {}), ParseError);
}

TEST_CASE("pi and number literals")
{
    std::vector<double> none;
    CHECK(Expr::parse("pi", {}).eval(none) == std::numbers::pi);
    CHECK(Expr::parse("1.5e2 + .5", {}).eval(none) == 150.5);
    CHECK(Expr::parse("  3 *\t(1 + 1) ", {}).eval(none) == 6.0);
}

TEST_CASE("jet evaluation")
{
    std::vector<double> u = {0.0, 0.0, 0.0};
    Jet c = Expr::parse("cos(p3)", kParams).eval(jets_at(u));
    CHECK(c.value() == 1.0);
    CHECK(c.d(2) == 0.0);
    CHECK(c.d2(2, 2) == doctest::Approx(-1.0));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-3, 3);
    Expr a = Expr::parse("p1+p1", kParams), b = Expr::parse("2*p1", kParams);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> v = {d(rng), d(rng), d(rng)};
        CHECK(std::abs(a.eval(v) - b.eval(v)) <= 1e-14);
    }
}

TEST_CASE("example immersion at a chart point")
{
    const char *src[] = {"p1", "sin(p2)*sin(p3)", "p1", "cos(p2)*sin(p3)", "cos(p3)"};
    std::vector<double> u = {0.0, 0.0, std::numbers::pi / 4};
    const double expect[] = {0, 0, 0, std::sqrt(2.0) / 2, std::sqrt(2.0) / 2};
    for (int k = 0; k < 5; ++k) {
        CHECK(Expr::parse(src[k], kParams).eval(u) == doctest::Approx(expect[k]).epsilon(1e-15));
    }
}

TEST_CASE("diagnostics")
{
    auto offset_of = [](const char *s) -> long {
        try {
            Expr::parse(s, kParams);
        } catch (const ParseError &e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    CHECK(offset_of("sin(") == 4);
    CHECK(offset_of("p1 + q") == 5);
    CHECK(offset_of("sinh(p1)") == 0);
    CHECK(offset_of("p1 $ 2") == 3);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("2^1.5") == 3);
    CHECK(offset_of("1e999") == 0);
    CHECK(offset_of("p1 p2") == 3);

    std::string deep(1000, '(');
    CHECK_THROWS_AS(Expr::parse(deep + "1" + std::string(1000, ')'), kParams), ParseError);

    std::vector<double> u = {1, 1, 1};
    CHECK_THROWS_AS(Expr::parse("log(p1 - 1)", kParams).eval(u), DomainError);
    CHECK_THROWS_AS(Expr::parse("1/(p1 - 1)", kParams).eval(u), DomainError);
    CHECK_THROWS_AS(Expr::parse("1/(p1 - 1)", kParams).eval(jets_at(u)), DomainError);
    std::vector<double> short_args = {1};
    CHECK_THROWS_AS(Expr::parse("p3", kParams).eval(short_args), UnboundName);
}

TEST_CASE("parser survives arbitrary bytes")
{
    std::mt19937_64 rng(31337);
    const std::string alphabet = "p123sincoexplgqrt()+-*/^. e\t\n";
    for (int trial = 0; trial < 20000; ++trial) {
        const int len = std::uniform_int_distribution<int>(0, 40)(rng);
        std::string s;
        for (int k = 0; k < len; ++k) {
            if (trial % 2) {
                s += static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng));
            } else {
                s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
            }
        }
        try {
            Expr e = Expr::parse(s, kParams);
            CHECK(Expr::parse(e.to_string(kParams), kParams) == e);
        } catch (const ParseError &e) {
            CHECK(e.offset() <= s.size());
        }
    }
}

TEST_CASE("fuzzed expressions: printer round trip, value and derivative agreement")
{
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    const double h = 1e-4;
    for (int trial = 0; trial < 100; ++trial) {
        Gen g = generate(rng, 6);
        Expr e = Expr::parse(g.text, kParams);
        Expr again = Expr::parse(e.to_string(kParams), kParams);
        CHECK(again == e);
        CHECK(again.to_string(kParams) == e.to_string(kParams));

        std::vector<double> u = {d(rng), d(rng), d(rng)};
        const double plain = e.eval(u);
        Jet j = e.eval(jets_at(u));
        CHECK(std::abs(j.value() - plain) <= 1e-12 * std::max(1.0, std::abs(plain)));
        CHECK(std::abs(plain - g.ref(u)) <= 1e-12 * std::max(1.0, std::abs(plain)));
        for (int i = 0; i < 3; ++i) {
            auto up = u, dn = u;
            up[i] += h;
            dn[i] -= h;
            const double fd = (e.eval(up) - e.eval(dn)) / (2 * h);
            CHECK(std::abs(j.d(i) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}
