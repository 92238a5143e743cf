#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "nullgeom/report.hpp"

using namespace nullgeom;

namespace {

void require_same(const Report &a, const Report &b)
{
    REQUIRE(a.rows().size() == b.rows().size());
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        const ReportRow &x = a.rows()[i], &y = b.rows()[i];
        CHECK(x.check_id == y.check_id);
        CHECK(x.anchor == y.anchor);
        CHECK(x.point == y.point);
        CHECK((x.residual == y.residual || (std::isnan(x.residual) && std::isnan(y.residual))));
        CHECK(x.tolerance == y.tolerance);
        CHECK(x.pass == y.pass);
    }
}

std::string random_text(std::mt19937_64 &rng)
{
    static const std::string alphabet = "ab/_,\"; =()x\n1";
    std::uniform_int_distribution<int> len(1, 12), pick(0, static_cast<int>(alphabet.size()) - 1);
    std::string s;
    for (int k = len(rng); k > 0; --k) {
        s += alphabet[pick(rng)];
    }
    return s;
}

double random_value(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> d(-30.0, 5.0);
    switch (rng() % 8) {
    case 0:
        return 0.0;
    case 1:
        return std::numeric_limits<double>::quiet_NaN();
    case 2:
        return std::numeric_limits<double>::infinity();
    default:
        return std::pow(10.0, d(rng)) * ((rng() & 1) ? 1 : -1) * 1.2345678901234567;
    }
}

} // namespace

TEST_CASE("verdicts")
{
    Report r;
    r.add("a", "x", {1.0}, 1e-9, 1e-8);
    r.add("a", "x", {2.0}, 1e-8, 1e-8);
    r.add("b", "y", {1.0}, 2e-8, 1e-8);
    r.add("c", "z", {}, std::numeric_limits<double>::quiet_NaN(), 1.0);
    CHECK(r.rows()[0].pass);
    CHECK(r.rows()[1].pass);
    CHECK_FALSE(r.rows()[2].pass);
    CHECK_FALSE(r.rows()[3].pass);
    CHECK_FALSE(r.passed());
    CHECK(r.failures() == 2);
    CHECK(r.max_residuals().at("a") == 1e-8);
    CHECK_THROWS_AS(r.add("a", "x", {1.0}, 0.0, 1.0), DuplicateRow);
}

TEST_CASE("merge")
{
    const Report empty = Report::merge({});
    CHECK(empty.rows().empty());
    CHECK(empty.passed());

    Report a;
    a.add("k", "x", {0.5}, 0.0, 1.0);
    a.add("j", "x", {0.5}, 0.0, 1.0);
    a.sort();
    const Report m = Report::merge({a});
    require_same(m, a);

    Report b;
    b.add("k", "x", {0.7}, 2.0, 1.0);
    const Report ab = Report::merge({a, b});
    CHECK(ab.rows().size() == 3);
    CHECK_FALSE(ab.passed());
    CHECK(ab.rows()[0].check_id == "j");
    // sample order is kept within one check id
    CHECK(ab.rows()[1].point[0] == 0.5);
    CHECK(ab.rows()[2].point[0] == 0.7);

    CHECK_THROWS_AS(Report::merge({a, a}), DuplicateRow);
}

TEST_CASE("csv layout")
{
    Report r;
    CHECK(to_csv(r) == "check_id,anchor,point,residual,tolerance,pass\n");
    r.add("structure/W_unit", "<W, W> = eps", {0.1, 2.0}, 1.0 / 3.0, 1e-8);
    CHECK(to_csv(r) == "check_id,anchor,point,residual,tolerance,pass\n"
                       "structure/W_unit,\"<W, W> = eps\",0.10000000000000001;2,0.33333333333333331,1e-08,false\n");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("fuzzed reports survive both formats")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Report r;
        const int rows = static_cast<int>(rng() % 12);
        for (int k = 0; k < rows; ++k) {
            std::vector<double> p(rng() % 4);
            for (auto &x : p) {
                x = random_value(rng);
                if (std::isnan(x)) {
                    x = 0.25;
                }
            }
            p.push_back(k); // keeps (check id, point) unique
            double tol = std::abs(random_value(rng));
            if (std::isnan(tol)) {
                tol = 1.0;
            }
            r.add(random_text(rng), random_text(rng), p, random_value(rng), tol);
        }
        r.info("note", {1.0}, 0.5, "kept in json");
        r.sort();
        const std::string csv = to_csv(r);
        const Report back = report_from_csv(csv);
        require_same(back, r);
        CHECK(to_csv(back) == csv);

        const std::string js = to_json(r);
        const Report jback = report_from_json(js);
        require_same(jback, r);
        CHECK(to_json(jback) == js);
        REQUIRE(jback.infos().size() == 1);
        CHECK(jback.infos()[0].note == "kept in json");
    }
}

TEST_CASE("readers reject malformed input")
{
    CHECK_THROWS(report_from_csv(""));
    CHECK_THROWS(report_from_csv("a,b\n"));
    CHECK_THROWS(report_from_csv("check_id,anchor,point,residual,tolerance,pass\nx,y,1,abc,1,true\n"));
    // the stored verdict must agree with residual <= tolerance
    CHECK_THROWS(report_from_csv("check_id,anchor,point,residual,tolerance,pass\nx,y,1,2,1,true\n"));
}
