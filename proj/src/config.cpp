#include "nullgeom/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace nullgeom {

namespace {

using nlohmann::json;

std::string at(const std::string &base, const std::string &key) { return base + "/" + key; }
std::string at(const std::string &base, std::size_t i) { return base + "/" + std::to_string(i); }

const json &require(const json &obj, const std::string &key, const std::string &ptr)
{
    if (!obj.contains(key)) {
        throw ConfigError(ptr, "missing required field '" + key + "'");
    }
    return obj.at(key);
}

std::string as_string(const json &v, const std::string &ptr)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number()) {
        return v.dump();
    }
    throw ConfigError(ptr, "expected a string or number");
}

Expr parse_expr(const json &v, const std::vector<std::string> &params, const std::string &ptr)
{
    const std::string s = as_string(v, ptr);
    try {
        return Expr::parse(s, params);
    } catch (const ParseError &e) {
        throw ConfigError(ptr, std::string("cannot parse '") + s + "': " + e.what());
    }
}

double constant_value(const json &v, const std::string &ptr)
{
    if (v.is_number()) {
        return v.get<double>();
    }
    double x = 0.0;
    try {
        x = parse_expr(v, {}, ptr).eval(std::span<const double>{});
    } catch (const DomainError &e) {
        throw ConfigError(ptr, e.what());
    }
    if (!std::isfinite(x)) {
        throw ConfigError(ptr, "bound is not finite");
    }
    return x;
}

int as_int(const json &v, const std::string &ptr)
{
    if (!v.is_number_integer()) {
        throw ConfigError(ptr, "expected an integer");
    }
    return v.get<int>();
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64 &rng) { return double(rng() >> 11) * 0x1.0p-53; }

} // namespace

Config parse_config(const std::string &json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("", "top level must be an object");
    }
    static const std::set<std::string> known = {"ambient", "params",      "immersion", "domain",
                                                "margin",  "orientation", "screen_override", "L",
                                                "c_curvature", "suites",  "samples",   "tolerances"};
    for (const auto &item : doc.items()) {
        if (!known.count(item.key())) {
            throw ConfigError("/" + item.key(), "unknown field");
        }
    }

    Config cfg;
    const json &amb = require(doc, "ambient", "");
    const int dim = as_int(require(amb, "dim", "/ambient"), "/ambient/dim");
    if (dim < 3) {
        throw ConfigError("/ambient/dim", "ambient dimension must be at least 3");
    }
    std::vector<int> signs;
    if (amb.contains("signature")) {
        const json &sg = amb.at("signature");
        if (!sg.is_array() || static_cast<int>(sg.size()) != dim) {
            throw ConfigError("/ambient/signature", "expected " + std::to_string(dim) + " entries");
        }
        for (std::size_t i = 0; i < sg.size(); ++i) {
            const int s = as_int(sg[i], at("/ambient/signature", i));
            if (s != 1 && s != -1) {
                throw ConfigError(at("/ambient/signature", i), "entries must be 1 or -1");
            }
            signs.push_back(s);
        }
    } else {
        signs = Signature::lorentzian(dim).signs;
    }

    const json &params = require(doc, "params", "");
    if (!params.is_array() || params.empty()) {
        throw ConfigError("/params", "expected a nonempty list of names");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!params[i].is_string()) {
            throw ConfigError(at("/params", i), "expected a name");
        }
        names.push_back(params[i].get<std::string>());
    }
    if (static_cast<int>(names.size()) != dim - 2) {
        throw ConfigError("/params", "codimension two needs " + std::to_string(dim - 2) + " parameters");
    }

    const json &imm = require(doc, "immersion", "");
    if (!imm.is_array() || static_cast<int>(imm.size()) != dim) {
        throw ConfigError("/immersion", "expected " + std::to_string(dim) + " expressions");
    }
    cfg.immersion.sig = Signature(signs);
    cfg.immersion.params = names;
    for (std::size_t i = 0; i < imm.size(); ++i) {
        cfg.immersion.x.push_back(parse_expr(imm[i], names, at("/immersion", i)));
    }
    if (doc.contains("orientation")) {
        const int o = as_int(doc.at("orientation"), "/orientation");
        if (o != 1 && o != -1) {
            throw ConfigError("/orientation", "must be 1 or -1");
        }
        cfg.immersion.orientation = o;
    }
    if (doc.contains("screen_override")) {
        const json &so = doc.at("screen_override");
        if (!so.is_array() || static_cast<int>(so.size()) != dim - 3) {
            throw ConfigError("/screen_override", "expected " + std::to_string(dim - 3) + " vectors");
        }
        for (std::size_t i = 0; i < so.size(); ++i) {
            const std::string p = at("/screen_override", i);
            if (!so[i].is_array() || static_cast<int>(so[i].size()) != dim) {
                throw ConfigError(p, "expected " + std::to_string(dim) + " components");
            }
            std::vector<Expr> v;
            for (std::size_t k = 0; k < so[i].size(); ++k) {
                v.push_back(parse_expr(so[i][k], names, at(p, k)));
            }
            cfg.immersion.screen_override.push_back(std::move(v));
        }
    }

    const json &dom = require(doc, "domain", "");
    if (!dom.is_array() || dom.size() != names.size()) {
        throw ConfigError("/domain", "expected one [lo, hi] pair per parameter");
    }
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const std::string p = at("/domain", i);
        if (!dom[i].is_array() || dom[i].size() != 2) {
            throw ConfigError(p, "expected [lo, hi]");
        }
        const double lo = constant_value(dom[i][0], at(p, 0)), hi = constant_value(dom[i][1], at(p, 1));
        if (!(lo < hi)) {
            throw ConfigError(p, "lo must be below hi");
        }
        cfg.domain.emplace_back(lo, hi);
    }
    if (doc.contains("margin")) {
        const json &m = doc.at("margin");
        if (!m.is_number() || m.get<double>() < 0.0 || m.get<double>() >= 0.5) {
            throw ConfigError("/margin", "expected a number in [0, 0.5)");
        }
        cfg.margin = m.get<double>();
    }

    if (doc.contains("L")) {
        const json &L = doc.at("L");
        if (!L.is_object()) {
            throw ConfigError("/L", "expected an object with a, b, c");
        }
        for (const auto &item : L.items()) {
            if (item.key() != "a" && item.key() != "b" && item.key() != "c") {
                throw ConfigError("/L/" + item.key(), "unknown coefficient");
            }
        }
        auto coef = [&](const char *k, const char *dflt) {
            return L.contains(k) ? parse_expr(L.at(k), names, at("/L", k)) : Expr::parse(dflt, names);
        };
        cfg.L = LCoeffs{coef("a", "1"), coef("b", "0.5"), coef("c", "0")};
    }
    if (doc.contains("c_curvature")) {
        try {
            cfg.c_curvature = parse_rational(as_string(doc.at("c_curvature"), "/c_curvature"));
        } catch (const std::invalid_argument &e) {
            throw ConfigError("/c_curvature", e.what());
        }
    }

    if (doc.contains("suites")) {
        const json &s = doc.at("suites");
        if (!s.is_array()) {
            throw ConfigError("/suites", "expected a list");
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i].is_string() || std::find(all_suites().begin(), all_suites().end(), s[i].get<std::string>()) ==
                                         all_suites().end()) {
                throw ConfigError(at("/suites", i), "unknown suite");
            }
            cfg.suites.insert(s[i].get<std::string>());
        }
    } else {
        cfg.suites.insert(all_suites().begin(), all_suites().end());
    }

    if (doc.contains("samples")) {
        const json &s = doc.at("samples");
        if (!s.is_object()) {
            throw ConfigError("/samples", "expected an object");
        }
        if (s.contains("mode")) {
            cfg.samples.mode = as_string(s.at("mode"), "/samples/mode");
            if (cfg.samples.mode != "random" && cfg.samples.mode != "grid" && cfg.samples.mode != "mixed") {
                throw ConfigError("/samples/mode", "expected random, grid or mixed");
            }
        }
        if (s.contains("count")) {
            cfg.samples.count = as_int(s.at("count"), "/samples/count");
            if (cfg.samples.count < 0) {
                throw ConfigError("/samples/count", "must be nonnegative");
            }
        }
        if (s.contains("grid")) {
            cfg.samples.grid = as_int(s.at("grid"), "/samples/grid");
            if (cfg.samples.grid < 1) {
                throw ConfigError("/samples/grid", "must be positive");
            }
        }
        if (cfg.samples.mode != "grid" && !s.contains("seed")) {
            throw ConfigError("/samples", "random sampling needs a seed");
        }
        if (s.contains("seed")) {
            if (!s.at("seed").is_number_unsigned()) {
                throw ConfigError("/samples/seed", "expected a nonnegative integer");
            }
            cfg.samples.seed = s.at("seed").get<std::uint64_t>();
        }
    }

    if (doc.contains("tolerances")) {
        const json &t = doc.at("tolerances");
        if (!t.is_object()) {
            throw ConfigError("/tolerances", "expected an object of per-suite multipliers");
        }
        for (const auto &item : t.items()) {
            const std::string p = "/tolerances/" + item.key();
            if (std::find(all_suites().begin(), all_suites().end(), item.key()) == all_suites().end()) {
                throw ConfigError(p, "unknown suite");
            }
            if (!item.value().is_number() || !(item.value().get<double>() > 0.0)) {
                throw ConfigError(p, "expected a positive number");
            }
            cfg.tolerance_scale[item.key()] = item.value().get<double>();
        }
    }
    return cfg;
}

Config load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::vector<double>> sample_points(const Config &cfg)
{
    const std::size_t m = cfg.domain.size();
    std::vector<std::pair<double, double>> box;
    for (const auto &[lo, hi] : cfg.domain) {
        const double cut = cfg.margin * (hi - lo);
        box.emplace_back(lo + cut, hi - cut);
    }
    std::vector<std::vector<double>> pts;
    if (cfg.samples.mode != "grid") {
        std::mt19937_64 rng(cfg.samples.seed);
        for (int k = 0; k < cfg.samples.count; ++k) {
            std::vector<double> u(m);
            for (std::size_t i = 0; i < m; ++i) {
                u[i] = box[i].first + (box[i].second - box[i].first) * unit_draw(rng);
            }
            pts.push_back(std::move(u));
        }
    }
    if (cfg.samples.mode != "random") {
        const int g = cfg.samples.grid;
        for (std::size_t i = 0; i < m; ++i) {
            for (int k = 0; k < g; ++k) {
                std::vector<double> u(m);
                for (std::size_t j = 0; j < m; ++j) {
                    u[j] = 0.5 * (box[j].first + box[j].second);
                }
                // cell midpoints stay off the interval ends
                u[i] = box[i].first + (box[i].second - box[i].first) * (k + 0.5) / g;
                if (std::find(pts.begin(), pts.end(), u) == pts.end()) {
                    pts.push_back(std::move(u));
                }
            }
        }
    }
    return pts;
}

} // namespace nullgeom
