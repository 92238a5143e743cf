#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nullgeom/runner.hpp"
#include "nullgeom/spaceform.hpp"

using namespace nullgeom;

namespace {

enum Exit { kPass = 0, kChecksFailed = 1, kInputError = 2 };

void print_summary(std::ostream &os, const Report &rep)
{
    const auto worst = rep.max_residuals();
    std::map<std::string, bool> ok;
    for (const auto &row : rep.rows()) {
        auto [it, fresh] = ok.emplace(row.check_id, row.pass);
        if (!fresh) {
            it->second = it->second && row.pass;
        }
    }
    for (const auto &[id, r] : worst) {
        os << (ok[id] ? "pass  " : "FAIL  ") << id << "  max residual " << format_double(r) << "\n";
    }
    os << (rep.passed() ? "PASS" : "FAIL") << ": " << rep.rows().size() << " rows, " << rep.failures()
       << " failing, " << worst.size() << " check ids\n";
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Geometry of half-lightlike submanifolds: frames, forms, Newton transformations and checks"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_path;
    double tol_scale = 1.0;
    int n = 0;
    std::string c_text, v_text = "1";
    bool einstein = false;

    auto *verify_cmd = app.add_subcommand("verify", "run the selected check suites and write a report");
    verify_cmd->add_option("--config", config_path, "JSON configuration")->required();
    verify_cmd->add_option("--out", out_dir, "directory for report.csv and report.json");
    verify_cmd->add_option("--tol-scale", tol_scale, "multiplier on every tolerance")->check(CLI::PositiveNumber);

    auto *analyze_cmd = app.add_subcommand("analyze", "dump frame and forms at every sampled point");
    analyze_cmd->add_option("--config", config_path, "JSON configuration")->required();
    analyze_cmd->add_option("--out", out_dir, "directory for analyze.json");

    auto *rec_cmd = app.add_subcommand("recurrence", "print the integral table as CSV");
    rec_cmd->add_option("--n", n, "even screen dimension")->required();
    rec_cmd->add_option("--c", c_text, "curvature (or mu with --einstein), e.g. 1, -1/2, 0.25")->required();
    rec_cmd->add_option("--V", v_text, "total volume");
    rec_cmd->add_flag("--einstein", einstein, "read --c as the Einstein constant mu");

    auto *report_cmd = app.add_subcommand("report", "summarize a report written by verify");
    report_cmd->add_option("--in", in_path, "report.csv or report.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*verify_cmd) {
            const Config cfg = load_config(config_path);
            const Report rep = verify(cfg, RunOptions{tol_scale, 0});
            if (out_dir.empty()) {
                std::cout << to_csv(rep);
                print_summary(std::cerr, rep);
            } else {
                std::filesystem::create_directories(out_dir);
                const std::string csv = to_csv(rep), js = to_json(rep);
                write_file_atomic((std::filesystem::path(out_dir) / "report.csv").string(), csv);
                write_file_atomic((std::filesystem::path(out_dir) / "report.json").string(), js);
                print_summary(std::cout, rep);
            }
            return rep.passed() ? kPass : kChecksFailed;
        }
        if (*analyze_cmd) {
            const Config cfg = load_config(config_path);
            const std::string js = analyze(cfg, RunOptions{});
            if (out_dir.empty()) {
                std::cout << js;
            } else {
                std::filesystem::create_directories(out_dir);
                write_file_atomic((std::filesystem::path(out_dir) / "analyze.json").string(), js);
            }
            return kPass;
        }
        if (*rec_cmd) {
            const Rational c = parse_rational(c_text), V = parse_rational(v_text);
            std::cout << table_csv(einstein ? einstein_table(n, c, V) : recurrence_table(n, c, V));
            return kPass;
        }
        if (*report_cmd) {
            const std::string text = read_file(in_path);
            const bool is_json = std::filesystem::path(in_path).extension() == ".json";
            const Report rep = is_json ? report_from_json(text) : report_from_csv(text);
            print_summary(std::cout, rep);
            return rep.passed() ? kPass : kChecksFailed;
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const PointError &e) {
        std::cerr << "geometry error " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
