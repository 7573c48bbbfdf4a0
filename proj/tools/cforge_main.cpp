#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cforge/bft.hpp"
#include "cforge/opcalc.hpp"
#include "cforge/parser.hpp"
#include "cforge/report.hpp"
#include "cforge/spectrum.hpp"

namespace {

using namespace cforge;

int log_level() {
    static int level = [] {
        const char* env = std::getenv("CF_LOG");
        std::string v = env ? env : "warn";
        if (v == "error") return 0;
        if (v == "warn") return 1;
        if (v == "info") return 2;
        if (v == "debug") return 3;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[info] " << msg << "\n";
}

int emit_reports(const std::vector<CheckReport>& reports,
                 const std::string& format, const std::string& out_path) {
    std::string text =
        format == "json" ? to_json(reports) : to_markdown(reports);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "cannot open " << out_path << "\n";
            return 2;
        }
        os << text;
    }
    return all_passed(reports) ? 0 : 1;
}

Mutation parse_mutation(const std::string& name) {
    if (name == "none") return Mutation::none;
    if (name == "omega2") return Mutation::drop_omega2_momentum;
    if (name == "hm-sign") return Mutation::flip_hm_ghost_sign;
    if (name == "weyl-coef") return Mutation::skew_weyl_coefficient;
    throw CLI::ValidationError("mutation",
                               "expected none|omega2|hm-sign|weyl-coef");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic verification engine for constrained "
                 "quantization on the (d-1)-sphere"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string mutation = "none";
    std::string format = "md";
    std::string out_path;

    auto add_suite_flags = [&](CLI::App* cmd) {
        cmd->add_option("--trials", cfg.trials, "oracle trials per dimension");
        cmd->add_option("--grid", cfg.grid, "circle grid size");
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_flag_callback("--serial", [&] { cfg.parallel = false; },
                               "disable parallel execution");
        cmd->add_option("--mutate", mutation,
                        "negative control: none|omega2|hm-sign|weyl-coef");
    };

    // verify
    auto* verify = app.add_subcommand("verify", "run verification checks");
    std::string section = "all";
    verify->add_option("section", section, "all|brackets|bft|weyl|brst|numeric")
        ->check(CLI::IsMember({"all", "brackets", "bft", "weyl", "brst",
                               "numeric"}));
    add_suite_flags(verify);

    // bracket
    auto* bracket_cmd =
        app.add_subcommand("bracket", "bracket of two expressions");
    std::string expr_a, expr_b;
    bool use_dirac = false;
    bracket_cmd->add_option("a", expr_a, "first expression")->required();
    bracket_cmd->add_option("b", expr_b, "second expression")->required();
    bracket_cmd->add_flag("--dirac", use_dirac, "Dirac bracket");

    // bft-series
    auto* series_cmd = app.add_subcommand("bft-series", "embedded field series");
    std::string field = "q";
    int order = 6;
    series_cmd->add_option("--field", field, "q|pi")
        ->check(CLI::IsMember({"q", "pi"}));
    series_cmd->add_option("--order", order, "series order")
        ->check(CLI::Range(0, 12));

    // weyl
    auto* weyl_cmd = app.add_subcommand("weyl", "Weyl-ordered momentum product");
    std::string c_mode = "symbolic";
    weyl_cmd->add_option("--c", c_mode, "symbolic|<rational>");

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "energy spectrum table");
    long dim = 3, l_max = 5;
    std::string spec_c = "fixed";
    spec_cmd->add_option("--d", dim, "dimension d")->required();
    spec_cmd->add_option("--lmax", l_max, "largest quantum number");
    spec_cmd->add_option("--c", spec_c, "fixed|<rational>");
    spec_cmd->add_option("--format", format, "json|md")
        ->check(CLI::IsMember({"json", "md"}));

    // report
    auto* report_cmd = app.add_subcommand("report", "full suite report");
    report_cmd->add_option("--format", format, "json|md")
        ->check(CLI::IsMember({"json", "md"}));
    report_cmd->add_option("--out", out_path, "output path");
    add_suite_flags(report_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            cfg.section = section;
            cfg.mutation = parse_mutation(mutation);
            log_info("running section '" + cfg.section + "'");
            auto reports = run_suite(cfg);
            for (const auto& r : reports) {
                std::cout << status_name(r.status) << "  " << r.name;
                if (!r.residual.empty()) std::cout << "  [" << r.residual << "]";
                std::cout << "\n";
            }
            return all_passed(reports) ? 0 : 1;
        }
        if (*bracket_cmd) {
            ScalarExpr a = parse_expr(expr_a), b = parse_expr(expr_b);
            ScalarExpr r = use_dirac ? dirac(a, b, ConstraintSet::sphere())
                                     : poisson(a, b);
            std::cout << print_expr(r) << "\n";
            return 0;
        }
        if (*series_cmd) {
            BftConfig bft_cfg;
            bft_cfg.order = order;
            VectorExpr seed = field == "q" ? VectorExpr::q_vec()
                                           : VectorExpr::p_vec();
            FieldSeries s = iterate_field(seed, bft_cfg);
            for (int n = 0; n <= s.order(); ++n)
                std::cout << to_string(s.term(n)) << "\n";
            return 0;
        }
        if (*weyl_cmd) {
            NormalOp w = build_weyl_product();
            ScalarExpr ev = apply_to_harmonic(w);
            if (c_mode != "symbolic") {
                mpq_class c(c_mode);
                c.canonicalize();
                ev = ev.substitute(V_C, Poly(GaussRat(c)));
            }
            std::cout << "normal form: " << to_string(w) << "\n";
            std::cout << "harmonic eigenvalue: " << to_string(ev) << "\n";
            return 0;
        }
        if (*spec_cmd) {
            std::optional<mpq_class> c_val;
            if (spec_c != "fixed") {
                mpq_class c(spec_c);
                c.canonicalize();
                c_val = c;
            }
            auto rows = spectrum_table(dim, l_max, c_val);
            if (format == "json") {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& row : rows) {
                    nlohmann::ordered_json o;
                    o["l"] = row.l;
                    o["e_dirac"] = row.e_dirac.get_str();
                    o["e_bft"] = row.e_bft.get_str();
                    o["gap"] = row.gap ? row.gap->get_str() : "-";
                    arr.push_back(std::move(o));
                }
                std::cout << arr.dump(2) << "\n";
            } else {
                std::cout << "| l | E_dirac | E_bft | gap |\n|---|---|---|---|\n";
                for (const auto& row : rows)
                    std::cout << "| " << row.l << " | " << row.e_dirac.get_str()
                              << " | " << row.e_bft.get_str() << " | "
                              << (row.gap ? row.gap->get_str() : "-")
                              << " |\n";
            }
            return 0;
        }
        if (*report_cmd) {
            cfg.section = "all";
            cfg.mutation = parse_mutation(mutation);
            return emit_reports(run_suite(cfg), format, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
