#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "equisurf/render.hpp"
#include "equisurf/verify.hpp"
#include "figures_data.hpp"

using namespace equisurf;

namespace {

enum Exit { kOk = 0, kParse = 2, kSemantic = 3, kVerify = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Window parse_window(const std::string& s) {
    int v[4];
    char sep[3];
    std::istringstream in(s);
    if (!(in >> v[0] >> sep[0] >> v[1] >> sep[1] >> v[2] >> sep[2] >> v[3]) || sep[0] != ',' || sep[1] != ',' || sep[2] != ',')
        throw UsageError("window must be p_min,p_max,q_min,q_max, got '" + s + "'");
    std::string rest;
    if (in >> rest) throw UsageError("trailing text in window '" + s + "'");
    try {
        return Window(v[0], v[1], v[2], v[3]);
    } catch (const std::invalid_argument&) {
        throw UsageError("empty window '" + s + "'");
    }
}

Bidegree parse_shift(const std::string& s) {
    int p, q;
    char c;
    std::istringstream in(s);
    if (!(in >> p >> c >> q) || c != ',') throw UsageError("shift must be p,q, got '" + s + "'");
    return {p, q};
}

Window default_window() {
    if (const char* env = std::getenv("EQUISURF_WINDOW")) return parse_window(env);
    return Window{};
}

std::string rank_summary(const RankTable& t) {
    std::ostringstream os;
    const Window& w = t.window;
    bool any = false;
    for (int p = w.p_min - 1; p <= w.p_max; ++p) {
        int q = w.q_min;
        while (q <= w.q_max) {
            int r = t.at({p, q});
            int q0 = q;
            while (q <= w.q_max && t.at({p, q}) == r) ++q;
            if (r == 0) continue;
            any = true;
            os << "    d^{" << p << ",q} rank " << r << " for q in [" << q0 << "," << q - 1 << "]\n";
        }
    }
    if (!any) os << "    d = 0\n";
    return os.str();
}

int cmd_classify(const std::string& text) {
    auto c = classify(parse_descriptor(text));
    auto i = invariants(c);
    std::cout << class_name(c) << "\n"
              << "  orientable   " << (i.orientable ? "yes" : "no") << "\n"
              << "  beta         " << i.beta << "\n"
              << "  fixed points " << i.fixed_points << "\n"
              << "  euler        " << i.euler << "\n"
              << "  underlying   " << to_string(underlying_surface(c)) << "\n"
              << "  quotient     " << to_string(quotient_surface(c)) << "\n";
    return kOk;
}

int cmd_cohomology(const std::string& text, const std::string& format, const Window& w) {
    auto c = classify(parse_descriptor(text));
    auto e = cohomology(c).expr;
    if (format == "json") {
        std::cout << answer_json(c).dump(2) << "\n";
    } else if (format == "svg") {
        std::cout << render_svg(e, w);
    } else {
        std::cout << class_name(c) << " = " << to_string(e) << "\n\n" << render_ascii(e, w);
    }
    return kOk;
}

int cmd_verify(const std::string& suite, int grid, const std::string& figures) {
    std::istringstream embedded(kFigureTables);
    std::ifstream file;
    std::istream* tables = &embedded;
    if (!figures.empty()) {
        file.open(figures);
        if (!file) throw UsageError("cannot read figure tables '" + figures + "'");
        tables = &file;
    }
    bool ok = true;
    double total = 0;
    for (auto& r : run_suite(suite, grid, tables)) {
        std::cout << r.text();
        ok = ok && r.pass();
        total += r.seconds;
    }
    std::cout << (ok ? "all checks passed" : "verification failed") << " in " << total << " s\n";
    return ok ? kOk : kVerify;
}

int cmd_ext(const std::string& target, const std::string& shift) {
    auto n = parse_module_expr(target);
    auto s = parse_shift(shift);
    auto r = ext1_report(n, s);
    std::cout << "Ext^1(EB, " << to_string(n) << ") in degree " << to_string(s) << "\n"
              << "  dim Hom(F1, N)  " << r.hom_f1 << "\n"
              << "  dim ker d2*     " << r.ker_d2 << "\n"
              << "  dim im d1*      " << r.im_d1 << "\n"
              << "  dim Ext^1       " << r.ext1() << "\n";
    return kOk;
}

int cmd_replay(const std::string& name) {
    auto fx = fixture_case(name);
    CofiberCase c = fx ? *fx : family_case(classify(parse_descriptor(name)));
    std::cout << format_case(c) << "\n";
    auto sols = solve_differential(c);
    std::cout << sols.size() << " admissible rank class(es)\n";
    for (std::size_t i = 0; i < sols.size(); ++i) {
        bool m = c.expected && sols[i].ranks.matches(*c.expected);
        std::cout << "  class " << i + 1 << (m ? " (expected pattern)" : "") << "\n" << rank_summary(sols[i].ranks);
    }
    auto r = verify_case(c);
    std::cout << "cellwise accounting: " << r.failing_cells.size() << " failing cells";
    if (!r.failing_cells.empty()) std::cout << ", first at " << to_string(r.failing_cells.front());
    std::cout << "\nquotient row: " << (r.row0_ok ? "ok" : "mismatch") << "\n";
    for (auto& m : r.messages) std::cout << "note: " << m << "\n";
    std::cout << (r.pass() ? "PASS" : "FAIL") << "\n";
    return r.pass() ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bredon cohomology of C3-surfaces"};
    app.require_subcommand(1);

    std::string expr, format = "ascii", window, suite = "all", figures, target, shift = "0,0", case_name;
    int grid = 4;

    auto* classify_cmd = app.add_subcommand("classify", "Classify a surface descriptor");
    classify_cmd->add_option("descriptor", expr, "e.g. \"S21 + 1 R3 # M(1)\" or \"Sph(1,1)\"")->required();

    auto* coh_cmd = app.add_subcommand("cohomology", "Cohomology as a sum of standard modules");
    coh_cmd->add_option("descriptor", expr)->required();
    coh_cmd->add_option("--format", format)->check(CLI::IsMember({"ascii", "json", "svg"}));
    coh_cmd->add_option("--window", window, "p_min,p_max,q_min,q_max");

    auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--grid", grid, "parameter bound for class grids")->check(CLI::Range(0, 12));
    verify_cmd->add_option("--figures", figures, "figure table file (default: built-in copy)");

    auto* ext_cmd = app.add_subcommand("ext", "Ext^1 of EB into a module");
    ext_cmd->add_option("target", target, "module expression, e.g. \"M3@2,1\"")->required();
    ext_cmd->add_option("--shift", shift, "p,q");

    auto* replay_cmd = app.add_subcommand("replay", "Replay a cofiber sequence");
    replay_cmd->add_option("case", case_name, "fixture name or class descriptor")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*classify_cmd) return cmd_classify(expr);
        if (*coh_cmd) return cmd_cohomology(expr, format, window.empty() ? default_window() : parse_window(window));
        if (*verify_cmd) return cmd_verify(suite, grid, figures);
        if (*ext_cmd) return cmd_ext(target, shift);
        if (*replay_cmd) return cmd_replay(case_name);
    } catch (const DescriptorParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ClassificationError& e) {
        std::cerr << "classification error: " << e.what() << "\n";
        return kSemantic;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSemantic;
    }
    return kOk;
}
