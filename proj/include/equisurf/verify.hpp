#pragma once

#include <chrono>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "cohomology_engine.hpp"
#include "ext_engine.hpp"
#include "les_cases.hpp"
#include "mackey.hpp"

namespace equisurf {

struct Check {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0;

    bool pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (auto& c : checks) n += !c.pass;
        return n;
    }
    std::string text() const {
        std::ostringstream os;
        os << "[" << suite << "] " << (pass() ? "ok" : "FAILED") << " (" << checks.size() - failures() << "/" << checks.size()
           << " checks, " << seconds << " s)\n";
        for (auto& c : checks) {
            os << "  " << (c.pass ? "pass " : "FAIL ") << c.label;
            if (!c.detail.empty()) os << ": " << c.detail;
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

template <class F>
SuiteReport timed(const std::string& name, F&& body) {
    SuiteReport r{name, {}, 0};
    auto t0 = std::chrono::steady_clock::now();
    body(r.checks);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string join_names(const std::vector<std::string>& v, std::size_t limit = 8) {
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? ", " : "") + v[i];
    if (v.size() > limit) s += ", ... (" + std::to_string(v.size()) + " total)";
    return s;
}

inline std::string row_string(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace detail

inline SuiteReport verify_theorems(int grid = 4) {
    return detail::timed("theorems", [&](std::vector<Check>& out) {
        auto classes = class_grid(grid);
        std::vector<std::string> bad_agree, bad_cong, bad_row;
        for (auto& c : classes) {
            if (!verify_agreement(c)) bad_agree.push_back(class_name(c));
            if (!check_congruence(invariants(c))) bad_cong.push_back(class_name(c));
            if (!verify_quotient_row(c)) bad_row.push_back(class_name(c));
        }
        auto n = std::to_string(classes.size()) + " classes";
        out.push_back({"theorem vs invariants over " + n, bad_agree.empty(), detail::join_names(bad_agree)});
        out.push_back({"congruence over " + n, bad_cong.empty(), detail::join_names(bad_cong)});
        out.push_back({"quotient row over " + n, bad_row.empty(), detail::join_names(bad_row)});

        auto poly = SurfaceClass::poly(2, 0, 0), sph = SurfaceClass::sph(2, 0);
        bool same = cohomology(poly).expr == cohomology(sph).expr;
        bool distinct = class_name(poly) != class_name(sph);
        out.push_back({"PolyF(2,0,0) and Sph(2,0) share cohomology", same && distinct,
                       to_string(cohomology(poly).expr) + " vs " + to_string(cohomology(sph).expr)});
    });
}

inline SuiteReport verify_ext() {
    return detail::timed("ext", [](std::vector<Check>& out) {
        const ModuleExpr eb = ModuleExpr::of(StdKind::EB), m21 = ModuleExpr::of(StdKind::M3, {2, 1}),
                         hc10 = ModuleExpr::of(StdKind::HC3, {1, 0});
        for (auto& n : {eb, m21, hc10}) {
            auto r = ext1_report(n);
            out.push_back({"Ext1(EB, " + to_string(n) + ") = 0", r.ext1() == 0,
                           "hom " + std::to_string(r.hom_f1) + ", ker " + std::to_string(r.ker_d2) + ", im " +
                               std::to_string(r.im_d1)});
        }
        auto res = eb_resolution();
        auto h_eb = hom_space(res.F1, eb, {}).dim();
        out.push_back({"dim Hom(F1, EB) = 2", h_eb == 2, std::to_string(h_eb)});
        auto k = ext1_report(eb).ker_d2;
        out.push_back({"dim ker d2* over EB = 1", k == 1, std::to_string(k)});
        auto h_hc = hom_space(res.F1, hc10, {}).dim();
        out.push_back({"dim Hom(F1, HC3@1,0) = 0", h_hc == 0, std::to_string(h_hc)});
        Window w;
        out.push_back({"d1 d2 = 0 on the window", resolution_is_complex(w), ""});
        auto bad = resolution_exactness_failures(w);
        std::vector<std::string> names;
        for (auto d : bad) names.push_back(to_string(d));
        out.push_back({"exact at F1 on the window", bad.empty(), detail::join_names(names)});
        out.push_back({"augmentation kills d1", augmentation_kills_d1(), ""});
    });
}

inline Check case_check(const CofiberCase& c) {
    CaseReport r;
    try {
        r = verify_case(c);
    } catch (const std::runtime_error& e) {
        return {c.name, false, std::string("not checked: ") + e.what()};
    }
    std::string d = std::to_string(r.survivors) + " rank class(es)";
    if (!r.failing_cells.empty()) d += ", " + std::to_string(r.failing_cells.size()) + " failing cells from " + to_string(r.failing_cells.front());
    for (auto& m : r.messages) d += "; " + m;
    return {c.name, r.pass(), d};
}

inline SuiteReport verify_les() {
    return detail::timed("les", [](std::vector<Check>& out) {
        for (auto& c : fixture_cases()) {
            auto r = verify_case(c);
            auto ck = case_check(c);
            ck.pass = ck.pass && r.survivors == 1;
            ck.label = "fixture " + c.name;
            out.push_back(ck);
        }

        auto mut = family_case(SurfaceClass::sph(1, 1));
        mut.claimed_middle->remove(StdKind::EB);
        auto mr = verify_case(mut);
        bool col1 = false;
        for (auto d : mr.failing_cells) col1 = col1 || d.p == 1;
        out.push_back({"dropping an EB summand is caught", !mr.failing_cells.empty() && col1,
                       std::to_string(mr.failing_cells.size()) + " failing cells"});

        auto fn = family_case(SurfaceClass::free_nonor(2));
        fn.claimed_middle = ModuleExpr::of(StdKind::HS1FREE).add(StdKind::HC3, {1, 0}, 1);
        auto fr = verify_case(fn);
        auto row = quotient_row(*fn.claimed_middle);
        out.push_back({"NFree exponent r-1 breaks the quotient row", !fr.row0_ok && row[1] != fn.row0_of_middle[1],
                       detail::row_string(row) + " vs " + detail::row_string(fn.row0_of_middle)});

        struct Ext {
            const char *coker, *ker;
            bool fixed;
            const char* want;
        };
        const Ext rules[] = {{"M3@2,1 + 4*EB", "M3 + EB", true, "M3 + M3@2,1 + 5*EB"},
                             {"M3@2,1", "HS1FREE", true, "M3"},
                             {"EB", "EB", false, "2*EB"}};
        for (auto& e : rules) {
            auto got = resolve_extension(parse_module_expr(e.coker), parse_module_expr(e.ker), {e.fixed});
            auto want = parse_module_expr(e.want);
            out.push_back({std::string("extension ") + e.coker + " by " + e.ker, got && *got == want,
                           got ? to_string(*got) : "unresolved"});
        }
    });
}

// Final cofiber sequence of every class with parameters up to grid.
inline SuiteReport verify_families(int grid = 3) {
    return detail::timed("families", [&](std::vector<Check>& out) {
        for (auto& c : class_grid(grid)) out.push_back(case_check(family_case(c)));
    });
}

inline SuiteReport verify_axioms_suite() {
    return detail::timed("axioms", [](std::vector<Check>& out) {
        for (auto& v : verify_axioms(constant_z3())) out.push_back({"axiom " + std::to_string(v.id), v.pass, v.statement});
    });
}

inline SuiteReport verify_figures(std::istream& tables) {
    return detail::timed("figures", [&](std::vector<Check>& out) {
        std::vector<GridTable> grids;
        try {
            grids = parse_grid_tables(tables);
        } catch (const std::exception& e) {
            out.push_back({"figure tables parse", false, e.what()});
            return;
        }
        for (StdKind k : {StdKind::M3, StdKind::HC3, StdKind::HS1FREE, StdKind::EB}) {
            const GridTable* g = nullptr;
            for (auto& t : grids)
                if (t.kind == kind_name(k)) g = &t;
            if (!g) {
                out.push_back({std::string(kind_name(k)) + " table", false, "missing"});
                continue;
            }
            std::vector<std::string> bad;
            g->table.window.for_each([&](Bidegree d) {
                if (dim_at(k, d) != g->table.at(d)) bad.push_back(to_string(d));
            });
            out.push_back({std::string(kind_name(k)) + " matches its table", bad.empty(), detail::join_names(bad)});
        }
    });
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"theorems", "ext", "les", "axioms", "figures", "families", "all"};
    return names;
}

// "all" runs the five acceptance suites; "families" is separate.
inline std::vector<SuiteReport> run_suite(const std::string& name, int grid, std::istream* tables) {
    std::vector<SuiteReport> out;
    bool all = name == "all";
    if (all || name == "theorems") out.push_back(verify_theorems(grid));
    if (all || name == "ext") out.push_back(verify_ext());
    if (all || name == "les") out.push_back(verify_les());
    if (all || name == "axioms") out.push_back(verify_axioms_suite());
    if (all || name == "figures") {
        if (tables) out.push_back(verify_figures(*tables));
        else out.push_back({"figures", {{"figure tables available", false, "no table source"}}, 0});
    }
    if (name == "families") out.push_back(verify_families(grid));
    if (out.empty()) throw std::invalid_argument("unknown suite '" + name + "'");
    return out;
}

}  // namespace equisurf
