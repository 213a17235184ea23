#pragma once

#include <climits>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohomology_engine.hpp"
#include "les_engine.hpp"
#include "singular.hpp"

namespace equisurf {

// Record format, one case per block:
//   case <name>
//   domain  <module expr>
//   target  <module expr>
//   row0    <h0> <h1> <h2>
//   claimed <module expr>
//   rank    <p> <q_lo> <q_hi> <rank>      (repeatable; "-inf"/"inf" allowed; no lines = zero map)
//   end
inline std::vector<CofiberCase> parse_cases(std::istream& in) {
    std::vector<CofiberCase> out;
    std::string line;
    std::optional<CofiberCase> cur;
    int lineno = 0;
    auto bound = [](const std::string& s) {
        if (s == "-inf") return INT_MIN;
        if (s == "inf") return INT_MAX;
        return std::stoi(s);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find(';');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string rest;
        std::getline(ls, rest);
        auto fail = [&](const std::string& m) {
            throw std::runtime_error("case file line " + std::to_string(lineno) + ": " + m);
        };
        if (key == "case") {
            if (cur) fail("nested case");
            cur = CofiberCase{};
            std::istringstream rs(rest);
            rs >> cur->name;
            cur->expected = RankPattern{};
            continue;
        }
        if (!cur) fail("field outside a case block");
        if (key == "domain") cur->third_term = parse_module_expr(rest);
        else if (key == "target") cur->target_term = parse_module_expr(rest);
        else if (key == "claimed") cur->claimed_middle = parse_module_expr(rest);
        else if (key == "row0") {
            std::istringstream rs(rest);
            int v;
            cur->row0_of_middle.clear();
            while (rs >> v) cur->row0_of_middle.push_back(v);
        } else if (key == "rank") {
            std::istringstream rs(rest);
            std::string p, lo, hi, r;
            if (!(rs >> p >> lo >> hi >> r)) fail("rank needs p q_lo q_hi rank");
            cur->expected->segments.push_back({std::stoi(p), bound(lo), bound(hi), std::stoi(r)});
        } else if (key == "end") {
            out.push_back(std::move(*cur));
            cur.reset();
        } else {
            fail("unknown field '" + key + "'");
        }
    }
    if (cur) throw std::runtime_error("case file ends inside case " + cur->name);
    return out;
}

inline std::string format_case(const CofiberCase& c) {
    std::ostringstream os;
    auto b = [](int v) { return v == INT_MIN ? std::string("-inf") : v == INT_MAX ? std::string("inf") : std::to_string(v); };
    os << "case " << c.name << "\n";
    os << "domain  " << to_string(c.third_term) << "\n";
    os << "target  " << to_string(c.target_term) << "\n";
    os << "row0   ";
    for (int v : c.row0_of_middle) os << ' ' << v;
    os << "\n";
    if (c.claimed_middle) os << "claimed " << to_string(*c.claimed_middle) << "\n";
    if (c.expected)
        for (auto& s : c.expected->segments) os << "rank    " << s.p << ' ' << b(s.q_lo) << ' ' << b(s.q_hi) << ' ' << s.rank << "\n";
    os << "end\n";
    return os.str();
}

inline const char* kFixtureCases = R"(
case S1free
domain  HC3
target  HC3@1,0
row0    1 1 0
claimed HS1FREE
end

case EB
domain  HC3@1,0
target  M3@2,1
row0    0 0 0
claimed EB
rank    1 -inf 0 1
end

case N1_1
domain  HS1FREE
target  M3@2,1
row0    1 0 0
claimed M3
rank    1 -inf 0 1
rank    0 -inf -1 1
end

case M1free
domain  HS1FREE
target  HS1FREE@1,0
row0    1 2 1
claimed HS1FREE + HS1FREE@1,0
end

case M1hat
domain  HS1FREE + HS1FREE@1,0
target  HC3@1,0
row0    0 2 1
claimed HC3@1,0 + HS1FREE@1,0
rank    0 -inf inf 1
end

case N2hat
domain  HS1FREE
target  HC3@1,0
row0    0 1 0
claimed HC3@1,0
rank    0 -inf inf 1
end

case N2free
domain  HC3 + HC3@1,0
target  HC3@1,0
row0    1 2 0
claimed HS1FREE + HC3@1,0
end

case SphBase
domain  M3 + 2*HC3@1,0
target  M3@2,1
row0    1 2 1
claimed M3 + M3@2,1 + 2*HC3@1,0
end
)";

inline std::vector<CofiberCase> fixture_cases() {
    std::istringstream in(kFixtureCases);
    return parse_cases(in);
}

inline std::optional<CofiberCase> fixture_case(const std::string& name) {
    for (auto& c : fixture_cases())
        if (c.name == name) return c;
    return std::nullopt;
}

// Cohomology with one unshifted M3 removed: the reduced cohomology at a fixed basepoint.
inline ModuleExpr reduced(const SurfaceClass& c) {
    return cohomology(c).expr.remove(StdKind::M3);
}

namespace detail {
inline RankPattern zero_pattern() { return RankPattern{}; }
// d^{1,q} onto the w-column for q <= 0, d^{0,q} for q < 0.
inline RankPattern fixed_circle_pattern() { return RankPattern{{{1, INT_MIN, 0, 1}, {0, INT_MIN, -1, 1}}}; }
}  // namespace detail

// The last cofiber sequence in the inductive computation of a class.
inline CofiberCase family_case(const SurfaceClass& c) {
    validate(c);
    using detail::fixed_circle_pattern;
    using detail::zero_pattern;
    const Bidegree s10{1, 0}, s21{2, 1};
    CofiberCase k;
    k.name = class_name(c);
    k.claimed_middle = cohomology(c).expr;
    k.expected = zero_pattern();
    switch (c.family) {
        case Family::FREE_OR:
            k.row0_of_middle = sing_z3(NonEqSurface::M(c.g + 1)).as_list();
            if (c.g == 0) {
                k.third_term = ModuleExpr::of(StdKind::HS1FREE);
                k.target_term = ModuleExpr::of(StdKind::HS1FREE, s10);
            } else {
                k.third_term = times_c3(punctured(NonEqSurface::M(c.g)));
                k.target_term = ModuleExpr::of(StdKind::HC3, s10).add(StdKind::HS1FREE, s10);
            }
            break;
        case Family::FREE_NONOR:
            k.row0_of_middle = sing_z3(NonEqSurface::N(c.r + 2)).as_list();
            if (c.r == 0) {
                k.third_term = ModuleExpr::of(StdKind::HS1FREE);
            } else {
                k.third_term = times_c3(punctured(NonEqSurface::N(c.r)));
                k.target_term = ModuleExpr::of(StdKind::HC3, s10);
            }
            break;
        case Family::SPH:
            k.row0_of_middle = sing_z3(NonEqSurface::M(c.g)).as_list();
            if (c.k == 0) {
                k.third_term = ModuleExpr::of(StdKind::M3).add(StdKind::HC3, s10, 2 * c.g);
                k.target_term = ModuleExpr::of(StdKind::M3, s21);
            } else {
                k.third_term = ModuleExpr::of(StdKind::M3).add(StdKind::EB);
                k.target_term = reduced(SurfaceClass::sph(c.k - 1, c.g)).add(StdKind::EB);
            }
            break;
        case Family::POLY:
            if (c.g > 0) {
                k.row0_of_middle = sing_z3(NonEqSurface::M(c.g)).as_list();
                k.third_term = ModuleExpr::of(StdKind::M3).add(StdKind::HC3, s10, 2 * c.g);
                k.target_term = reduced(SurfaceClass::poly(c.n, c.k, 0));
            } else if (c.n > 1) {
                k.row0_of_middle = sing_z3(NonEqSurface::M(0)).as_list();
                k.third_term = ModuleExpr::of(StdKind::M3).add(StdKind::EB, {}, 3);
                k.target_term = reduced(SurfaceClass::poly(c.n - 1, c.k, 0));
            } else {
                // EB -> Poly_1 -> (previous) v EB, all reduced
                k.row0_of_middle = {0, 0, 1};
                k.claimed_middle = reduced(c);
                k.third_term = ModuleExpr::of(StdKind::EB);
                k.target_term = c.k == 0 ? ModuleExpr::of(StdKind::M3, s21)
                                         : reduced(SurfaceClass::poly(1, c.k - 1, 0)).add(StdKind::EB);
            }
            break;
        case Family::NONOR_EVEN:
            k.row0_of_middle = sing_z3(NonEqSurface::N(c.r)).as_list();
            k.third_term = times_c3(punctured(NonEqSurface::N(c.r)));
            k.target_term = reduced(SurfaceClass::sph(c.k, 0)).add(StdKind::EB);
            k.expected = fixed_circle_pattern();
            break;
        case Family::NONOR_ODD:
            k.row0_of_middle = sing_z3(NonEqSurface::N(c.r + 1)).as_list();
            if (c.r == 0) {
                k.third_term = ModuleExpr::of(StdKind::HS1FREE);
                k.target_term = reduced(SurfaceClass::sph(c.k, 0));
                k.expected = fixed_circle_pattern();
            } else {
                k.third_term = ModuleExpr::of(StdKind::M3).add(StdKind::HC3, s10, c.r);
                k.target_term = reduced(SurfaceClass::nonor_odd(c.k, 0));
            }
            break;
    }
    return k;
}

}  // namespace equisurf
