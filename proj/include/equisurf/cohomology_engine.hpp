#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "singular.hpp"
#include "std_modules.hpp"
#include "surface_calculus.hpp"

namespace equisurf {

enum class AnswerSource { THEOREM, COROLLARY };

struct Answer {
    ModuleExpr expr;
    AnswerSource source = AnswerSource::THEOREM;
};

class NotRealizableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace summand {
inline constexpr Bidegree S10{1, 0};
inline constexpr Bidegree S21{2, 1};
}  // namespace summand

inline Answer cohomology(const SurfaceClass& c) {
    validate(c);
    using summand::S10;
    using summand::S21;
    ModuleExpr e;
    switch (c.family) {
        case Family::FREE_OR:
            e.add(StdKind::HS1FREE).add(StdKind::HS1FREE, S10).add(StdKind::HC3, S10, 2 * c.g);
            break;
        case Family::FREE_NONOR:
            e.add(StdKind::HS1FREE).add(StdKind::HC3, S10, c.r);
            break;
        case Family::SPH:
            e.add(StdKind::M3).add(StdKind::M3, S21).add(StdKind::EB, {}, 2 * c.k).add(StdKind::HC3, S10, 2 * c.g);
            break;
        case Family::POLY:
            e.add(StdKind::M3)
                .add(StdKind::M3, S21)
                .add(StdKind::EB, {}, 3 * c.n - 2 + 2 * c.k)
                .add(StdKind::HC3, S10, 2 * c.g);
            break;
        case Family::NONOR_EVEN:
            e.add(StdKind::M3).add(StdKind::EB, {}, 2 * c.k).add(StdKind::HC3, S10, c.r - 1);
            break;
        case Family::NONOR_ODD:
            e.add(StdKind::M3).add(StdKind::EB, {}, 2 * c.k).add(StdKind::HC3, S10, c.r);
            break;
    }
    return {e, AnswerSource::THEOREM};
}

inline Answer cohomology_from_invariants(const Invariants& i) {
    if (!check_congruence(i)) throw NotRealizableError("not realizable: F is not congruent to 2 - beta mod 3");
    if (i.orientable && i.beta % 2 != 0) throw NotRealizableError("not realizable: orientable surface with odd beta");
    if (i.beta < 0 || i.fixed_points < 0) throw NotRealizableError("invariants outside realizable range");
    auto exponent = [](int num) {
        if (num < 0 || num % 3 != 0) throw NotRealizableError("invariants outside realizable range");
        return num / 3;
    };
    auto nonneg = [](int v) {
        if (v < 0) throw NotRealizableError("invariants outside realizable range");
        return v;
    };
    using summand::S10;
    using summand::S21;
    const int b = i.beta, f = i.fixed_points;
    ModuleExpr e;
    if (f == 0) {
        e.add(StdKind::HS1FREE);
        if (i.orientable) e.add(StdKind::HS1FREE, S10);
        e.add(StdKind::HC3, S10, exponent(b - 2));
    } else if (i.orientable) {
        e.add(StdKind::M3).add(StdKind::M3, S21).add(StdKind::EB, {}, nonneg(f - 2));
        e.add(StdKind::HC3, S10, exponent(b - 2 * f + 4));
    } else {
        e.add(StdKind::M3).add(StdKind::EB, {}, nonneg(f % 2 == 0 ? f - 2 : f - 1));
        e.add(StdKind::HC3, S10, exponent(b - 2 * f + 1));
    }
    return {e, AnswerSource::COROLLARY};
}

inline bool verify_agreement(const SurfaceClass& c) {
    try {
        return cohomology(c).expr == cohomology_from_invariants(invariants(c)).expr;
    } catch (const NotRealizableError&) {
        return false;
    }
}

inline std::vector<int> quotient_row(const ModuleExpr& e) {
    return {e.dim({0, 0}), e.dim({1, 0}), e.dim({2, 0})};
}

inline bool verify_quotient_row(const SurfaceClass& c) {
    return quotient_row(cohomology(c).expr) == sing_z3(quotient_surface(c)).as_list();
}

// All classes with k, g, r in [0, bound] and n in [1, bound]; NONOR_EVEN needs r >= 1.
inline std::vector<SurfaceClass> class_grid(int bound) {
    std::vector<SurfaceClass> out;
    for (int g = 0; g <= bound; ++g) out.push_back(SurfaceClass::free_or(g));
    for (int r = 0; r <= bound; ++r) out.push_back(SurfaceClass::free_nonor(r));
    for (int k = 0; k <= bound; ++k)
        for (int g = 0; g <= bound; ++g) out.push_back(SurfaceClass::sph(k, g));
    for (int n = 1; n <= bound; ++n)
        for (int k = 0; k <= bound; ++k)
            for (int g = 0; g <= bound; ++g) out.push_back(SurfaceClass::poly(n, k, g));
    for (int k = 0; k <= bound; ++k)
        for (int r = 1; r <= bound; ++r) out.push_back(SurfaceClass::nonor_even(k, r));
    for (int k = 0; k <= bound; ++k)
        for (int r = 0; r <= bound; ++r) out.push_back(SurfaceClass::nonor_odd(k, r));
    return out;
}

inline nlohmann::json summands_json(const ModuleExpr& e) {
    auto arr = nlohmann::json::array();
    for (auto& [s, m] : e.summands())
        arr.push_back({{"kind", kind_name(s.kind)}, {"shift", {s.shift.p, s.shift.q}}, {"multiplicity", m}});
    return arr;
}

inline nlohmann::json answer_json(const SurfaceClass& c) {
    auto inv = invariants(c);
    return {
        {"class", class_name(c)},
        {"invariants",
         {{"orientable", inv.orientable},
          {"beta", inv.beta},
          {"fixed_points", inv.fixed_points},
          {"euler", inv.euler},
          {"free", inv.free}}},
        {"summands", summands_json(cohomology(c).expr)},
        {"checks",
         {{"congruence", check_congruence(inv)},
          {"agreement", verify_agreement(c)},
          {"quotient_row", verify_quotient_row(c)}}},
    };
}

inline ModuleExpr summands_from_json(const nlohmann::json& arr) {
    ModuleExpr e;
    for (auto& s : arr) {
        auto k = kind_from_name(s.at("kind").get<std::string>());
        if (!k) throw std::invalid_argument("unknown kind in JSON");
        e.add(*k, {s.at("shift").at(0).get<int>(), s.at("shift").at(1).get<int>()}, s.at("multiplicity").get<int>());
    }
    return e;
}

}  // namespace equisurf
