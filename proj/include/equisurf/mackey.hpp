#pragma once

#include <string>
#include <vector>

#include "bigraded_core.hpp"

namespace equisurf {

struct MackeyFunctorC3 {
    std::size_t m_orbit = 0;
    std::size_t m_point = 0;
    F3Matrix p_star_up;    // p^*: M(*) -> M(C3)
    F3Matrix p_star_down;  // p_*: M(C3) -> M(*)
    F3Matrix t_star;       // t^*
    F3Matrix t_lower;      // t_*
};

struct AxiomVerdict {
    int id;
    std::string statement;
    bool pass;
};

inline MackeyFunctorC3 constant_z3() {
    return {1, 1, F3Matrix{{1}}, F3Matrix{{0}}, F3Matrix{{1}}, F3Matrix{{1}}};
}

inline std::vector<AxiomVerdict> verify_axioms(const MackeyFunctorC3& m) {
    auto need = [](const F3Matrix& a, std::size_t r, std::size_t c, const char* name) {
        if (a.rows() != r || a.cols() != c)
            throw std::invalid_argument(std::string("Mackey functor map ") + name + " has the wrong shape");
    };
    need(m.p_star_up, m.m_orbit, m.m_point, "p^*");
    need(m.p_star_down, m.m_point, m.m_orbit, "p_*");
    need(m.t_star, m.m_orbit, m.m_orbit, "t^*");
    need(m.t_lower, m.m_orbit, m.m_orbit, "t_*");

    const auto id = F3Matrix::identity(m.m_orbit);
    const auto& ts = m.t_star;
    const auto& tl = m.t_lower;
    return {
        {1, "(t^*)^3 = id", ts * ts * ts == id},
        {2, "(t_*)^3 = id", tl * tl * tl == id},
        {3, "t^* p^* = p^*", ts * m.p_star_up == m.p_star_up},
        {4, "p_* t_* = p_*", m.p_star_down * tl == m.p_star_down},
        {5, "t_* t^* = id", tl * ts == id},
        {6, "p^* p_* = 1 + t^* + (t^*)^2", m.p_star_up * m.p_star_down == id + ts + ts * ts},
    };
}

}  // namespace equisurf
