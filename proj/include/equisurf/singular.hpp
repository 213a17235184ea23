#pragma once

#include <stdexcept>
#include <vector>

#include "std_modules.hpp"
#include "surface_calculus.hpp"

namespace equisurf {

struct SingCohomology {
    int h0 = 0, h1 = 0, h2 = 0;

    std::vector<int> as_list() const { return {h0, h1, h2}; }
    int euler() const { return h0 - h1 + h2; }
    friend bool operator==(const SingCohomology&, const SingCohomology&) = default;
};

// Z/3 coefficients; N_r has no top class since 2 is invertible mod 3.
inline SingCohomology sing_z3(const NonEqSurface& s) {
    if (s.orientable) return {1, 2 * s.genus, 1};
    if (s.genus < 1) throw std::invalid_argument("N0 is not a surface label");
    return {1, s.genus - 1, 0};
}

// Surface minus an open disk, which retracts onto a wedge of circles.
inline std::vector<int> punctured(const NonEqSurface& s) {
    if (!s.orientable && s.genus < 1) throw std::invalid_argument("N0 is not a surface label");
    return {1, s.orientable ? 2 * s.genus : s.genus};
}

// H(C3 x Y) = Z/3[x, 1/x] tensor H_sing(Y), one Sigma^{p,0} HC3 per class in degree p.
inline ModuleExpr times_c3(const std::vector<int>& dims) {
    ModuleExpr e;
    for (std::size_t p = 0; p < dims.size(); ++p) e.add(StdKind::HC3, {static_cast<int>(p), 0}, dims[p]);
    return e;
}

inline ModuleExpr times_c3(const SingCohomology& h) { return times_c3(h.as_list()); }

}  // namespace equisurf
