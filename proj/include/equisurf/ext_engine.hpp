#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "std_modules.hpp"

namespace equisurf {

struct FreeModule {
    std::vector<std::pair<std::string, Bidegree>> generators;

    std::size_t size() const { return generators.size(); }
    // F as a sum of shifted copies of M3, one per generator, in generator order.
    ExpandedModule as_module() const {
        std::vector<ShiftedStd> c;
        for (auto& [name, d] : generators) c.push_back({StdKind::M3, d});
        return ExpandedModule(c);
    }
};

using RingCombination = std::vector<std::pair<F3, RingElement>>;

struct FreeMap {
    FreeModule domain;
    FreeModule codomain;
    // entries[row = codomain generator][col = domain generator]
    std::vector<std::vector<RingCombination>> entries;

    void check_degrees() const {
        for (std::size_t i = 0; i < codomain.size(); ++i)
            for (std::size_t j = 0; j < domain.size(); ++j)
                for (auto& [c, r] : entries[i][j])
                    if (r.degree() + codomain.generators[i].second != domain.generators[j].second)
                        throw std::invalid_argument("free map entry has the wrong degree at (" + codomain.generators[i].first +
                                                    ", " + domain.generators[j].first + ")");
    }

    // Cellwise matrix from F_domain(d) to F_codomain(d).
    F3Matrix cell_matrix(Bidegree d) const {
        auto src = domain.as_module();
        auto tgt = codomain.as_module();
        auto sb = src.basis(d);
        auto tb = tgt.basis(d);
        F3Matrix m(tb.size(), sb.size());
        for (std::size_t j = 0; j < sb.size(); ++j) {
            RingElement m_elt{sb[j].element.part == Part::Bottom, sb[j].element.a, sb[j].element.b, sb[j].element.c};
            for (std::size_t row = 0; row < codomain.size(); ++row)
                for (auto& [c, r] : entries[row][sb[j].copy]) {
                    auto prod = ring::mul(m_elt, r);
                    if (!prod) continue;
                    ExpandedModule::Cell target{row, {StdKind::M3, prod->bottom ? Part::Bottom : Part::Top, prod->x, prod->y, prod->z}};
                    for (std::size_t i = 0; i < tb.size(); ++i)
                        if (tb[i] == target) m(i, j) += c;
                }
        }
        return m;
    }
};

struct EBResolution {
    FreeModule F2, F1, F0;
    FreeMap d2, d1;
    // eta(a0) = alpha, eta(b0) = beta
    std::vector<BasisElement> eta;
};

inline EBResolution eb_resolution() {
    using namespace ring;
    EBResolution r;
    r.F0 = {{{"a0", {2, 1}}, {"b0", {1, 1}}}};
    r.F1 = {{{"a1", {2, 2}}, {"b1", {3, 2}}}};
    r.F2 = {{{"a2", {3, 3}}, {"b2", {4, 3}}}};
    // d1(a1) = y b0, d1(b1) = z b0 - y a0
    r.d1 = {r.F1, r.F0, {{{}, {{F3(-1), y()}}}, {{{F3(1), y()}}, {{F3(1), z()}}}}};
    // d2(a2) = y a1, d2(b2) = z a1 - y b1
    r.d2 = {r.F2, r.F1, {{{{F3(1), y()}}, {{F3(1), z()}}}, {{}, {{F3(-1), y()}}}}};
    r.d1.check_degrees();
    r.d2.check_degrees();
    r.eta = generators(StdKind::EB);
    return r;
}

struct HomSpace {
    // basis vector: generator index and basis element of N in the cell deg(g) + shift
    std::vector<std::pair<std::size_t, ExpandedModule::Cell>> basis;
    std::size_t dim() const { return basis.size(); }
};

inline HomSpace hom_space(const FreeModule& F, const ModuleExpr& N, Bidegree shift) {
    ExpandedModule n(N);
    HomSpace h;
    for (std::size_t g = 0; g < F.size(); ++g)
        for (auto& c : n.basis(F.generators[g].second + shift)) h.basis.push_back({g, c});
    return h;
}

// Precomposition with d: Hom(codomain, N) -> Hom(domain, N); rows index Hom(domain, N).
inline F3Matrix induced_map(const FreeMap& d, const ModuleExpr& N, Bidegree shift = {}) {
    d.check_degrees();
    ExpandedModule n(N);
    auto src = hom_space(d.codomain, N, shift);
    auto tgt = hom_space(d.domain, N, shift);
    F3Matrix m(tgt.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
        auto [t, elt] = src.basis[j];
        for (std::size_t s = 0; s < d.domain.size(); ++s)
            for (auto& [c, r] : d.entries[t][s]) {
                auto img = n.act(elt, r);
                if (!img) continue;
                for (std::size_t i = 0; i < tgt.dim(); ++i)
                    if (tgt.basis[i].first == s && tgt.basis[i].second == img->second) m(i, j) += c * img->first;
            }
    }
    return m;
}

struct Ext1Report {
    std::size_t hom_f1 = 0;
    std::size_t ker_d2 = 0;
    std::size_t im_d1 = 0;
    bool image_in_kernel = false;
    std::size_t ext1() const { return ker_d2 - im_d1; }
};

inline Ext1Report ext1_report(const ModuleExpr& N, Bidegree shift = {}) {
    auto res = eb_resolution();
    auto d1s = induced_map(res.d1, N, shift);  // Hom(F0,N) -> Hom(F1,N)
    auto d2s = induced_map(res.d2, N, shift);  // Hom(F1,N) -> Hom(F2,N)
    Ext1Report r;
    r.hom_f1 = hom_space(res.F1, N, shift).dim();
    r.ker_d2 = r.hom_f1 - rank(d2s);
    r.im_d1 = rank(d1s);
    r.image_in_kernel = (d2s * d1s).is_zero();
    if (!r.image_in_kernel) throw std::logic_error("image of d1* is not contained in the kernel of d2*");
    return r;
}

inline std::size_t ext1(const ModuleExpr& N, Bidegree shift = {}) { return ext1_report(N, shift).ext1(); }

// d1 o d2 = 0 on every cell of the window.
inline bool resolution_is_complex(const Window& w) {
    auto res = eb_resolution();
    bool ok = true;
    w.for_each([&](Bidegree d) { ok = ok && (res.d1.cell_matrix(d) * res.d2.cell_matrix(d)).is_zero(); });
    return ok;
}

// Cells of the window where image(d2) differs from kernel(d1).
inline std::vector<Bidegree> resolution_exactness_failures(const Window& w) {
    auto res = eb_resolution();
    std::vector<Bidegree> bad;
    w.for_each([&](Bidegree d) {
        auto m1 = res.d1.cell_matrix(d);
        auto m2 = res.d2.cell_matrix(d);
        std::size_t ker1 = m1.cols() - rank(m1);
        if (!(m1 * m2).is_zero() || rank(m2) != ker1) bad.push_back(d);
    });
    return bad;
}

// eta o d1 = 0 on generators.
inline bool augmentation_kills_d1() {
    auto res = eb_resolution();
    for (std::size_t s = 0; s < res.F1.size(); ++s) {
        std::map<BasisElement, F3> acc;
        for (std::size_t t = 0; t < res.F0.size(); ++t)
            for (auto& [c, r] : res.d1.entries[t][s])
                if (auto img = act(StdKind::EB, res.eta[t], r)) acc[img->element] += c * img->coef;
        for (auto& [e, v] : acc)
            if (v) return false;
    }
    return true;
}

}  // namespace equisurf
