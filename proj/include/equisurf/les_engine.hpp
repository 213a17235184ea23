#pragma once

#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohomology_engine.hpp"
#include "ext_engine.hpp"
#include "singular.hpp"
#include "std_modules.hpp"

namespace equisurf {

// Expected rank of d^{p,q} on a column segment; cells not covered have rank 0.
struct RankSegment {
    int p = 0;
    int q_lo = INT_MIN, q_hi = INT_MAX;
    int rank = 0;
    friend bool operator==(const RankSegment&, const RankSegment&) = default;
};

struct RankPattern {
    std::vector<RankSegment> segments;

    int at(Bidegree d) const {
        for (auto& s : segments)
            if (s.p == d.p && d.q >= s.q_lo && d.q <= s.q_hi) return s.rank;
        return 0;
    }
    friend bool operator==(const RankPattern&, const RankPattern&) = default;
};

struct CofiberCase {
    std::string name;
    ModuleExpr third_term;   // domain of d
    ModuleExpr target_term;  // codomain, already shifted so d has bidegree (1,0)
    std::vector<int> row0_of_middle;
    std::optional<ModuleExpr> claimed_middle;
    std::optional<RankPattern> expected;  // expected differential pattern; absent means solve only
    Window window{};
};

// Rank of d^{p,q} for p in [p_min - 1, p_max], q in [q_min, q_max].
struct RankTable {
    Window window;
    std::vector<int> cells;

    int at(Bidegree d) const {
        if (d.p < window.p_min - 1 || d.p > window.p_max || d.q < window.q_min || d.q > window.q_max)
            throw std::out_of_range("rank requested outside the case window at " + to_string(d));
        return cells[(d.q - window.q_min) * (window.width() + 1) + (d.p - window.p_min + 1)];
    }
    bool matches(const RankPattern& pat) const {
        for (int q = window.q_min; q <= window.q_max; ++q)
            for (int p = window.p_min - 1; p <= window.p_max; ++p)
                if (at({p, q}) != pat.at({p, q})) return false;
        return true;
    }
    friend bool operator==(const RankTable&, const RankTable&) = default;
    friend auto operator<=>(const RankTable& a, const RankTable& b) { return a.cells <=> b.cells; }
};

struct GeneratorImage {
    std::size_t summand;    // copy index in the expanded domain
    std::string generator;  // iota, alpha, beta, or g<row> for x-localized columns
    Bidegree source;
    F3Vector image;         // coordinates in the codomain basis at source + (1,0)
};

struct DifferentialSpec {
    std::vector<GeneratorImage> generator_images;
    RankTable ranks;
};

class InconsistentCaseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

constexpr Bidegree kD{1, 0};

// Unknown generator images of an M3-linear map A -> T of degree (1,0), and the linear constraints they satisfy.
class DifferentialModel {
public:
    static constexpr int kDivisibilityDepth = 6;
    static constexpr int kMaxFreeDims = 12;

    explicit DifferentialModel(const CofiberCase& c)
        : A_(c.third_term), T_(c.target_term), w_(c.window),
          q_lo_(c.window.q_min - kDivisibilityDepth), q_hi_(c.window.q_max) {
        build_slots();
        build_constraints();
    }

    std::size_t unknowns() const { return n_; }
    const ExpandedModule& domain() const { return A_; }
    const ExpandedModule& codomain() const { return T_; }

    // d(e) as a linear function of the unknowns: rows are the codomain basis at deg(e) + (1,0).
    F3Matrix image_of(const ExpandedModule::Cell& e) const {
        const auto& copy = A_.copies()[e.copy];
        const auto& el = e.element;
        switch (copy.kind) {
            case StdKind::M3:
                return ring_on_slot(slot_of(e.copy, "iota"), {el.part == Part::Bottom, el.a, el.b, el.c});
            case StdKind::EB:
                if (el.part == Part::Beta) return ring_on_slot(slot_of(e.copy, "beta"), ring::x(el.a));
                if (el.part == Part::AlphaTop) return ring_on_slot(slot_of(e.copy, "alpha"), ring::mono(el.a, el.b, el.c));
                return ring_on_slot(slot_of(e.copy, "alpha"), ring::w(el.a, el.b, el.c));
            case StdKind::HC3:
                return column_image(e.copy, el.a + copy.shift.q, ring::one());
            case StdKind::HS1FREE:
                if (el.part == Part::Col0) return column_image(e.copy, el.a + copy.shift.q, ring::one());
                return column_image(e.copy, el.a + copy.shift.q - 1, ring::y());
        }
        throw std::logic_error("unknown kind");
    }

    const F3Matrix& constraints() const { return constraints_; }

    std::vector<GeneratorImage> images(const F3Vector& u) const {
        std::vector<GeneratorImage> out;
        for (auto& s : slots_) {
            F3Vector v(u.begin() + s.offset, u.begin() + s.offset + s.size);
            out.push_back({s.copy, s.name, s.source, v});
        }
        return out;
    }

private:
    struct Slot {
        std::size_t copy;
        std::string name;
        Bidegree source;
        std::size_t offset, size;
    };

    void add_slot(std::size_t copy, std::string name, Bidegree src) {
        std::size_t sz = T_.dim(src + kD);
        slots_.push_back({copy, name, src, n_, sz});
        index_[{copy, name}] = slots_.size() - 1;
        n_ += sz;
    }

    void build_slots() {
        for (std::size_t i = 0; i < A_.copies().size(); ++i) {
            const auto& c = A_.copies()[i];
            switch (c.kind) {
                case StdKind::M3: add_slot(i, "iota", c.shift); break;
                case StdKind::EB:
                    add_slot(i, "alpha", c.shift + Bidegree{2, 1});
                    add_slot(i, "beta", c.shift + Bidegree{1, 1});
                    break;
                case StdKind::HC3:
                case StdKind::HS1FREE:
                    for (int q = q_lo_; q <= q_hi_; ++q) add_slot(i, row_name(q), {c.shift.p, q});
                    break;
            }
        }
    }

    static std::string row_name(int q) { return "g" + std::to_string(q); }

    const Slot& slot_of(std::size_t copy, const std::string& name) const {
        auto it = index_.find({copy, name});
        if (it == index_.end()) throw std::out_of_range("no generator " + name + " in summand " + std::to_string(copy));
        return slots_[it->second];
    }

    // r applied to the slot's image, as a matrix from unknowns to the codomain at source + (1,0) + deg r.
    F3Matrix ring_on_slot(const Slot& s, const RingElement& r) const {
        Bidegree from = s.source + kD;
        auto mult = T_.mult_matrix(from, r);
        F3Matrix out(mult.rows(), n_);
        for (std::size_t i = 0; i < mult.rows(); ++i)
            for (std::size_t j = 0; j < s.size; ++j) out(i, s.offset + j) = mult(i, j);
        return out;
    }

    // r applied to the image of the column generator in absolute row q.
    F3Matrix column_image(std::size_t copy, int q, const RingElement& r) const {
        if (q < q_lo_) throw std::out_of_range("row " + std::to_string(q) + " below the solved range");
        if (q <= q_hi_) return ring_on_slot(slot_of(copy, row_name(q)), r);
        auto prod = ring::mul(ring::x(q - q_hi_), r);
        return ring_on_slot(slot_of(copy, row_name(q_hi_)), *prod);
    }

    void push(const F3Matrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<F3> row(n_);
            for (std::size_t j = 0; j < n_; ++j) row[j] = m(i, j);
            rows_.push_back(std::move(row));
        }
    }

    void build_constraints() {
        for (std::size_t i = 0; i < A_.copies().size(); ++i) {
            const auto& c = A_.copies()[i];
            if (c.kind == StdKind::EB) {
                const auto& a = slot_of(i, "alpha");
                const auto& b = slot_of(i, "beta");
                push(ring_on_slot(b, ring::y()));
                push(ring_on_slot(b, ring::z()) + F3(-1) * ring_on_slot(a, ring::y()));
            }
            if (c.kind == StdKind::HC3 || c.kind == StdKind::HS1FREE) {
                for (int q = q_lo_; q <= q_hi_; ++q) {
                    const auto& s = slot_of(i, row_name(q));
                    if (q < q_hi_) push(ring_on_slot(s, ring::x()) + F3(-1) * ring_on_slot(slot_of(i, row_name(q + 1)), ring::one()));
                    push(ring_on_slot(s, ring::z()));
                    if (c.kind == StdKind::HC3) push(ring_on_slot(s, ring::y()));
                }
                push_divisibility(slot_of(i, row_name(q_lo_)));
            }
        }
        constraints_ = F3Matrix(rows_.size(), n_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < n_; ++j) constraints_(i, j) = rows_[i][j];
    }

    // The lowest solved image must be divisible by x^depth inside the codomain.
    void push_divisibility(const Slot& s) {
        Bidegree top = s.source + kD;
        Bidegree bottom = top - Bidegree{0, kDivisibilityDepth};
        F3Matrix xd = F3Matrix::identity(T_.dim(bottom));
        for (int k = 0; k < kDivisibilityDepth; ++k) xd = T_.mult_matrix(bottom + Bidegree{0, k}, ring::x()) * xd;
        auto annihilator = rank_kernel_image(xd.transpose()).kernel_basis;
        for (auto& row : annihilator) {
            std::vector<F3> r(n_);
            for (std::size_t j = 0; j < s.size; ++j) r[s.offset + j] = row[j];
            rows_.push_back(std::move(r));
        }
    }

    ExpandedModule A_, T_;
    Window w_;
    int q_lo_, q_hi_;
    std::vector<Slot> slots_;
    std::map<std::pair<std::size_t, std::string>, std::size_t> index_;
    std::size_t n_ = 0;
    std::vector<std::vector<F3>> rows_;
    F3Matrix constraints_;
};

// Cellwise matrices of d for each basis vector of the admissible space.
class CellMaps {
public:
    CellMaps(const DifferentialModel& m, const std::vector<F3Vector>& basis, const Window& w) : w_(w) {
        for (int q = w.q_min; q <= w.q_max; ++q)
            for (int p = w.p_min - 1; p <= w.p_max; ++p) {
                Bidegree d{p, q};
                auto src = m.domain().basis(d);
                std::size_t rows = m.codomain().dim(d + kD);
                Entry e{d, {}};
                if (!src.empty() && rows > 0) {
                    std::vector<F3Matrix> images;
                    for (auto& s : src) images.push_back(m.image_of(s));
                    for (auto& b : basis) {
                        F3Matrix mat(rows, src.size());
                        for (std::size_t j = 0; j < src.size(); ++j) {
                            auto col = images[j] * b;
                            for (std::size_t i = 0; i < rows; ++i) mat(i, j) = col[i];
                        }
                        e.per_basis.push_back(std::move(mat));
                    }
                }
                cells_.push_back(std::move(e));
            }
    }

    int rank_at(std::size_t idx, const std::vector<int>& coeffs) const {
        const auto& e = cells_[idx];
        if (e.per_basis.empty()) return 0;
        F3Matrix m(e.per_basis[0].rows(), e.per_basis[0].cols());
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j]) m = m + F3(coeffs[j]) * e.per_basis[j];
        return static_cast<int>(rank(m));
    }

    std::size_t index(Bidegree d) const {
        return (d.q - w_.q_min) * (w_.width() + 1) + (d.p - w_.p_min + 1);
    }
    std::size_t size() const { return cells_.size(); }

private:
    struct Entry {
        Bidegree cell;
        std::vector<F3Matrix> per_basis;
    };
    Window w_;
    std::vector<Entry> cells_;
};

inline int row0_value(const std::vector<int>& row0, int p) {
    return (p >= 0 && p < static_cast<int>(row0.size())) ? row0[p] : 0;
}

}  // namespace detail

// Middle-term dimension from the long exact sequence: ker d^{p,q} plus coker d^{p-1,q}.
inline int middle_dim(const CofiberCase& c, const RankTable& r, Bidegree d) {
    return c.third_term.dim(d) - r.at(d) + c.target_term.dim(d) - r.at(d - detail::kD);
}

inline std::vector<DifferentialSpec> solve_differential(const CofiberCase& c) {
    detail::DifferentialModel model(c);
    auto basis = rank_kernel_image(model.constraints()).kernel_basis;
    if (static_cast<int>(basis.size()) > detail::DifferentialModel::kMaxFreeDims)
        throw std::runtime_error("admissible space of dimension " + std::to_string(basis.size()) + " is too large to enumerate");
    detail::CellMaps maps(model, basis, c.window);
    const Window& w = c.window;

    std::map<std::vector<int>, std::vector<int>> classes;  // rank table -> coefficients of one representative
    std::vector<int> coeffs(basis.size(), 0);
    const bool row0_in_window = w.q_min <= 0 && w.q_max >= 0;
    for (;;) {
        bool ok = true;
        if (row0_in_window) {
            std::vector<int> r0(w.width() + 1);
            for (int p = w.p_min - 1; p <= w.p_max; ++p) r0[p - w.p_min + 1] = maps.rank_at(maps.index({p, 0}), coeffs);
            for (int p = w.p_min; p <= w.p_max && ok; ++p) {
                int mid = c.third_term.dim({p, 0}) - r0[p - w.p_min + 1] + c.target_term.dim({p, 0}) - r0[p - w.p_min];
                ok = mid == detail::row0_value(c.row0_of_middle, p);
            }
        }
        if (ok) {
            std::vector<int> table(maps.size());
            for (std::size_t i = 0; i < maps.size(); ++i) table[i] = maps.rank_at(i, coeffs);
            classes.emplace(std::move(table), coeffs);
        }
        std::size_t j = 0;
        while (j < coeffs.size() && coeffs[j] == 2) coeffs[j++] = 0;
        if (j == coeffs.size()) break;
        ++coeffs[j];
    }
    if (classes.empty()) throw InconsistentCaseError("inconsistent case data: no admissible differential for " + c.name);

    std::vector<DifferentialSpec> out;
    for (auto& [table, cf] : classes) {
        F3Vector u(model.unknowns());
        for (std::size_t j = 0; j < cf.size(); ++j)
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += F3(cf[j]) * basis[j][i];
        out.push_back({model.images(u), RankTable{w, table}});
    }
    return out;
}

struct KerCoker {
    DimFunction ker;    // indexed by domain cell
    DimFunction coker;  // indexed by codomain cell
};

// Valid on the case window; evaluation outside it throws.
inline KerCoker ker_coker(const DifferentialSpec& d, const CofiberCase& c) {
    auto r = d.ranks;
    auto A = c.third_term, T = c.target_term;
    return {DimFunction([r, A](Bidegree x) { return A.dim(x) - r.at(x); }),
            DimFunction([r, T](Bidegree x) { return T.dim(x) - r.at(x - detail::kD); })};
}

struct CaseReport {
    std::string name;
    std::size_t survivors = 0;
    bool pattern_matched = false;
    std::vector<Bidegree> failing_cells;
    bool row0_ok = false;
    std::vector<std::string> messages;

    bool pass() const { return survivors > 0 && pattern_matched && failing_cells.empty() && row0_ok; }
};

inline CaseReport verify_case(const CofiberCase& c) {
    CaseReport rep;
    rep.name = c.name;
    std::vector<DifferentialSpec> sols;
    try {
        sols = solve_differential(c);
    } catch (const InconsistentCaseError& e) {
        rep.messages.push_back(e.what());
        return rep;
    }
    rep.survivors = sols.size();
    const DifferentialSpec* chosen = nullptr;
    if (c.expected) {
        for (auto& s : sols)
            if (s.ranks.matches(*c.expected)) chosen = &s;
        if (!chosen) rep.messages.push_back("no admissible differential has the expected rank pattern");
    } else if (sols.size() == 1) {
        chosen = &sols.front();
    } else {
        rep.messages.push_back(std::to_string(sols.size()) + " rank classes and no expected pattern to choose between them");
    }
    if (!chosen) return rep;
    rep.pattern_matched = true;
    if (sols.size() > 1) rep.messages.push_back(std::to_string(sols.size()) + " admissible rank classes");

    if (c.claimed_middle) {
        c.window.for_each([&](Bidegree d) {
            if (c.claimed_middle->dim(d) != middle_dim(c, chosen->ranks, d)) rep.failing_cells.push_back(d);
        });
        auto claimed_row = quotient_row(*c.claimed_middle);
        rep.row0_ok = true;
        for (int p = 0; p < 3; ++p) rep.row0_ok = rep.row0_ok && claimed_row[p] == detail::row0_value(c.row0_of_middle, p);
        if (!rep.row0_ok) rep.messages.push_back("claimed middle term disagrees with the quotient row");
    } else {
        rep.row0_ok = true;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Extension problems

struct ExtensionContext {
    bool middle_has_fixed_point = false;
};

namespace detail {

inline bool x_localized(StdKind k) { return k == StdKind::HC3 || k == StdKind::HS1FREE; }

// Elements of N in cell d divisible by x^depth.
inline std::size_t divisible_dim(const ExpandedModule& n, Bidegree d, int depth) {
    Bidegree bottom = d - Bidegree{0, depth};
    F3Matrix xd = F3Matrix::identity(n.dim(bottom));
    for (int k = 0; k < depth; ++k) xd = n.mult_matrix(bottom + Bidegree{0, k}, ring::x()) * xd;
    return rank(xd);
}

// An extension of K (x-localized column) by C is given by where y and z send the column generator;
// those targets must be infinitely x-divisible in C.
inline bool x_divisibility_rule(const ShiftedStd& k, const ShiftedStd& c) {
    ExpandedModule n(std::vector<ShiftedStd>{c});
    const int depth = 12;
    std::vector<Bidegree> targets;
    for (int q = -2; q <= 2; ++q) {
        Bidegree g = k.shift + Bidegree{0, q};
        targets.push_back(g + ring::z().degree());
        if (k.kind == StdKind::HC3) targets.push_back(g + ring::y().degree());
        if (k.kind == StdKind::HS1FREE) targets.push_back(g + Bidegree{1, 0} + ring::z().degree());
    }
    for (auto t : targets)
        if (divisible_dim(n, t, depth) != 0) return false;
    return true;
}

}  // namespace detail

inline std::optional<ModuleExpr> resolve_extension(const ModuleExpr& coker, const ModuleExpr& ker, ExtensionContext ctx) {
    ModuleExpr result;
    ModuleExpr k = ker, c = coker;

    // A full HS1FREE column surviving in ker opposite the S^{2,1} term is the N1[1] pattern: together they form M3.
    if (ctx.middle_has_fixed_point && k.multiplicity(StdKind::HS1FREE) > 0 && c.multiplicity(StdKind::M3, {2, 1}) > 0 &&
        k.multiplicity(StdKind::M3) == 0) {
        k.remove(StdKind::HS1FREE);
        c.remove(StdKind::M3, {2, 1});
        result.add(StdKind::M3);
    }
    if (ctx.middle_has_fixed_point && k.multiplicity(StdKind::M3) > 0) {
        k.remove(StdKind::M3);
        result.add(StdKind::M3);
    }

    std::map<ShiftedStd, std::size_t> ext_cache;
    for (auto& ks : k.copies()) {
        for (auto& cs : c.copies()) {
            bool covered = false;
            if (ks.kind == StdKind::M3) {
                covered = true;  // free
            } else if (ks.kind == StdKind::EB) {
                auto key = ShiftedStd{cs.kind, cs.shift - ks.shift};
                auto it = ext_cache.find(key);
                if (it == ext_cache.end()) it = ext_cache.emplace(key, ext1(ModuleExpr::of(cs.kind, cs.shift - ks.shift))).first;
                covered = it->second == 0;
            } else if (detail::x_localized(ks.kind)) {
                covered = detail::x_divisibility_rule(ks, cs);
            }
            if (!covered) return std::nullopt;
        }
    }
    return result + c + k;
}

}  // namespace equisurf
