#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bigraded_core.hpp"

namespace equisurf {

enum class StdKind { M3, HC3, HS1FREE, EB };

inline const char* kind_name(StdKind k) {
    switch (k) {
        case StdKind::M3: return "M3";
        case StdKind::HC3: return "HC3";
        case StdKind::HS1FREE: return "HS1FREE";
        case StdKind::EB: return "EB";
    }
    return "?";
}

inline std::optional<StdKind> kind_from_name(const std::string& s) {
    for (StdKind k : {StdKind::M3, StdKind::HC3, StdKind::HS1FREE, StdKind::EB})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

// Basis element of M3 itself: top monomial x^x y^y z^z (y <= 1), or bottom w/(x^x y^y z^z) (y <= 1).
struct RingElement {
    bool bottom = false;
    int x = 0, y = 0, z = 0;

    Bidegree degree() const {
        if (!bottom) return {y + 2 * z, x + y + z};
        return {-y - 2 * z, -1 - x - y - z};
    }
    friend bool operator==(const RingElement&, const RingElement&) = default;
    friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

namespace ring {
inline RingElement one() { return {}; }
inline RingElement mono(int a, int e, int c) { return {false, a, e, c}; }
inline RingElement x(int n = 1) { return {false, n, 0, 0}; }
inline RingElement y() { return {false, 0, 1, 0}; }
inline RingElement z(int n = 1) { return {false, 0, 0, n}; }
inline RingElement w(int k = 0, int i = 0, int l = 0) { return {true, k, i, l}; }

inline bool valid(const RingElement& r) {
    return r.x >= 0 && r.z >= 0 && (r.y == 0 || r.y == 1);
}

// Product in M3. Cross-cone and bottom-bottom products vanish unless the quotient stays in the bottom cone.
inline std::optional<RingElement> mul(const RingElement& a, const RingElement& b) {
    if (!a.bottom && !b.bottom) {
        RingElement r{false, a.x + b.x, a.y + b.y, a.z + b.z};
        if (r.y > 1) return std::nullopt;
        return r;
    }
    if (a.bottom && b.bottom) return std::nullopt;
    const RingElement& bot = a.bottom ? a : b;
    const RingElement& top = a.bottom ? b : a;
    RingElement r{true, bot.x - top.x, bot.y - top.y, bot.z - top.z};
    if (r.x < 0 || r.y < 0 || r.z < 0) return std::nullopt;
    return r;
}

inline std::string to_string(const RingElement& r) {
    auto pw = [](const char* v, int n) -> std::string {
        if (n == 0) return "";
        return n == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(n);
    };
    std::string m = pw("x", r.x) + pw("y", r.y) + pw("z", r.z);
    if (!r.bottom) return m.empty() ? "1" : m;
    return m.empty() ? "w" : "w/(" + m + ")";
}
}  // namespace ring

enum class Part { Top, Bottom, Beta, AlphaTop, AlphaBottom, Col0, Col1 };

// Label of a basis element of one of the four standard modules.
//   M3:      Top / Bottom carry the ring element (a,b,c) = exponents of x,y,z.
//   EB:      Beta x^a.beta; AlphaTop x^a y^b z^c.alpha; AlphaBottom alpha.w/(x^a y^b z^c).
//   HC3:     Col0 with a = row q.
//   HS1FREE: Col0 / Col1 with a = row q.
struct BasisElement {
    StdKind kind = StdKind::M3;
    Part part = Part::Top;
    int a = 0, b = 0, c = 0;

    Bidegree degree() const {
        switch (part) {
            case Part::Top: return RingElement{false, a, b, c}.degree();
            case Part::Bottom: return RingElement{true, a, b, c}.degree();
            case Part::Beta: return {1, 1 + a};
            case Part::AlphaTop: return {2 + b + 2 * c, 1 + a + b + c};
            case Part::AlphaBottom: return {2 - b - 2 * c, -a - b - c};
            case Part::Col0: return {0, a};
            case Part::Col1: return {1, a};
        }
        return {};
    }
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
    friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

inline std::string to_string(const BasisElement& e) {
    switch (e.part) {
        case Part::Top: return ring::to_string({false, e.a, e.b, e.c});
        case Part::Bottom: return ring::to_string({true, e.a, e.b, e.c});
        case Part::Beta: return e.a ? ring::to_string(ring::x(e.a)) + "b" : "b";
        case Part::AlphaTop: {
            auto m = ring::to_string({false, e.a, e.b, e.c});
            return m == "1" ? "a" : m + "a";
        }
        case Part::AlphaBottom: return "a" + ring::to_string({true, e.a, e.b, e.c});
        case Part::Col0: return "g" + std::to_string(e.a);
        case Part::Col1: return "h" + std::to_string(e.a);
    }
    return "?";
}

struct Term {
    F3 coef;
    BasisElement element;
};

namespace detail {
inline int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
inline int ceil_div(int a, int b) { return -floor_div(-a, b); }
}  // namespace detail

// Closed-form cell dimensions, one predicate per kind.
inline int dim_at(StdKind kind, Bidegree d) {
    const int p = d.p, q = d.q;
    switch (kind) {
        case StdKind::M3: {
            const bool even = p % 2 == 0;
            if (p >= 0 && even && q >= p / 2) return 1;
            if (p >= 1 && !even && q >= (p + 1) / 2) return 1;
            if (p <= 0 && even && q <= p / 2 - 1) return 1;
            if (p <= -1 && !even && q <= (p - 3) / 2) return 1;
            return 0;
        }
        case StdKind::HC3: return p == 0 ? 1 : 0;
        case StdKind::HS1FREE: return (p == 0 || p == 1) ? 1 : 0;
        case StdKind::EB: {
            if (p >= 1 && q >= detail::ceil_div(p, 2)) return 1;
            if (p <= 1 && q <= detail::floor_div(p - 2, 2)) return 1;
            return 0;
        }
    }
    return 0;
}

// The unique basis label in a cell, found by solving the degree equations.
inline std::optional<BasisElement> basis_at(StdKind kind, Bidegree d) {
    const int p = d.p, q = d.q;
    switch (kind) {
        case StdKind::M3: {
            if (p >= 0) {
                int e = p % 2, c = (p - e) / 2, a = q - e - c;
                if (a >= 0) return BasisElement{kind, Part::Top, a, e, c};
            } else {
                int i = (-p) % 2, l = (-p - i) / 2, k = -1 - i - l - q;
                if (k >= 0) return BasisElement{kind, Part::Bottom, k, i, l};
            }
            if (p == 0 && q <= -1) return BasisElement{kind, Part::Bottom, -1 - q, 0, 0};
            return std::nullopt;
        }
        case StdKind::HC3:
            if (p == 0) return BasisElement{kind, Part::Col0, q, 0, 0};
            return std::nullopt;
        case StdKind::HS1FREE:
            if (p == 0) return BasisElement{kind, Part::Col0, q, 0, 0};
            if (p == 1) return BasisElement{kind, Part::Col1, q, 0, 0};
            return std::nullopt;
        case StdKind::EB: {
            if (p == 1 && q >= 1) return BasisElement{kind, Part::Beta, q - 1, 0, 0};
            if (p >= 2) {
                int e = p % 2, c = (p - 2 - e) / 2, a = q - 1 - e - c;
                if (a >= 0) return BasisElement{kind, Part::AlphaTop, a, e, c};
                return std::nullopt;
            }
            int i = (2 - p) % 2, l = (2 - p - i) / 2, k = -q - i - l;
            if (k >= 0 && (i != 0 || l != 0)) return BasisElement{kind, Part::AlphaBottom, k, i, l};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<Term> one(BasisElement e) { return Term{F3(1), e}; }

inline std::optional<Term> act_m3(const BasisElement& e, const RingElement& r) {
    auto prod = ring::mul({e.part == Part::Bottom, e.a, e.b, e.c}, r);
    if (!prod) return std::nullopt;
    return one({StdKind::M3, prod->bottom ? Part::Bottom : Part::Top, prod->x, prod->y, prod->z});
}

inline std::optional<Term> act_hc3(const BasisElement& e, const RingElement& r) {
    if (r.bottom || r.y || r.z) return std::nullopt;
    return one({StdKind::HC3, Part::Col0, e.a + r.x, 0, 0});
}

inline std::optional<Term> act_hs1(const BasisElement& e, const RingElement& r) {
    if (r.bottom || r.z) return std::nullopt;
    if (e.part == Part::Col0)
        return one({StdKind::HS1FREE, r.y ? Part::Col1 : Part::Col0, e.a + r.x + r.y, 0, 0});
    if (r.y) return std::nullopt;
    return one({StdKind::HS1FREE, Part::Col1, e.a + r.x, 0, 0});
}

// alpha times a bottom ring element; alpha.w/x^k is zero.
inline std::optional<Term> alpha_bottom(const RingElement& b) {
    if (b.y == 0 && b.z == 0) return std::nullopt;
    return one({StdKind::EB, Part::AlphaBottom, b.x, b.y, b.z});
}

inline std::optional<Term> act_eb(const BasisElement& e, const RingElement& r) {
    switch (e.part) {
        case Part::Beta:
            if (!r.bottom) {
                if (r.y) return std::nullopt;                                   // y.beta = 0
                if (r.z == 0) return one({StdKind::EB, Part::Beta, e.a + r.x, 0, 0});
                return one({StdKind::EB, Part::AlphaTop, e.a + r.x, 1, r.z - 1});  // z.beta = y.alpha
            } else {
                auto b = ring::mul(r, ring::x(e.a));
                if (!b || b->y == 0) return std::nullopt;
                // w/(x^k y z^l) . beta = alpha . w/(x^k z^(l+1))
                return alpha_bottom({true, b->x, 0, b->z + 1});
            }
        case Part::AlphaTop: {
            RingElement m{false, e.a, e.b, e.c};
            auto prod = ring::mul(m, r);
            if (!prod) return std::nullopt;
            if (prod->bottom) return alpha_bottom(*prod);
            return one({StdKind::EB, Part::AlphaTop, prod->x, prod->y, prod->z});
        }
        case Part::AlphaBottom: {
            auto prod = ring::mul({true, e.a, e.b, e.c}, r);
            if (!prod) return std::nullopt;
            return alpha_bottom(*prod);
        }
        default: break;
    }
    return std::nullopt;
}

inline bool part_belongs(StdKind k, Part p) {
    switch (k) {
        case StdKind::M3: return p == Part::Top || p == Part::Bottom;
        case StdKind::HC3: return p == Part::Col0;
        case StdKind::HS1FREE: return p == Part::Col0 || p == Part::Col1;
        case StdKind::EB: return p == Part::Beta || p == Part::AlphaTop || p == Part::AlphaBottom;
    }
    return false;
}

}  // namespace detail

inline std::optional<Term> act(StdKind kind, const BasisElement& e, const RingElement& r) {
    if (e.kind != kind || !detail::part_belongs(kind, e.part))
        throw std::invalid_argument("basis element " + to_string(e) + " does not belong to " + kind_name(kind));
    if (!ring::valid(r)) throw std::invalid_argument("invalid ring element");
    switch (kind) {
        case StdKind::M3: return detail::act_m3(e, r);
        case StdKind::HC3: return detail::act_hc3(e, r);
        case StdKind::HS1FREE: return detail::act_hs1(e, r);
        case StdKind::EB: return detail::act_eb(e, r);
    }
    return std::nullopt;
}

struct ShiftedStd {
    StdKind kind = StdKind::M3;
    Bidegree shift{};
    friend bool operator==(const ShiftedStd&, const ShiftedStd&) = default;
    friend auto operator<=>(const ShiftedStd&, const ShiftedStd&) = default;
};

inline std::string to_string(const ShiftedStd& s) {
    std::string k = kind_name(s.kind);
    if (s.shift == Bidegree{}) return k;
    return "S" + to_string(s.shift) + k;
}

class ModuleExpr {
public:
    ModuleExpr() = default;
    ModuleExpr(std::initializer_list<std::pair<ShiftedStd, int>> init) {
        for (auto& [s, m] : init) add(s.kind, s.shift, m);
    }

    static ModuleExpr of(StdKind k, Bidegree shift = {}, int mult = 1) {
        ModuleExpr e;
        e.add(k, shift, mult);
        return e;
    }

    ModuleExpr& add(StdKind k, Bidegree shift = {}, int mult = 1) {
        if (mult < 0) throw std::invalid_argument("negative multiplicity");
        if (mult > 0) counts_[ShiftedStd{k, shift}] += mult;
        return *this;
    }
    // Removes copies; fails when they are not present.
    ModuleExpr& remove(StdKind k, Bidegree shift = {}, int mult = 1) {
        auto it = counts_.find(ShiftedStd{k, shift});
        if (it == counts_.end() || it->second < mult) throw std::invalid_argument("summand not present");
        it->second -= mult;
        if (it->second == 0) counts_.erase(it);
        return *this;
    }
    int multiplicity(StdKind k, Bidegree shift = {}) const {
        auto it = counts_.find(ShiftedStd{k, shift});
        return it == counts_.end() ? 0 : it->second;
    }

    friend ModuleExpr operator+(ModuleExpr a, const ModuleExpr& b) {
        for (auto& [s, m] : b.counts_) a.add(s.kind, s.shift, m);
        return a;
    }
    ModuleExpr shifted(Bidegree by) const {
        ModuleExpr out;
        for (auto& [s, m] : counts_) out.add(s.kind, s.shift + by, m);
        return out;
    }

    // (summand, multiplicity) sorted by kind then shift.
    std::vector<std::pair<ShiftedStd, int>> summands() const { return {counts_.begin(), counts_.end()}; }
    // Every copy listed separately, in canonical order.
    std::vector<ShiftedStd> copies() const {
        std::vector<ShiftedStd> out;
        for (auto& [s, m] : counts_)
            for (int i = 0; i < m; ++i) out.push_back(s);
        return out;
    }
    bool empty() const { return counts_.empty(); }

    int dim(Bidegree d) const {
        int total = 0;
        for (auto& [s, m] : counts_) total += m * dim_at(s.kind, d - s.shift);
        return total;
    }
    DimFunction dim_function() const {
        DimFunction f;
        for (auto& [s, m] : counts_) {
            StdKind k = s.kind;
            f = f + shift(DimFunction([k](Bidegree d) { return dim_at(k, d); }), s.shift).scaled(m);
        }
        return f;
    }

    friend bool operator==(const ModuleExpr&, const ModuleExpr&) = default;

private:
    std::map<ShiftedStd, int> counts_;
};

inline std::string to_string(const ModuleExpr& e) {
    if (e.empty()) return "0";
    std::string out;
    for (auto& [s, m] : e.summands()) {
        if (!out.empty()) out += " + ";
        if (m != 1) out += std::to_string(m) + "*";
        out += kind_name(s.kind);
        if (s.shift != Bidegree{}) out += "@" + std::to_string(s.shift.p) + "," + std::to_string(s.shift.q);
    }
    return out;
}

// Inverse of to_string: terms "[m*]KIND[@a,b]" joined by '+', or "0".
inline ModuleExpr parse_module_expr(const std::string& text) {
    ModuleExpr e;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "0" || s.empty()) return e;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find('+', pos);
        if (end == std::string::npos) end = s.size();
        std::string term = s.substr(pos, end - pos);
        int mult = 1;
        if (auto star = term.find('*'); star != std::string::npos) {
            mult = std::stoi(term.substr(0, star));
            term = term.substr(star + 1);
        }
        Bidegree shift{};
        if (auto at = term.find('@'); at != std::string::npos) {
            auto rest = term.substr(at + 1);
            auto comma = rest.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("bad shift in '" + term + "'");
            shift = {std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1))};
            term = term.substr(0, at);
        }
        auto k = kind_from_name(term);
        if (!k) throw std::invalid_argument("unknown module kind '" + term + "'");
        e.add(*k, shift, mult);
        pos = end + 1;
    }
    return e;
}

struct DimTable {
    Window window;
    std::vector<int> cells;  // row-major, q from q_min, p from p_min

    int at(Bidegree d) const {
        if (!window.contains(d)) throw std::out_of_range("cell " + to_string(d) + " outside table window");
        return cells[(d.q - window.q_min) * window.width() + (d.p - window.p_min)];
    }
    friend bool operator==(const DimTable&, const DimTable&) = default;
};

inline DimTable tabulate(const DimFunction& f, const Window& w) {
    DimTable t{w, std::vector<int>(w.width() * w.height())};
    w.for_each([&](Bidegree d) { t.cells[(d.q - w.q_min) * w.width() + (d.p - w.p_min)] = f(d); });
    return t;
}

inline DimTable dims_window(const ModuleExpr& e, const Window& w) {
    return tabulate(DimFunction([e](Bidegree d) { return e.dim(d); }), w);
}

struct Relation {
    // sum of (ring element, generator index); coefficients in F3
    std::vector<std::tuple<F3, RingElement, std::size_t>> terms;
};

struct Presentation {
    std::vector<std::pair<std::string, Bidegree>> generators;
    std::vector<Relation> relations;
};

inline Presentation presentation(StdKind kind) {
    switch (kind) {
        case StdKind::M3: return {{{"iota", {0, 0}}}, {}};
        case StdKind::EB:
            return {{{"alpha", {2, 1}}, {"beta", {1, 1}}},
                    {Relation{{{F3(1), ring::y(), 1}}},
                     Relation{{{F3(1), ring::z(), 1}, {F3(-1), ring::y(), 0}}}}};
        default:
            throw std::invalid_argument(std::string(kind_name(kind)) +
                                        " is not finitely generated over M3 (x acts invertibly)");
    }
}

// Generator basis elements of the finitely presented kinds, in presentation order.
inline std::vector<BasisElement> generators(StdKind kind) {
    switch (kind) {
        case StdKind::M3: return {{StdKind::M3, Part::Top, 0, 0, 0}};
        case StdKind::EB: return {{StdKind::EB, Part::AlphaTop, 0, 0, 0}, {StdKind::EB, Part::Beta, 0, 0, 0}};
        default: throw std::invalid_argument(std::string(kind_name(kind)) + " has no finite generating set");
    }
}

// Grid tables: header "kind p_min p_max q_min q_max" then rows from q_max down to q_min.
struct GridTable {
    std::string kind;
    DimTable table;
};

inline std::vector<GridTable> parse_grid_tables(std::istream& in) {
    std::vector<GridTable> out;
    std::string kind;
    while (in >> kind) {
        int pmin, pmax, qmin, qmax;
        if (!(in >> pmin >> pmax >> qmin >> qmax)) throw std::runtime_error("bad grid table header for " + kind);
        Window w(pmin, pmax, qmin, qmax);
        DimTable t{w, std::vector<int>(w.width() * w.height())};
        for (int q = qmax; q >= qmin; --q)
            for (int p = pmin; p <= pmax; ++p) {
                int v;
                if (!(in >> v) || v < 0) throw std::runtime_error("bad grid table cell in " + kind);
                t.cells[(q - qmin) * w.width() + (p - pmin)] = v;
            }
        out.push_back({kind, std::move(t)});
    }
    return out;
}

inline std::string format_grid_table(const std::string& kind, const DimTable& t) {
    std::ostringstream os;
    const auto& w = t.window;
    os << kind << ' ' << w.p_min << ' ' << w.p_max << ' ' << w.q_min << ' ' << w.q_max << '\n';
    for (int q = w.q_max; q >= w.q_min; --q) {
        for (int p = w.p_min; p <= w.p_max; ++p) os << (p > w.p_min ? " " : "") << t.at({p, q});
        os << '\n';
    }
    return os.str();
}

// A direct sum with every copy kept separately, in a fixed order, for cellwise linear algebra.
class ExpandedModule {
public:
    struct Cell {
        std::size_t copy;
        BasisElement element;
        friend bool operator==(const Cell&, const Cell&) = default;
    };

    ExpandedModule() = default;
    explicit ExpandedModule(std::vector<ShiftedStd> copies) : copies_(std::move(copies)) {}
    explicit ExpandedModule(const ModuleExpr& e) : copies_(e.copies()) {}

    const std::vector<ShiftedStd>& copies() const { return copies_; }

    std::vector<Cell> basis(Bidegree d) const {
        std::vector<Cell> out;
        for (std::size_t i = 0; i < copies_.size(); ++i)
            if (auto e = basis_at(copies_[i].kind, d - copies_[i].shift)) out.push_back({i, *e});
        return out;
    }
    std::size_t dim(Bidegree d) const {
        std::size_t n = 0;
        for (auto& c : copies_) n += dim_at(c.kind, d - c.shift);
        return n;
    }
    Bidegree degree(const Cell& c) const { return c.element.degree() + copies_[c.copy].shift; }

    std::optional<std::size_t> index_in_cell(const Cell& c) const {
        auto b = basis(degree(c));
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] == c) return i;
        return std::nullopt;
    }

    std::optional<std::pair<F3, Cell>> act(const Cell& c, const RingElement& r) const {
        auto t = equisurf::act(copies_[c.copy].kind, c.element, r);
        if (!t) return std::nullopt;
        return std::pair{t->coef, Cell{c.copy, t->element}};
    }

    // Matrix of multiplication by r from cell d to cell d + deg r.
    F3Matrix mult_matrix(Bidegree d, const RingElement& r) const {
        auto src = basis(d);
        auto tgt = basis(d + r.degree());
        F3Matrix m(tgt.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            auto t = act(src[j], r);
            if (!t) continue;
            for (std::size_t i = 0; i < tgt.size(); ++i)
                if (tgt[i] == t->second) m(i, j) += t->first;
        }
        return m;
    }

private:
    std::vector<ShiftedStd> copies_;
};

}  // namespace equisurf
