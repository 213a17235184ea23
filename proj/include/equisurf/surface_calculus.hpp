#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace equisurf {

struct NonEqSurface {
    bool orientable = true;
    int genus = 0;  // g for M_g, r for N_r

    static NonEqSurface M(int g) { return {true, g}; }
    static NonEqSurface N(int r) { return {false, r}; }
    int euler() const { return orientable ? 2 - 2 * genus : 2 - genus; }
    friend bool operator==(const NonEqSurface&, const NonEqSurface&) = default;
};

inline std::string to_string(const NonEqSurface& s) {
    return (s.orientable ? "M" : "N") + std::to_string(s.genus);
}

enum class Base { S21, N1_1, POLY, M1FREE, N2FREE };

struct SurgeryExpr {
    Base base = Base::S21;
    int n = 0;  // only for POLY
    int ribbons = 0;
    std::optional<NonEqSurface> connect;
};

enum class Family { FREE_OR, FREE_NONOR, SPH, POLY, NONOR_EVEN, NONOR_ODD };

// Unused parameters are zero: FREE_OR(g), FREE_NONOR(r), SPH(k,g), POLY(n,k,g), NONOR_EVEN(k,r), NONOR_ODD(k,r).
struct SurfaceClass {
    Family family = Family::SPH;
    int n = 0, k = 0, g = 0, r = 0;

    static SurfaceClass free_or(int g) { return {Family::FREE_OR, 0, 0, g, 0}; }
    static SurfaceClass free_nonor(int r) { return {Family::FREE_NONOR, 0, 0, 0, r}; }
    static SurfaceClass sph(int k, int g) { return {Family::SPH, 0, k, g, 0}; }
    static SurfaceClass poly(int n, int k, int g) { return {Family::POLY, n, k, g, 0}; }
    static SurfaceClass nonor_even(int k, int r) { return {Family::NONOR_EVEN, 0, k, 0, r}; }
    static SurfaceClass nonor_odd(int k, int r) { return {Family::NONOR_ODD, 0, k, 0, r}; }

    friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DescriptorParseError : public std::runtime_error {
public:
    DescriptorParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

inline void validate(const SurfaceClass& c) {
    auto bad = [](const std::string& m) { throw ClassificationError(m); };
    if (c.n < 0 || c.k < 0 || c.g < 0 || c.r < 0) bad("negative family parameter");
    if (c.family == Family::POLY && c.n < 1) bad("Poly(n) requires n >= 1");
    if (c.family == Family::NONOR_EVEN && c.r < 1) bad("S21 connected with N(r) requires r >= 1");
}

// Short name, also accepted by the descriptor parser.
inline std::string class_name(const SurfaceClass& c) {
    auto args = [](std::initializer_list<int> xs) {
        std::string s = "(";
        bool first = true;
        for (int x : xs) {
            s += (first ? "" : ",") + std::to_string(x);
            first = false;
        }
        return s + ")";
    };
    switch (c.family) {
        case Family::FREE_OR: return "MFree" + args({c.g});
        case Family::FREE_NONOR: return "NFree" + args({c.r});
        case Family::SPH: return "Sph" + args({c.k, c.g});
        case Family::POLY: return "PolyF" + args({c.n, c.k, c.g});
        case Family::NONOR_EVEN: return "NEven" + args({c.k, c.r});
        case Family::NONOR_ODD: return "NOdd" + args({c.k, c.r});
    }
    return "?";
}

struct Invariants {
    bool orientable = true;
    int beta = 0;
    int fixed_points = 0;
    int euler = 0;
    bool free = false;
    friend bool operator==(const Invariants&, const Invariants&) = default;
};

inline SurfaceClass classify(const SurgeryExpr& e) {
    auto mismatch = [](const std::string& m) { throw ClassificationError("family mismatch: " + m); };
    if (e.ribbons < 0) throw ClassificationError("negative ribbon count");
    if (e.connect && e.connect->genus < 0) throw ClassificationError("negative genus");
    if ((e.base == Base::M1FREE || e.base == Base::N2FREE) && e.ribbons > 0)
        throw ClassificationError("no fixed points available for ribbon surgery on a free surface");
    const bool has = e.connect.has_value();
    const bool ori = has && e.connect->orientable;
    const int gen = has ? e.connect->genus : 0;
    switch (e.base) {
        case Base::S21:
            if (!has || ori) return SurfaceClass::sph(e.ribbons, gen);
            if (gen < 1) throw ClassificationError("S21 connected with N(r) requires r >= 1");
            return SurfaceClass::nonor_even(e.ribbons, gen);
        case Base::N1_1:
            if (has && ori) mismatch("N1[1] takes a non-orientable connect summand");
            return SurfaceClass::nonor_odd(e.ribbons, gen);
        case Base::POLY:
            if (e.n < 1) throw ClassificationError("Poly(n) requires n >= 1");
            if (has && !ori) mismatch("Poly(n) takes an orientable connect summand");
            return SurfaceClass::poly(e.n, e.ribbons, gen);
        case Base::M1FREE:
            if (has && !ori) mismatch("M1free takes an orientable connect summand");
            return SurfaceClass::free_or(gen);
        case Base::N2FREE:
            if (has && ori) mismatch("N2free takes a non-orientable connect summand");
            return SurfaceClass::free_nonor(gen);
    }
    throw ClassificationError("unknown base");
}

inline Invariants invariants(const SurfaceClass& c) {
    Invariants i;
    switch (c.family) {
        case Family::FREE_OR: i = {true, 2 * (1 + 3 * c.g), 0}; break;
        case Family::FREE_NONOR: i = {false, 2 + 3 * c.r, 0}; break;
        case Family::SPH: i = {true, 2 * (2 * c.k + 3 * c.g), 2 * c.k + 2}; break;
        case Family::POLY: i = {true, 2 * ((3 * c.n - 2) + 2 * c.k + 3 * c.g), 3 * c.n + 2 * c.k}; break;
        case Family::NONOR_EVEN: i = {false, 4 * c.k + 3 * c.r, 2 * c.k + 2}; break;
        case Family::NONOR_ODD: i = {false, 1 + 4 * c.k + 3 * c.r, 1 + 2 * c.k}; break;
    }
    i.euler = 2 - i.beta;
    i.free = i.fixed_points == 0;
    return i;
}

inline bool check_congruence(const Invariants& i) {
    return ((i.fixed_points - (2 - i.beta)) % 3 + 3) % 3 == 0;
}

inline NonEqSurface underlying_surface(const SurfaceClass& c) {
    auto i = invariants(c);
    return i.orientable ? NonEqSurface::M(i.beta / 2) : NonEqSurface::N(i.beta);
}

// Riemann-Hurwitz for a C3 action with isolated fixed points.
inline NonEqSurface quotient_surface(const SurfaceClass& c) {
    auto i = invariants(c);
    int num = i.euler + 2 * i.fixed_points;
    if (num % 3 != 0) throw std::logic_error("non-integral quotient Euler characteristic for " + class_name(c));
    int chi = num / 3;
    if (i.orientable) {
        if ((2 - chi) % 2 != 0) throw std::logic_error("odd orientable quotient genus");
        return NonEqSurface::M((2 - chi) / 2);
    }
    return NonEqSurface::N(2 - chi);
}

namespace detail {

class DescriptorParser {
public:
    explicit DescriptorParser(const std::string& s) : s_(s) {}

    // Either a surgery word or a family shorthand; shorthand is normalised through the same validation.
    SurgeryExpr parse() {
        skip();
        SurgeryExpr e;
        std::string word = ident();
        if (word == "S21") {
            e.base = Base::S21;
        } else if (word == "N1") {
            expect('[');
            if (number() != 1) fail("expected N1[1]");
            expect(']');
            e.base = Base::N1_1;
        } else if (word == "Poly") {
            expect('(');
            e.n = number();
            expect(')');
            e.base = Base::POLY;
        } else if (word == "M1free") {
            e.base = Base::M1FREE;
        } else if (word == "N2free") {
            e.base = Base::N2FREE;
        } else if (auto sh = shorthand(word)) {
            end();
            return *sh;
        } else {
            pos_ = word_start_;
            fail("unknown surface '" + word + "'");
        }
        if (peek('+')) {
            ++pos_;
            e.ribbons = number();
            if (ident() != "R3") fail("expected R3");
        }
        if (peek('#')) {
            ++pos_;
            std::string s = ident();
            if (s != "M" && s != "N") {
                pos_ = word_start_;
                fail("expected M(g) or N(r)");
            }
            expect('(');
            int gen = number();
            expect(')');
            e.connect = s == "M" ? NonEqSurface::M(gen) : NonEqSurface::N(gen);
        }
        end();
        return e;
    }

private:
    std::optional<SurgeryExpr> shorthand(const std::string& w) {
        int arity = w == "Sph" || w == "NEven" || w == "NOdd" ? 2 : w == "PolyF" ? 3 : w == "MFree" || w == "NFree" ? 1 : 0;
        if (!arity) return std::nullopt;
        expect('(');
        std::vector<int> a{number()};
        while (static_cast<int>(a.size()) < arity) {
            expect(',');
            a.push_back(number());
        }
        expect(')');
        SurgeryExpr e;
        if (w == "Sph") e = {Base::S21, 0, a[0], NonEqSurface::M(a[1])};
        if (w == "NEven") e = {Base::S21, 0, a[0], NonEqSurface::N(a[1])};
        if (w == "NOdd") e = {Base::N1_1, 0, a[0], a[1] ? std::optional(NonEqSurface::N(a[1])) : std::nullopt};
        if (w == "PolyF") e = {Base::POLY, a[0], a[1], NonEqSurface::M(a[2])};
        if (w == "MFree") e = {Base::M1FREE, 0, 0, NonEqSurface::M(a[0])};
        if (w == "NFree") e = {Base::N2FREE, 0, 0, a[0] ? std::optional(NonEqSurface::N(a[0])) : std::nullopt};
        return e;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string ident() {
        skip();
        word_start_ = pos_;
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected a name");
        return s_.substr(b, pos_ - b);
    }
    int number() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected a non-negative integer");
        if (pos_ - b > 6) fail("integer too large");
        return std::stoi(s_.substr(b, pos_ - b));
    }
    void end() {
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    }
    [[noreturn]] void fail(const std::string& m) { throw DescriptorParseError(m, pos_); }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::size_t word_start_ = 0;
};

}  // namespace detail

inline SurgeryExpr parse_descriptor(const std::string& text) {
    return detail::DescriptorParser(text).parse();
}

}  // namespace equisurf
