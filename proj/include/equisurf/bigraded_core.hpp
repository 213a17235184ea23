#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace equisurf {

struct Bidegree {
    int p = 0;
    int q = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
    friend Bidegree operator-(Bidegree a) { return {-a.p, -a.q}; }
    friend bool operator==(Bidegree, Bidegree) = default;
    friend auto operator<=>(Bidegree, Bidegree) = default;
};

inline std::string to_string(Bidegree d) {
    return "(" + std::to_string(d.p) + "," + std::to_string(d.q) + ")";
}

struct Window {
    int p_min = -8, p_max = 8, q_min = -8, q_max = 8;

    Window() = default;
    Window(int pmin, int pmax, int qmin, int qmax) : p_min(pmin), p_max(pmax), q_min(qmin), q_max(qmax) {
        if (p_min > p_max || q_min > q_max) throw std::invalid_argument("empty window");
    }
    bool contains(Bidegree d) const {
        return d.p >= p_min && d.p <= p_max && d.q >= q_min && d.q <= q_max;
    }
    int width() const { return p_max - p_min + 1; }
    int height() const { return q_max - q_min + 1; }

    template <class F>
    void for_each(F&& f) const {
        for (int q = q_min; q <= q_max; ++q)
            for (int p = p_min; p <= p_max; ++p) f(Bidegree{p, q});
    }
    friend bool operator==(const Window&, const Window&) = default;
};

// Element of Z/3, always stored reduced to 0, 1 or 2.
class F3 {
public:
    constexpr F3() = default;
    constexpr F3(int v) : v_(static_cast<std::uint8_t>(((v % 3) + 3) % 3)) {}
    constexpr int value() const { return v_; }
    constexpr explicit operator bool() const { return v_ != 0; }

    friend constexpr F3 operator+(F3 a, F3 b) { return F3(a.v_ + b.v_); }
    friend constexpr F3 operator-(F3 a, F3 b) { return F3(a.v_ - b.v_ + 3); }
    friend constexpr F3 operator-(F3 a) { return F3(3 - a.v_); }
    friend constexpr F3 operator*(F3 a, F3 b) { return F3(a.v_ * b.v_); }
    F3& operator+=(F3 b) { return *this = *this + b; }
    F3& operator-=(F3 b) { return *this = *this - b; }
    F3& operator*=(F3 b) { return *this = *this * b; }
    // 1 and 2 are their own inverses mod 3.
    constexpr F3 inverse() const {
        if (v_ == 0) throw std::domain_error("0 has no inverse mod 3");
        return *this;
    }
    friend constexpr bool operator==(F3, F3) = default;

private:
    std::uint8_t v_ = 0;
};

using F3Vector = std::vector<F3>;

class F3Matrix {
public:
    F3Matrix() = default;
    F3Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    F3Matrix(std::initializer_list<std::initializer_list<int>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (int v : row) data_.emplace_back(v);
        }
    }

    static F3Matrix identity(std::size_t n, F3 scale = 1) {
        F3Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F3& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    F3 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    F3Matrix transpose() const {
        F3Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    F3Vector column(std::size_t c) const {
        F3Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    friend F3Matrix operator*(const F3Matrix& a, const F3Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        F3Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                F3 x = a(i, k);
                if (!x) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend F3Vector operator*(const F3Matrix& a, const F3Vector& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
        F3Vector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
        return out;
    }
    friend F3Matrix operator+(const F3Matrix& a, const F3Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
        F3Matrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
        return m;
    }
    friend F3Matrix operator*(F3 s, const F3Matrix& a) {
        F3Matrix m = a;
        for (auto& x : m.data_) x *= s;
        return m;
    }
    friend bool operator==(const F3Matrix&, const F3Matrix&) = default;

    bool is_zero() const {
        for (F3 x : data_)
            if (x) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F3> data_;
};

struct RankKernelImage {
    std::size_t rank = 0;
    std::vector<F3Vector> kernel_basis;
    std::vector<F3Vector> image_basis;
};

namespace detail {

struct Echelon {
    F3Matrix reduced;  // reduced row echelon form
    std::vector<std::size_t> pivots;
};

inline Echelon rref(F3Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && !m(piv, col)) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        F3 inv = m(row, col).inverse();
        for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || !m(r, col)) continue;
            F3 f = m(r, col);
            for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

}  // namespace detail

inline std::size_t rank(const F3Matrix& m) { return detail::rref(m).pivots.size(); }

inline RankKernelImage rank_kernel_image(const F3Matrix& m) {
    auto [red, pivots] = detail::rref(m);
    RankKernelImage out;
    out.rank = pivots.size();
    for (std::size_t c : pivots) out.image_basis.push_back(m.column(c));

    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        F3Vector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, free);
        out.kernel_basis.push_back(std::move(v));
    }
    if (out.rank + out.kernel_basis.size() != m.cols())
        throw std::logic_error("rank-nullity violated in F3 elimination");
    return out;
}

// Some x with m*x = v, or nothing when v is outside the image.
inline std::optional<F3Vector> solve(const F3Matrix& m, const F3Vector& v) {
    if (v.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong length");
    F3Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = v[r];
    }
    auto [red, pivots] = detail::rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    F3Vector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, m.cols());
    return x;
}

// Matrix whose columns are the given vectors (all of length n).
inline F3Matrix from_columns(const std::vector<F3Vector>& cols, std::size_t n) {
    F3Matrix m(n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
    return m;
}

class DimFunction {
public:
    using Eval = std::function<int(Bidegree)>;

    DimFunction() : f_(std::make_shared<const Eval>([](Bidegree) { return 0; })) {}
    explicit DimFunction(Eval f) : f_(std::make_shared<const Eval>(std::move(f))) {}

    int operator()(Bidegree d) const { return (*f_)(d); }
    int operator()(int p, int q) const { return (*f_)({p, q}); }

    friend DimFunction operator+(const DimFunction& a, const DimFunction& b) {
        return DimFunction([a, b](Bidegree d) { return a(d) + b(d); });
    }
    DimFunction scaled(int k) const {
        auto self = *this;
        return DimFunction([self, k](Bidegree d) { return k * self(d); });
    }

private:
    std::shared_ptr<const Eval> f_;
};

inline DimFunction shift(const DimFunction& f, Bidegree by) {
    return DimFunction([f, by](Bidegree d) { return f(d - by); });
}

}  // namespace equisurf
