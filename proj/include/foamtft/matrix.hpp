#pragma once

#include "foamtft/rational.hpp"

#include <stdexcept>
#include <vector>

namespace foamtft {

using Vec = std::vector<Rat>;

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("singular matrix") {}
};

/// Dense rational matrix, row-major. Small dimensions only; everything is
/// exact, so plain Gauss-Jordan without pivot heuristics is fine.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::runtime_error("matrix shape mismatch");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Vec operator*(const Vec& v) const {
        if (cols_ != v.size()) throw std::runtime_error("matrix/vector shape mismatch");
        Vec r(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (v[j] != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Mat transposed() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Gauss-Jordan inverse; throws SingularMatrix.
    Mat inverse() const {
        if (rows_ != cols_) throw std::runtime_error("inverse of non-square matrix");
        std::size_t n = rows_;
        Mat a = *this;
        Mat inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a(piv, col) == 0) ++piv;
            if (piv == n) throw SingularMatrix();
            if (piv != col)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            Rat p = a(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) /= p;
                inv(col, j) /= p;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || a(i, col) == 0) continue;
                Rat f = a(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    a(i, j) -= f * a(col, j);
                    inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    bool invertible() const {
        try {
            inverse();
            return true;
        } catch (const SingularMatrix&) {
            return false;
        }
    }

    /// Solves A x = b; throws SingularMatrix (square systems only).
    Vec solve(const Vec& b) const { return inverse() * b; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> d_;
};

/// Solves a (possibly rectangular) exact system A x = b by Gaussian
/// elimination; returns nullopt when inconsistent. Underdetermined systems
/// get free variables set to 0.
inline std::optional<Vec> solve_rect(const Mat& a, const Vec& b) {
    std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m) throw std::runtime_error("matrix/vector shape mismatch");
    Mat aug(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && aug(piv, col) == 0) ++piv;
        if (piv == m) continue;
        if (piv != row)
            for (std::size_t j = 0; j <= n; ++j) std::swap(aug(piv, j), aug(row, j));
        Rat p = aug(row, col);
        for (std::size_t j = 0; j <= n; ++j) aug(row, j) /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug(i, col) == 0) continue;
            Rat f = aug(i, col);
            for (std::size_t j = 0; j <= n; ++j) aug(i, j) -= f * aug(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (aug(i, n) != 0) return std::nullopt;
    Vec x(n, Rat(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = aug(r, n);
    return x;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec operator*(const Rat& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= c;
    return r;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Rat(0));
    v[i] = 1;
    return v;
}

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace foamtft
