#pragma once

#include "qp/jet.hpp"
#include "qp/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qp {

using Vec = std::vector<Rational>;

inline Rational zeroLike(const Rational&) { return 0; }
inline Rational oneLike(const Rational&) { return 1; }
inline Poly zeroLike(const Poly& p) { return Poly(p.ring()); }
inline Poly oneLike(const Poly& p) { return Poly(p.ring(), 1); }
inline Jet zeroLike(const Jet& j) { return Jet::constant(j.ring(), 0, j.order()); }
inline Jet oneLike(const Jet& j) { return Jet::constant(j.ring(), 1, j.order()); }

template <class T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const T& sample() const { return data_.front(); }

    Matrix& operator+=(const Matrix& o) {
        sameShape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        sameShape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const Rational& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch");
        Matrix r(a.rows_, b.cols_, zeroLike(a.sample()));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (scalarIsZero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (scalarIsZero(b(k, j))) continue;
                    r(i, j) += a(i, k) * b(k, j);
                }
            }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transposed() const {
        Matrix r = *this;
        r.rows_ = cols_;
        r.cols_ = rows_;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool isZero() const {
        for (const auto& x : data_)
            if (!scalarIsZero(x)) return false;
        return true;
    }

private:
    void sameShape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Poly>;

template <class T>
Matrix<T> identityLike(std::size_t n, const T& sample) {
    Matrix<T> m(n, n, zeroLike(sample));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = oneLike(sample);
    return m;
}

inline RatMatrix identity(std::size_t n) { return identityLike<Rational>(n, Rational(0)); }

inline RatMatrix elementary(std::size_t n, std::size_t r, std::size_t c) {
    RatMatrix m(n, n, 0);
    m(r, c) = 1;
    return m;
}

inline Rational trace(const RatMatrix& m) {
    Rational t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

template <class T>
T traceOf(const Matrix<T>& m) {
    T t = zeroLike(m.sample());
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

// Matrix whose columns are the given vectors.
inline RatMatrix columns(const std::vector<Vec>& vs, std::size_t dim) {
    RatMatrix m(dim, vs.size(), 0);
    for (std::size_t j = 0; j < vs.size(); ++j) {
        if (vs[j].size() != dim) throw InputError("vector has wrong dimension");
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = vs[j][i];
    }
    return m;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rowReduce(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && isZero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || isZero(m(i, col))) continue;
            Rational f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rowReduce(m).size(); }

inline Rational determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && isZero(m(p, col))) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (isZero(m(i, col))) continue;
            Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

// Gauss-Jordan inverse over any scalar type with scalarInvertible/scalarInverse.
template <class T>
std::optional<Matrix<T>> tryInverse(Matrix<T> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw InputError("inverse of a non-square matrix");
    if (n == 0) return m;
    Matrix<T> inv = identityLike(n, m.sample());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && !scalarInvertible(m(p, col))) ++p;
        if (p == n) return std::nullopt;
        if (p != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(p, j), m(col, j));
                std::swap(inv(p, j), inv(col, j));
            }
        T pinv = scalarInverse(m(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) = m(col, j) * pinv;
            inv(col, j) = inv(col, j) * pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || scalarIsZero(m(i, col))) continue;
            T f = m(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline RatMatrix inverse(const RatMatrix& m) {
    auto r = tryInverse(m);
    if (!r) throw InputError("matrix is singular");
    return *r;
}

// Solve A x = b exactly; nullopt when inconsistent. Free variables set to 0.
inline std::optional<Vec> solve(const RatMatrix& A, const Vec& b) {
    RatMatrix aug(A.rows(), A.cols() + 1, 0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b.at(i);
    }
    auto piv = rowReduce(aug);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
    Vec x(A.cols(), 0);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, A.cols());
    return x;
}

inline Vec matVec(const RatMatrix& A, const Vec& v) {
    Vec r(A.rows(), 0);
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (!isZero(A(i, j)) && !isZero(v[j])) r[i] += A(i, j) * v[j];
    return r;
}

inline bool isZeroVec(const Vec& v) {
    for (const auto& x : v)
        if (!isZero(x)) return false;
    return true;
}

inline std::string vecString(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

template <class T>
std::string matrixString(const Matrix<T>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            if constexpr (std::is_same_v<T, Rational>) s += m(i, j).get_str();
            else s += m(i, j).str();
        }
        s += "]";
    }
    return s + "]";
}

template <class T, class U, class F>
Matrix<U> mapMatrix(const Matrix<T>& m, const U& fill, F&& f) {
    Matrix<U> r(m.rows(), m.cols(), fill);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
    return r;
}

}  // namespace qp
