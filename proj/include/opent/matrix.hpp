#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "opent/errors.hpp"

namespace opent {

// Dense row-major matrix of doubles. Shape checks throw DimensionMismatch;
// element access is unchecked.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double trace() const {
        require_square("trace");
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(double c) {
        for (double& v : data_) v *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double c) { return a *= c; }
    friend Matrix operator*(double c, Matrix a) { return a *= c; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    void require_square(const char* what) const {
        if (!is_square()) throw DimensionMismatch(std::string(what) + ": matrix not square");
    }

    void require_same_shape(const Matrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch(std::string(what) + ": shapes differ");
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Frobenius inner product; for column vectors this is the euclidean dot.
inline double dot(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
    return s;
}

// tr(A B).
inline double trace_product(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionMismatch("trace_product: shapes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            double aij = a(i1, j1);
            if (aij == 0.0) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    k(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
        }
    return k;
}

// Column-stacking vec: vec(A)[i + j*rows] = A(i, j), so that
// vec(A X B) = (B^T (x) A) vec(X).
inline Matrix vec(const Matrix& a) {
    Matrix v(a.rows() * a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v(i + j * a.rows(), 0) = a(i, j);
    return v;
}

// Square matrix with m(i,j) == m(j,i) bitwise. Mutation goes through set(),
// which writes both mirror entries.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;

    explicit SymmetricMatrix(std::size_t dim) : m_(dim, dim) {}

    static SymmetricMatrix identity(std::size_t dim) {
        SymmetricMatrix s(dim);
        for (std::size_t i = 0; i < dim; ++i) s.m_(i, i) = 1.0;
        return s;
    }

    std::size_t dim() const { return m_.rows(); }

    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    void set(std::size_t i, std::size_t j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }

    const Matrix& matrix() const { return m_; }

    double trace() const { return m_.trace(); }
    double frobenius_norm() const { return m_.frobenius_norm(); }
    double max_abs() const { return m_.max_abs(); }

    SymmetricMatrix& operator+=(const SymmetricMatrix& o) {
        m_ += o.m_;
        return *this;
    }

    SymmetricMatrix& operator-=(const SymmetricMatrix& o) {
        m_ -= o.m_;
        return *this;
    }

    SymmetricMatrix& operator*=(double c) {
        m_ *= c;
        return *this;
    }

    friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
    friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
    friend SymmetricMatrix operator*(SymmetricMatrix a, double c) { return a *= c; }
    friend SymmetricMatrix operator*(double c, SymmetricMatrix a) { return a *= c; }

private:
    Matrix m_;
};

// (A + A^T)/2 with mirror entries computed once, so the result is exactly
// symmetric regardless of roundoff in A.
inline SymmetricMatrix symmetric_part(const Matrix& a) {
    a.require_square("symmetric_part");
    SymmetricMatrix s(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    }
    return s;
}

// Largest |A(i,j) - A(j,i)|.
inline double asymmetry(const Matrix& a) {
    a.require_square("asymmetry");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

// T^T X T, symmetrized to absorb roundoff. T may be rectangular (n x m).
inline SymmetricMatrix congruence(const Matrix& t, const SymmetricMatrix& x) {
    if (t.rows() != x.dim()) throw DimensionMismatch("congruence: T rows must match dim(X)");
    return symmetric_part(t.transpose() * (x.matrix() * t));
}

// v^T M v for a column vector v.
inline double quadratic_form(const SymmetricMatrix& m, const Matrix& v) {
    if (v.cols() != 1 || v.rows() != m.dim())
        throw DimensionMismatch("quadratic_form: v must be a dim x 1 column");
    return dot(v, m.matrix() * v);
}

}  // namespace opent
