#pragma once

#include "twahss/exact_linalg/scalars.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace twahss {

template <class T>
using Vec = std::vector<T>;

// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix
{
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0)
    {
        std::size_t c = rows.empty() ? cols : rows[0].size();
        Matrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<T>>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<T> row(std::size_t i) const { return Vec<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec<T> column(std::size_t j) const
    {
        Vec<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!is_zero_scalar(x))
                return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    // row(dst) += c * row(src)
    void add_row(std::size_t dst, std::size_t src, const T& c)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            if (!is_zero_scalar((*this)(src, j)))
                (*this)(dst, j) += c * (*this)(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const T& c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!is_zero_scalar((*this)(i, src)))
                (*this)(i, dst) += c * (*this)(i, src);
    }
    void scale_row(std::size_t i, const T& c)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) *= c;
    }
    void scale_col(std::size_t j, const T& c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) *= c;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.cols_ != y.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        Matrix p(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& a = x(i, k);
                if (is_zero_scalar(a))
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!is_zero_scalar(y(k, j)))
                        p(i, j) += a * y(k, j);
            }
        return p;
    }
    friend Vec<T> operator*(const Matrix& x, const Vec<T>& v)
    {
        if (x.cols_ != v.size())
            throw std::invalid_argument("matrix-vector dimension mismatch");
        Vec<T> r(x.rows_, T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k)
                if (!is_zero_scalar(x(i, k)) && !is_zero_scalar(v[k]))
                    r[i] += x(i, k) * v[k];
        return r;
    }
    friend Matrix operator+(Matrix x, const Matrix& y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix sum dimension mismatch");
        for (std::size_t i = 0; i < x.data_.size(); ++i)
            x.data_[i] += y.data_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix difference dimension mismatch");
        for (std::size_t i = 0; i < x.data_.size(); ++i)
            x.data_[i] -= y.data_[i];
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    // [x | y]
    static Matrix hstack(const Matrix& x, const Matrix& y)
    {
        if (x.rows_ != y.rows_)
            throw std::invalid_argument("hstack row mismatch");
        Matrix m(x.rows_, x.cols_ + y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t j = 0; j < x.cols_; ++j)
                m(i, j) = x(i, j);
            for (std::size_t j = 0; j < y.cols_; ++j)
                m(i, x.cols_ + j) = y(i, j);
        }
        return m;
    }
    static Matrix vstack(const Matrix& x, const Matrix& y)
    {
        if (x.cols_ != y.cols_)
            throw std::invalid_argument("vstack column mismatch");
        Matrix m(x.rows_ + y.rows_, x.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j)
                m(i, j) = x(i, j);
        for (std::size_t i = 0; i < y.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j)
                m(x.rows_ + i, j) = y(i, j);
        return m;
    }

    template <class F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))>
    {
        Matrix<decltype(f(std::declval<T>()))> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = f((*this)(i, j));
        return m;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using FieldMatrix = Matrix<FieldScalar>;
using IntVec = Vec<Integer>;
using FieldVec = Vec<FieldScalar>;

template <class T>
Vec<T> operator+(Vec<T> x, const Vec<T>& y)
{
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += y[i];
    return x;
}
template <class T>
Vec<T> operator-(Vec<T> x, const Vec<T>& y)
{
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] -= y[i];
    return x;
}
template <class T>
Vec<T> scaled(Vec<T> x, const T& c)
{
    for (auto& e : x)
        e *= c;
    return x;
}
template <class T>
bool is_zero_vec(const Vec<T>& x)
{
    for (const auto& e : x)
        if (!is_zero_scalar(e))
            return false;
    return true;
}

IntMatrix random_unimodular(std::size_t n, unsigned seed, int steps = 0);
Integer determinant(const IntMatrix& m);  // Bareiss, exact

}  // namespace twahss
