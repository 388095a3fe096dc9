#pragma once

#include "twahss/exact_linalg/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace twahss {

template <class T>
struct Rref
{
    Matrix<T> R;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class T>
Rref<T> rref(Matrix<T> M)
{
    Rref<T> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        std::size_t p = r;
        while (p < M.rows() && is_zero_scalar(M(p, c)))
            ++p;
        if (p == M.rows())
            continue;
        M.swap_rows(r, p);
        T inv = T(1) / M(r, c);
        M.scale_row(r, inv);
        for (std::size_t i = 0; i < M.rows(); ++i)
            if (i != r && !is_zero_scalar(M(i, c)))
                M.add_row(i, r, -M(i, c));
        out.pivots.push_back(c);
        ++r;
    }
    out.R = std::move(M);
    return out;
}

template <class T>
std::size_t rank_of(const Matrix<T>& M)
{
    return rref(M).pivots.size();
}

template <class T>
std::vector<Vec<T>> kernel_basis(const Matrix<T>& M)
{
    Rref<T> e = rref(M);
    std::vector<bool> is_pivot(M.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vec<T>> basis;
    for (std::size_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec<T> v(M.cols(), T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.R(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
struct FieldSolution
{
    Vec<T> particular;
    std::vector<Vec<T>> kernel;
};

// Free variables are set to zero in the particular solution, so the result
// is the first solution in the order fixed by the echelon form.
template <class T>
std::optional<FieldSolution<T>> solve_field(const Matrix<T>& M, const Vec<T>& b)
{
    if (b.size() != M.rows())
        throw std::invalid_argument("solve_field: dimension mismatch");
    Matrix<T> aug(M.rows(), M.cols() + 1);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j)
            aug(i, j) = M(i, j);
        aug(i, M.cols()) = b[i];
    }
    Rref<T> e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == M.cols())
        return std::nullopt;
    FieldSolution<T> s;
    s.particular.assign(M.cols(), T(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        s.particular[e.pivots[i]] = e.R(i, M.cols());
    s.kernel = kernel_basis(M);
    return s;
}

// Subspace of T^n kept in reduced echelon form (canonical basis).
template <class T>
class Subspace
{
  public:
    Subspace() = default;
    explicit Subspace(std::size_t n) : n_(n) {}
    Subspace(std::size_t n, const std::vector<Vec<T>>& gens) : n_(n)
    {
        for (const auto& g : gens)
            add(g);
    }

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec<T>>& basis() const { return rows_; }

    Vec<T> reduce(Vec<T> v) const
    {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const T c = v[piv_[k]];
            if (is_zero_scalar(c))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!is_zero_scalar(rows_[k][j]))
                    v[j] -= c * rows_[k][j];
        }
        return v;
    }
    bool contains(const Vec<T>& v) const { return is_zero_vec(reduce(v)); }

    // returns true if the dimension grew
    bool add(const Vec<T>& v0)
    {
        if (v0.size() != n_)
            throw std::invalid_argument("Subspace::add: dimension mismatch");
        Vec<T> v = reduce(v0);
        std::size_t p = 0;
        while (p < n_ && is_zero_scalar(v[p]))
            ++p;
        if (p == n_)
            return false;
        T inv = T(1) / v[p];
        for (auto& x : v)
            x *= inv;
        for (auto& r : rows_) {
            T c = r[p];
            if (is_zero_scalar(c))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!is_zero_scalar(v[j]))
                    r[j] -= c * v[j];
        }
        std::size_t pos = 0;
        while (pos < piv_.size() && piv_[pos] < p)
            ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        piv_.insert(piv_.begin() + pos, p);
        return true;
    }

    Subspace sum(const Subspace& o) const
    {
        Subspace s = *this;
        for (const auto& r : o.rows_)
            s.add(r);
        return s;
    }

    Subspace intersect(const Subspace& o) const
    {
        const std::size_t a = dim(), b = o.dim();
        Matrix<T> M(n_, a + b);
        for (std::size_t j = 0; j < a; ++j)
            for (std::size_t i = 0; i < n_; ++i)
                M(i, j) = rows_[j][i];
        for (std::size_t j = 0; j < b; ++j)
            for (std::size_t i = 0; i < n_; ++i)
                M(i, a + j) = -o.rows_[j][i];
        Subspace s(n_);
        for (const auto& k : kernel_basis(M)) {
            Vec<T> v(n_, T(0));
            for (std::size_t j = 0; j < a; ++j)
                if (!is_zero_scalar(k[j]))
                    for (std::size_t i = 0; i < n_; ++i)
                        v[i] += k[j] * rows_[j][i];
            s.add(v);
        }
        return s;
    }

    bool contains(const Subspace& o) const
    {
        for (const auto& r : o.rows_)
            if (!contains(r))
                return false;
        return true;
    }
    friend bool operator==(const Subspace& x, const Subspace& y) { return x.n_ == y.n_ && x.rows_ == y.rows_; }

  private:
    std::size_t n_ = 0;
    std::vector<Vec<T>> rows_;
    std::vector<std::size_t> piv_;
};

// Expresses vectors in terms of a fixed independent family of generators.
template <class T>
class Coordinatizer
{
  public:
    Coordinatizer() = default;
    Coordinatizer(std::size_t n, const std::vector<Vec<T>>& gens) : n_(n), k_(gens.size())
    {
        // rows: [g_i | e_i]; echelon form on the first n columns tracks the combination
        Matrix<T> A(k_, n_ + k_);
        for (std::size_t i = 0; i < k_; ++i) {
            if (gens[i].size() != n_)
                throw std::invalid_argument("Coordinatizer: generator dimension mismatch");
            for (std::size_t j = 0; j < n_; ++j)
                A(i, j) = gens[i][j];
            A(i, n_ + i) = T(1);
        }
        Rref<T> e = rref(std::move(A));
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            if (e.pivots[r] >= n_)
                throw std::invalid_argument("Coordinatizer: generators are dependent");
            piv_.push_back(e.pivots[r]);
            Vec<T> row = e.R.row(r);
            rows_.push_back(row);
        }
        if (piv_.size() != k_)
            throw std::invalid_argument("Coordinatizer: generators are dependent");
    }

    std::optional<Vec<T>> express(const Vec<T>& v) const
    {
        if (v.size() != n_)
            throw std::invalid_argument("Coordinatizer: dimension mismatch");
        Vec<T> w = v;
        Vec<T> c(k_, T(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            T a = w[piv_[r]];
            if (is_zero_scalar(a))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!is_zero_scalar(rows_[r][j]))
                    w[j] -= a * rows_[r][j];
            for (std::size_t j = 0; j < k_; ++j)
                if (!is_zero_scalar(rows_[r][n_ + j]))
                    c[j] += a * rows_[r][n_ + j];
        }
        if (!is_zero_vec(w))
            return std::nullopt;
        return c;
    }

    std::size_t size() const { return k_; }

  private:
    std::size_t n_ = 0, k_ = 0;
    std::vector<Vec<T>> rows_;
    std::vector<std::size_t> piv_;
};

// N / D for subspaces D ⊆ N, with a deterministic basis of representatives
// (greedy over the echelon basis of N).
template <class T>
class QuotientSpace
{
  public:
    QuotientSpace() = default;
    QuotientSpace(const Subspace<T>& num, const Subspace<T>& den) : num_(num), den_(den)
    {
        if (!num.contains(den))
            throw std::invalid_argument("QuotientSpace: denominator not contained in numerator");
        Subspace<T> acc = den;
        for (const auto& v : num.basis())
            if (acc.add(v))
                reps_.push_back(v);
        std::vector<Vec<T>> gens = reps_;
        for (const auto& d : den.basis())
            gens.push_back(d);
        coord_ = Coordinatizer<T>(num.ambient(), gens);
    }

    std::size_t dim() const { return reps_.size(); }
    const std::vector<Vec<T>>& representatives() const { return reps_; }
    const Subspace<T>& numerator() const { return num_; }
    const Subspace<T>& denominator() const { return den_; }

    // nullopt when v is not in the numerator
    std::optional<Vec<T>> coordinates(const Vec<T>& v) const
    {
        auto c = coord_.express(v);
        if (!c)
            return std::nullopt;
        c->resize(reps_.size());
        return c;
    }
    Vec<T> lift(const Vec<T>& coords) const
    {
        Vec<T> v(num_.ambient(), T(0));
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (!is_zero_scalar(coords[i]))
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] += coords[i] * reps_[i][j];
        return v;
    }

  private:
    Subspace<T> num_, den_;
    std::vector<Vec<T>> reps_;
    Coordinatizer<T> coord_;
};

}  // namespace twahss
