#include "twahss/filtered_ss/filtered_complex.hpp"

#include "twahss/errors.hpp"

namespace twahss {

FieldSubspace preimage(const FieldMatrix& d, const FieldSubspace& S)
{
    const std::size_t n = d.cols(), m = d.rows(), k = S.dim();
    // kernel of [d | -S] projected to the first block
    FieldMatrix M(m, n + k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M(i, j) = d(i, j);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m; ++i)
            M(i, n + j) = -S.basis()[j][i];
    FieldSubspace out(n);
    if (n == 0)
        return out;
    for (const auto& v : kernel_basis(M))
        out.add(FieldVec(v.begin(), v.begin() + n));
    return out;
}

FieldSubspace image(const FieldMatrix& d, const FieldSubspace& S)
{
    FieldSubspace out(d.rows());
    for (const auto& v : S.basis())
        out.add(d * v);
    return out;
}

FilteredComplex::FilteredComplex(std::vector<std::size_t> dims, std::vector<FieldMatrix> diffs,
                                 std::vector<std::vector<std::vector<FieldVec>>> spans, int top, bool periodic)
    : dims_(std::move(dims)), d_(std::move(diffs)), top_(top), periodic_(periodic)
{
    const int L = length();
    if (top_ < 0)
        throw PreconditionError("filtration top must be non-negative");
    if (static_cast<int>(d_.size()) != (periodic_ ? L : std::max(L - 1, 0)))
        throw PreconditionError("filtered complex: wrong number of differentials");
    for (int n = 0; n < static_cast<int>(d_.size()); ++n)
        if (d_[n].cols() != dim(n) || d_[n].rows() != dim(n + 1))
            throw PreconditionError("filtered complex: differential " + std::to_string(n) + " has the wrong shape");
    for (int n = 0; n + 1 < static_cast<int>(d_.size()) + (periodic_ ? 1 : 0); ++n) {
        FieldMatrix dd = d(n + 1) * d(n);
        if (!dd.is_zero())
            throw PreconditionError("filtered complex: d^2 != 0 in degree " + std::to_string(n));
    }
    if (static_cast<int>(spans.size()) != L)
        throw PreconditionError("filtered complex: filtration spans needed for every degree");
    for (int n = 0; n < L; ++n) {
        zero_.emplace_back(dims_[n]);
        std::vector<FieldSubspace> levels;
        FieldSubspace all(dims_[n]);
        for (std::size_t i = 0; i < dims_[n]; ++i) {
            FieldVec e(dims_[n], FieldScalar(0));
            e[i] = FieldScalar(1);
            all.add(e);
        }
        levels.push_back(all);
        if (static_cast<int>(spans[n].size()) != top_)
            throw PreconditionError("filtered complex: expected spans for F_1..F_top");
        for (int p = 1; p <= top_; ++p)
            levels.emplace_back(dims_[n], spans[n][p - 1]);
        levels.emplace_back(dims_[n]);
        for (int p = 1; p <= top_ + 1; ++p)
            if (!levels[p - 1].contains(levels[p]))
                throw PreconditionError("invalid filtration: F_" + std::to_string(p) + " not contained in F_" +
                                        std::to_string(p - 1) + " in degree " + std::to_string(n));
        F_.push_back(std::move(levels));
    }
    for (int n = 0; n < L; ++n) {
        if (!periodic_ && n == L - 1)
            break;
        FieldMatrix dn = d(n);
        for (int p = 0; p <= top_; ++p)
            if (!F(p, n + 1).contains(image(dn, F(p, n))))
                throw PreconditionError("invalid filtration: d(F_" + std::to_string(p) + ") not in F_" +
                                        std::to_string(p) + " in degree " + std::to_string(n));
    }
}

int FilteredComplex::wrap(int n) const
{
    const int L = length();
    if (L == 0)
        return -1;
    if (periodic_)
        return ((n % L) + L) % L;
    return n >= 0 && n < L ? n : -1;
}

std::size_t FilteredComplex::dim(int n) const
{
    int w = wrap(n);
    return w < 0 ? 0 : dims_[w];
}

FieldMatrix FilteredComplex::d(int n) const
{
    int w = wrap(n);
    if (w < 0 || w >= static_cast<int>(d_.size()))
        return FieldMatrix(dim(n + 1), dim(n));
    return d_[w];
}

const FieldSubspace& FilteredComplex::F(int p, int n) const
{
    static const FieldSubspace empty;
    int w = wrap(n);
    if (w < 0)
        return empty;
    if (p <= 0)
        return F_[w][0];
    if (p > top_)
        return zero_[w];
    return F_[w][p];
}

// ---------------------------------------------------------------------------

std::size_t OraclePage::dim(int p, int n) const
{
    auto it = entries.find({p, n});
    return it == entries.end() ? 0 : it->second.dim();
}

std::size_t OraclePage::total_dim(int n) const
{
    std::size_t s = 0;
    for (const auto& [key, e] : entries)
        if (key.second == n)
            s += e.dim();
    return s;
}

FieldSubspace oracle_Z(const FilteredComplex& C, int r, int p, int n)
{
    if (C.dim(n) == 0)
        return FieldSubspace(0);
    FieldSubspace pre = preimage(C.d(n), C.F(p + r, n + 1));
    return C.F(p, n).intersect(pre);
}

namespace {

OracleEntry make_entry(const FilteredComplex& C, int r, int p, int n)
{
    OracleEntry e;
    e.Z = oracle_Z(C, r, p, n);
    FieldSubspace B = oracle_Z(C, r - 1, p + 1, n);
    if (C.dim(n - 1) > 0)
        B = B.sum(image(C.d(n - 1), oracle_Z(C, r - 1, p - r + 1, n - 1)));
    e.B = B;
    e.E = FieldQuotient(e.Z, e.B);
    return e;
}

// total degrees covered by the page
std::vector<int> degrees(const FilteredComplex& C)
{
    std::vector<int> ns;
    for (int n = 0; n < C.length(); ++n)
        ns.push_back(n);
    return ns;
}

}  // namespace

OraclePage page(const FilteredComplex& C, int r)
{
    if (r < 1)
        throw PreconditionError("page index r must be at least 1");
    OraclePage P;
    P.r = r;
    for (int n : degrees(C))
        for (int p = 0; p <= C.top(); ++p)
            P.entries.emplace(std::make_pair(p, n), make_entry(C, r, p, n));
    for (const auto& [key, e] : P.entries) {
        auto [p, n] = key;
        int tn = C.wrap(n + 1);
        auto it = tn < 0 ? P.entries.end() : P.entries.find({p + r, tn});
        std::size_t rows = it == P.entries.end() ? 0 : it->second.dim();
        FieldMatrix M(rows, e.dim());
        if (rows > 0) {
            FieldMatrix dn = C.d(n);
            for (std::size_t j = 0; j < e.dim(); ++j) {
                FieldVec img = dn * e.E.representatives()[j];
                auto c = it->second.E.coordinates(img);
                if (!c)
                    throw std::logic_error("oracle: d does not map Z_r into Z_r");
                for (std::size_t i = 0; i < rows; ++i)
                    M(i, j) = (*c)[i];
            }
        }
        P.differentials.emplace(key, std::move(M));
    }
    return P;
}

std::optional<FieldVec> oracle_class(const OraclePage& P, int p, int n, const FieldVec& z)
{
    auto it = P.entries.find({p, n});
    if (it == P.entries.end())
        return std::nullopt;
    return it->second.E.coordinates(z);
}

std::optional<FieldVec> oracle_differential(const FilteredComplex& C, const OraclePage& P, int p, int n,
                                            const FieldVec& z)
{
    if (!oracle_class(P, p, n, z))
        return std::nullopt;
    int tn = C.wrap(n + 1);
    auto it = P.entries.find({p + P.r, tn});
    if (tn < 0 || it == P.entries.end())
        return FieldVec{};
    return it->second.E.coordinates(C.d(n) * z);
}

Convergence converged(const FilteredComplex& C)
{
    Convergence out;
    out.E_inf = page(C, C.top() + 2);
    out.isomorphic = true;
    for (int n : degrees(C)) {
        FieldMatrix dn = C.d(n);
        FieldSubspace all = C.F(0, n);
        FieldSubspace cycles(C.dim(n), C.dim(n) ? kernel_basis(dn) : std::vector<FieldVec>{});
        FieldSubspace bounds = C.dim(n - 1) ? image(C.d(n - 1), C.F(0, n - 1)) : FieldSubspace(C.dim(n));
        out.cohomology_dims.push_back(cycles.dim() - bounds.dim());
        for (int p = 0; p <= C.top(); ++p) {
            // F_p H = (F_p ∩ ker d + im d) / im d; graded piece over F_{p+1} H
            FieldSubspace num = C.F(p, n).intersect(cycles);
            FieldSubspace den = C.F(p + 1, n).intersect(cycles).sum(bounds.intersect(C.F(p, n)));
            FieldQuotient g(num, den);
            const auto& e = out.E_inf.at(p, n);
            if (g.dim() != e.dim() || !(num == e.Z) || !(den == e.B))
                out.isomorphic = false;
            out.graded.emplace(std::make_pair(p, n), std::move(g));
        }
    }
    return out;
}

}  // namespace twahss
