#pragma once

// Generators and probes shared by the unit tests and the acceptance run.

#include "twahss/cohomology_ops/cochain_ops.hpp"
#include "twahss/diff_refinement/diffk.hpp"
#include "twahss/exact_linalg/smith.hpp"
#include "twahss/filtered_ss/filtered_complex.hpp"

#include <algorithm>
#include <random>

namespace twahss::testing {

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t maxdim, int range)
{
    std::uniform_int_distribution<int> dim(0, static_cast<int>(maxdim));
    std::uniform_int_distribution<int> ent(-range, range);
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            M(i, j) = ent(rng);
    return M;
}

inline bool is_diagonal_chain(const SmithResult& s)
{
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j && s.D(i, j) != 0)
                return false;
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (s.diag(i) <= 0)
            return false;
        if (i + 1 < s.rank && s.diag(i + 1) % s.diag(i) != 0)
            return false;
    }
    for (std::size_t i = s.rank; i < std::min(s.D.rows(), s.D.cols()); ++i)
        if (s.diag(i) != 0)
            return false;
    return true;
}


inline FieldVec unit(std::size_t n, std::size_t i)
{
    FieldVec e(n, FieldScalar(0));
    e[i] = FieldScalar(1);
    return e;
}

inline FieldScalar small(std::mt19937& rng)
{
    return FieldScalar(Rational(static_cast<int>(rng() % 5) - 2),
                       rng() % 4 == 0 ? Rational(static_cast<int>(rng() % 3) - 1) : Rational(0));
}

// Random filtered complex: a split complex conjugated by filtration-preserving
// unitriangular automorphisms, so d^2 = 0 and d(F_p) in F_p hold by construction.
struct RandomFC
{
    FilteredComplex C;
    std::vector<std::vector<int>> levels;
};

inline RandomFC random_filtered(std::mt19937& rng, int L, int top, bool respan)
{
    std::vector<std::size_t> dims;
    std::vector<std::vector<int>> lev(L);
    for (int n = 0; n < L; ++n) {
        std::size_t k = 1 + rng() % 5;
        dims.push_back(k);
        for (std::size_t i = 0; i < k; ++i)
            lev[n].push_back(static_cast<int>(rng() % (top + 1)));
        std::sort(lev[n].begin(), lev[n].end());
    }
    // split complex: pair basis vectors e_i (n) -> e_j (n+1) with lev(j) >= lev(i)
    std::vector<FieldMatrix> S;
    std::vector<std::vector<bool>> used_src(L), used_tgt(L);
    for (int n = 0; n < L; ++n) {
        used_src[n].assign(dims[n], false);
        used_tgt[n].assign(dims[n], false);
    }
    for (int n = 0; n + 1 < L; ++n) {
        FieldMatrix M(dims[n + 1], dims[n]);
        for (std::size_t i = 0; i < dims[n]; ++i) {
            if (used_tgt[n][i] || rng() % 2)
                continue;
            for (std::size_t j = 0; j < dims[n + 1]; ++j)
                if (!used_tgt[n + 1][j] && !used_src[n + 1][j] && lev[n + 1][j] >= lev[n][i]) {
                    M(j, i) = FieldScalar(1);
                    used_src[n][i] = true;
                    used_tgt[n + 1][j] = true;
                    break;
                }
        }
        S.push_back(M);
    }
    // filtered automorphisms T_n: upper triangular w.r.t. levels (unit diagonal)
    std::vector<FieldMatrix> T, Ti;
    for (int n = 0; n < L; ++n) {
        FieldMatrix A = FieldMatrix::identity(dims[n]);
        for (std::size_t i = 0; i < dims[n]; ++i)
            for (std::size_t j = 0; j < dims[n]; ++j)
                if (i != j && lev[n][i] >= lev[n][j] && j < i)
                    A(i, j) = small(rng);
        // A maps e_j into span of e_i with lev(i) >= lev(j): filtration preserving
        FieldMatrix inv = FieldMatrix::identity(dims[n]);
        // lower unitriangular: invert by forward substitution
        for (std::size_t j = 0; j < dims[n]; ++j)
            for (std::size_t i = j + 1; i < dims[n]; ++i) {
                FieldScalar s(0);
                for (std::size_t k = j; k < i; ++k)
                    s += A(i, k) * inv(k, j);
                inv(i, j) = -s;
            }
        T.push_back(A);
        Ti.push_back(inv);
    }
    std::vector<FieldMatrix> d;
    for (int n = 0; n + 1 < L; ++n)
        d.push_back(T[n + 1] * S[n] * Ti[n]);

    std::vector<std::vector<std::vector<FieldVec>>> spans(L);
    for (int n = 0; n < L; ++n)
        for (int p = 1; p <= top; ++p) {
            std::vector<FieldVec> span;
            for (std::size_t i = 0; i < dims[n]; ++i)
                if (lev[n][i] >= p)
                    span.push_back(unit(dims[n], i));
            if (respan && span.size() >= 2) {
                // other spanning set: partial sums plus a redundant vector
                for (std::size_t i = 1; i < span.size(); ++i)
                    span[i] = span[i] + span[i - 1];
                span.push_back(span[0] + span.back());
            }
            spans[n].push_back(span);
        }
    return {FilteredComplex(dims, d, spans, top, false), lev};
}


// generators of the flat group in degree p plus a few torus values and one sum
inline std::vector<Vec<Rational>> flat_probes(const FlatCohomology& F)
{
    const std::size_t n = F.num_coords();
    std::vector<Vec<Rational>> out;
    Vec<Rational> sum(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> vals;
        if (F.moduli()[i] != 0)
            vals = {Rational(1) / Rational(F.moduli()[i])};
        else
            vals = {Rational(1, 2), Rational(1, 3), Rational(2, 5)};
        for (const auto& v : vals) {
            Vec<Rational> e(n, Rational(0));
            e[i] = v;
            out.push_back(e);
        }
        sum[i] = vals.back() * Rational(static_cast<long>(i + 1));
    }
    if (n > 1)
        out.push_back(reduce_mod1(sum));
    return out;
}

inline GerbeData gerbe_on(const CohomologyData& D, const CDGAModel& A, const IntVec& h, int lambda)
{
    GerbeData G;
    G.D = &D;
    G.A = &A;
    G.h = h;
    G.lambda = lambda;
    return G;
}


// degree-5 case on RP^2 x S^3 at the cochain level, where beta(x) u h != 0;
// classes are compared in H^5(Z/2), into which H^5(Z) = Z/2 injects
struct CochainBetaCheck
{
    bool witness_nonzero = false;  // beta(x) u h != 0
    bool agree = true;             // beta d_fl3 x = d3 beta x for both signs
    bool lhs_nonzero = true;
};

inline CochainBetaCheck rp2_s3_beta_check()
{
    SimplicialComplex RP2 = builtin_model("rp2_6vertex"), S3 = builtin_model("sphere(3)");
    CohomologyData D(product(RP2, S3));
    const SimplicialComplex& K = D.complex();
    const int nb = S3.num_vertices();
    auto pull = [&](const SimplicialComplex& F, int p, bool first, auto value) {
        using T = decltype(value(std::size_t{0}));
        Vec<T> out(K.count(p), T(0));
        for (std::size_t i = 0; i < K.count(p); ++i) {
            Simplex img;
            for (int v : K.simplices(p)[i])
                img.push_back(first ? v / nb : v % nb);
            if (std::adjacent_find(img.begin(), img.end()) == img.end())
                out[i] = value(F.index_of(img));
        }
        return out;
    };
    FieldCohomology<Z2> w1(coboundary_matrices(RP2), 1);
    Vec<Z2> w = pull(RP2, 1, true, [&](std::size_t j) { return w1.basis()[0][j]; });
    Vec<Rational> x(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        x[i] = w[i].bit() ? Rational(1, 2) : Rational(0);
    CohomologyData DS(S3);
    IntVec g = DS.H(3).generator(DS.H(3).first_free_coord());
    IntVec h = pull(S3, 3, false, [&](std::size_t j) { return g[j]; });
    CochainBetaCheck out;
    if (!is_zero_vec(D.cochains().coboundary(3) * h)) {
        out.agree = false;
        return out;
    }
    FieldCohomology<Z2> H5(D.cochains(), 5);
    IntVec bx = bockstein_QZ(D, x, 1);
    IntVec bxh = cup(K, bx, 2, h, 3);
    out.witness_nonzero = !is_zero_vec(H5.coordinates(reduce_mod2(bxh)));
    for (int lambda : {-1, 1}) {
        Vec<Rational> s = sq3_flat(D, x, 1), c = db_cup_flat(D, h, x, 1);
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] += Rational(lambda) * c[i];
        IntVec lhs = bockstein_QZ(D, reduce_mod1(s), 4);
        IntVec rhs = sq3_Z(D, bx, 2);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] += Integer(lambda) * bxh[i];
        out.agree = out.agree && is_zero_vec(H5.coordinates(reduce_mod2(lhs - rhs)));
        out.lhs_nonzero = out.lhs_nonzero && !is_zero_vec(H5.coordinates(reduce_mod2(lhs)));
    }
    return out;
}

}  // namespace twahss::testing
