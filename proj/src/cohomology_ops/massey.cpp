#include "twahss/cohomology_ops/massey.hpp"

#include "twahss/errors.hpp"

#include <random>

namespace twahss {

bool MasseyCoset::same_coset(const MasseyCoset& o) const
{
    if (degree != o.degree || !(indeterminacy == o.indeterminacy))
        return false;
    return indeterminacy.contains(representative - o.representative);
}

namespace {

struct BlockSystem
{
    FieldMatrix M;
    FieldVec b;
    std::vector<std::size_t> col_offset;  // unknown block j starts here (j = 1..s)
};

// equations and unknowns 1..s of the defining system
BlockSystem build_system(const DGA& A, const FieldVec& H, const FieldVec& x, int p, int s)
{
    std::vector<std::size_t> roff(s + 2, 0), coff(s + 2, 0);
    for (int j = 1; j <= s; ++j) {
        roff[j + 1] = roff[j] + A.dim(p + 2 * j + 1);
        coff[j + 1] = coff[j] + A.dim(p + 2 * j);
    }
    BlockSystem sys;
    sys.M = FieldMatrix(roff[s + 1], coff[s + 1]);
    sys.b.assign(roff[s + 1], FieldScalar(0));
    sys.col_offset = coff;
    for (int j = 1; j <= s; ++j) {
        FieldMatrix dj = A.differential(p + 2 * j);
        for (std::size_t r = 0; r < dj.rows(); ++r)
            for (std::size_t c = 0; c < dj.cols(); ++c)
                sys.M(roff[j] + r, coff[j] + c) = dj(r, c);
        if (j >= 2) {
            FieldMatrix L = A.left_multiplication(H, 3, p + 2 * j - 2);
            for (std::size_t r = 0; r < L.rows(); ++r)
                for (std::size_t c = 0; c < L.cols(); ++c)
                    sys.M(roff[j] + r, coff[j - 1] + c) = L(r, c);
        }
    }
    FieldVec hx = A.multiply(H, 3, x, p);
    for (std::size_t r = 0; r < hx.size(); ++r)
        sys.b[roff[1] + r] = -hx[r];
    return sys;
}

FieldVec block(const FieldVec& y, const BlockSystem& sys, int j)
{
    return FieldVec(y.begin() + sys.col_offset[j], y.begin() + sys.col_offset[j + 1]);
}

void check_inputs(const DGA& A, const FieldVec& H, const FieldVec& x, int p, int k)
{
    if (k < 1)
        throw PreconditionError("Massey product length k must be at least 1");
    if (H.size() != A.dim(3) || x.size() != A.dim(p))
        throw PreconditionError("Massey product: inconsistent degrees");
    if (!A.is_cocycle(H, 3))
        throw PreconditionError("Massey product: H is not a cocycle");
    if (!A.is_cocycle(x, p))
        throw PreconditionError("Massey product: x is not a cocycle");
    if (!is_zero_vec(A.multiply(H, 3, H, 3)))
        throw PreconditionError("Massey product: H*H must vanish");
}

}  // namespace

std::optional<std::vector<FieldVec>> massey_defining_system(const DGA& A, const FieldVec& H, const FieldVec& x,
                                                            int p, int k, int& undefined_stage)
{
    check_inputs(A, H, x, p, k);
    undefined_stage = 0;
    std::vector<FieldVec> out{x};
    if (k == 1)
        return out;
    std::optional<FieldSolution<FieldScalar>> sol;
    BlockSystem sys;
    for (int s = 1; s <= k - 1; ++s) {
        sys = build_system(A, H, x, p, s);
        sol = solve_field(sys.M, sys.b);
        if (!sol) {
            undefined_stage = s;
            return std::nullopt;
        }
    }
    for (int j = 1; j <= k - 1; ++j)
        out.push_back(block(sol->particular, sys, j));
    return out;
}

MasseyResult massey_iterated(const DGA& A, const FieldVec& H, const FieldVec& x, int p, int k,
                             std::optional<unsigned> seed)
{
    check_inputs(A, H, x, p, k);
    const int target = p + 2 * k + 1;
    FieldQuotient Ht = A.cohomology(target);
    MasseyResult res;
    MasseyCoset c;
    c.degree = target;
    c.indeterminacy = FieldSubspace(Ht.dim());

    FieldVec last = x;
    if (k >= 2) {
        int stage = 0;
        std::optional<FieldSolution<FieldScalar>> sol;
        BlockSystem sys;
        for (int s = 1; s <= k - 1; ++s) {
            sys = build_system(A, H, x, p, s);
            sol = solve_field(sys.M, sys.b);
            if (!sol) {
                stage = s;
                break;
            }
        }
        if (stage) {
            res.undefined_stage = stage;
            return res;
        }
        FieldVec y = sol->particular;
        if (seed) {
            std::mt19937 rng(*seed);
            for (const auto& kv : sol->kernel) {
                FieldScalar t(Rational(static_cast<int>(rng() % 7) - 3), Rational(static_cast<int>(rng() % 5) - 2));
                for (std::size_t i = 0; i < y.size(); ++i)
                    y[i] += t * kv[i];
            }
        }
        last = block(y, sys, k - 1);
        const int dl = p + 2 * (k - 1);
        for (const auto& kv : sol->kernel) {
            FieldVec hy = A.multiply(H, 3, block(kv, sys, k - 1), dl);
            auto co = Ht.coordinates(hy);
            if (!co)
                throw std::logic_error("Massey indeterminacy element is not closed");
            c.indeterminacy.add(*co);
        }
    }
    c.element = A.multiply(H, 3, last, p + 2 * (k - 1));
    auto co = Ht.coordinates(c.element);
    if (!co)
        throw std::logic_error("Massey representative is not closed");
    c.representative = *co;
    res.coset = std::move(c);
    return res;
}

}  // namespace twahss
