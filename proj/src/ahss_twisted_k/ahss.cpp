#include "twahss/ahss_twisted_k/ahss.hpp"

#include "twahss/cohomology_ops/cochain_ops.hpp"
#include "twahss/errors.hpp"

namespace twahss {

TwistCocycle::TwistCocycle(const CohomologyData& D, IntVec h) : D_(&D), h_(std::move(h))
{
    if (h_.size() != D.complex().count(3))
        throw PreconditionError("twist cochain has " + std::to_string(h_.size()) + " entries, expected " +
                                std::to_string(D.complex().count(3)));
    if (!D.H(3).is_cocycle(h_))
        throw PreconditionError("twist h is not a cocycle");
}

TwistCocycle TwistCocycle::from_int(const CohomologyData& D, const Integer& m)
{
    const auto& H3 = D.H(3);
    if (m == 0)
        return TwistCocycle(D, IntVec(D.complex().count(3), Integer(0)));
    if (H3.free_rank() == 0)
        throw PreconditionError("H^3 has no free summand, so an integer twist other than 0 is undefined");
    IntVec coords(H3.num_coords(), Integer(0));
    coords[H3.first_free_coord()] = m;
    return from_coords(D, coords);
}

TwistCocycle TwistCocycle::from_coords(const CohomologyData& D, const IntVec& coords)
{
    if (coords.size() != D.H(3).num_coords())
        throw PreconditionError("twist coordinates do not match H^3");
    return TwistCocycle(D, D.H(3).representative(coords));
}

const FGAbelianGroup& IntegralPage::at(int p) const
{
    static const FGAbelianGroup zero;
    return p < 0 || p >= static_cast<int>(row.size()) ? zero : row[p];
}

FGAbelianGroup IntegralPage::at(int p, int q) const
{
    return q % 2 == 0 ? at(p) : FGAbelianGroup{};
}

IntegralPage e2_page(const CohomologyData& D)
{
    IntegralPage P;
    for (int p = 0; p <= D.dim(); ++p)
        P.row.push_back(D.H(p).group());
    return P;
}

IntVec d3_cochain(const TwistCocycle& h, const IntVec& x, int p, int lambda)
{
    if (lambda != 1 && lambda != -1)
        throw PreconditionError("sign convention lambda must be +1 or -1");
    const CohomologyData& D = h.data();
    IntVec s = sq3_Z(D, x, p);
    IntVec c = cup(D.complex(), x, p, h.cochain(), 3);
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] += lambda * c[i];
    return s;
}

IntVec d3_class(const TwistCocycle& h, const IntVec& coords, int p, int lambda)
{
    const CohomologyData& D = h.data();
    return D.H(p + 3).coordinates(d3_cochain(h, D.H(p).representative(coords), p, lambda));
}

D3Map d3_map(const TwistCocycle& h, int lambda)
{
    const CohomologyData& D = h.data();
    D3Map out;
    out.lambda = lambda;
    for (int p = 0; p <= D.dim(); ++p) {
        const auto& Hp = D.H(p);
        const auto& Ht = D.H(p + 3);
        IntMatrix M(Ht.num_coords(), Hp.num_coords());
        for (std::size_t j = 0; j < Hp.num_coords(); ++j) {
            IntVec c = Ht.coordinates(d3_cochain(h, Hp.generator(j), p, lambda));
            for (std::size_t i = 0; i < c.size(); ++i)
                M(i, j) = c[i];
        }
        out.matrices.emplace(p, std::move(M));
    }
    return out;
}

bool is_zero_hom(const IntMatrix& M, const std::vector<Integer>& target_moduli)
{
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) {
            const Integer& m = target_moduli[i];
            if (m == 0 ? M(i, j) != 0 : mod_nonneg(M(i, j), m) != 0)
                return false;
        }
    return true;
}

namespace {

// relation lattice of a coordinate group: e_i * modulus_i for torsion coordinates
IntMatrix relations(const std::vector<Integer>& moduli)
{
    std::size_t t = 0;
    for (const auto& m : moduli)
        t += m != 0;
    IntMatrix R(moduli.size(), t);
    std::size_t c = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] != 0)
            R(i, c++) = moduli[i];
    return R;
}

IntMatrix hcat(const IntMatrix& A, const IntMatrix& B)
{
    IntMatrix M(A.rows(), A.cols() + B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j)
            M(i, j) = A(i, j);
        for (std::size_t j = 0; j < B.cols(); ++j)
            M(i, A.cols() + j) = B(i, j);
    }
    return M;
}

// ker(F: G -> G') / im(E: G'' -> G) for coordinate groups with the given moduli
FGAbelianGroup homology_at(const IntMatrix& E, const IntMatrix& F, const std::vector<Integer>& mod,
                           const std::vector<Integer>& mod_target)
{
    const std::size_t n = mod.size();
    if (n == 0)
        return {};
    // {x in Z^n : F x in R'}
    IntMatrix kernel_gens;
    if (mod_target.empty()) {
        kernel_gens = IntMatrix::identity(n);
    } else {
        IntMatrix Rt = relations(mod_target);
        IntMatrix A = hcat(F, Rt);
        IntMatrix ker = integer_kernel(A);
        kernel_gens = IntMatrix(n, ker.cols());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < ker.cols(); ++j)
                kernel_gens(i, j) = ker(i, j);
    }
    IntMatrix basis = lattice_basis(kernel_gens);
    if (basis.cols() == 0)
        return {};
    IntMatrix sub = hcat(E, relations(mod));
    return LatticeQuotient(basis, sub).group();
}

}  // namespace

AhssResult e4_and_einfinity(const TwistCocycle& h, int lambda)
{
    const CohomologyData& D = h.data();
    if (D.dim() > 4)
        throw UnsupportedError("complex has dimension " + std::to_string(D.dim()) +
                               "; integral differentials beyond d3 (needed above dimension 4) are out of scope");
    AhssResult out;
    out.E2 = e2_page(D);
    out.d3 = d3_map(h, lambda);
    out.E4.r = 4;
    for (int p = 0; p <= D.dim(); ++p) {
        const IntMatrix& F = out.d3.at(p);
        IntMatrix E = p >= 3 ? out.d3.at(p - 3) : IntMatrix(D.H(p).num_coords(), 0);
        if (p >= 3 && !is_zero_hom(F * E, D.H(p + 3).moduli()))
            out.d3_squares_to_zero = false;
        out.E4.row.push_back(homology_at(E, F, D.H(p).moduli(), D.H(p + 3).moduli()));
    }
    if (!out.d3_squares_to_zero)
        throw std::logic_error("d3 does not square to zero");
    for (int p = 0; p <= D.dim(); ++p) {
        const auto& g = out.E4.at(p);
        if (!g.is_trivial())
            (p % 2 ? out.K1_graded : out.K0_graded).push_back(g);
    }
    out.K0_extension_resolved = out.K0_graded.size() <= 1;
    out.K1_extension_resolved = out.K1_graded.size() <= 1;
    if (out.K0_extension_resolved && !out.K0_graded.empty())
        out.K0 = out.K0_graded[0];
    if (out.K1_extension_resolved && !out.K1_graded.empty())
        out.K1 = out.K1_graded[0];
    return out;
}

NaturalityReport naturality_check(const SimplicialMap& f, const IntVec& h_on_target, int lambda)
{
    NaturalityReport rep;
    rep.map_name = f.name();
    CohomologyData DK(f.source()), DL(f.target());
    TwistCocycle hL(DL, h_on_target);
    TwistCocycle hK(DK, f.pullback(h_on_target, 3));
    for (int p = 0; p <= f.target().dim(); ++p) {
        const auto& Hp = DL.H(p);
        for (std::size_t i = 0; i < Hp.num_coords(); ++i) {
            IntVec x = Hp.generator(i);
            IntVec lhs = f.pullback(d3_cochain(hL, x, p, lambda), p + 3);
            IntVec rhs = d3_cochain(hK, f.pullback(x, p), p, lambda);
            ++rep.classes_checked;
            if (!DK.H(p + 3).same_class(lhs, rhs))
                rep.failures.push_back("degree " + std::to_string(p) + ", generator " + std::to_string(i));
        }
    }
    return rep;
}

MvS3Report mv_s3(const Integer& h)
{
    if (h < 0)
        throw PreconditionError("mv-s3 needs h >= 0");
    MvS3Report r;
    r.h = h;
    r.matrix = IntMatrix::from_rows({{Integer(1), h - 1}, {Integer(0), -h}});
    r.kernel_Z.free_rank = integer_kernel(r.matrix).cols();
    r.cokernel_Z = cokernel_of_map(r.matrix).group();
    r.kernel_QZ = torus_kernel(r.matrix);
    r.khat0_discrete = r.kernel_Z;
    r.khat1_discrete = r.cokernel_Z;
    return r;
}

}  // namespace twahss
