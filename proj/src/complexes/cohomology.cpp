#include "twahss/complexes/cohomology.hpp"

#include "twahss/errors.hpp"

namespace twahss {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::string coeff_name(Coeff c)
{
    switch (c) {
    case Coeff::Z:
        return "Z";
    case Coeff::Z2:
        return "Z2";
    case Coeff::Q:
        return "Q";
    case Coeff::QZ:
        return "QZ";
    }
    return "?";
}

Coeff parse_coeff(const std::string& s)
{
    if (s == "Z")
        return Coeff::Z;
    if (s == "Z2" || s == "Z/2")
        return Coeff::Z2;
    if (s == "Q")
        return Coeff::Q;
    if (s == "QZ" || s == "RZ" || s == "Q/Z" || s == "R/Z")
        return Coeff::QZ;
    throw ParseError("unknown coefficient group '" + s + "' (expected Z, Z2, Q, RZ)");
}

namespace {

// ker A / im B from the Smith form of A: the kernel basis is V^{-1}[:, r:]
// and its left inverse V[r:, :].
LatticeQuotient kernel_mod_image(const SmithResult& s, const IntMatrix& B)
{
    const std::size_t n = s.V.rows(), r = s.rank;
    IntMatrix basis = s.V_inv.block(0, r, n, n - r);
    IntMatrix left = s.V.block(r, 0, n - r, n);
    return LatticeQuotient(basis, left, B);
}

}  // namespace

// ---------------------------------------------------------------------------

IntegralCohomology::IntegralCohomology(const CochainComplexZ& C, int p)
    : p_(p), n_(C.rank(p)), delta_(C.coboundary(p))
{
    q_ = kernel_mod_image(smith_normal_form(delta_), C.coboundary(p - 1));
}

bool IntegralCohomology::is_cocycle(const IntVec& x) const
{
    return x.size() == n_ && is_zero_vec(delta_ * x);
}

IntVec IntegralCohomology::coordinates(const IntVec& cocycle) const
{
    if (!is_cocycle(cocycle))
        throw PreconditionError("integral cochain of degree " + std::to_string(p_) + " is not a cocycle");
    return q_.coordinates(cocycle);
}

Vec<Rational> IntegralCohomology::rational_coordinates(const Vec<Rational>& cocycle) const
{
    if (cocycle.size() != n_)
        throw std::invalid_argument("rational_coordinates: dimension mismatch");
    Integer den = 1;
    for (const auto& x : cocycle)
        den = boost::multiprecision::lcm(den, denominator(x));
    IntVec scaled(n_);
    for (std::size_t i = 0; i < n_; ++i)
        scaled[i] = numerator(cocycle[i] * den);
    if (!is_cocycle(scaled))
        throw PreconditionError("rational cochain of degree " + std::to_string(p_) + " is not a cocycle");
    IntVec c = q_.coordinates(scaled);
    Vec<Rational> out;
    for (std::size_t k = first_free_coord(); k < c.size(); ++k)
        out.push_back(Rational(c[k], den));
    return out;
}

IntegralHomology::IntegralHomology(const CochainComplexZ& C, int p)
    : p_(p), n_(C.rank(p)), boundary_(C.boundary(p)), snf_(smith_normal_form(boundary_))
{
    q_ = kernel_mod_image(snf_, C.boundary(p + 1));
}

bool IntegralHomology::is_cycle(const IntVec& z) const
{
    return z.size() == n_ && is_zero_vec(boundary_ * z);
}

IntVec IntegralHomology::coordinates(const IntVec& cycle) const
{
    if (!is_cycle(cycle))
        throw PreconditionError("chain of degree " + std::to_string(p_) + " is not a cycle");
    return q_.coordinates(cycle);
}

// ---------------------------------------------------------------------------

FlatCohomology::FlatCohomology(const CochainComplexZ& C, int p)
    : p_(p), n_(C.rank(p)), delta_(C.coboundary(p)), hom_(C, p)
{
    group_.torus_rank = hom_.group().free_rank;
    group_.torsion.invariant_factors = hom_.group().invariant_factors;
}

bool FlatCohomology::is_cocycle(const Vec<Rational>& c) const
{
    if (c.size() != n_)
        return false;
    for (const auto& v : torus_apply(delta_, c))
        if (v != 0)
            return false;
    return true;
}

bool FlatCohomology::valid_coords(const Vec<Rational>& x) const
{
    if (x.size() != num_coords())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (moduli()[i] != 0 && frac(x[i] * Rational(moduli()[i])) != 0)
            return false;
    return true;
}

Vec<Rational> FlatCohomology::coordinates(const Vec<Rational>& c) const
{
    if (!is_cocycle(c))
        throw PreconditionError("Q/Z cochain of degree " + std::to_string(p_) + " is not a cocycle");
    Vec<Rational> x(num_coords());
    for (std::size_t i = 0; i < x.size(); ++i) {
        IntVec z = hom_.generator(i);
        Rational acc = 0;
        for (std::size_t s = 0; s < n_; ++s)
            if (z[s] != 0 && c[s] != 0)
                acc += Rational(z[s]) * c[s];
        x[i] = frac(acc);
    }
    return x;
}

Vec<Rational> FlatCohomology::representative(const Vec<Rational>& x) const
{
    if (!valid_coords(x))
        throw PreconditionError("flat coordinates are not compatible with the torsion orders");
    // values g_i on the basis w_i = V^{-1} e_i; boundaries of the complement get 0
    const SmithResult& s = hom_.boundary_snf();
    Vec<Rational> g(n_, Rational(0));
    for (std::size_t i = s.rank; i < n_; ++i) {
        IntVec hc = hom_.coordinates(s.V_inv.column(i));
        Rational acc = 0;
        for (std::size_t l = 0; l < hc.size(); ++l)
            if (hc[l] != 0)
                acc += Rational(hc[l]) * x[l];
        g[i] = frac(acc);
    }
    Vec<Rational> c(n_, Rational(0));
    for (std::size_t sigma = 0; sigma < n_; ++sigma) {
        Rational acc = 0;
        for (std::size_t i = s.rank; i < n_; ++i)
            if (s.V(i, sigma) != 0 && g[i] != 0)
                acc += Rational(s.V(i, sigma)) * g[i];
        c[sigma] = frac(acc);
    }
    return c;
}

IntMatrix FlatCohomology::lattice() const
{
    std::vector<IntVec> cols;
    for (std::size_t i = 0; i < num_coords(); ++i)
        if (moduli()[i] != 0) {
            IntVec v(num_coords(), Integer(0));
            v[i] = moduli()[i];
            cols.push_back(v);
        }
    return IntMatrix::from_columns(cols, num_coords());
}

// ---------------------------------------------------------------------------

CohomologyData::CohomologyData(SimplicialComplex K) : K_(std::move(K)), C_(coboundary_matrices(K_))
{
    cap_ = K_.dim() + 6;
    H_.resize(cap_ + 1);
    Hh_.resize(cap_ + 1);
    flat_.resize(cap_ + 1);
}

const IntegralCohomology& CohomologyData::H(int p) const
{
    if (p < 0 || p > cap_)
        throw std::out_of_range("cohomology degree out of range");
    if (!H_[p])
        H_[p].emplace(C_, p);
    return *H_[p];
}

const IntegralHomology& CohomologyData::homology(int p) const
{
    if (p < 0 || p > cap_)
        throw std::out_of_range("homology degree out of range");
    if (!Hh_[p])
        Hh_[p].emplace(C_, p);
    return *Hh_[p];
}

const FlatCohomology& CohomologyData::flat(int p) const
{
    if (p < 0 || p > cap_)
        throw std::out_of_range("flat cohomology degree out of range");
    if (!flat_[p])
        flat_[p].emplace(C_, p);
    return *flat_[p];
}

// ---------------------------------------------------------------------------

std::string CohomologyGroup::str() const
{
    switch (coeff) {
    case Coeff::Z:
        return group.str();
    case Coeff::Z2:
        if (dim == 0)
            return "0";
        return dim == 1 ? "Z/2" : "(Z/2)^" + std::to_string(dim);
    case Coeff::Q:
        if (dim == 0)
            return "0";
        return dim == 1 ? "Q" : "Q^" + std::to_string(dim);
    case Coeff::QZ:
        return rz.str();
    }
    return "?";
}

std::vector<CohomologyGroup> cohomology(const SimplicialComplex& K, Coeff coeff)
{
    CochainComplexZ C = coboundary_matrices(K);
    std::vector<IntegralCohomology> HZ;
    if (coeff != Coeff::Z2)
        for (int p = 0; p <= K.dim() + 1; ++p)
            HZ.emplace_back(C, p);
    std::vector<CohomologyGroup> out;
    for (int p = 0; p <= K.dim(); ++p) {
        CohomologyGroup g;
        g.coeff = coeff;
        switch (coeff) {
        case Coeff::Z:
            g.group = HZ[p].group();
            break;
        case Coeff::Z2:
            g.dim = FieldCohomology<Z2>(C, p).dim();
            g.group.invariant_factors.assign(g.dim, Integer(2));
            break;
        case Coeff::Q:
            g.dim = HZ[p].group().free_rank;
            break;
        case Coeff::QZ: {
            // (R/Z)^{b_p} + Tors H^{p+1}(K;Z)
            g.rz.torus_rank = HZ[p].group().free_rank;
            g.rz.torsion.invariant_factors = HZ[p + 1].group().invariant_factors;
            break;
        }
        }
        out.push_back(g);
    }
    return out;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& K)
{
    std::vector<std::size_t> b;
    for (const auto& g : cohomology(K, Coeff::Q))
        b.push_back(g.dim);
    return b;
}

}  // namespace twahss
