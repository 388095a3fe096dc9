#pragma once

#include "twahss/complexes/simplicial_complex.hpp"
#include "twahss/exact_linalg/field_linalg.hpp"
#include "twahss/exact_linalg/smith.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twahss {

enum class Coeff
{
    Z,
    Z2,
    Q,
    QZ  // the R/Z model
};

std::string coeff_name(Coeff c);
Coeff parse_coeff(const std::string& s);  // Z, Z2, Q, QZ, RZ

using RZModelGroup = TorusGroup;

template <class F>
F to_field(const Integer& n);
template <>
inline Rational to_field<Rational>(const Integer& n) { return Rational(n); }
template <>
inline Z2 to_field<Z2>(const Integer& n) { return Z2(n); }
template <>
inline FieldScalar to_field<FieldScalar>(const Integer& n) { return FieldScalar(n); }

template <class F>
Matrix<F> to_field_matrix(const IntMatrix& M)
{
    return M.map([](const Integer& x) { return to_field<F>(x); });
}

// H^p(K; Z) = ker delta_p / im delta_{p-1}, with coordinates.
class IntegralCohomology
{
  public:
    IntegralCohomology() = default;
    IntegralCohomology(const CochainComplexZ& C, int p);

    int degree() const { return p_; }
    const FGAbelianGroup& group() const { return q_.group(); }
    std::size_t num_coords() const { return q_.num_coords(); }
    const std::vector<Integer>& moduli() const { return q_.moduli(); }
    std::size_t cochain_dim() const { return n_; }

    bool is_cocycle(const IntVec& x) const;
    IntVec coordinates(const IntVec& cocycle) const;
    IntVec generator(std::size_t i) const { return q_.representative(i); }
    IntVec representative(const IntVec& coords) const { return q_.representative(coords); }
    bool same_class(const IntVec& x, const IntVec& y) const { return is_zero_vec(coordinates(x - y)); }

    // H^p(K;Q) through the free part: coordinates of a rational cocycle with
    // respect to the free generators.
    std::size_t free_rank() const { return group().free_rank; }
    Vec<Rational> rational_coordinates(const Vec<Rational>& cocycle) const;
    std::size_t first_free_coord() const { return num_coords() - free_rank(); }

  private:
    int p_ = 0;
    std::size_t n_ = 0;
    IntMatrix delta_;
    LatticeQuotient q_;
};

// H_p(K; Z) = ker boundary_p / im boundary_{p+1}.
class IntegralHomology
{
  public:
    IntegralHomology() = default;
    IntegralHomology(const CochainComplexZ& C, int p);

    int degree() const { return p_; }
    const FGAbelianGroup& group() const { return q_.group(); }
    std::size_t num_coords() const { return q_.num_coords(); }
    const std::vector<Integer>& moduli() const { return q_.moduli(); }

    bool is_cycle(const IntVec& z) const;
    IntVec coordinates(const IntVec& cycle) const;
    IntVec generator(std::size_t i) const { return q_.representative(i); }
    const SmithResult& boundary_snf() const { return snf_; }

  private:
    int p_ = 0;
    std::size_t n_ = 0;
    IntMatrix boundary_;
    SmithResult snf_;
    LatticeQuotient q_;
};

// Cohomology over a field F (Rational, Z2 or FieldScalar).
template <class F>
class FieldCohomology
{
  public:
    FieldCohomology() = default;
    FieldCohomology(const CochainComplexZ& C, int p);

    int degree() const { return p_; }
    std::size_t dim() const { return q_.dim(); }
    bool is_cocycle(const Vec<F>& x) const { return is_zero_vec(delta_ * x); }
    Vec<F> coordinates(const Vec<F>& cocycle) const;
    Vec<F> representative(const Vec<F>& coords) const { return q_.lift(coords); }
    const std::vector<Vec<F>>& basis() const { return q_.representatives(); }

  private:
    int p_ = 0;
    Matrix<F> delta_;
    QuotientSpace<F> q_;
};

// H^p(K; Q/Z) realized as Hom(H_p(K;Z), Q/Z). Coordinates of a class are its
// values on the generators of H_p; a torsion generator of order e carries a
// value in (1/e)Z/Z.
class FlatCohomology
{
  public:
    FlatCohomology() = default;
    FlatCohomology(const CochainComplexZ& C, int p);

    int degree() const { return p_; }
    const RZModelGroup& group() const { return group_; }
    std::size_t num_coords() const { return hom_.num_coords(); }
    const std::vector<Integer>& moduli() const { return hom_.moduli(); }  // 0: torus coordinate
    const IntegralHomology& homology() const { return hom_; }
    std::size_t cochain_dim() const { return n_; }

    bool is_cocycle(const Vec<Rational>& c) const;
    bool valid_coords(const Vec<Rational>& x) const;
    Vec<Rational> coordinates(const Vec<Rational>& cocycle) const;
    Vec<Rational> representative(const Vec<Rational>& coords) const;
    // lattice L with group = ann(L): columns e_j * unit_j for torsion coordinates
    IntMatrix lattice() const;

  private:
    int p_ = 0;
    std::size_t n_ = 0;
    IntMatrix delta_;
    IntegralHomology hom_;
    RZModelGroup group_;
};

// Everything a module needs about one complex. Groups are computed on first
// use and cached; not thread-safe.
class CohomologyData
{
  public:
    explicit CohomologyData(SimplicialComplex K);

    const SimplicialComplex& complex() const { return K_; }
    const CochainComplexZ& cochains() const { return C_; }
    int dim() const { return K_.dim(); }

    const IntegralCohomology& H(int p) const;
    const IntegralHomology& homology(int p) const;
    const FlatCohomology& flat(int p) const;

  private:
    SimplicialComplex K_;
    CochainComplexZ C_;
    mutable std::vector<std::optional<IntegralCohomology>> H_;
    mutable std::vector<std::optional<IntegralHomology>> Hh_;
    mutable std::vector<std::optional<FlatCohomology>> flat_;
    int cap_ = 0;
};

struct CohomologyGroup
{
    Coeff coeff = Coeff::Z;
    FGAbelianGroup group;  // Z and Z2
    std::size_t dim = 0;   // Q and Z2
    RZModelGroup rz;       // QZ
    std::string str() const;
};

template <class F>
FieldCohomology<F>::FieldCohomology(const CochainComplexZ& C, int p) : p_(p)
{
    const std::size_t n = C.rank(p);
    delta_ = to_field_matrix<F>(C.coboundary(p));
    Subspace<F> num(n, kernel_basis(delta_));
    Matrix<F> prev = to_field_matrix<F>(C.coboundary(p - 1));
    Subspace<F> den(n);
    for (std::size_t j = 0; j < prev.cols(); ++j)
        den.add(prev.column(j));
    q_ = QuotientSpace<F>(num, den);
}

template <class F>
Vec<F> FieldCohomology<F>::coordinates(const Vec<F>& cocycle) const
{
    auto c = q_.coordinates(cocycle);
    if (!c)
        throw std::invalid_argument("FieldCohomology: input is not a cocycle");
    return *c;
}

std::vector<CohomologyGroup> cohomology(const SimplicialComplex& K, Coeff coeff);
std::vector<std::size_t> betti_numbers(const SimplicialComplex& K);

}  // namespace twahss
