#pragma once

#include "twahss/exact_linalg/matrix.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twahss {

// M = U * D * V with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
// The inverses of U and V come out of the same elimination for free.
struct SmithResult
{
    IntMatrix U, D, V;
    IntMatrix U_inv, V_inv;
    std::size_t rank = 0;

    Integer diag(std::size_t i) const { return i < D.rows() && i < D.cols() ? D(i, i) : Integer(0); }
};

SmithResult smith_normal_form(const IntMatrix& M);

// Optional persistent store for SNF results (see cli). With verify set, every
// cache hit is recomputed and compared.
class SnfStore
{
  public:
    virtual ~SnfStore() = default;
    virtual std::optional<SmithResult> load(const IntMatrix& M) = 0;
    virtual void save(const IntMatrix& M, const SmithResult& r) = 0;
    bool verify = false;
};
void set_snf_store(std::shared_ptr<SnfStore> store);
std::shared_ptr<SnfStore> snf_store();

// Z^free_rank + sum Z/d_i, with d_1 | d_2 | ...
struct FGAbelianGroup
{
    std::size_t free_rank = 0;
    std::vector<Integer> invariant_factors;

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_finite() const { return free_rank == 0; }
    Integer order() const;  // requires is_finite()
    std::string str() const;  // "Z^2+Z/2", "0"

    friend bool operator==(const FGAbelianGroup& a, const FGAbelianGroup& b)
    {
        return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
    }
    friend bool operator!=(const FGAbelianGroup& a, const FGAbelianGroup& b) { return !(a == b); }
};

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);
// Canonical invariant-factor form of an arbitrary list of cyclic orders (0 means Z).
FGAbelianGroup group_from_cyclic_orders(const std::vector<Integer>& orders);

// Quotient Z^n / (column span of R), with coordinates.
// Coordinates: torsion coordinates (mod d_i, increasing chain) first, then free ones.
class Presentation
{
  public:
    Presentation() = default;
    explicit Presentation(const IntMatrix& relations_as_columns);

    std::size_t ambient_dim() const { return n_; }
    const FGAbelianGroup& group() const { return group_; }
    std::size_t num_coords() const { return moduli_.size(); }
    // 0 for free coordinates
    const std::vector<Integer>& moduli() const { return moduli_; }

    IntVec coordinates(const IntVec& x) const;          // reduced; torsion entries in [0, d)
    IntVec generator(std::size_t i) const;             // ambient lift of i-th coordinate generator
    IntVec lift(const IntVec& coords) const;           // ambient vector with given coordinates
    bool is_zero(const IntVec& x) const { return is_zero_vec(coordinates(x)); }
    IntVec reduce_coords(IntVec c) const;

  private:
    std::size_t n_ = 0;
    FGAbelianGroup group_;
    std::vector<Integer> moduli_;
    std::vector<std::size_t> rows_;  // which row of U^{-1} gives each coordinate
    IntMatrix U_, U_inv_;
};

// Rows of M are relations in Z^cols(M).
Presentation cokernel(const IntMatrix& M);
// Z^rows(A) / im(A) for a map A acting on columns.
Presentation cokernel_of_map(const IntMatrix& A);

// Basis (as columns) of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);
// Some x with A x = b over Z when it exists.
std::optional<IntVec> solve_integer(const IntMatrix& A, const IntVec& b);

// L1 / L2 where L1 is spanned by the columns of `basis` (independent) and
// L2 by the columns of `sub` (contained in L1).
class LatticeQuotient
{
  public:
    LatticeQuotient() = default;
    LatticeQuotient(const IntMatrix& basis, const IntMatrix& sub);
    // left_inverse * basis = I; skips the Smith form of the basis
    LatticeQuotient(const IntMatrix& basis, const IntMatrix& left_inverse, const IntMatrix& sub);

    const FGAbelianGroup& group() const { return pres_.group(); }
    const Presentation& presentation() const { return pres_; }
    std::size_t num_coords() const { return pres_.num_coords(); }
    const std::vector<Integer>& moduli() const { return pres_.moduli(); }

    bool contains(const IntVec& x) const;        // x in L1
    IntVec coordinates(const IntVec& x) const;  // requires x in L1
    IntVec representative(std::size_t i) const;
    IntVec representative(const IntVec& coords) const;
    const IntMatrix& basis() const { return basis_; }

  private:
    IntMatrix basis_;
    SmithResult basis_snf_;
    IntMatrix left_inv_;
    bool have_left_inv_ = false;
    Presentation pres_;
    void build(const IntMatrix& sub);
    IntVec basis_coords(const IntVec& x, bool& ok) const;
};

// Subgroups of (Q/Z)^n are handled as annihilators
// ann(L) = {x : <l, x> = 0 mod 1 for l in L} of sublattices L of Z^n.

struct TorusGroup
{
    std::size_t torus_rank = 0;
    FGAbelianGroup torsion;  // finite
    std::vector<Vec<Rational>> torsion_generators;  // one per invariant factor, in (Q/Z)^n

    bool is_trivial() const { return torus_rank == 0 && torsion.is_trivial(); }
    std::string str() const;
};

// {x in (Q/Z)^n : M x = 0}, n = cols(M).
TorusGroup torus_kernel(const IntMatrix& M);
// ann(L2) / ann(L1) for L2 ⊆ L1 given by generating columns; isomorphic to Hom(L1/L2, Q/Z).
TorusGroup annihilator_quotient(const IntMatrix& L1_gens, const IntMatrix& L2_gens);

// Lattice {y in Z^m : F^T y in L}, as generating columns. Describes the image
// of ann(L) under the torus map x -> F x as ann of this lattice.
IntMatrix preimage_lattice(const IntMatrix& F, const IntMatrix& L_gens);

// A basis (as columns) of the lattice spanned by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens);

Vec<Rational> torus_apply(const IntMatrix& M, const Vec<Rational>& x);  // reduced mod 1

}  // namespace twahss
