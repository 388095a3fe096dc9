#pragma once

#include "twahss/cohomology_ops/massey.hpp"
#include "twahss/filtered_ss/filtered_complex.hpp"
#include "twahss/twisted_derham/cdga.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twahss {

// Element of the 2-periodic complex: components[p] lives in A^p, and only
// degrees p = parity mod 2 may be nonzero. The u-powers are implicit.
struct PeriodicElement
{
    int parity = 0;
    std::vector<FieldVec> components;  // indexed by degree 0..N

    static PeriodicElement zero(const DGA& A, int parity);
    static PeriodicElement from_flat(const DGA& A, int parity, const FieldVec& v);
    FieldVec flat() const;
    bool is_zero() const;
    friend bool operator==(const PeriodicElement& a, const PeriodicElement& b)
    {
        return a.parity == b.parity && a.components == b.components;
    }
};

std::size_t periodic_dim(const DGA& A, int parity);
std::size_t periodic_offset(const DGA& A, int degree);  // start of A^degree in the flat vector

struct TwistForm
{
    FieldVec H;                // degree 3
    std::optional<FieldVec> B; // degree 2 potential, dB = H

    void validate(const DGA& A) const;
};

// d_H : parity -> 1 - parity, as a matrix on flat vectors.
FieldMatrix twisted_matrix(const DGA& A, const FieldVec& H, int parity);
PeriodicElement twisted_differential(const DGA& A, const FieldVec& H, const PeriodicElement& x);

struct TwistedCohomology
{
    FieldQuotient even, odd;
    std::size_t even_dim() const { return even.dim(); }
    std::size_t odd_dim() const { return odd.dim(); }
    const FieldQuotient& of(int parity) const { return parity ? odd : even; }
};

TwistedCohomology twisted_cohomology(const DGA& A, const FieldVec& H);

// Periodic complex (length 2) filtered by lowest nonzero degree, top = N.
FilteredComplex as_filtration(const DGA& A, const FieldVec& H);
// Oracle pages E_2 .. E_{N+2}; the last one is E_infinity.
std::vector<OraclePage> ss_pages(const FilteredComplex& C);

// d_{2k+1}[x] as a Massey coset (see massey_iterated for the sign).
MasseyResult massey_differential(const DGA& A, const FieldVec& H, const FieldVec& x, int p, int k,
                                 std::optional<unsigned> seed = std::nullopt);

struct MasseyOracleReport
{
    std::size_t classes_checked = 0;    // surviving E_r basis classes compared as cosets
    std::size_t undefined_checked = 0;  // non-surviving classes confirmed Undefined
    std::size_t higher_nonzero = 0;     // classes with d_r != 0 for some r >= 5
    std::vector<std::string> failures;
    bool agree() const { return failures.empty(); }
};

// For every odd page r = 2k+1 and every degree p: the Massey coset of each
// surviving class matches the oracle d_r, the indeterminacy equals the
// boundaries of the page, and classes that do not survive are Undefined at
// the right stage.
MasseyOracleReport massey_oracle_check(const DGA& A, const FieldVec& H);

// e^{-B} x and its inverse e^{B} x
PeriodicElement exp_trivialize(const DGA& A, const TwistForm& t, const PeriodicElement& x);
PeriodicElement exp_untrivialize(const DGA& A, const TwistForm& t, const PeriodicElement& x);

struct RandomCDGA
{
    CDGAModel model;
    FieldVec H;
    std::string description;
};

// Free graded-commutative on at most 4 generators, truncated at degree <= 9,
// with a random closed differential and a random closed H.
RandomCDGA random_cdga(unsigned seed);

}  // namespace twahss
