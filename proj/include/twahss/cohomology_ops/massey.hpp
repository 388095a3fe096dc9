#pragma once

#include "twahss/cohomology_ops/dga.hpp"

#include <optional>

namespace twahss {

// A class together with the indeterminacy subspace it is defined modulo.
// Both are expressed in the coordinates of H^degree(A).
struct MasseyCoset
{
    int degree = 0;
    FieldVec element;        // cocycle in A^degree
    FieldVec representative; // its cohomology coordinates
    FieldSubspace indeterminacy;

    bool contains_zero() const { return indeterminacy.contains(representative); }
    bool same_coset(const MasseyCoset& o) const;
};

struct MasseyResult
{
    std::optional<MasseyCoset> coset;
    int undefined_stage = 0;  // first stage j whose product is not exact

    bool defined() const { return coset.has_value(); }
};

// Defining system x_(0) = x, d x_(j) = -H x_(j-1) for j < k, solved jointly;
// the result is the class of H x_(k-1), modulo the classes H y_(k-1) coming
// from solutions y of the homogeneous system. k = 1 gives [H x] with zero
// indeterminacy. With a seed, a random homogeneous solution is added to the
// particular solution.
MasseyResult massey_iterated(const DGA& A, const FieldVec& H, const FieldVec& x, int p, int k,
                             std::optional<unsigned> seed = std::nullopt);

// The defining system itself (x_(0), ..., x_(k-1)) when one exists.
std::optional<std::vector<FieldVec>> massey_defining_system(const DGA& A, const FieldVec& H, const FieldVec& x,
                                                            int p, int k, int& undefined_stage);

}  // namespace twahss
