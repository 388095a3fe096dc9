#pragma once

#include "twahss/exact_linalg/field_linalg.hpp"

namespace twahss {

using FieldSubspace = Subspace<FieldScalar>;
using FieldQuotient = QuotientSpace<FieldScalar>;

// A finite-dimensional DGA over Q(sqrt2). Elements of degree n are vectors of
// length dim(n); anything above top_degree() is zero.
class DGA
{
  public:
    virtual ~DGA() = default;

    virtual int top_degree() const = 0;
    virtual std::size_t dim(int n) const = 0;
    // d : A^n -> A^{n+1}
    virtual FieldMatrix differential(int n) const = 0;
    virtual FieldVec multiply(const FieldVec& a, int p, const FieldVec& b, int q) const = 0;
    virtual bool graded_commutative() const { return false; }

    FieldVec zero(int n) const { return FieldVec(dim(n), FieldScalar(0)); }
    FieldVec d(const FieldVec& a, int p) const;
    // matrix of b -> a*b from A^q to A^{p+q}
    FieldMatrix left_multiplication(const FieldVec& a, int p, int q) const;
    bool is_cocycle(const FieldVec& a, int p) const { return is_zero_vec(d(a, p)); }
    FieldQuotient cohomology(int n) const;
};

}  // namespace twahss
