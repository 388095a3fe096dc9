#pragma once

#include "twahss/cohomology_ops/dga.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace twahss {

// Cochain complex over Q(sqrt2) in total degrees 0..L-1 with a decreasing
// filtration F_0 = C ⊇ F_1 ⊇ ... ⊇ F_{top+1} = 0. When periodic, d also runs
// C^{L-1} -> C^0 and total degrees are read mod L.
class FilteredComplex
{
  public:
    FilteredComplex() = default;
    // d[n] : C^n -> C^{n+1}; spans[n][p-1] spans F_p C^n for p = 1..top
    FilteredComplex(std::vector<std::size_t> dims, std::vector<FieldMatrix> d,
                    std::vector<std::vector<std::vector<FieldVec>>> spans, int top, bool periodic);

    int length() const { return static_cast<int>(dims_.size()); }
    int top() const { return top_; }
    bool periodic() const { return periodic_; }
    int wrap(int n) const;               // total degree reduced into range, or -1
    std::size_t dim(int n) const;        // 0 outside the range (non-periodic)
    FieldMatrix d(int n) const;          // dim(n+1) x dim(n)
    const FieldSubspace& F(int p, int n) const;  // F_p C^n for any integer p

  private:
    std::vector<std::size_t> dims_;
    std::vector<FieldMatrix> d_;
    std::vector<std::vector<FieldSubspace>> F_;  // F_[n][p] for p = 0..top+1
    std::vector<FieldSubspace> zero_;
    int top_ = 0;
    bool periodic_ = false;
};

// One entry E_r^{p,n} (total degree n, so q = n - p).
struct OracleEntry
{
    FieldSubspace Z;   // Z_r^{p,n}
    FieldSubspace B;   // Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1}
    FieldQuotient E;   // Z / B
    std::size_t dim() const { return E.dim(); }
};

struct OraclePage
{
    int r = 1;
    std::map<std::pair<int, int>, OracleEntry> entries;           // key (p, n)
    std::map<std::pair<int, int>, FieldMatrix> differentials;     // d_r out of (p, n)

    const OracleEntry& at(int p, int n) const { return entries.at({p, n}); }
    std::size_t dim(int p, int n) const;
    std::size_t total_dim(int n) const;
};

// Z_r^{p,n} = F_p C^n ∩ d^{-1}(F_{p+r} C^{n+1})
FieldSubspace oracle_Z(const FilteredComplex& C, int r, int p, int n);
OraclePage page(const FilteredComplex& C, int r);

// Class in E_r^{p,n} of an element of Z_r^{p,n}; nullopt when z is not in Z_r.
std::optional<FieldVec> oracle_class(const OraclePage& P, int p, int n, const FieldVec& z);
// d_r of that class, in coordinates of E_r^{p+r,n+1}.
std::optional<FieldVec> oracle_differential(const FilteredComplex& C, const OraclePage& P, int p, int n,
                                            const FieldVec& z);

struct Convergence
{
    OraclePage E_inf;
    std::vector<std::size_t> cohomology_dims;        // dim H^n(C, d)
    // F_p H^n / F_{p+1} H^n, key (p, n)
    std::map<std::pair<int, int>, FieldQuotient> graded;
    bool isomorphic = false;  // graded pieces agree with E_inf as subquotients
};

Convergence converged(const FilteredComplex& C);

// {x : d x in S} for d : V -> W
FieldSubspace preimage(const FieldMatrix& d, const FieldSubspace& S);
FieldSubspace image(const FieldMatrix& d, const FieldSubspace& S);

}  // namespace twahss
