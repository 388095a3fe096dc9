#pragma once

#include "twahss/ahss_twisted_k/ahss.hpp"
#include "twahss/cohomology_ops/cochain_ops.hpp"
#include "twahss/twisted_derham/twisted.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twahss {

// Topological twist h on K, curvature H in a CDGA model, and the period
// pairing pairing[p](i, j) = value of the j-th basis class of H^p(A) on the
// i-th free generator of H_p(K). Without a complex the gerbe is formal: the
// homology ranks and the values of h on H_3 are given directly.
struct GerbeData
{
    const CohomologyData* D = nullptr;
    IntVec h;  // 3-cocycle on K, or values on the formal H_3 generators
    const CDGAModel* A = nullptr;
    TwistForm H;
    std::map<int, FieldMatrix> pairing;
    std::map<int, std::size_t> formal_ranks;
    int lambda = -1;

    bool formal() const { return D == nullptr; }
    std::size_t homology_rank(int p) const;
    // values of h on the free generators of H_3
    FieldVec h_periods() const;
    void validate() const;
};

// Connected K and A with one-dimensional H^3 on both sides; h = m * generator,
// H = m * (basis class of H^3(A)), pairing in degrees 0 and 3.
GerbeData standard_gerbe(const CohomologyData& D, const CDGAModel& A, const Integer& m, int lambda = -1);

// Classes with coefficients in K/Q = Q*sqrt2: the sqrt2-parts of coordinates
// (in a rational basis) or of periods.
struct ModQClass
{
    int degree = 0;
    Vec<Rational> coords;
    bool is_zero() const { return is_zero_vec(coords); }
    friend bool operator==(const ModQClass& a, const ModQClass& b) { return a.degree == b.degree && a.coords == b.coords; }
};

Vec<Rational> sqrt2_part(const FieldVec& v);

struct FormEntry
{
    int parity = 0;
    std::vector<FieldVec> basis;  // twisted-closed elements of the periodic complex, flat vectors
    bool omega0_forced_zero = false;
    std::size_t dim() const { return basis.size(); }
};

struct DiffPage
{
    int degree = 0;
    FormEntry form;                    // entry (0,0)
    std::map<int, TorusGroup> flat;    // H^p(K; Q/Z model) on the rows q = -1, -3, ...
};

DiffPage e2_hat(const GerbeData& G, int degree);

// d^fl_3 = Sq^3-hat + lambda * (x u h) on a flat class
FlatClass d_flat3(const GerbeData& G, const FlatClass& x);
// the same map as an integer matrix on coordinates H^p(Q/Z) -> H^{p+3}(Q/Z)
IntMatrix d_flat3_matrix(const GerbeData& G, int p);

// phi: de Rham class (cocycle a in A^p) -> periods mod Q.
ModQClass phi(const GerbeData& G, const FieldVec& a, int p);

struct FlatHigherResult
{
    enum class Status
    {
        Value,
        Undefined,
        Unsupported
    };
    Status status = Status::Unsupported;
    int undefined_stage = 0;
    std::string reason;
    ModQClass representative;
    std::vector<Vec<Rational>> indeterminacy;  // Q-spanning set

    bool same_coset(const ModQClass& other) const;
    bool contains_zero() const;
};

// d^fl_{2k+1} on x through a de Rham preimage with phi(preimage) = x.
FlatHigherResult d_flat_higher(const GerbeData& G, const ModQClass& x, int k,
                               const std::optional<FieldVec>& preimage);

// Leading-term curvature differential. For omega in filtration level p this
// is [omega_p] mod Q; for p = 2 with a potential B it is the class of the
// degree-2 part of e^{B} omega, i.e. [omega_2 + B omega_0] mod Q.
ModQClass d_curv(const DGA& A, const TwistForm& t, const PeriodicElement& omega, int p);

struct KhatAnswer
{
    int degree = 0;
    std::vector<std::pair<int, TorusGroup>> flat_part;  // surviving flat entries by p
    std::size_t form_dim = 0;
    bool omega0_forced_zero = false;
    bool extension_resolved = false;
    bool curvature_targets_trivial = true;
    std::string discrete_str() const;
};

KhatAnswer assemble_khat(const GerbeData& G, int degree);

struct ChernInput
{
    FieldVec a;  // de Rham class for square (ii)
    int p = 0;
    int k = 2;
};

struct ChernReport
{
    bool square_i = true, square_ii = true, square_iii = true;
    std::size_t checks_i = 0, checks_ii = 0, checks_iii = 0;
    std::vector<std::string> failures;
};

// (i) rationalized d_3 = lambda * cup with [H] through the pairing;
// (ii) d_flat_higher(phi a) = phi of the oracle d_{2k+1}[a];
// (iii) d_curv transported by the pairing = periods of the leading form mod Q.
ChernReport chern_compare(const GerbeData& G, const std::vector<ChernInput>& massey_inputs,
                          const std::vector<std::pair<PeriodicElement, int>>& curvature_inputs);

}  // namespace twahss
