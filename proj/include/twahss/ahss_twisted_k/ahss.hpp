#pragma once

#include "twahss/complexes/catalog.hpp"
#include "twahss/complexes/cohomology.hpp"

#include <map>
#include <string>
#include <vector>

namespace twahss {

// Integral 3-cocycle on the complex of D.
class TwistCocycle
{
  public:
    TwistCocycle(const CohomologyData& D, IntVec h);
    // m times the first free generator of H^3; m = 0 gives the zero cocycle
    static TwistCocycle from_int(const CohomologyData& D, const Integer& m);
    static TwistCocycle from_coords(const CohomologyData& D, const IntVec& coords);

    const CohomologyData& data() const { return *D_; }
    const IntVec& cochain() const { return h_; }
    IntVec coords() const { return D_->H(3).coordinates(h_); }

  private:
    const CohomologyData* D_;
    IntVec h_;
};

// E_r^{p,q} = H^p(K; Z) for q even and 0 for q odd; row holds the even rows.
struct IntegralPage
{
    int r = 2;
    std::vector<FGAbelianGroup> row;  // p = 0..dim
    const FGAbelianGroup& at(int p) const;
    FGAbelianGroup at(int p, int q) const;
};

IntegralPage e2_page(const CohomologyData& D);

// d_3 = Sq^3_Z + lambda * (- u h) as integer matrices on cohomology coordinates,
// H^p -> H^{p+3}; key p.
struct D3Map
{
    int lambda = -1;
    std::map<int, IntMatrix> matrices;
    const IntMatrix& at(int p) const { return matrices.at(p); }
};

IntVec d3_cochain(const TwistCocycle& h, const IntVec& x, int p, int lambda = -1);
IntVec d3_class(const TwistCocycle& h, const IntVec& coords, int p, int lambda = -1);
D3Map d3_map(const TwistCocycle& h, int lambda = -1);

// A homomorphism of coordinate groups is zero (entries in the relation lattice).
bool is_zero_hom(const IntMatrix& M, const std::vector<Integer>& target_moduli);

struct AhssResult
{
    IntegralPage E2, E4;
    D3Map d3;
    std::vector<FGAbelianGroup> K0_graded, K1_graded;  // nonzero E_inf pieces by p
    FGAbelianGroup K0, K1;                             // valid only when extension_resolved
    bool K0_extension_resolved = false, K1_extension_resolved = false;
    bool d3_squares_to_zero = true;
};

// Requires dim K <= 4, where E_4 = E_infinity.
AhssResult e4_and_einfinity(const TwistCocycle& h, int lambda = -1);

struct NaturalityReport
{
    std::string map_name;
    std::size_t classes_checked = 0;
    std::vector<std::string> failures;
    bool commutes() const { return failures.empty(); }
};

// f^* d_3^L = d_3^K f^* with the pulled-back twist on K.
NaturalityReport naturality_check(const SimplicialMap& f, const IntVec& h_on_target, int lambda = -1);

struct MvS3Report
{
    Integer h;
    IntMatrix matrix;        // ((1, h-1), (0, -h))
    FGAbelianGroup kernel_Z, cokernel_Z;
    TorusGroup kernel_QZ;
    FGAbelianGroup khat0_discrete, khat1_discrete;
};

MvS3Report mv_s3(const Integer& h);

}  // namespace twahss
