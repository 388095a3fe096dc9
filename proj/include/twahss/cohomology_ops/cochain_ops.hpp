#pragma once

#include "twahss/complexes/cohomology.hpp"

#include <string>

namespace twahss {

// Alexander-Whitney product: (x u y)(v0..v_{p+q}) = x(v0..vp) y(vp..v_{p+q}).
template <class T>
Vec<T> cup(const SimplicialComplex& K, const Vec<T>& x, int p, const Vec<T>& y, int q)
{
    const auto& target = K.simplices(p + q);
    Vec<T> out(target.size(), T(0));
    if (x.size() != K.count(p) || y.size() != K.count(q))
        throw std::invalid_argument("cup: cochain length does not match its degree");
    for (std::size_t i = 0; i < target.size(); ++i) {
        const Simplex& s = target[i];
        Simplex front(s.begin(), s.begin() + p + 1), back(s.begin() + p, s.end());
        const T& a = x[K.index_of(front)];
        if (is_zero_scalar(a))
            continue;
        const T& b = y[K.index_of(back)];
        if (!is_zero_scalar(b))
            out[i] = a * b;
    }
    return out;
}

// Steenrod cup-i product mod 2, degree p + q - i. For U = {u_1 < ... < u_{n-i}}
// inside {0..n}, U0 collects the u_j with u_j = j mod 2 and U1 the rest;
// (x u_i y)(s) = sum over U of x(s minus U0) y(s minus U1). For i = 0 this is
// the Alexander-Whitney product above.
Vec<Z2> cup_i(const SimplicialComplex& K, const Vec<Z2>& x, int p, const Vec<Z2>& y, int q, int i);

Vec<Z2> reduce_mod2(const IntVec& x);
IntVec lift_01(const Vec<Z2>& x);

// Sq^2 x = x u_{p-2} x; zero for p < 2.
Vec<Z2> sq2(const CohomologyData& D, const Vec<Z2>& x, int p);

// Connecting maps, computed on the given representative.
IntVec bockstein_Z2(const CohomologyData& D, const Vec<Z2>& x, int p);        // delta(lift)/2
IntVec bockstein_QZ(const CohomologyData& D, const Vec<Rational>& c, int p);  // delta(lift to [0,1))
Vec<Rational> gamma2(const Vec<Z2>& x);                                       // x/2 in Q/Z

IntVec sq3_Z(const CohomologyData& D, const IntVec& x, int p);
Vec<Rational> sq3_flat(const CohomologyData& D, const Vec<Rational>& c, int p);

// c u h with c a Q/Z cocycle of degree p and h an integral 3-cocycle.
Vec<Rational> db_cup_flat(const CohomologyData& D, const IntVec& h, const Vec<Rational>& c, int p);

Vec<Rational> reduce_mod1(Vec<Rational> c);

// ---------------------------------------------------------------------------

// A cochain with its coefficient tag. Values are stored as rationals:
// integers for Z, 0/1 for Z2, [0,1) for QZ.
class Cochain
{
  public:
    Cochain() = default;
    Cochain(const SimplicialComplex& K, int degree, Coeff coeff, Vec<Rational> values);
    static Cochain zero(const SimplicialComplex& K, int degree, Coeff coeff);
    static Cochain from_integers(const SimplicialComplex& K, int degree, const IntVec& v);
    static Cochain from_json(const SimplicialComplex& K, const std::string& text);

    const SimplicialComplex& complex() const { return *K_; }
    int degree() const { return p_; }
    Coeff coeff() const { return coeff_; }
    const Vec<Rational>& values() const { return v_; }
    IntVec integers() const;  // Z or Z2 only
    Vec<Z2> bits() const;     // Z or Z2 only

    bool is_cocycle() const;
    std::string to_json() const;

    friend bool operator==(const Cochain& a, const Cochain& b)
    {
        return a.K_ == b.K_ && a.p_ == b.p_ && a.coeff_ == b.coeff_ && a.v_ == b.v_;
    }

  private:
    const SimplicialComplex* K_ = nullptr;
    int p_ = 0;
    Coeff coeff_ = Coeff::Z;
    Vec<Rational> v_;
};

// Z x Z -> Z, Z x QZ -> QZ (either order), Z2 x Z2 -> Z2, Q x Q -> Q.
Cochain cup(const Cochain& x, const Cochain& y);

// A Q/Z cocycle together with its coordinates in Hom(H_p, Q/Z).
struct FlatClass
{
    int degree = 0;
    Vec<Rational> representative;
    Vec<Rational> coords;
};

FlatClass flat_class_from_coords(const CohomologyData& D, int p, const Vec<Rational>& coords);
FlatClass flat_class_from_cocycle(const CohomologyData& D, int p, const Vec<Rational>& cocycle);

}  // namespace twahss
