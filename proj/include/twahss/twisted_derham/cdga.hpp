#pragma once

#include "twahss/cohomology_ops/dga.hpp"

#include <map>
#include <string>
#include <vector>

namespace twahss {

struct Generator
{
    std::string name;
    int degree = 1;
};

// Free graded-commutative algebra on the generators over Q(sqrt2), truncated
// above degree N, with d given on generators and extended by Leibniz.
// Basis of A^n: monomials g_1^{e_1} ... g_k^{e_k} (e_i <= 1 for odd g_i)
// in generator order.
class CDGAModel : public DGA
{
  public:
    using Exps = std::vector<int>;

    CDGAModel() = default;
    // differential: generator name -> polynomial; omitted generators are closed
    CDGAModel(std::vector<Generator> generators, int truncate_above,
              const std::map<std::string, std::string>& differential);
    static CDGAModel from_json(const std::string& text);
    std::string to_json() const;

    int top_degree() const override { return N_; }
    std::size_t dim(int n) const override { return n < 0 || n > N_ ? 0 : basis_[n].size(); }
    FieldMatrix differential(int n) const override;
    FieldVec multiply(const FieldVec& a, int p, const FieldVec& b, int q) const override;
    bool graded_commutative() const override { return true; }

    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<Exps>& basis(int n) const { return basis_.at(n); }
    std::string monomial_str(int n, std::size_t i) const;
    std::string element_str(const FieldVec& a, int n) const;

    // Homogeneous polynomial such as "x3*a2 - 1/2*sqrt2*b4".
    FieldVec parse_element(const std::string& text, int degree) const;
    // Degree inferred from the terms; a zero polynomial is rejected.
    std::pair<int, FieldVec> parse_homogeneous(const std::string& text) const;
    FieldVec generator_vec(const std::string& name) const;
    FieldVec unit() const;
    bool is_rational(const FieldVec& a) const;

    // Exhaustive checks of d^2 = 0, Leibniz, associativity and graded
    // commutativity; throws PreconditionError naming the first failure.
    void validate() const;

  private:
    std::vector<Generator> gens_;
    int N_ = 0;
    std::vector<std::vector<Exps>> basis_;
    std::map<Exps, std::pair<int, std::size_t>> index_;
    std::vector<FieldVec> dgen_;
    std::vector<FieldMatrix> d_;

    int degree_of(const Exps& e) const;
    // product of basis monomials; sign 0 when it vanishes or leaves the truncation
    int mono_product(const Exps& a, const Exps& b, Exps& out) const;
    FieldVec d_monomial(const Exps& e, std::map<Exps, FieldVec>& memo) const;
    friend class PolyParser;
};

// s3, s2, torus2, torus3, synthetic_massey, s2_exact_twist, point
CDGAModel builtin_cdga(const std::string& name);
std::vector<std::string> cdga_catalog_names();

}  // namespace twahss
