#pragma once

#include "twahss/exact_linalg/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twahss {

using Simplex = std::vector<int>;  // strictly increasing vertex tuple

std::string simplex_str(const Simplex& s);

class SimplicialComplex
{
  public:
    SimplicialComplex() = default;

    // Face closure is computed.
    static SimplicialComplex from_maximal(int num_vertices, std::vector<Simplex> maximal);
    // The list must already be closed under faces; the first missing face is reported.
    static SimplicialComplex from_closed(int num_vertices, std::vector<Simplex> all);

    int num_vertices() const { return n_; }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t count(int p) const { return p < 0 || p > dim() ? 0 : by_dim_[p].size(); }
    const std::vector<Simplex>& simplices(int p) const;  // lexicographic order
    std::optional<std::size_t> index(const Simplex& s) const;
    std::size_t index_of(const Simplex& s) const;  // throws if absent
    bool contains(const Simplex& s) const { return index(s).has_value(); }
    std::vector<std::size_t> f_vector() const;
    std::vector<Simplex> maximal_simplices() const;
    long euler_characteristic() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.n_ == b.n_ && a.by_dim_ == b.by_dim_;
    }

  private:
    int n_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> index_;
    void build_index();
};

// delta[p] : C^p -> C^{p+1}, a (#(p+1)-simplices) x (#p-simplices) matrix.
struct CochainComplexZ
{
    std::vector<IntMatrix> delta;
    std::vector<std::size_t> ranks;  // #p-simplices

    std::size_t rank(int p) const { return p < 0 || p >= static_cast<int>(ranks.size()) ? 0 : ranks[p]; }
    IntMatrix coboundary(int p) const;  // zero matrix of the right shape outside the stored range
    IntMatrix boundary(int p) const { return coboundary(p - 1).transpose(); }  // C_p -> C_{p-1}
};

CochainComplexZ coboundary_matrices(const SimplicialComplex& K);

struct NerveResult
{
    SimplicialComplex nerve;
    std::vector<int> vertex_map;  // cover element st(v) -> nerve vertex
    bool isomorphic = false;      // nerve equals K under vertex_map
};

NerveResult star_cover_nerve(const SimplicialComplex& K);

SimplicialComplex disjoint_union(const SimplicialComplex& A, const SimplicialComplex& B);
// Staircase triangulation; vertex (i, j) has index i * |V(B)| + j.
SimplicialComplex product(const SimplicialComplex& A, const SimplicialComplex& B);
SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B);

SimplicialComplex load_complex_json(const std::string& text);
std::string complex_to_json(const SimplicialComplex& K);

}  // namespace twahss
