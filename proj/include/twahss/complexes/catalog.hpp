#pragma once

#include "twahss/complexes/simplicial_complex.hpp"

#include <string>
#include <vector>

namespace twahss {

// Names: point, sphere(n) for 0 <= n <= 4, torus2_7vertex, torus3, rp2_6vertex,
// cp2_9vertex, s3_join, s3_join(d), disjoint(A,B), product(A,B), join(A,B).
SimplicialComplex builtin_model(const std::string& name);
std::vector<std::string> catalog_names();

// Vertex map sending simplices to simplices (possibly of lower dimension).
class SimplicialMap
{
  public:
    SimplicialMap() = default;
    SimplicialMap(std::string name, SimplicialComplex source, SimplicialComplex target, std::vector<int> vertex_map);

    const std::string& name() const { return name_; }
    const SimplicialComplex& source() const { return source_; }
    const SimplicialComplex& target() const { return target_; }
    const std::vector<int>& vertex_map() const { return vmap_; }

    // f^*: C^p(target) -> C^p(source); degenerate images give 0.
    template <class T>
    Vec<T> pullback(const Vec<T>& c, int p) const
    {
        const auto& ss = source_.simplices(p);
        Vec<T> out(ss.size(), T(0));
        for (std::size_t i = 0; i < ss.size(); ++i) {
            int sign = 0;
            std::size_t j = image_index(ss[i], sign);
            if (sign != 0 && c[j] != T(0))
                out[i] = sign > 0 ? c[j] : T(0) - c[j];
        }
        return out;
    }
    IntMatrix pullback_matrix(int p) const;

  private:
    std::string name_;
    SimplicialComplex source_, target_;
    std::vector<int> vmap_;
    std::size_t image_index(const Simplex& s, int& sign) const;
};

// C_{3d} * S^0 * S^0 -> C_3 * S^0 * S^0, a degree-d map of S^3.
SimplicialMap s3_wrap(int d);
// Identities, point inclusions, projections, the pole swap and the wrap maps.
std::vector<SimplicialMap> catalog_maps();

}  // namespace twahss
