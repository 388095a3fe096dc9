#include "twahss/cohomology_ops/dga.hpp"

namespace twahss {

FieldVec DGA::d(const FieldVec& a, int p) const
{
    if (p < 0 || p > top_degree())
        return {};
    return differential(p) * a;
}

FieldMatrix DGA::left_multiplication(const FieldVec& a, int p, int q) const
{
    const std::size_t n = dim(q), m = dim(p + q);
    FieldMatrix L(m, n);
    FieldVec e(n, FieldScalar(0));
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = FieldScalar(1);
        FieldVec col = multiply(a, p, e, q);
        for (std::size_t i = 0; i < m; ++i)
            L(i, j) = col[i];
        e[j] = FieldScalar(0);
    }
    return L;
}

FieldQuotient DGA::cohomology(int n) const
{
    const std::size_t dn = dim(n);
    FieldSubspace cycles(dn, dn ? kernel_basis(differential(n)) : std::vector<FieldVec>{});
    FieldSubspace bounds(dn);
    if (n >= 1) {
        FieldMatrix prev = differential(n - 1);
        for (std::size_t j = 0; j < prev.cols(); ++j)
            bounds.add(prev.column(j));
    }
    return FieldQuotient(cycles, bounds);
}

}  // namespace twahss
