#include "twahss/exact_linalg/matrix.hpp"

#include <random>

namespace twahss {

IntMatrix random_unimodular(std::size_t n, unsigned seed, int steps)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n ? n - 1 : 0);
    std::uniform_int_distribution<int> coef(-2, 2);
    IntMatrix m = IntMatrix::identity(n);
    if (n < 2)
        return m;
    if (steps <= 0)
        steps = static_cast<int>(3 * n);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) {
            if (coef(rng) > 0)
                m.scale_row(i, Integer(-1));
            continue;
        }
        if (coef(rng) == 0)
            m.swap_rows(i, j);
        else
            m.add_row(i, j, Integer(coef(rng)));
    }
    return m;
}

Integer determinant(const IntMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace twahss
