#include "twahss/errors.hpp"
#include "twahss/filtered_ss/filtered_complex.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace twahss;
using namespace twahss::testing;

namespace {

std::size_t rank_f(const FieldMatrix& M) { return M.rows() && M.cols() ? rank_of(M) : 0; }

}  // namespace

TEST_CASE("oracle: d = 0 with one filtration jump")
{
    FieldMatrix z(2, 3);
    FilteredComplex C({3, 2}, {z}, {{{unit(3, 0), unit(3, 1), unit(3, 2)}}, {{unit(2, 0), unit(2, 1)}}}, 1,
                      false);
    for (int r = 1; r <= 4; ++r) {
        OraclePage P = page(C, r);
        CHECK(P.dim(1, 0) == 3);
        CHECK(P.dim(1, 1) == 2);
        CHECK(P.dim(0, 0) == 0);
        for (const auto& [key, M] : P.differentials)
            CHECK(M.is_zero());
    }
    Convergence cv = converged(C);
    CHECK(cv.isomorphic);
    CHECK(cv.cohomology_dims == std::vector<std::size_t>{3, 2});
}

TEST_CASE("oracle: invalid filtrations are rejected")
{
    FieldMatrix d(1, 1);
    d(0, 0) = FieldScalar(1);
    // F_1 C^0 = C^0 but F_1 C^1 = 0 breaks d(F_1) in F_1
    CHECK_THROWS_AS(FilteredComplex({1, 1}, {d}, {{{unit(1, 0)}}, {{}}}, 1, false), PreconditionError);
    FieldMatrix dd(1, 1);
    CHECK_THROWS_AS(FilteredComplex({1, 1}, {dd, dd}, {{{}}, {{}}}, 1, false), PreconditionError);
    CHECK_THROWS_AS(page(FilteredComplex({1}, {}, {{{}}}, 1, false), 0), PreconditionError);
}

TEST_CASE("oracle: random filtered complexes")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        CAPTURE(trial);
        const int L = 2 + static_cast<int>(rng() % 3), top = 1 + static_cast<int>(rng() % 4);
        std::mt19937 copy = rng;
        RandomFC R = random_filtered(rng, L, top, false);
        RandomFC R2 = random_filtered(copy, L, top, true);
        const FilteredComplex& C = R.C;
        std::vector<OraclePage> pages;
        for (int r = 1; r <= top + 2; ++r)
            pages.push_back(page(C, r));
        for (std::size_t k = 0; k + 1 < pages.size(); ++k) {
            const OraclePage& P = pages[k];
            const int r = P.r;
            for (const auto& [key, e] : P.entries) {
                auto [p, n] = key;
                const FieldMatrix& out = P.differentials.at(key);
                std::size_t rk_out = rank_f(out);
                std::size_t rk_in = 0;
                auto it = P.differentials.find({p - r, n - 1});
                if (it != P.differentials.end())
                    rk_in = rank_f(it->second);
                CHECK(pages[k + 1].dim(p, n) == e.dim() - rk_out - rk_in);
                // d_r d_r = 0
                auto nx = P.differentials.find({p + r, n + 1});
                if (nx != P.differentials.end() && out.rows() && nx->second.cols())
                    CHECK((nx->second * out).is_zero());
            }
        }
        // spanning-set invariance
        for (int r = 1; r <= top + 2; ++r) {
            OraclePage a = page(C, r), b = page(R2.C, r);
            for (const auto& [key, e] : a.entries) {
                CHECK(e.dim() == b.at(key.first, key.second).dim());
                CHECK(e.Z == b.at(key.first, key.second).Z);
            }
        }
        Convergence cv = converged(C);
        CHECK(cv.isomorphic);
        for (int n = 0; n < L; ++n)
            CHECK(cv.E_inf.total_dim(n) == cv.cohomology_dims[n]);
    }
}
