#include "twahss/exact_linalg/field_linalg.hpp"
#include "twahss/exact_linalg/smith.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace twahss;
using namespace twahss::testing;

namespace {

IntMatrix M_(std::vector<std::vector<long>> rows)
{
    std::vector<IntVec> r;
    for (auto& row : rows) {
        IntVec v;
        for (long x : row)
            v.push_back(Integer(x));
        r.push_back(v);
    }
    return IntMatrix::from_rows(r, rows.empty() ? 0 : rows[0].size());
}

// Determinantal divisors: the k-th invariant factor is D_k / D_{k-1}, where
// D_k is the gcd of all k x k minors. Slow, independent of the elimination.
std::vector<Integer> oracle_invariant_factors(const IntMatrix& M)
{
    const std::size_t m = M.rows(), n = M.cols();
    std::vector<Integer> D{Integer(1)};
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        Integer g = 0;
        std::vector<std::size_t> rs, cs;
        std::function<void(std::size_t)> pick_cols;
        std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
            if (rs.size() == k) {
                cs.clear();
                pick_cols(0);
                return;
            }
            for (std::size_t i = start; i < m; ++i) {
                rs.push_back(i);
                pick_rows(i + 1);
                rs.pop_back();
            }
        };
        pick_cols = [&](std::size_t start) {
            if (cs.size() == k) {
                IntMatrix sub(k, k);
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b)
                        sub(a, b) = M(rs[a], cs[b]);
                g = boost::multiprecision::gcd(g, determinant(sub));
                return;
            }
            for (std::size_t j = start; j < n; ++j) {
                cs.push_back(j);
                pick_cols(j + 1);
                cs.pop_back();
            }
        };
        pick_rows(0);
        if (g == 0)
            break;
        D.push_back(abs(g));
    }
    std::vector<Integer> d;
    for (std::size_t k = 1; k < D.size(); ++k)
        d.push_back(D[k] / D[k - 1]);
    return d;
}

}  // namespace

TEST_CASE("smith normal form on fixed examples")
{
    SUBCASE("identity")
    {
        auto s = smith_normal_form(IntMatrix::identity(3));
        CHECK(s.D == IntMatrix::identity(3));
        CHECK(s.U * s.D * s.V == IntMatrix::identity(3));
    }
    SUBCASE("2x2 with factors 2, 4")
    {
        IntMatrix M = M_({{2, 4}, {6, 8}});
        auto s = smith_normal_form(M);
        CHECK(oracle_invariant_factors(M) == std::vector<Integer>{2, 4});
        CHECK(s.D == M_({{2, 0}, {0, 4}}));
        CHECK(s.U * s.D * s.V == M);
    }
    SUBCASE("zero 2x3")
    {
        auto s = smith_normal_form(IntMatrix(2, 3));
        CHECK(s.D.is_zero());
        CHECK(s.U == IntMatrix::identity(2));
        CHECK(s.V == IntMatrix::identity(3));
        CHECK(s.rank == 0);
    }
    SUBCASE("empty")
    {
        auto s = smith_normal_form(IntMatrix(0, 4));
        CHECK(s.V == IntMatrix::identity(4));
        CHECK(s.rank == 0);
    }
}

TEST_CASE("smith normal form on 500 random matrices")
{
    std::mt19937 rng(20261014);
    for (int t = 0; t < 500; ++t) {
        IntMatrix M = random_matrix(rng, 12, 9);
        auto s = smith_normal_form(M);
        REQUIRE(s.U * s.D * s.V == M);
        REQUIRE(abs(determinant(s.U)) == 1);
        REQUIRE(abs(determinant(s.V)) == 1);
        REQUIRE(s.U * s.U_inv == IntMatrix::identity(M.rows()));
        REQUIRE(s.V * s.V_inv == IntMatrix::identity(M.cols()));
        REQUIRE(is_diagonal_chain(s));
    }
}

TEST_CASE("invariant factors agree with determinantal divisors")
{
    std::mt19937 rng(7);
    for (int t = 0; t < 150; ++t) {
        IntMatrix M = random_matrix(rng, 4, 6);
        auto s = smith_normal_form(M);
        std::vector<Integer> d;
        for (std::size_t i = 0; i < s.rank; ++i)
            d.push_back(s.diag(i));
        REQUIRE(d == oracle_invariant_factors(M));
    }
}

TEST_CASE("cokernel")
{
    CHECK(cokernel(M_({{1, 0}, {0, 6}})).group() == FGAbelianGroup{0, {6}});
    CHECK(cokernel(M_({{1, 2}, {0, -3}})).group() == FGAbelianGroup{0, {3}});
    CHECK(cokernel(IntMatrix(0, 2)).group() == FGAbelianGroup{2, {}});

    std::mt19937 rng(11);
    for (int t = 0; t < 60; ++t) {
        IntMatrix M = random_matrix(rng, 6, 5);
        IntMatrix U = random_unimodular(M.rows(), rng(), 12);
        IntMatrix V = random_unimodular(M.cols(), rng(), 12);
        REQUIRE(cokernel(U * M * V).group() == cokernel(M).group());
    }
}

TEST_CASE("presentation coordinates are a homomorphism onto the quotient")
{
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
        IntMatrix R = random_matrix(rng, 5, 4);
        Presentation P(R);
        for (std::size_t i = 0; i < P.num_coords(); ++i) {
            IntVec g = P.generator(i);
            IntVec c = P.coordinates(g);
            for (std::size_t k = 0; k < c.size(); ++k)
                REQUIRE(c[k] == (k == i ? 1 : 0));
        }
        for (std::size_t j = 0; j < R.cols(); ++j)
            REQUIRE(P.is_zero(R.column(j)));
    }
}

TEST_CASE("integer kernel and solve")
{
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        IntMatrix A = random_matrix(rng, 6, 4);
        IntMatrix K = integer_kernel(A);
        REQUIRE((A * K).is_zero());
        REQUIRE(K.cols() == A.cols() - smith_normal_form(A).rank);
        IntVec x(A.cols());
        for (auto& e : x)
            e = static_cast<int>(rng() % 7) - 3;
        IntVec b = A * x;
        auto y = solve_integer(A, b);
        REQUIRE(y);
        REQUIRE(A * *y == b);
    }
    // 2x = 1 has no integer solution
    CHECK_FALSE(solve_integer(M_({{2}}), IntVec{Integer(1)}));
}

TEST_CASE("torus kernel")
{
    SUBCASE("h = 5 block matrix, checked by enumerating denominators")
    {
        IntMatrix M = M_({{1, 4}, {0, -5}});
        TorusGroup g = torus_kernel(M);
        CHECK(g.torus_rank == 0);
        CHECK(g.torsion == FGAbelianGroup{0, {5}});
        int count = 0;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                Vec<Rational> x{Rational(a, 5), Rational(b, 5)};
                auto y = torus_apply(M, x);
                if (y[0] == 0 && y[1] == 0)
                    ++count;
            }
        CHECK(count == 5);
        REQUIRE(g.torsion_generators.size() == 1);
        auto y = torus_apply(M, g.torsion_generators[0]);
        CHECK(y == Vec<Rational>{0, 0});
    }
    CHECK(torus_kernel(IntMatrix::identity(3)).is_trivial());
    SUBCASE("zero 1x1")
    {
        auto g = torus_kernel(IntMatrix(1, 1));
        CHECK(g.torus_rank == 1);
        CHECK(g.torsion.is_trivial());
    }
    SUBCASE("torsion factors are the nontrivial invariant factors")
    {
        std::mt19937 rng(9);
        for (int t = 0; t < 80; ++t) {
            IntMatrix M = random_matrix(rng, 6, 6);
            auto s = smith_normal_form(M);
            std::vector<Integer> d;
            for (std::size_t i = 0; i < s.rank; ++i)
                if (s.diag(i) > 1)
                    d.push_back(s.diag(i));
            TorusGroup g = torus_kernel(M);
            REQUIRE(g.torsion.invariant_factors == d);
            REQUIRE(g.torus_rank == M.cols() - s.rank);
            for (const auto& x : g.torsion_generators)
                for (const auto& v : torus_apply(M, x))
                    REQUIRE(v == 0);
        }
    }
}

TEST_CASE("annihilator quotient matches Hom(L1/L2, Q/Z)")
{
    // L1 = Z^2, L2 = span{(2,0),(0,3)} gives Z/6
    auto g = annihilator_quotient(IntMatrix::identity(2), M_({{2, 0}, {0, 3}}));
    CHECK(g.torus_rank == 0);
    CHECK(g.torsion == FGAbelianGroup{0, {6}});
    auto h = annihilator_quotient(IntMatrix::identity(2), M_({{2}, {0}}));
    CHECK(h.torus_rank == 1);
    CHECK(h.torsion == FGAbelianGroup{0, {2}});
}

TEST_CASE("field scalar arithmetic")
{
    std::mt19937 rng(13);
    auto rnd = [&]() {
        return FieldScalar(Rational(static_cast<int>(rng() % 19) - 9, 1 + rng() % 5),
                           Rational(static_cast<int>(rng() % 19) - 9, 1 + rng() % 5));
    };
    for (int t = 0; t < 300; ++t) {
        FieldScalar x = rnd(), y = rnd(), z = rnd();
        REQUIRE((x + y) + z == x + (y + z));
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE(x * y == y * x);
        REQUIRE(x + FieldScalar(0) == x);
        REQUIRE(x * FieldScalar(1) == x);
        REQUIRE(x - x == FieldScalar(0));
        if (!x.is_zero())
            REQUIRE(x * x.inverse() == FieldScalar(1));
        REQUIRE(x.rational_part() + x.irrational_part() == x);
        REQUIRE((x * y).a() == x.a() * y.a() + 2 * x.b() * y.b());
    }
    CHECK(FieldScalar::sqrt2() * FieldScalar::sqrt2() == FieldScalar(2));
}

TEST_CASE("torus scalar")
{
    TorusScalar a(Rational(3, 4)), b(Rational(1, 2));
    CHECK((a + b).value() == Rational(1, 4));
    CHECK((Integer(6) * a).value() == Rational(1, 2));
    CHECK(TorusScalar(Rational(-1, 3)).value() == Rational(2, 3));
}

TEST_CASE("solve over Q(sqrt2)")
{
    using F = FieldScalar;
    SUBCASE("identity")
    {
        Matrix<F> I = Matrix<F>::identity(2);
        Vec<F> b{F(3), F::sqrt2()};
        auto s = solve_field(I, b);
        REQUIRE(s);
        CHECK(s->particular == b);
        CHECK(s->kernel.empty());
    }
    SUBCASE("zero")
    {
        auto s = solve_field(Matrix<F>(2, 2), Vec<F>{F(0), F(0)});
        REQUIRE(s);
        CHECK(s->particular == Vec<F>{F(0), F(0)});
        CHECK(s->kernel.size() == 2);
    }
    SUBCASE("rank one with sqrt2 entries")
    {
        Matrix<F> M(2, 2);
        M(0, 0) = F(1);
        M(0, 1) = F::sqrt2();
        auto s = solve_field(M, Vec<F>{F::sqrt2(), F(0)});
        REQUIRE(s);
        CHECK(s->particular == Vec<F>{F::sqrt2(), F(0)});
        REQUIRE(s->kernel.size() == 1);
        CHECK(s->kernel[0] == Vec<F>{-F::sqrt2(), F(1)});
    }
    SUBCASE("inconsistent")
    {
        Matrix<F> M(2, 1);
        M(0, 0) = F(1);
        M(1, 0) = F(1);
        CHECK_FALSE(solve_field(M, Vec<F>{F(0), F(1)}));
    }
}
