#include "twahss/complexes/catalog.hpp"
#include "twahss/complexes/cohomology.hpp"
#include "twahss/errors.hpp"

#include <doctest.h>

#include <random>

using namespace twahss;

namespace {

const std::vector<std::string> kModels = {"point",         "sphere(1)",      "sphere(2)",   "sphere(3)",
                                          "sphere(4)",     "torus2_7vertex", "torus3",      "rp2_6vertex",
                                          "cp2_9vertex",   "s3_join",        "disjoint(sphere(1),rp2_6vertex)",
                                          "product(sphere(1),rp2_6vertex)"};

std::vector<std::string> group_strings(const SimplicialComplex& K, Coeff c)
{
    std::vector<std::string> out;
    for (const auto& g : cohomology(K, c))
        out.push_back(g.str());
    return out;
}

using S = std::vector<std::string>;

}  // namespace

TEST_CASE("coboundary matrices")
{
    SUBCASE("point")
    {
        auto C = coboundary_matrices(builtin_model("point"));
        CHECK(C.delta.empty());
        CHECK(C.coboundary(0).rows() == 0);
    }
    SUBCASE("triangle boundary: delta_0 is 3x3 of rank 2")
    {
        auto C = coboundary_matrices(builtin_model("sphere(1)"));
        REQUIRE(C.delta.size() == 1);
        CHECK(C.delta[0].rows() == 3);
        CHECK(C.delta[0].cols() == 3);
        CHECK(smith_normal_form(C.delta[0]).rank == 2);
    }
    SUBCASE("S^3: ranks consistent with H^3 = Z")
    {
        auto C = coboundary_matrices(builtin_model("sphere(3)"));
        CHECK(C.delta[1].rows() == 10);
        CHECK(C.delta[1].cols() == 10);
        CHECK(smith_normal_form(C.delta[1]).rank == 6);
        std::size_t r2 = smith_normal_form(C.delta[2]).rank;
        // dim ker delta_3 - rank delta_2 = 5 - r2 = 1
        CHECK(r2 == 4);
    }
    SUBCASE("delta squares to zero on every model")
    {
        for (const auto& name : kModels) {
            auto C = coboundary_matrices(builtin_model(name));
            for (std::size_t p = 0; p + 1 < C.delta.size(); ++p)
                REQUIRE((C.delta[p + 1] * C.delta[p]).is_zero());
        }
    }
}

TEST_CASE("face closure violations name the simplex")
{
    try {
        SimplicialComplex::from_closed(3, {{0}, {1}, {2}, {0, 1}, {0, 1, 2}});
        FAIL("expected an error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("[1,2] is a face of [0,1,2]") != std::string::npos);
    }
    CHECK_THROWS_AS(SimplicialComplex::from_maximal(2, {{0, 3}}), PreconditionError);
}

TEST_CASE("catalog shapes")
{
    CHECK(builtin_model("sphere(3)").f_vector() == std::vector<std::size_t>{5, 10, 10, 5});
    CHECK(builtin_model("torus2_7vertex").f_vector() == std::vector<std::size_t>{7, 21, 14});
    CHECK(builtin_model("torus2_7vertex").euler_characteristic() == 0);
    CHECK(builtin_model("torus3").f_vector() == std::vector<std::size_t>{27, 189, 324, 162});
    CHECK(builtin_model("cp2_9vertex").f_vector() == std::vector<std::size_t>{9, 36, 84, 90, 36});
    CHECK(builtin_model("s3_join").f_vector() == std::vector<std::size_t>{7, 19, 24, 12});
    CHECK_THROWS_AS(builtin_model("klein_bottle"), PreconditionError);
    CHECK_THROWS_AS(builtin_model("sphere(3"), ParseError);
    try {
        builtin_model("nope");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("torus2_7vertex") != std::string::npos);
    }
}

TEST_CASE("integral cohomology of catalog models")
{
    CHECK(group_strings(builtin_model("sphere(3)"), Coeff::Z) == S{"Z", "0", "0", "Z"});
    CHECK(group_strings(builtin_model("torus2_7vertex"), Coeff::Z) == S{"Z", "Z^2", "Z"});
    CHECK(group_strings(builtin_model("torus3"), Coeff::Z) == S{"Z", "Z^3", "Z^3", "Z"});
    CHECK(group_strings(builtin_model("rp2_6vertex"), Coeff::Z) == S{"Z", "0", "Z/2"});
    CHECK(group_strings(builtin_model("cp2_9vertex"), Coeff::Z) == S{"Z", "0", "Z", "0", "Z"});
    CHECK(group_strings(builtin_model("s3_join(2)"), Coeff::Z) == S{"Z", "0", "0", "Z"});
    CHECK(group_strings(builtin_model("rp2_6vertex"), Coeff::Z2) == S{"Z/2", "Z/2", "Z/2"});
    CHECK(group_strings(builtin_model("cp2_9vertex"), Coeff::Z2) == S{"Z/2", "0", "Z/2", "0", "Z/2"});
    CHECK(group_strings(product(builtin_model("sphere(1)"), builtin_model("sphere(1)")), Coeff::Z) ==
          group_strings(builtin_model("torus2_7vertex"), Coeff::Z));
}

TEST_CASE("R/Z model cohomology")
{
    auto s3 = cohomology(builtin_model("sphere(3)"), Coeff::QZ);
    CHECK(s3[2].rz.is_trivial());
    CHECK(s3[3].rz.torus_rank == 1);
    CHECK(s3[3].rz.torsion.is_trivial());
    CHECK(group_strings(builtin_model("rp2_6vertex"), Coeff::QZ) == S{"Q/Z", "Z/2", "0"});

    for (const auto& name : kModels) {
        SimplicialComplex K = builtin_model(name);
        auto z = cohomology(K, Coeff::Z);
        auto rz = cohomology(K, Coeff::QZ);
        auto q = cohomology(K, Coeff::Q);
        for (std::size_t n = 0; n < rz.size(); ++n) {
            REQUIRE(rz[n].rz.torus_rank == q[n].dim);
            auto next = n + 1 < z.size() ? z[n + 1].group.invariant_factors : std::vector<Integer>{};
            REQUIRE(rz[n].rz.torsion.invariant_factors == next);
        }
    }
}

TEST_CASE("Euler characteristic equals alternating Betti sum")
{
    for (const auto& name : kModels) {
        SimplicialComplex K = builtin_model(name);
        auto b = betti_numbers(K);
        long chi = 0;
        for (std::size_t p = 0; p < b.size(); ++p)
            chi += (p % 2 ? -1 : 1) * static_cast<long>(b[p]);
        REQUIRE(chi == K.euler_characteristic());
    }
}

TEST_CASE("cohomology is additive under disjoint union")
{
    SimplicialComplex A = builtin_model("rp2_6vertex"), B = builtin_model("sphere(3)");
    auto a = cohomology(A, Coeff::Z), b = cohomology(B, Coeff::Z), ab = cohomology(disjoint_union(A, B), Coeff::Z);
    for (std::size_t p = 0; p < ab.size(); ++p) {
        FGAbelianGroup ga = p < a.size() ? a[p].group : FGAbelianGroup{};
        FGAbelianGroup gb = p < b.size() ? b[p].group : FGAbelianGroup{};
        REQUIRE(ab[p].group == direct_sum(ga, gb));
    }
}

TEST_CASE("star cover nerve")
{
    for (const char* name : {"point", "sphere(3)", "disjoint(sphere(1),sphere(1))", "torus2_7vertex"}) {
        SimplicialComplex K = builtin_model(name);
        auto r = star_cover_nerve(K);
        CHECK(r.isomorphic);
        CHECK(r.nerve == K);
    }
    SimplicialComplex simplex = SimplicialComplex::from_maximal(4, {{0, 1, 2, 3}});
    CHECK(star_cover_nerve(simplex).nerve == simplex);
}

TEST_CASE("coordinates of integral classes")
{
    SimplicialComplex K = builtin_model("torus2_7vertex");
    CohomologyData D(K);
    const auto& H1 = D.H(1);
    REQUIRE(H1.group() == FGAbelianGroup{2, {}});
    std::mt19937 rng(1);
    for (int t = 0; t < 20; ++t) {
        IntVec c(2);
        c[0] = static_cast<int>(rng() % 11) - 5;
        c[1] = static_cast<int>(rng() % 11) - 5;
        IntVec x = H1.representative(c);
        IntVec a(K.count(0));
        for (auto& e : a)
            e = static_cast<int>(rng() % 5) - 2;
        IntVec y = x + D.cochains().coboundary(0) * a;
        REQUIRE(H1.coordinates(y) == c);
    }
    CHECK_THROWS_AS(H1.coordinates(IntVec(K.count(1), Integer(0)) + IntVec{[&] {
                        IntVec v(K.count(1), Integer(0));
                        v[0] = 1;
                        return v;
                    }()}),
                    PreconditionError);
}

TEST_CASE("flat cohomology representatives round trip")
{
    for (const char* name : {"sphere(3)", "rp2_6vertex", "torus2_7vertex", "product(sphere(1),rp2_6vertex)"}) {
        CohomologyData D(builtin_model(name));
        for (int p = 0; p <= D.dim(); ++p) {
            const auto& F = D.flat(p);
            std::mt19937 rng(p + 17);
            for (int t = 0; t < 10; ++t) {
                Vec<Rational> x(F.num_coords());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    Integer m = F.moduli()[i];
                    x[i] = m == 0 ? Rational(static_cast<int>(rng() % 60), 60)
                                  : Rational(Integer(rng() % 100) % m, m);
                }
                Vec<Rational> c = F.representative(x);
                REQUIRE(F.is_cocycle(c));
                REQUIRE(F.coordinates(c) == x);
            }
        }
    }
}

TEST_CASE("simplicial pullbacks are cochain maps")
{
    for (const auto& f : catalog_maps()) {
        auto Cs = coboundary_matrices(f.source());
        auto Ct = coboundary_matrices(f.target());
        for (int p = 0; p <= std::min(f.source().dim(), f.target().dim()); ++p) {
            IntMatrix lhs = Cs.coboundary(p) * f.pullback_matrix(p);
            IntMatrix rhs = f.pullback_matrix(p + 1) * Ct.coboundary(p);
            REQUIRE_MESSAGE(lhs == rhs, f.name());
        }
    }
}

TEST_CASE("wrap maps have the expected degree on H^3")
{
    for (int d : {1, 2, 3}) {
        SimplicialMap f = s3_wrap(d);
        CohomologyData S(f.source()), T(f.target());
        IntVec g = T.H(3).generator(0);
        IntVec fg = f.pullback(g, 3);
        IntVec c = S.H(3).coordinates(fg);
        IntVec g_src = S.H(3).coordinates(S.H(3).generator(0));
        REQUIRE(c.size() == 1);
        CHECK(abs(c[0]) == d);
        (void)g_src;
    }
}

TEST_CASE("complex JSON")
{
    SimplicialComplex K = load_complex_json(R"({"vertices": 3, "simplices": [[0,1],[1,2],[0,2]]})");
    CHECK(K == builtin_model("sphere(1)"));
    CHECK(load_complex_json(complex_to_json(builtin_model("torus2_7vertex"))) == builtin_model("torus2_7vertex"));
    CHECK_THROWS_AS(load_complex_json(""), ParseError);
    CHECK_THROWS_AS(load_complex_json("{\"vertices\": 3,"), ParseError);
    CHECK_THROWS_AS(load_complex_json(R"({"vertices": 3})"), ParseError);
}
