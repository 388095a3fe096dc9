#include "twahss/complexes/catalog.hpp"

#include "twahss/errors.hpp"

#include <algorithm>
#include <cctype>

namespace twahss {

namespace {

SimplicialComplex sphere(int n)
{
    // boundary of the (n+1)-simplex
    std::vector<Simplex> facets;
    for (int skip = 0; skip <= n + 1; ++skip) {
        Simplex s;
        for (int v = 0; v <= n + 1; ++v)
            if (v != skip)
                s.push_back(v);
        facets.push_back(s);
    }
    return SimplicialComplex::from_maximal(n + 2, facets);
}

SimplicialComplex cycle(int n)
{
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return SimplicialComplex::from_maximal(n, edges);
}

SimplicialComplex torus2_7vertex()
{
    std::vector<Simplex> t;
    for (int i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex::from_maximal(7, t);
}

SimplicialComplex rp2_6vertex()
{
    return SimplicialComplex::from_maximal(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                               {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

// 9-vertex CP^2, invariant under (a,b) -> (a+1,b), (a,b+1) on vertex 3a+b.
SimplicialComplex cp2_9vertex()
{
    return SimplicialComplex::from_maximal(
        9, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 4, 5}, {0, 1, 3, 4, 6}, {0, 1, 3, 5, 7}, {0, 1, 3, 6, 7},
            {0, 1, 4, 5, 6}, {0, 1, 5, 6, 8}, {0, 1, 5, 7, 8}, {0, 1, 6, 7, 8}, {0, 2, 3, 4, 8}, {0, 2, 3, 5, 8},
            {0, 2, 4, 5, 6}, {0, 2, 4, 6, 7}, {0, 2, 4, 7, 8}, {0, 2, 5, 6, 8}, {0, 2, 6, 7, 8}, {0, 3, 4, 6, 7},
            {0, 3, 4, 7, 8}, {0, 3, 5, 7, 8}, {1, 2, 3, 4, 8}, {1, 2, 3, 5, 7}, {1, 2, 3, 6, 7}, {1, 2, 3, 6, 8},
            {1, 2, 4, 5, 7}, {1, 2, 4, 7, 8}, {1, 2, 6, 7, 8}, {1, 3, 4, 6, 8}, {1, 4, 5, 6, 8}, {1, 4, 5, 7, 8},
            {2, 3, 5, 6, 7}, {2, 3, 5, 6, 8}, {2, 4, 5, 6, 7}, {3, 4, 5, 6, 7}, {3, 4, 5, 6, 8}, {3, 4, 5, 7, 8}});
}

SimplicialComplex s3_join(int d)
{
    return join(join(cycle(3 * d), sphere(0)), sphere(0));
}

class NameParser
{
  public:
    explicit NameParser(const std::string& s) : s_(s) {}

    SimplicialComplex parse()
    {
        SimplicialComplex K = model();
        skip_ws();
        if (pos_ != s_.size())
            fail("trailing characters");
        return K;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("model name '" + s_ + "': " + what + " at position " + std::to_string(pos_));
    }
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool peek(char c)
    {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    std::string ident()
    {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (b == pos_)
            fail("expected a model name");
        return s_.substr(b, pos_ - b);
    }
    int integer()
    {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (b == pos_)
            fail("expected an integer");
        return std::stoi(s_.substr(b, pos_ - b));
    }

    SimplicialComplex model()
    {
        std::string name = ident();
        if (name == "sphere") {
            expect('(');
            int n = integer();
            expect(')');
            if (n > 4)
                throw PreconditionError("sphere(n) is catalogued for n <= 4 only");
            return sphere(n);
        }
        if (name == "s3_join" && peek('(')) {
            expect('(');
            int d = integer();
            expect(')');
            if (d < 1)
                throw PreconditionError("s3_join(d) needs d >= 1");
            return s3_join(d);
        }
        if (name == "disjoint" || name == "product" || name == "join") {
            expect('(');
            SimplicialComplex a = model();
            expect(',');
            SimplicialComplex b = model();
            expect(')');
            if (name == "disjoint")
                return disjoint_union(a, b);
            return name == "product" ? product(a, b) : join(a, b);
        }
        if (name == "point")
            return SimplicialComplex::from_maximal(1, {{0}});
        if (name == "torus2_7vertex")
            return torus2_7vertex();
        if (name == "torus3") {
            SimplicialComplex s1 = sphere(1);
            return product(product(s1, s1), s1);
        }
        if (name == "rp2_6vertex")
            return rp2_6vertex();
        if (name == "cp2_9vertex")
            return cp2_9vertex();
        if (name == "s3_join")
            return s3_join(1);
        std::string list;
        for (const auto& n : catalog_names())
            list += (list.empty() ? "" : ", ") + n;
        throw PreconditionError("unknown model '" + name + "'; available: " + list);
    }
};

}  // namespace

std::vector<std::string> catalog_names()
{
    return {"point",   "sphere(n)",   "torus2_7vertex", "torus3",      "rp2_6vertex", "cp2_9vertex",
            "s3_join", "s3_join(d)", "disjoint(A,B)",  "product(A,B)", "join(A,B)"};
}

SimplicialComplex builtin_model(const std::string& name)
{
    return NameParser(name).parse();
}

// ---------------------------------------------------------------------------

SimplicialMap::SimplicialMap(std::string name, SimplicialComplex source, SimplicialComplex target,
                             std::vector<int> vertex_map)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), vmap_(std::move(vertex_map))
{
    if (static_cast<int>(vmap_.size()) != source_.num_vertices())
        throw PreconditionError("map " + name_ + ": vertex map has the wrong length");
    for (int v : vmap_)
        if (v < 0 || v >= target_.num_vertices())
            throw PreconditionError("map " + name_ + ": vertex image out of range");
    for (int p = 0; p <= source_.dim(); ++p)
        for (const auto& s : source_.simplices(p)) {
            Simplex img;
            for (int v : s)
                img.push_back(vmap_[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!target_.contains(img))
                throw PreconditionError("map " + name_ + " is not simplicial: image of " + simplex_str(s) +
                                        " is not a simplex");
        }
}

std::size_t SimplicialMap::image_index(const Simplex& s, int& sign) const
{
    Simplex img;
    for (int v : s)
        img.push_back(vmap_[v]);
    // sign of the sorting permutation, by counting inversions
    int inv = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j) {
            if (img[i] == img[j]) {
                sign = 0;
                return 0;
            }
            inv += img[i] > img[j];
        }
    std::sort(img.begin(), img.end());
    sign = inv % 2 ? -1 : 1;
    return target_.index_of(img);
}

IntMatrix SimplicialMap::pullback_matrix(int p) const
{
    IntMatrix M(source_.count(p), target_.count(p));
    const auto& ss = source_.simplices(p);
    for (std::size_t i = 0; i < ss.size(); ++i) {
        int sign = 0;
        std::size_t j = image_index(ss[i], sign);
        if (sign)
            M(i, j) = sign;
    }
    return M;
}

SimplicialMap s3_wrap(int d)
{
    std::vector<int> vm;
    for (int i = 0; i < 3 * d; ++i)
        vm.push_back(i % 3);
    for (int j = 0; j < 4; ++j)
        vm.push_back(3 + j);
    return SimplicialMap("s3_wrap(" + std::to_string(d) + ")", s3_join(d), s3_join(1), vm);
}

std::vector<SimplicialMap> catalog_maps()
{
    std::vector<SimplicialMap> maps;
    auto identity = [](const std::string& name) {
        SimplicialComplex K = builtin_model(name);
        std::vector<int> vm(K.num_vertices());
        for (int v = 0; v < K.num_vertices(); ++v)
            vm[v] = v;
        return SimplicialMap("id_" + name, K, K, vm);
    };
    for (const char* n : {"sphere(3)", "torus2_7vertex", "rp2_6vertex", "s3_join"})
        maps.push_back(identity(n));

    SimplicialComplex pt = builtin_model("point");
    maps.emplace_back("point_into_sphere(3)", pt, builtin_model("sphere(3)"), std::vector<int>{0});
    maps.emplace_back("point_into_torus3", pt, builtin_model("torus3"), std::vector<int>{0});
    maps.emplace_back("sphere(3)_to_point", builtin_model("sphere(3)"), pt, std::vector<int>(5, 0));

    for (int d : {1, 2, 3})
        maps.push_back(s3_wrap(d));
    // swap the two suspension poles 5 <-> 6: degree -1
    maps.emplace_back("s3_pole_swap", builtin_model("s3_join"), builtin_model("s3_join"),
                      std::vector<int>{0, 1, 2, 3, 4, 6, 5});

    // T^2 = S^1 x S^1 with vertex 3i+j: projections and a circle inclusion
    SimplicialComplex s1 = builtin_model("sphere(1)");
    SimplicialComplex t2 = product(s1, s1);
    std::vector<int> pr1, pr2;
    for (int v = 0; v < 9; ++v) {
        pr1.push_back(v / 3);
        pr2.push_back(v % 3);
    }
    maps.emplace_back("torus2_projection_1", t2, s1, pr1);
    maps.emplace_back("torus2_projection_2", t2, s1, pr2);
    maps.emplace_back("circle_into_torus2", s1, t2, std::vector<int>{0, 1, 2});
    SimplicialComplex t3 = builtin_model("torus3");
    std::vector<int> pr12;
    for (int v = 0; v < 27; ++v)
        pr12.push_back(v / 3);
    maps.emplace_back("torus3_to_torus2", t3, t2, pr12);
    return maps;
}

}  // namespace twahss
