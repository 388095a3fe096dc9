#include "twahss/complexes/simplicial_complex.hpp"

#include "twahss/errors.hpp"
#include "twahss/util/json_errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace twahss {

using nlohmann::json;

std::string simplex_str(const Simplex& s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

namespace {

void check_tuple(int n, const Simplex& s)
{
    if (s.empty())
        throw PreconditionError("empty simplex in complex");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= n)
            throw PreconditionError("simplex " + simplex_str(s) + " uses a vertex outside 0.." + std::to_string(n - 1));
        if (i && s[i] <= s[i - 1])
            throw PreconditionError("simplex " + simplex_str(s) + " is not strictly increasing");
    }
}

}  // namespace

void SimplicialComplex::build_index()
{
    index_.assign(by_dim_.size(), {});
    for (std::size_t p = 0; p < by_dim_.size(); ++p) {
        std::sort(by_dim_[p].begin(), by_dim_[p].end());
        for (std::size_t i = 0; i < by_dim_[p].size(); ++i)
            index_[p][by_dim_[p][i]] = i;
    }
}

SimplicialComplex SimplicialComplex::from_maximal(int n, std::vector<Simplex> maximal)
{
    std::vector<std::set<Simplex>> faces;
    auto put = [&](const Simplex& s) {
        std::size_t p = s.size() - 1;
        if (faces.size() <= p)
            faces.resize(p + 1);
        faces[p].insert(s);
    };
    for (int v = 0; v < n; ++v)
        put({v});
    for (auto& s : maximal) {
        std::sort(s.begin(), s.end());
        check_tuple(n, s);
        const std::size_t k = s.size();
        if (k > 20)
            throw PreconditionError("simplex dimension too large: " + simplex_str(s));
        for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
            Simplex f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1ul << i))
                    f.push_back(s[i]);
            put(f);
        }
    }
    SimplicialComplex K;
    K.n_ = n;
    for (auto& f : faces)
        K.by_dim_.emplace_back(f.begin(), f.end());
    K.build_index();
    return K;
}

SimplicialComplex SimplicialComplex::from_closed(int n, std::vector<Simplex> all)
{
    std::set<Simplex> have;
    for (const auto& s : all) {
        check_tuple(n, s);
        if (!have.insert(s).second)
            throw PreconditionError("duplicate simplex " + simplex_str(s));
    }
    for (const auto& s : all)
        if (s.size() > 1)
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + i);
                if (!have.count(f))
                    throw PreconditionError("face-closure violation: " + simplex_str(f) + " is a face of " +
                                            simplex_str(s) + " but is missing");
            }
    SimplicialComplex K;
    K.n_ = n;
    for (const auto& s : have) {
        std::size_t p = s.size() - 1;
        if (K.by_dim_.size() <= p)
            K.by_dim_.resize(p + 1);
        K.by_dim_[p].push_back(s);
    }
    if (!K.by_dim_.empty() && K.by_dim_[0].size() != static_cast<std::size_t>(n)) {
        for (int v = 0; v < n; ++v)
            if (!have.count({v}))
                throw PreconditionError("vertex " + std::to_string(v) + " is not listed as a 0-simplex");
    }
    K.build_index();
    return K;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const
{
    static const std::vector<Simplex> none;
    return p < 0 || p > dim() ? none : by_dim_[p];
}

std::optional<std::size_t> SimplicialComplex::index(const Simplex& s) const
{
    if (s.empty() || s.size() > by_dim_.size())
        return std::nullopt;
    const auto& m = index_[s.size() - 1];
    auto it = m.find(s);
    if (it == m.end())
        return std::nullopt;
    return it->second;
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const
{
    auto i = index(s);
    if (!i)
        throw std::out_of_range("simplex " + simplex_str(s) + " not in complex");
    return *i;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (const auto& d : by_dim_)
        f.push_back(d.size());
    return f;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for (int p = 0; p <= dim(); ++p)
        for (const auto& s : by_dim_[p]) {
            bool maximal = true;
            if (p < dim())
                for (int v = 0; v < n_ && maximal; ++v) {
                    if (std::binary_search(s.begin(), s.end(), v))
                        continue;
                    Simplex t = s;
                    t.insert(std::upper_bound(t.begin(), t.end(), v), v);
                    if (contains(t))
                        maximal = false;
                }
            if (maximal)
                out.push_back(s);
        }
    return out;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (int p = 0; p <= dim(); ++p)
        chi += (p % 2 ? -1 : 1) * static_cast<long>(count(p));
    return chi;
}

// ---------------------------------------------------------------------------

IntMatrix CochainComplexZ::coboundary(int p) const
{
    if (p >= 0 && p < static_cast<int>(delta.size()))
        return delta[p];
    return IntMatrix(rank(p + 1), rank(p));
}

CochainComplexZ coboundary_matrices(const SimplicialComplex& K)
{
    CochainComplexZ C;
    for (int p = 0; p <= K.dim(); ++p)
        C.ranks.push_back(K.count(p));
    for (int p = 0; p < K.dim(); ++p) {
        IntMatrix d(K.count(p + 1), K.count(p));
        const auto& up = K.simplices(p + 1);
        for (std::size_t r = 0; r < up.size(); ++r)
            for (std::size_t i = 0; i < up[r].size(); ++i) {
                Simplex f = up[r];
                f.erase(f.begin() + i);
                d(r, K.index_of(f)) += (i % 2 ? -1 : 1);
            }
        C.delta.push_back(std::move(d));
    }
    for (std::size_t p = 0; p + 1 < C.delta.size(); ++p)
        if (!(C.delta[p + 1] * C.delta[p]).is_zero())
            throw std::logic_error("coboundary matrices do not square to zero in degree " + std::to_string(p));
    return C;
}

// ---------------------------------------------------------------------------

NerveResult star_cover_nerve(const SimplicialComplex& K)
{
    // st(v) as a set of (dimension, index) pairs
    const int n = K.num_vertices();
    std::vector<std::set<std::pair<int, std::size_t>>> star(n);
    for (int p = 0; p <= K.dim(); ++p)
        for (std::size_t i = 0; i < K.count(p); ++i)
            for (int v : K.simplices(p)[i])
                star[v].insert({p, i});

    std::vector<Simplex> nerve_simplices;
    // grow vertex sets in increasing order while the stars still meet
    std::vector<std::pair<Simplex, std::set<std::pair<int, std::size_t>>>> frontier;
    for (int v = 0; v < n; ++v)
        if (!star[v].empty())
            frontier.push_back({{v}, star[v]});
    while (!frontier.empty()) {
        decltype(frontier) next;
        for (auto& [S, common] : frontier) {
            nerve_simplices.push_back(S);
            for (int w = S.back() + 1; w < n; ++w) {
                std::set<std::pair<int, std::size_t>> meet;
                std::set_intersection(common.begin(), common.end(), star[w].begin(), star[w].end(),
                                      std::inserter(meet, meet.begin()));
                if (!meet.empty()) {
                    Simplex T = S;
                    T.push_back(w);
                    next.push_back({T, std::move(meet)});
                }
            }
        }
        frontier = std::move(next);
    }
    NerveResult r;
    r.nerve = SimplicialComplex::from_closed(n, nerve_simplices);
    r.vertex_map.resize(n);
    for (int v = 0; v < n; ++v)
        r.vertex_map[v] = v;
    r.isomorphic = (r.nerve == K);
    return r;
}

SimplicialComplex disjoint_union(const SimplicialComplex& A, const SimplicialComplex& B)
{
    std::vector<Simplex> ms = A.maximal_simplices();
    for (auto s : B.maximal_simplices()) {
        for (auto& v : s)
            v += A.num_vertices();
        ms.push_back(s);
    }
    return SimplicialComplex::from_maximal(A.num_vertices() + B.num_vertices(), ms);
}

SimplicialComplex product(const SimplicialComplex& A, const SimplicialComplex& B)
{
    const int nb = B.num_vertices();
    std::vector<Simplex> ms;
    for (const auto& s : A.maximal_simplices())
        for (const auto& t : B.maximal_simplices()) {
            // monotone lattice paths from (0,0) to (|s|-1, |t|-1)
            const std::size_t a = s.size() - 1, b = t.size() - 1;
            std::vector<bool> steps(a + b, false);
            std::fill(steps.begin(), steps.begin() + a, true);
            std::sort(steps.begin(), steps.end());
            do {
                Simplex c;
                std::size_t i = 0, j = 0;
                c.push_back(s[i] * nb + t[j]);
                for (bool right : steps) {
                    right ? ++i : ++j;
                    c.push_back(s[i] * nb + t[j]);
                }
                ms.push_back(c);
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    return SimplicialComplex::from_maximal(A.num_vertices() * nb, ms);
}

SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B)
{
    std::vector<Simplex> ms;
    for (const auto& s : A.maximal_simplices())
        for (auto t : B.maximal_simplices()) {
            Simplex c = s;
            for (int v : t)
                c.push_back(v + A.num_vertices());
            ms.push_back(c);
        }
    return SimplicialComplex::from_maximal(A.num_vertices() + B.num_vertices(), ms);
}

// ---------------------------------------------------------------------------

SimplicialComplex load_complex_json(const std::string& text)
{
    json j = parse_json_or_throw(text, "complex");
    if (!j.is_object() || !j.contains("vertices") || !j.contains("simplices"))
        throw ParseError("complex JSON needs \"vertices\" and \"simplices\"");
    if (!j["vertices"].is_number_integer() || j["vertices"].get<long>() <= 0)
        throw ParseError("\"vertices\" must be a positive integer");
    if (!j["simplices"].is_array())
        throw ParseError("\"simplices\" must be an array of vertex lists");
    int n = j["vertices"].get<int>();
    std::vector<Simplex> ms;
    for (const auto& s : j["simplices"]) {
        if (!s.is_array())
            throw ParseError("each simplex must be an array of vertex indices");
        Simplex t;
        for (const auto& v : s) {
            if (!v.is_number_integer())
                throw ParseError("vertex indices must be integers");
            t.push_back(v.get<int>());
        }
        ms.push_back(t);
    }
    return SimplicialComplex::from_maximal(n, ms);
}

std::string complex_to_json(const SimplicialComplex& K)
{
    json j;
    j["vertices"] = K.num_vertices();
    j["simplices"] = json::array();
    for (const auto& s : K.maximal_simplices())
        j["simplices"].push_back(s);
    return j.dump();
}

}  // namespace twahss
