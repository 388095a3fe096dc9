#include "twahss/twisted_derham/cdga.hpp"

#include "twahss/errors.hpp"
#include "twahss/util/json_errors.hpp"

#include <json.hpp>

#include <cctype>
#include <functional>
#include <set>

namespace twahss {

// Inhomogeneous intermediate values: degree -> vector (empty above the truncation).
using Poly = std::map<int, FieldVec>;

class PolyParser
{
  public:
    PolyParser(const CDGAModel& A, const std::string& s) : A_(A), s_(s) {}

    Poly parse()
    {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

  private:
    const CDGAModel& A_;
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("polynomial '" + s_ + "': " + what + " at position " + std::to_string(pos_ + 1));
    }
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly constant(const FieldScalar& c) const
    {
        Poly p;
        FieldVec v = A_.unit();
        for (auto& x : v)
            x *= c;
        p[0] = v;
        return p;
    }
    Poly times(const Poly& a, const Poly& b) const
    {
        Poly out;
        for (const auto& [da, va] : a)
            for (const auto& [db, vb] : b) {
                int n = da + db;
                FieldVec prod = (n > A_.N_ || va.empty() || vb.empty()) ? FieldVec(A_.dim(n), FieldScalar(0))
                                                                        : A_.multiply(va, da, vb, db);
                auto it = out.find(n);
                if (it == out.end())
                    out[n] = prod;
                else
                    it->second = it->second + prod;
            }
        return out;
    }
    static Poly plus(Poly a, const Poly& b, bool negate)
    {
        for (const auto& [d, v] : b) {
            FieldVec w = v;
            if (negate)
                for (auto& x : w)
                    x = -x;
            auto it = a.find(d);
            if (it == a.end())
                a[d] = w;
            else
                it->second = it->second + w;
        }
        return a;
    }

    Poly expr()
    {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly acc = plus(Poly{}, term(), neg);
        while (true) {
            if (eat('+'))
                acc = plus(acc, term(), false);
            else if (eat('-'))
                acc = plus(acc, term(), true);
            else
                break;
        }
        return acc;
    }
    Poly term()
    {
        Poly p = factor();
        while (eat('*'))
            p = times(p, factor());
        return p;
    }
    Integer integer()
    {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (b == pos_)
            fail("expected a number");
        return Integer(s_.substr(b, pos_ - b));
    }
    Poly factor()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')'))
                fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Integer den = 1;
            if (eat('/')) {
                den = integer();
                if (den == 0)
                    fail("division by zero");
            }
            return constant(FieldScalar(Rational(num, den)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(b, pos_ - b);
            if (name == "sqrt2")
                return constant(FieldScalar::sqrt2());
            if (name == "sqrt") {
                if (!eat('(') || integer() != 2 || !eat(')'))
                    fail("only sqrt(2) is supported");
                return constant(FieldScalar::sqrt2());
            }
            std::size_t gi = A_.gens_.size();
            for (std::size_t i = 0; i < A_.gens_.size(); ++i)
                if (A_.gens_[i].name == name)
                    gi = i;
            if (gi == A_.gens_.size()) {
                pos_ = b;
                fail("unknown generator '" + name + "'");
            }
            Poly g;
            int dg = A_.gens_[gi].degree;
            g[dg] = dg > A_.N_ ? FieldVec{} : A_.generator_vec(name);
            if (eat('^')) {
                Integer k = integer();
                if (k > 64)
                    fail("exponent too large");
                Poly out = constant(FieldScalar(1));
                for (int i = 0; i < static_cast<int>(k); ++i)
                    out = times(out, g);
                return out;
            }
            return g;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

// ---------------------------------------------------------------------------

CDGAModel::CDGAModel(std::vector<Generator> generators, int truncate_above,
                     const std::map<std::string, std::string>& differential)
    : gens_(std::move(generators)), N_(truncate_above)
{
    if (N_ < 0)
        throw PreconditionError("truncation degree must be non-negative");
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (g.degree < 1)
            throw PreconditionError("generator " + g.name + " must have positive degree");
        if (g.name == "sqrt2" || g.name == "sqrt" || g.name.empty() ||
            !(std::isalpha(static_cast<unsigned char>(g.name[0])) || g.name[0] == '_'))
            throw PreconditionError("invalid generator name '" + g.name + "'");
        if (!names.insert(g.name).second)
            throw PreconditionError("duplicate generator " + g.name);
    }
    for (const auto& [name, value] : differential)
        if (!names.count(name))
            throw PreconditionError("differential given on unknown generator '" + name + "'");

    basis_.assign(N_ + 1, {});
    Exps e(gens_.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int deg) {
        if (i == gens_.size()) {
            basis_[deg].push_back(e);
            return;
        }
        const int dg = gens_[i].degree;
        const int maxe = dg % 2 ? 1 : (N_ - deg) / dg;
        for (int k = 0; k <= maxe && deg + k * dg <= N_; ++k) {
            e[i] = k;
            rec(i + 1, deg + k * dg);
        }
        e[i] = 0;
    };
    rec(0, 0);
    for (int n = 0; n <= N_; ++n) {
        std::sort(basis_[n].begin(), basis_[n].end(), std::greater<>());
        for (std::size_t i = 0; i < basis_[n].size(); ++i)
            index_[basis_[n][i]] = {n, i};
    }

    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const int target = gens_[i].degree + 1;
        auto it = differential.find(gens_[i].name);
        if (it == differential.end())
            dgen_.push_back(FieldVec(dim(target), FieldScalar(0)));
        else
            dgen_.push_back(parse_element(it->second, target));
    }

    std::map<Exps, FieldVec> memo;
    for (int n = 0; n <= N_; ++n) {
        FieldMatrix M(dim(n + 1), dim(n));
        for (std::size_t j = 0; j < dim(n); ++j) {
            FieldVec col = d_monomial(basis_[n][j], memo);
            for (std::size_t i = 0; i < M.rows(); ++i)
                M(i, j) = col[i];
        }
        d_.push_back(std::move(M));
    }
}

int CDGAModel::degree_of(const Exps& e) const
{
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += e[i] * gens_[i].degree;
    return d;
}

int CDGAModel::mono_product(const Exps& a, const Exps& b, Exps& out) const
{
    out.assign(gens_.size(), 0);
    int inversions = 0, odd_in_b_before = 0;
    // count pairs (i in a odd, j in b odd, i > j)
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const bool odd = gens_[i].degree % 2 != 0;
        if (odd && a[i] && b[i])
            return 0;
        if (odd && a[i])
            inversions += odd_in_b_before;
        if (odd && b[i])
            ++odd_in_b_before;
        out[i] = a[i] + b[i];
    }
    if (degree_of(out) > N_)
        return 0;
    return inversions % 2 ? -1 : 1;
}

FieldVec CDGAModel::multiply(const FieldVec& a, int p, const FieldVec& b, int q) const
{
    FieldVec out(dim(p + q), FieldScalar(0));
    if (p + q > N_ || p < 0 || q < 0)
        return out;
    if (a.size() != dim(p) || b.size() != dim(q))
        throw std::invalid_argument("CDGAModel::multiply: element length does not match degree");
    Exps m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero())
                continue;
            int s = mono_product(basis_[p][i], basis_[q][j], m);
            if (s == 0)
                continue;
            FieldScalar c = a[i] * b[j];
            std::size_t k = index_.at(m).second;
            if (s > 0)
                out[k] += c;
            else
                out[k] -= c;
        }
    }
    return out;
}

FieldVec CDGAModel::d_monomial(const Exps& e, std::map<Exps, FieldVec>& memo) const
{
    const int n = degree_of(e);
    auto it = memo.find(e);
    if (it != memo.end())
        return it->second;
    FieldVec out(dim(n + 1), FieldScalar(0));
    std::size_t g = 0;
    while (g < e.size() && e[g] == 0)
        ++g;
    if (g < e.size() && n + 1 <= N_) {
        // e = g * rest, with g first in the ordering
        Exps rest = e;
        --rest[g];
        const int dg = gens_[g].degree, dr = n - dg;
        FieldVec rvec(dim(dr), FieldScalar(0));
        rvec[index_.at(rest).second] = FieldScalar(1);
        FieldVec gvec = generator_vec(gens_[g].name);
        FieldVec t1 = multiply(dgen_[g], dg + 1, rvec, dr);
        FieldVec t2 = multiply(gvec, dg, d_monomial(rest, memo), dr + 1);
        out = dg % 2 ? t1 - t2 : t1 + t2;
    }
    memo[e] = out;
    return out;
}

FieldMatrix CDGAModel::differential(int n) const
{
    if (n < 0 || n > N_)
        return FieldMatrix(dim(n + 1), dim(n));
    return d_[n];
}

FieldVec CDGAModel::generator_vec(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) {
            const int dg = gens_[i].degree;
            FieldVec v(dim(dg), FieldScalar(0));
            if (dg <= N_) {
                Exps e(gens_.size(), 0);
                e[i] = 1;
                v[index_.at(e).second] = FieldScalar(1);
            }
            return v;
        }
    throw PreconditionError("unknown generator '" + name + "'");
}

FieldVec CDGAModel::unit() const
{
    FieldVec v(dim(0), FieldScalar(0));
    if (!v.empty())
        v[0] = FieldScalar(1);
    return v;
}

bool CDGAModel::is_rational(const FieldVec& a) const
{
    for (const auto& x : a)
        if (!x.is_rational())
            return false;
    return true;
}

std::string CDGAModel::monomial_str(int n, std::size_t i) const
{
    const Exps& e = basis_.at(n).at(i);
    std::string s;
    for (std::size_t g = 0; g < e.size(); ++g) {
        if (!e[g])
            continue;
        if (!s.empty())
            s += "*";
        s += gens_[g].name;
        if (e[g] > 1)
            s += "^" + std::to_string(e[g]);
    }
    return s.empty() ? "1" : s;
}

std::string CDGAModel::element_str(const FieldVec& a, int n) const
{
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        std::string c = a[i].str(), m = monomial_str(n, i);
        bool compound = !a[i].is_rational() && a[i].a() != 0;
        bool negative = !compound && c[0] == '-';
        if (negative)
            c = c.substr(1);
        std::string t;
        if (compound)
            t = "(" + c + ")" + (m == "1" ? "" : "*" + m);
        else if (c == "1")
            t = m;
        else
            t = m == "1" ? c : c + "*" + m;
        if (s.empty())
            s = negative ? "-" + t : t;
        else
            s += (negative ? " - " : " + ") + t;
    }
    return s.empty() ? "0" : s;
}

FieldVec CDGAModel::parse_element(const std::string& text, int degree) const
{
    Poly p = PolyParser(*this, text).parse();
    FieldVec out(dim(degree), FieldScalar(0));
    for (const auto& [d, v] : p) {
        if (d == degree) {
            if (!v.empty())
                out = out + v;
        } else if (!is_zero_vec(v)) {
            throw ParseError("polynomial '" + text + "' has a component of degree " + std::to_string(d) +
                             ", expected degree " + std::to_string(degree));
        }
    }
    return out;
}

std::pair<int, FieldVec> CDGAModel::parse_homogeneous(const std::string& text) const
{
    Poly p = PolyParser(*this, text).parse();
    std::set<int> nonzero, syntactic;
    for (const auto& [d, v] : p) {
        syntactic.insert(d);
        if (!is_zero_vec(v))
            nonzero.insert(d);
    }
    const std::set<int>& use = nonzero.empty() ? syntactic : nonzero;
    if (use.size() != 1)
        throw ParseError("polynomial '" + text + "' is not homogeneous");
    int d = *use.begin();
    return {d, parse_element(text, d)};
}

void CDGAModel::validate() const
{
    auto fail = [](const std::string& what) { throw PreconditionError("CDGA axiom violated: " + what); };
    for (int n = 0; n + 1 <= N_; ++n)
        if (!(differential(n + 1) * differential(n)).is_zero())
            fail("d^2 != 0 on degree " + std::to_string(n));
    auto e = [&](int n, std::size_t i) {
        FieldVec v(dim(n), FieldScalar(0));
        v[i] = FieldScalar(1);
        return v;
    };
    for (int p = 0; p <= N_; ++p)
        for (int q = 0; p + q <= N_; ++q)
            for (std::size_t i = 0; i < dim(p); ++i)
                for (std::size_t j = 0; j < dim(q); ++j) {
                    FieldVec a = e(p, i), b = e(q, j);
                    FieldVec ab = multiply(a, p, b, q), ba = multiply(b, q, a, p);
                    if ((p * q) % 2)
                        for (auto& x : ba)
                            x = -x;
                    if (ab != ba)
                        fail("graded commutativity for " + monomial_str(p, i) + ", " + monomial_str(q, j));
                    FieldVec lhs = d(ab, p + q);
                    if (p + q + 1 <= N_) {
                        FieldVec t1 = multiply(d(a, p), p + 1, b, q), t2 = multiply(a, p, d(b, q), q + 1);
                        FieldVec rhs = p % 2 ? t1 - t2 : t1 + t2;
                        if (lhs != rhs)
                            fail("Leibniz rule for " + monomial_str(p, i) + ", " + monomial_str(q, j));
                    }
                    for (int r = 0; p + q + r <= N_; ++r)
                        for (std::size_t k = 0; k < dim(r); ++k) {
                            FieldVec c = e(r, k);
                            if (multiply(ab, p + q, c, r) != multiply(a, p, multiply(b, q, c, r), q + r))
                                fail("associativity");
                        }
                }
}

// ---------------------------------------------------------------------------

CDGAModel CDGAModel::from_json(const std::string& text)
{
    nlohmann::json j = parse_json_or_throw(text, "CDGA");
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
        throw ParseError("CDGA JSON needs a \"generators\" array");
    std::vector<Generator> gens;
    int maxdeg = 0;
    for (const auto& g : j["generators"]) {
        if (!g.is_object() || !g.contains("name") || !g.contains("degree") || !g["name"].is_string() ||
            !g["degree"].is_number_integer())
            throw ParseError("each generator needs a string \"name\" and an integer \"degree\"");
        gens.push_back({g["name"].get<std::string>(), g["degree"].get<int>()});
        maxdeg = std::max(maxdeg, gens.back().degree);
    }
    if (j.contains("relations") &&
        (!j["relations"].is_string() || j["relations"].get<std::string>() != "free-graded-commutative"))
        throw ParseError("only \"relations\": \"free-graded-commutative\" is supported");
    int N = maxdeg;
    if (j.contains("truncate_above")) {
        if (!j["truncate_above"].is_number_integer())
            throw ParseError("\"truncate_above\" must be an integer");
        N = j["truncate_above"].get<int>();
    } else {
        int sum = 0;
        for (const auto& g : gens)
            sum += g.degree % 2 ? g.degree : 0;
        bool has_even = false;
        for (const auto& g : gens)
            has_even = has_even || g.degree % 2 == 0;
        if (has_even)
            throw ParseError("\"truncate_above\" is required when there are even generators");
        N = sum;
    }
    std::map<std::string, std::string> diff;
    if (j.contains("differential")) {
        if (!j["differential"].is_array())
            throw ParseError("\"differential\" must be an array");
        for (const auto& e : j["differential"]) {
            if (!e.is_object() || !e.contains("on") || !e.contains("value") || !e["on"].is_string() ||
                !e["value"].is_string())
                throw ParseError("differential entries need string \"on\" and \"value\"");
            diff[e["on"].get<std::string>()] = e["value"].get<std::string>();
        }
    }
    CDGAModel A(gens, N, diff);
    A.validate();
    return A;
}

std::string CDGAModel::to_json() const
{
    nlohmann::json j;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : gens_)
        j["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
    j["relations"] = "free-graded-commutative";
    j["truncate_above"] = N_;
    j["differential"] = nlohmann::json::array();
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!is_zero_vec(dgen_[i]))
            j["differential"].push_back({{"on", gens_[i].name}, {"value", element_str(dgen_[i], gens_[i].degree + 1)}});
    return j.dump();
}

std::vector<std::string> cdga_catalog_names()
{
    return {"point", "s3", "s2", "torus2", "torus3", "synthetic_massey", "s2_exact_twist"};
}

CDGAModel builtin_cdga(const std::string& name)
{
    CDGAModel A;
    if (name == "point")
        A = CDGAModel({}, 0, {});
    else if (name == "s3")
        A = CDGAModel({{"x3", 3}}, 3, {});
    else if (name == "s2")
        A = CDGAModel({{"x2", 2}, {"y3", 3}}, 4, {{"y3", "x2^2"}});
    else if (name == "torus2")
        A = CDGAModel({{"a1", 1}, {"b1", 1}}, 2, {});
    else if (name == "torus3")
        A = CDGAModel({{"a1", 1}, {"b1", 1}, {"c1", 1}}, 3, {});
    else if (name == "synthetic_massey")
        A = CDGAModel({{"x3", 3}, {"a2", 2}, {"b4", 4}}, 8, {{"b4", "x3*a2"}});
    else if (name == "s2_exact_twist")
        A = CDGAModel({{"x2", 2}, {"y3", 3}, {"e2", 2}, {"w3", 3}}, 4, {{"y3", "x2^2"}, {"e2", "w3"}});
    else {
        std::string list;
        for (const auto& n : cdga_catalog_names())
            list += (list.empty() ? "" : ", ") + n;
        throw PreconditionError("unknown CDGA model '" + name + "'; available: " + list);
    }
    A.validate();
    return A;
}

}  // namespace twahss
