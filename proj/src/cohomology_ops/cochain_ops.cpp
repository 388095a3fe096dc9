#include "twahss/cohomology_ops/cochain_ops.hpp"

#include "twahss/errors.hpp"
#include "twahss/util/json_errors.hpp"

#include <json.hpp>

namespace twahss {

namespace {

Vec<Rational> apply_int(const IntMatrix& M, const Vec<Rational>& x)
{
    Vec<Rational> r(M.rows(), Rational(0));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t k = 0; k < M.cols(); ++k)
            if (!is_zero_scalar(M(i, k)) && !is_zero_scalar(x[k]))
                r[i] += Rational(M(i, k)) * x[k];
    return r;
}

Vec<Z2> delta_mod2(const CohomologyData& D, const Vec<Z2>& x, int p)
{
    IntMatrix M = D.cochains().coboundary(p);
    Vec<Z2> r(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t k = 0; k < M.cols(); ++k)
            if (x[k].bit() && M(i, k) % 2 != 0)
                r[i] += Z2(1);
    return r;
}

void require_length(const CohomologyData& D, std::size_t n, int p, const char* what)
{
    if (n != D.complex().count(p))
        throw PreconditionError(std::string(what) + ": cochain length does not match degree " + std::to_string(p));
}

void require_mod2_cocycle(const CohomologyData& D, const Vec<Z2>& x, int p, const char* what)
{
    require_length(D, x.size(), p, what);
    if (!is_zero_vec(delta_mod2(D, x, p)))
        throw PreconditionError(std::string(what) + ": input is not a mod 2 cocycle");
}

void require_int_cocycle(const CohomologyData& D, const IntVec& x, int p, const char* what)
{
    require_length(D, x.size(), p, what);
    if (!is_zero_vec(D.cochains().coboundary(p) * x))
        throw PreconditionError(std::string(what) + ": input is not an integral cocycle");
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

}  // namespace

Vec<Rational> reduce_mod1(Vec<Rational> c)
{
    for (auto& x : c)
        x = frac(x);
    return c;
}

Vec<Z2> cup_i(const SimplicialComplex& K, const Vec<Z2>& x, int p, const Vec<Z2>& y, int q, int i)
{
    const int n = p + q - i;
    if (i < 0 || n < 0 || n > K.dim())
        return Vec<Z2>(K.count(n));
    const auto& target = K.simplices(n);
    Vec<Z2> out(target.size());
    const int usize = n - i;  // number of indices in U
    if (usize < 0)
        return out;
    std::vector<int> U(usize);
    for (std::size_t t = 0; t < target.size(); ++t) {
        const Simplex& s = target[t];
        Z2 acc;
        // iterate over increasing tuples U in {0..n}
        for (int k = 0; k < usize; ++k)
            U[k] = k;
        while (true) {
            std::vector<bool> in0(n + 1, false), in1(n + 1, false);
            int n0 = 0, n1 = 0;
            for (int k = 0; k < usize; ++k) {
                if ((U[k] - (k + 1)) % 2 == 0) {
                    in0[U[k]] = true;
                    ++n0;
                } else {
                    in1[U[k]] = true;
                    ++n1;
                }
            }
            if (n - n0 == p && n - n1 == q) {
                Simplex a, b;
                for (int v = 0; v <= n; ++v) {
                    if (!in0[v])
                        a.push_back(s[v]);
                    if (!in1[v])
                        b.push_back(s[v]);
                }
                if (x[K.index_of(a)].bit() && y[K.index_of(b)].bit())
                    acc += Z2(1);
            }
            int k = usize - 1;
            while (k >= 0 && U[k] == n - (usize - 1 - k))
                --k;
            if (k < 0)
                break;
            ++U[k];
            for (int l = k + 1; l < usize; ++l)
                U[l] = U[l - 1] + 1;
        }
        out[t] = acc;
    }
    return out;
}

Vec<Z2> reduce_mod2(const IntVec& x)
{
    Vec<Z2> r;
    r.reserve(x.size());
    for (const auto& v : x)
        r.push_back(Z2(v));
    return r;
}

IntVec lift_01(const Vec<Z2>& x)
{
    IntVec r;
    r.reserve(x.size());
    for (const auto& v : x)
        r.push_back(Integer(v.bit() ? 1 : 0));
    return r;
}

Vec<Z2> sq2(const CohomologyData& D, const Vec<Z2>& x, int p)
{
    require_mod2_cocycle(D, x, p, "Sq^2");
    if (p < 2)
        return Vec<Z2>(D.complex().count(p + 2));
    return cup_i(D.complex(), x, p, x, p, p - 2);
}

IntVec bockstein_Z2(const CohomologyData& D, const Vec<Z2>& x, int p)
{
    require_mod2_cocycle(D, x, p, "Z/2 Bockstein");
    IntVec d = D.cochains().coboundary(p) * lift_01(x);
    for (auto& v : d)
        v /= 2;  // exact: every entry is even
    return d;
}

IntVec bockstein_QZ(const CohomologyData& D, const Vec<Rational>& c, int p)
{
    require_length(D, c.size(), p, "Q/Z Bockstein");
    Vec<Rational> d = apply_int(D.cochains().coboundary(p), reduce_mod1(c));
    IntVec out;
    for (const auto& v : d) {
        if (!is_integer(v))
            throw PreconditionError("Q/Z Bockstein: input is not a Q/Z cocycle");
        out.push_back(boost::multiprecision::numerator(v));
    }
    return out;
}

Vec<Rational> gamma2(const Vec<Z2>& x)
{
    Vec<Rational> r;
    r.reserve(x.size());
    for (const auto& v : x)
        r.push_back(v.bit() ? Rational(1, 2) : Rational(0));
    return r;
}

IntVec sq3_Z(const CohomologyData& D, const IntVec& x, int p)
{
    require_int_cocycle(D, x, p, "Sq^3_Z");
    return bockstein_Z2(D, sq2(D, reduce_mod2(x), p), p + 2);
}

Vec<Rational> sq3_flat(const CohomologyData& D, const Vec<Rational>& c, int p)
{
    IntVec b = bockstein_QZ(D, c, p);
    return gamma2(sq2(D, reduce_mod2(b), p + 1));
}

Vec<Rational> db_cup_flat(const CohomologyData& D, const IntVec& h, const Vec<Rational>& c, int p)
{
    require_int_cocycle(D, h, 3, "DB cup");
    require_length(D, c.size(), p, "DB cup");
    if (!is_zero_vec(torus_apply(D.cochains().coboundary(p), c)))
        throw PreconditionError("DB cup: flat input is not a Q/Z cocycle");
    Vec<Rational> hq(h.begin(), h.end());
    return reduce_mod1(cup(D.complex(), reduce_mod1(c), p, hq, 3));
}

// ---------------------------------------------------------------------------

Cochain::Cochain(const SimplicialComplex& K, int degree, Coeff coeff, Vec<Rational> values)
    : K_(&K), p_(degree), coeff_(coeff), v_(std::move(values))
{
    if (v_.size() != K.count(degree))
        throw PreconditionError("cochain of degree " + std::to_string(degree) + " needs " +
                                std::to_string(K.count(degree)) + " values, got " + std::to_string(v_.size()));
    for (auto& x : v_) {
        switch (coeff_) {
        case Coeff::Z:
            if (!is_integer(x))
                throw PreconditionError("Z cochain with a non-integer value");
            break;
        case Coeff::Z2:
            if (!is_integer(x))
                throw PreconditionError("Z2 cochain with a non-integer value");
            x = Rational(mod_nonneg(boost::multiprecision::numerator(x), Integer(2)));
            break;
        case Coeff::QZ:
            x = frac(x);
            break;
        case Coeff::Q:
            break;
        }
    }
}

Cochain Cochain::zero(const SimplicialComplex& K, int degree, Coeff coeff)
{
    return Cochain(K, degree, coeff, Vec<Rational>(K.count(degree), Rational(0)));
}

Cochain Cochain::from_integers(const SimplicialComplex& K, int degree, const IntVec& v)
{
    return Cochain(K, degree, Coeff::Z, Vec<Rational>(v.begin(), v.end()));
}

IntVec Cochain::integers() const
{
    if (coeff_ != Coeff::Z && coeff_ != Coeff::Z2)
        throw PreconditionError("cochain has non-integral coefficients");
    IntVec r;
    for (const auto& x : v_)
        r.push_back(boost::multiprecision::numerator(x));
    return r;
}

Vec<Z2> Cochain::bits() const { return reduce_mod2(integers()); }

bool Cochain::is_cocycle() const
{
    IntMatrix d = coboundary_matrices(*K_).coboundary(p_);
    Vec<Rational> dv = apply_int(d, v_);
    for (const auto& x : dv) {
        if (coeff_ == Coeff::Z2 && boost::multiprecision::numerator(x) % 2 != 0)
            return false;
        if (coeff_ == Coeff::QZ && !is_integer(x))
            return false;
        if ((coeff_ == Coeff::Z || coeff_ == Coeff::Q) && x != 0)
            return false;
    }
    return true;
}

std::string Cochain::to_json() const
{
    nlohmann::json j;
    j["degree"] = p_;
    j["coeff"] = coeff_name(coeff_);
    j["values"] = nlohmann::json::array();
    for (const auto& x : v_) {
        if (coeff_ == Coeff::QZ || coeff_ == Coeff::Q)
            j["values"].push_back(to_string(x));
        else
            j["values"].push_back(std::stol(to_string(x)));
    }
    return j.dump();
}

Cochain Cochain::from_json(const SimplicialComplex& K, const std::string& text)
{
    nlohmann::json j = parse_json_or_throw(text, "cochain");
    if (!j.is_object() || !j.contains("degree") || !j.contains("values"))
        throw ParseError("cochain JSON needs \"degree\" and \"values\"");
    if (!j["degree"].is_number_integer())
        throw ParseError("cochain \"degree\" must be an integer");
    Coeff c = j.contains("coeff") ? parse_coeff(j["coeff"].get<std::string>()) : Coeff::Z;
    Vec<Rational> v;
    for (const auto& x : j["values"]) {
        if (x.is_number_integer())
            v.push_back(Rational(x.get<long>()));
        else if (x.is_string())
            v.push_back(parse_rational(x.get<std::string>()));
        else
            throw ParseError("cochain values must be integers or fraction strings");
    }
    return Cochain(K, j["degree"].get<int>(), c, std::move(v));
}

Cochain cup(const Cochain& x, const Cochain& y)
{
    if (&x.complex() != &y.complex() && !(x.complex() == y.complex()))
        throw PreconditionError("cup: cochains live on different complexes");
    Coeff a = x.coeff(), b = y.coeff(), out;
    if (a == b && a != Coeff::QZ)
        out = a;
    else if ((a == Coeff::Z && b == Coeff::QZ) || (a == Coeff::QZ && b == Coeff::Z))
        out = Coeff::QZ;
    else
        throw PreconditionError("cup: no coefficient pairing " + coeff_name(a) + " x " + coeff_name(b));
    return Cochain(x.complex(), x.degree() + y.degree(), out,
                   cup(x.complex(), x.values(), x.degree(), y.values(), y.degree()));
}

FlatClass flat_class_from_coords(const CohomologyData& D, int p, const Vec<Rational>& coords)
{
    FlatClass f;
    f.degree = p;
    f.representative = D.flat(p).representative(coords);
    f.coords = D.flat(p).coordinates(f.representative);
    return f;
}

FlatClass flat_class_from_cocycle(const CohomologyData& D, int p, const Vec<Rational>& cocycle)
{
    FlatClass f;
    f.degree = p;
    f.representative = reduce_mod1(cocycle);
    f.coords = D.flat(p).coordinates(f.representative);
    return f;
}

}  // namespace twahss
