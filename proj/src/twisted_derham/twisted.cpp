#include "twahss/twisted_derham/twisted.hpp"

#include "twahss/errors.hpp"

#include <random>
#include <sstream>

namespace twahss {

std::size_t periodic_dim(const DGA& A, int parity)
{
    std::size_t n = 0;
    for (int p = parity; p <= A.top_degree(); p += 2)
        n += A.dim(p);
    return n;
}

std::size_t periodic_offset(const DGA& A, int degree)
{
    std::size_t n = 0;
    for (int p = degree % 2; p < degree; p += 2)
        n += A.dim(p);
    return n;
}

PeriodicElement PeriodicElement::zero(const DGA& A, int parity)
{
    PeriodicElement x;
    x.parity = parity;
    for (int p = 0; p <= A.top_degree(); ++p)
        x.components.push_back(A.zero(p));
    return x;
}

PeriodicElement PeriodicElement::from_flat(const DGA& A, int parity, const FieldVec& v)
{
    if (v.size() != periodic_dim(A, parity))
        throw std::invalid_argument("PeriodicElement::from_flat: length mismatch");
    PeriodicElement x = zero(A, parity);
    std::size_t o = 0;
    for (int p = parity; p <= A.top_degree(); p += 2) {
        for (std::size_t i = 0; i < A.dim(p); ++i)
            x.components[p][i] = v[o + i];
        o += A.dim(p);
    }
    return x;
}

FieldVec PeriodicElement::flat() const
{
    FieldVec v;
    for (std::size_t p = 0; p < components.size(); ++p) {
        if (static_cast<int>(p % 2) != parity) {
            if (!is_zero_vec(components[p]))
                throw std::invalid_argument("PeriodicElement: component of the wrong parity");
            continue;
        }
        v.insert(v.end(), components[p].begin(), components[p].end());
    }
    return v;
}

bool PeriodicElement::is_zero() const
{
    for (const auto& c : components)
        if (!is_zero_vec(c))
            return false;
    return true;
}

void TwistForm::validate(const DGA& A) const
{
    if (H.size() != A.dim(3))
        throw PreconditionError("twist H must have degree 3");
    if (!A.is_cocycle(H, 3))
        throw PreconditionError("twist H is not closed");
    if (B) {
        if (B->size() != A.dim(2))
            throw PreconditionError("potential B must have degree 2");
        if (A.d(*B, 2) != H)
            throw PreconditionError("potential B does not satisfy dB = H");
    }
}

FieldMatrix twisted_matrix(const DGA& A, const FieldVec& H, int parity)
{
    TwistForm{H, std::nullopt}.validate(A);
    const int N = A.top_degree();
    FieldMatrix M(periodic_dim(A, 1 - parity), periodic_dim(A, parity));
    for (int p = parity; p <= N; p += 2) {
        const std::size_t c0 = periodic_offset(A, p);
        auto put = [&](const FieldMatrix& X, int target) {
            if (target > N)
                return;
            const std::size_t r0 = periodic_offset(A, target);
            for (std::size_t i = 0; i < X.rows(); ++i)
                for (std::size_t j = 0; j < X.cols(); ++j)
                    M(r0 + i, c0 + j) += X(i, j);
        };
        put(A.differential(p), p + 1);
        put(A.left_multiplication(H, 3, p), p + 3);
    }
    return M;
}

PeriodicElement twisted_differential(const DGA& A, const FieldVec& H, const PeriodicElement& x)
{
    FieldMatrix M = twisted_matrix(A, H, x.parity);
    return PeriodicElement::from_flat(A, 1 - x.parity, M * x.flat());
}

TwistedCohomology twisted_cohomology(const DGA& A, const FieldVec& H)
{
    TwistedCohomology out;
    FieldMatrix d[2] = {twisted_matrix(A, H, 0), twisted_matrix(A, H, 1)};
    for (int par = 0; par < 2; ++par) {
        const std::size_t n = periodic_dim(A, par);
        FieldSubspace num(n, kernel_basis(d[par]));
        const FieldMatrix& in = d[1 - par];
        FieldSubspace den(n);
        for (std::size_t j = 0; j < in.cols(); ++j)
            den.add(in.column(j));
        (par ? out.odd : out.even) = FieldQuotient(num, den);
    }
    return out;
}

FilteredComplex as_filtration(const DGA& A, const FieldVec& H)
{
    const int N = A.top_degree();
    std::vector<std::size_t> dims{periodic_dim(A, 0), periodic_dim(A, 1)};
    std::vector<FieldMatrix> d{twisted_matrix(A, H, 0), twisted_matrix(A, H, 1)};
    std::vector<std::vector<std::vector<FieldVec>>> spans(2);
    for (int par = 0; par < 2; ++par)
        for (int p = 1; p <= N; ++p) {
            std::vector<FieldVec> span;
            for (int q = p; q <= N; ++q) {
                if (q % 2 != par)
                    continue;
                const std::size_t o = periodic_offset(A, q);
                for (std::size_t i = 0; i < A.dim(q); ++i) {
                    FieldVec e(dims[par], FieldScalar(0));
                    e[o + i] = FieldScalar(1);
                    span.push_back(std::move(e));
                }
            }
            spans[par].push_back(std::move(span));
        }
    return FilteredComplex(dims, d, spans, N, true);
}

std::vector<OraclePage> ss_pages(const FilteredComplex& C)
{
    std::vector<OraclePage> out;
    for (int r = 2; r <= C.top() + 2; ++r)
        out.push_back(page(C, r));
    return out;
}

MasseyResult massey_differential(const DGA& A, const FieldVec& H, const FieldVec& x, int p, int k,
                                 std::optional<unsigned> seed)
{
    return massey_iterated(A, H, x, p, k, seed);
}

namespace {

FieldVec component(const DGA& A, const FieldVec& flat, int degree)
{
    const std::size_t o = periodic_offset(A, degree);
    return FieldVec(flat.begin() + o, flat.begin() + o + A.dim(degree));
}

// Classes in H^p(A) of the degree-p components of the given elements.
FieldSubspace lead_classes(const DGA& A, const FieldQuotient& Hp, const FieldSubspace& S, int p)
{
    FieldSubspace out(Hp.dim());
    for (const auto& v : S.basis()) {
        auto c = Hp.coordinates(component(A, v, p));
        if (!c)
            throw std::logic_error("lead component is not a cocycle");
        out.add(*c);
    }
    return out;
}

}  // namespace

MasseyOracleReport massey_oracle_check(const DGA& A, const FieldVec& H)
{
    MasseyOracleReport rep;
    const int N = A.top_degree();
    const FilteredComplex C = as_filtration(A, H);
    std::vector<FieldQuotient> Hq;
    for (int p = 0; p <= N; ++p)
        Hq.push_back(A.cohomology(p));
    auto fail = [&](int r, int p, const std::string& what) {
        rep.failures.push_back("page " + std::to_string(r) + ", p = " + std::to_string(p) + ": " + what);
    };

    for (int k = 1; 2 * k + 1 <= N + 1; ++k) {
        const int r = 2 * k + 1;
        const OraclePage P = page(C, r);
        for (int p = 0; p + r <= N; ++p) {
            const int n = p % 2, t = p + r, nt = (n + 1) % 2;
            const OracleEntry& E = P.at(p, n);
            FieldSubspace T = lead_classes(A, Hq[t], P.at(t, nt).B, t);
            for (const auto& b : E.E.representatives()) {
                const FieldVec x = component(A, b, p);
                MasseyResult m = massey_differential(A, H, x, p, k);
                ++rep.classes_checked;
                if (!m.defined()) {
                    fail(r, p, "surviving class has no defining system");
                    continue;
                }
                if (!(m.coset->indeterminacy == T))
                    fail(r, p, "indeterminacy differs from the page boundaries");
                PeriodicElement w = PeriodicElement::zero(A, nt);
                w.components[t] = m.coset->element;
                auto cls = oracle_class(P, t, nt, w.flat());
                auto dr = oracle_differential(C, P, p, n, b);
                if (!cls || !dr)
                    fail(r, p, "oracle could not evaluate the class");
                else if (*cls != *dr)
                    fail(r, p, "Massey coset differs from the oracle differential");
                else if (r >= 5 && !is_zero_vec(*dr))
                    ++rep.higher_nonzero;
            }
        }
    }

    // survival: the defining system of length k exists iff x lifts to Z_{2k+1}
    std::map<std::pair<int, int>, FieldSubspace> lifts;  // (r, p)
    auto survives = [&](int r, int p, const FieldVec& coords) {
        auto key = std::make_pair(r, p);
        auto it = lifts.find(key);
        if (it == lifts.end())
            it = lifts.emplace(key, lead_classes(A, Hq[p], oracle_Z(C, r, p, p % 2), p)).first;
        return it->second.contains(coords);
    };
    for (int p = 0; p <= N; ++p) {
        const FieldQuotient& Hp = Hq[p];
        std::vector<FieldVec> probes;
        FieldVec all(Hp.dim(), FieldScalar(0));
        for (std::size_t i = 0; i < Hp.dim(); ++i) {
            FieldVec e(Hp.dim(), FieldScalar(0));
            e[i] = FieldScalar(1);
            all[i] = FieldScalar(static_cast<long>(i + 1));
            probes.push_back(e);
        }
        if (Hp.dim() > 1)
            probes.push_back(all);
        for (const auto& c : probes) {
            const FieldVec x = Hp.lift(c);
            for (int k = 2; 2 * k + 1 <= N + 2; ++k) {
                const int r = 2 * k + 1;
                MasseyResult m = massey_differential(A, H, x, p, k);
                const bool s = survives(r, p, c);
                if (m.defined() != s) {
                    fail(r, p, m.defined() ? "defined but the class does not survive" : "Undefined but the class survives");
                    continue;
                }
                if (!m.defined()) {
                    const int st = m.undefined_stage;
                    if (!survives(2 * st + 1, p, c) || survives(2 * st + 3, p, c))
                        fail(r, p, "Undefined stage " + std::to_string(st) + " disagrees with the oracle");
                    ++rep.undefined_checked;
                    break;
                }
            }
        }
    }
    return rep;
}

namespace {

// e^{sB} as components by degree
std::vector<FieldVec> exp_components(const DGA& A, const FieldVec& B, int sign)
{
    const int N = A.top_degree();
    std::vector<FieldVec> e;
    for (int p = 0; p <= N; ++p)
        e.push_back(A.zero(p));
    if (N < 0)
        return e;
    FieldVec pw(A.dim(0), FieldScalar(0));
    if (!pw.empty())
        pw[0] = FieldScalar(1);
    Rational fact = 1;
    for (int j = 0; 2 * j <= N; ++j) {
        if (j > 0) {
            pw = A.multiply(B, 2, pw, 2 * (j - 1));
            if (sign < 0)
                for (auto& c : pw)
                    c = -c;
            fact *= j;
        }
        for (std::size_t i = 0; i < pw.size(); ++i)
            e[2 * j][i] = pw[i] / FieldScalar(fact);
    }
    return e;
}

PeriodicElement multiply_even(const DGA& A, const std::vector<FieldVec>& e, const PeriodicElement& x)
{
    const int N = A.top_degree();
    PeriodicElement out = PeriodicElement::zero(A, x.parity);
    for (int q = 0; q <= N; q += 2)
        for (int p = x.parity; p + q <= N; p += 2) {
            FieldVec prod = A.multiply(e[q], q, x.components[p], p);
            out.components[p + q] = out.components[p + q] + prod;
        }
    return out;
}

}  // namespace

PeriodicElement exp_trivialize(const DGA& A, const TwistForm& t, const PeriodicElement& x)
{
    t.validate(A);
    if (!t.B)
        throw PreconditionError("exp_trivialize needs a potential B with dB = H");
    return multiply_even(A, exp_components(A, *t.B, -1), x);
}

PeriodicElement exp_untrivialize(const DGA& A, const TwistForm& t, const PeriodicElement& x)
{
    t.validate(A);
    if (!t.B)
        throw PreconditionError("exp_untrivialize needs a potential B with dB = H");
    return multiply_even(A, exp_components(A, *t.B, 1), x);
}

// ---------------------------------------------------------------------------

RandomCDGA random_cdga(unsigned seed)
{
    std::mt19937 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coeff = [&]() {
        FieldScalar c(Rational(uni(-2, 2)));
        if (uni(0, 5) == 0)
            c += FieldScalar(Rational(0), Rational(uni(-1, 1)));
        return c;
    };
    static const int degree_pool[] = {1, 2, 2, 3, 3, 3, 4, 5};

    // a third of the samples carry a planted product d(b) = x*a with |x| = 3,
    // which makes length-2 Massey products likely
    std::vector<Generator> gens;
    std::map<std::string, std::string> diff;
    int maxdeg = 0;
    const bool planted = uni(0, 2) == 0;
    if (planted) {
        const int da = uni(1, 2) * 2;
        gens = {{"x3", 3}, {"a" + std::to_string(da), da}, {"b" + std::to_string(da + 2), da + 2}};
        diff[gens[2].name] = "x3*" + gens[1].name;
        maxdeg = da + 2;
    }
    const int g = planted ? 3 + uni(0, 1) : uni(1, 4);
    for (int i = static_cast<int>(gens.size()); i < g; ++i) {
        int d = degree_pool[uni(0, 7)];
        gens.push_back({"g" + std::to_string(i) + "_" + std::to_string(d), d});
        maxdeg = std::max(maxdeg, d);
    }
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
    const int N = planted ? uni(std::max(7, maxdeg), 9)
                          : uni(std::max(3, maxdeg), std::min(9, std::max(6, maxdeg + 3)));

    for (int i = 1; i < g; ++i) {
        const int target = gens[i].degree + 1;
        if (diff.count(gens[i].name) || (planted && gens[i].name == "x3") || target > N || uni(0, 2) == 0)
            continue;
        std::vector<Generator> prefix(gens.begin(), gens.begin() + i);
        std::map<std::string, std::string> pdiff;
        for (const auto& gen : prefix)
            if (diff.count(gen.name))
                pdiff[gen.name] = diff[gen.name];
        CDGAModel sub(prefix, N, pdiff);
        std::vector<FieldVec> ker = kernel_basis(sub.differential(target));
        if (ker.empty())
            continue;
        FieldVec v(sub.dim(target), FieldScalar(0));
        for (const auto& k : ker) {
            FieldScalar c = coeff();
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] += c * k[j];
        }
        if (!is_zero_vec(v))
            diff[gens[i].name] = sub.element_str(v, target);
    }

    RandomCDGA out;
    out.model = CDGAModel(gens, N, diff);
    std::vector<FieldVec> ker = kernel_basis(out.model.differential(3));
    out.H = out.model.zero(3);
    if (planted) {
        out.H = out.model.generator_vec("x3");
        if (uni(0, 1))
            ker.clear();
    }
    for (int attempt = 0; attempt < 4 && (planted || is_zero_vec(out.H)) && !ker.empty(); ++attempt) {
        for (const auto& k : ker) {
            FieldScalar c = coeff();
            for (std::size_t j = 0; j < k.size(); ++j)
                out.H[j] += c * k[j];
        }
        if (planted)
            break;
    }
    std::ostringstream os;
    os << "seed " << seed << ": " << out.model.to_json() << " H = " << out.model.element_str(out.H, 3);
    out.description = os.str();
    return out;
}

}  // namespace twahss
