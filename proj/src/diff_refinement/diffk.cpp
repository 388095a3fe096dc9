#include "twahss/diff_refinement/diffk.hpp"

#include "twahss/errors.hpp"

namespace twahss {

namespace {

std::vector<IntVec> free_homology_gens(const CohomologyData& D, int p)
{
    std::vector<IntVec> out;
    const auto& Hp = D.homology(p);
    for (std::size_t i = 0; i < Hp.num_coords(); ++i)
        if (Hp.moduli()[i] == 0)
            out.push_back(Hp.generator(i));
    return out;
}

Integer pair_int(const IntVec& x, const IntVec& c)
{
    Integer s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_zero_scalar(x[i]) && !is_zero_scalar(c[i]))
            s += x[i] * c[i];
    return s;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix M(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            M(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            M(i, a.cols() + j) = b(i, j);
    }
    return M;
}

FieldVec to_field_vec(const Vec<Rational>& v)
{
    return FieldVec(v.begin(), v.end());
}

const CDGAModel& model(const GerbeData& G)
{
    if (!G.A)
        throw PreconditionError("gerbe data has no CDGA model");
    return *G.A;
}

const CohomologyData& complex_data(const GerbeData& G)
{
    if (!G.D)
        throw PreconditionError("formal gerbe data has no simplicial complex");
    return *G.D;
}

// lowest-degree part of omega that must be d-closed, per the d_curv formula
FieldVec leading_form(const DGA& A, const TwistForm& t, const PeriodicElement& omega, int p)
{
    t.validate(A);
    if (p < 0 || p % 2 != omega.parity)
        throw PreconditionError("d_curv: degree " + std::to_string(p) + " does not match the parity of the form");
    if (!twisted_differential(A, t.H, omega).is_zero())
        throw PreconditionError("d_curv: form is not twisted-closed");
    if (p > A.top_degree())
        return {};
    int low = -1;
    for (int q = omega.parity; q < p; q += 2)
        if (!is_zero_vec(omega.components[q])) {
            low = q;
            break;
        }
    if (low < 0)
        return omega.components[p];
    if (p == 2 && low == 0 && t.B) {
        FieldVec v = omega.components[2];
        FieldVec b0 = A.multiply(*t.B, 2, omega.components[0], 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += b0[i];
        return v;
    }
    throw UnsupportedError("d_curv: form has a nonzero component in degree " + std::to_string(low) +
                           " below the filtration level " + std::to_string(p) + "; outside the leading-term formula");
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t GerbeData::homology_rank(int p) const
{
    if (formal()) {
        auto it = formal_ranks.find(p);
        return it == formal_ranks.end() ? 0 : it->second;
    }
    if (p < 0 || p > D->dim())
        return 0;
    return D->homology(p).group().free_rank;
}

FieldVec GerbeData::h_periods() const
{
    if (formal())
        return FieldVec(h.begin(), h.end());
    FieldVec out;
    if (D->dim() < 3)
        return out;
    for (const auto& c : free_homology_gens(*D, 3))
        out.push_back(FieldScalar(pair_int(h, c)));
    return out;
}

void GerbeData::validate() const
{
    const CDGAModel& M = model(*this);
    H.validate(M);
    if (lambda != 1 && lambda != -1)
        throw PreconditionError("lambda must be +1 or -1");
    if (!formal())
        TwistCocycle(*D, h);
    else if (h.size() != homology_rank(3))
        throw PreconditionError("formal twist needs one value per H_3 generator");
    for (const auto& [p, P] : pairing) {
        if (P.cols() != M.cohomology(p).dim())
            throw PreconditionError("period pairing in degree " + std::to_string(p) + " needs " +
                                    std::to_string(M.cohomology(p).dim()) + " columns");
        if (P.rows() != homology_rank(p))
            throw PreconditionError("period pairing in degree " + std::to_string(p) + " needs " +
                                    std::to_string(homology_rank(p)) + " rows");
    }
    auto cH = M.cohomology(3).coordinates(H.H);
    if (!cH)
        throw PreconditionError("curvature H is not closed");
    auto it = pairing.find(3);
    if (it == pairing.end()) {
        if (!is_zero_vec(*cH) || homology_rank(3) > 0)
            throw PreconditionError("period pairing in degree 3 is required to certify [H] against h");
        return;
    }
    if (it->second * *cH != h_periods())
        throw PreconditionError("periods of [H] do not match the values of h on H_3");
}

GerbeData standard_gerbe(const CohomologyData& D, const CDGAModel& A, const Integer& m, int lambda)
{
    if (D.H(3).free_rank() != 1 || A.cohomology(3).dim() != 1)
        throw PreconditionError("standard gerbe needs H^3 of rank one on both sides");
    if (D.H(0).free_rank() != 1 || A.cohomology(0).dim() != 1)
        throw PreconditionError("standard gerbe needs connected models");
    GerbeData G;
    G.D = &D;
    G.A = &A;
    G.lambda = lambda;
    G.h = TwistCocycle::from_int(D, m).cochain();
    FieldQuotient H3 = A.cohomology(3);
    G.H.H = H3.representatives()[0];
    for (auto& x : G.H.H)
        x *= FieldScalar(m);
    IntVec g(D.H(3).num_coords(), Integer(0));
    g[D.H(3).first_free_coord()] = 1;
    IntVec c3 = free_homology_gens(D, 3).at(0);
    G.pairing[3] = FieldMatrix(1, 1);
    G.pairing[3](0, 0) = FieldScalar(pair_int(D.H(3).representative(g), c3));
    FieldQuotient H0 = A.cohomology(0);
    auto u = H0.coordinates(A.unit());
    IntVec c0 = free_homology_gens(D, 0).at(0);
    Integer total = 0;
    for (const auto& v : c0)
        total += v;
    G.pairing[0] = FieldMatrix(1, 1);
    G.pairing[0](0, 0) = FieldScalar(total) / (*u)[0];
    G.validate();
    return G;
}

Vec<Rational> sqrt2_part(const FieldVec& v)
{
    Vec<Rational> out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(x.b());
    return out;
}

// ---------------------------------------------------------------------------

DiffPage e2_hat(const GerbeData& G, int degree)
{
    G.validate();
    const CDGAModel& A = model(G);
    const CohomologyData& D = complex_data(G);
    DiffPage P;
    P.degree = degree;
    const int parity = ((degree % 2) + 2) % 2;
    P.form.parity = parity;
    P.form.basis = kernel_basis(twisted_matrix(A, G.H.H, parity));
    auto cH = A.cohomology(3).coordinates(G.H.H);
    P.form.omega0_forced_zero = parity == 0 && !is_zero_vec(*cH);
    if (P.form.omega0_forced_zero)
        for (const auto& v : P.form.basis)
            if (!is_zero_scalar(v[0]))
                throw std::logic_error("twisted-closed form with a nonzero constant term although [H] != 0");
    for (int p = 0; p <= D.dim(); ++p)
        P.flat.emplace(p, D.flat(p).group());
    return P;
}

FlatClass d_flat3(const GerbeData& G, const FlatClass& x)
{
    const CohomologyData& D = complex_data(G);
    const int p = x.degree;
    if (p + 3 > D.dim())
        return FlatClass{p + 3, Vec<Rational>(D.complex().count(p + 3)), Vec<Rational>(D.flat(p + 3).num_coords())};
    Vec<Rational> s = sq3_flat(D, x.representative, p);
    Vec<Rational> c = db_cup_flat(D, G.h, x.representative, p);
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] += Rational(G.lambda) * c[i];
    return flat_class_from_cocycle(D, p + 3, reduce_mod1(s));
}

IntMatrix d_flat3_matrix(const GerbeData& G, int p)
{
    const CohomologyData& D = complex_data(G);
    const auto& src = D.flat(p);
    const std::size_t n = src.num_coords();
    if (p + 3 > D.dim())
        return IntMatrix(0, n);
    const auto& tgt = D.flat(p + 3);
    const auto& K = D.complex();
    IntMatrix M(tgt.num_coords(), n);
    // (x u h)(c) = x(c cap h) with c cap h = sum c_s h(back_3 s) front_p s
    for (std::size_t j = 0; j < tgt.num_coords(); ++j) {
        IntVec c = D.homology(p + 3).generator(j);
        IntVec capped(K.count(p), Integer(0));
        const auto& simp = K.simplices(p + 3);
        for (std::size_t s = 0; s < simp.size(); ++s) {
            if (is_zero_scalar(c[s]))
                continue;
            Simplex front(simp[s].begin(), simp[s].begin() + p + 1), back(simp[s].begin() + p, simp[s].end());
            const Integer& hv = G.h[K.index_of(back)];
            if (!is_zero_scalar(hv))
                capped[K.index_of(front)] += c[s] * hv;
        }
        IntVec co = D.homology(p).coordinates(capped);
        for (std::size_t i = 0; i < n; ++i)
            M(j, i) = Integer(G.lambda) * co[i];
    }
    // Sq^3 only sees the torsion coordinates of H_p
    for (std::size_t i = 0; i < n; ++i) {
        const Integer d = src.moduli()[i];
        if (d == 0)
            continue;
        Vec<Rational> e(n, Rational(0));
        e[i] = Rational(1) / Rational(d);
        Vec<Rational> img = tgt.coordinates(reduce_mod1(sq3_flat(D, src.representative(e), p)));
        for (std::size_t j = 0; j < img.size(); ++j) {
            Rational v = img[j] * Rational(d);
            if (boost::multiprecision::denominator(v) != 1)
                throw std::logic_error("d_flat3_matrix: Sq^3 image not killed by the order of its source");
            M(j, i) += boost::multiprecision::numerator(v);
        }
    }
    return M;
}

ModQClass phi(const GerbeData& G, const FieldVec& a, int p)
{
    const CDGAModel& A = model(G);
    ModQClass out;
    out.degree = p;
    if (p > A.top_degree())
        return out;
    auto c = A.cohomology(p).coordinates(a);
    if (!c)
        throw PreconditionError("phi: input is not a closed form of degree " + std::to_string(p));
    auto it = G.pairing.find(p);
    if (it == G.pairing.end()) {
        if (G.homology_rank(p) != 0 && !is_zero_vec(*c))
            throw PreconditionError("phi: no period pairing in degree " + std::to_string(p));
        out.coords.assign(G.homology_rank(p), Rational(0));
        return out;
    }
    out.coords = sqrt2_part(it->second * *c);
    return out;
}

bool FlatHigherResult::same_coset(const ModQClass& other) const
{
    if (status != Status::Value || other.degree != representative.degree ||
        other.coords.size() != representative.coords.size())
        return false;
    Subspace<Rational> S(representative.coords.size(), indeterminacy);
    Vec<Rational> diff = representative.coords;
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] -= other.coords[i];
    return S.contains(diff);
}

bool FlatHigherResult::contains_zero() const
{
    ModQClass z{representative.degree, Vec<Rational>(representative.coords.size(), Rational(0))};
    return same_coset(z);
}

FlatHigherResult d_flat_higher(const GerbeData& G, const ModQClass& x, int k, const std::optional<FieldVec>& preimage)
{
    G.validate();
    const CDGAModel& A = model(G);
    FlatHigherResult res;
    if (!preimage) {
        res.status = FlatHigherResult::Status::Unsupported;
        res.reason = "no de Rham preimage certificate for the flat class; its Bockstein may have infinite order";
        return res;
    }
    const int p = x.degree;
    if (!(phi(G, *preimage, p) == x))
        throw PreconditionError("preimage certificate: phi(preimage) differs from the flat class");
    MasseyResult m = massey_differential(A, G.H.H, *preimage, p, k);
    if (!m.coset) {
        res.status = FlatHigherResult::Status::Undefined;
        res.undefined_stage = m.undefined_stage;
        res.reason = "Massey product undefined at stage " + std::to_string(m.undefined_stage);
        return res;
    }
    const int t = p + 2 * k + 1;
    res.status = FlatHigherResult::Status::Value;
    res.representative = phi(G, m.coset->element, t);
    auto it = G.pairing.find(t);
    if (it != G.pairing.end())
        for (const auto& v : m.coset->indeterminacy.basis()) {
            FieldVec pv = it->second * v;
            res.indeterminacy.push_back(sqrt2_part(pv));
            for (auto& s : pv)
                s *= FieldScalar::sqrt2();
            res.indeterminacy.push_back(sqrt2_part(pv));
        }
    return res;
}

ModQClass d_curv(const DGA& A, const TwistForm& t, const PeriodicElement& omega, int p)
{
    FieldVec lead = leading_form(A, t, omega, p);
    ModQClass out;
    out.degree = p;
    if (lead.empty())
        return out;
    auto c = A.cohomology(p).coordinates(lead);
    if (!c)
        throw std::logic_error("d_curv: leading component is not closed");
    out.coords = sqrt2_part(*c);
    return out;
}

// ---------------------------------------------------------------------------

std::string KhatAnswer::discrete_str() const
{
    std::string s;
    for (const auto& [p, g] : flat_part) {
        if (g.is_trivial())
            continue;
        if (!s.empty())
            s += "+";
        s += g.str();
    }
    return s.empty() ? "0" : s;
}

KhatAnswer assemble_khat(const GerbeData& G, int degree)
{
    const CohomologyData& D = complex_data(G);
    if (D.dim() > 4)
        throw UnsupportedError("assemble_khat: complexes of dimension > 4 are out of scope (higher flat differentials)");
    DiffPage P = e2_hat(G, degree);
    const int n = ((degree % 2) + 2) % 2;
    std::map<int, TorusGroup> E3;
    for (int p = 0; p <= D.dim(); ++p) {
        const std::size_t np = D.flat(p).num_coords();
        if (np == 0) {
            E3.emplace(p, TorusGroup{});
            continue;
        }
        IntMatrix Lp = D.flat(p).lattice();
        IntMatrix Mout = d_flat3_matrix(G, p);
        IntMatrix Lker = hconcat(Mout.transpose(), Lp);
        IntMatrix Lim = p >= 3 ? preimage_lattice(d_flat3_matrix(G, p - 3), D.flat(p - 3).lattice())
                               : IntMatrix::identity(np);
        E3.emplace(p, annihilator_quotient(Lim, Lker));
    }
    KhatAnswer out;
    out.degree = degree;
    out.form_dim = P.form.dim();
    out.omega0_forced_zero = P.form.omega0_forced_zero;
    std::size_t nonzero = 0;
    for (const auto& [p, g] : E3) {
        if (p % 2 == (n + 1) % 2) {
            out.flat_part.emplace_back(p, g);
            if (!g.is_trivial())
                ++nonzero;
        }
        // d_curv leaves the form entry into flat entries of the other parity
        // and enters this degree from the neighbouring form entry
        if (p >= 2 && !g.is_trivial())
            out.curvature_targets_trivial = false;
    }
    out.extension_resolved = nonzero <= 1;
    return out;
}

// ---------------------------------------------------------------------------

ChernReport chern_compare(const GerbeData& G, const std::vector<ChernInput>& massey_inputs,
                          const std::vector<std::pair<PeriodicElement, int>>& curvature_inputs)
{
    G.validate();
    const CDGAModel& A = model(G);
    ChernReport rep;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        rep.failures.push_back(msg);
    };

    if (G.D) {
        const CohomologyData& D = *G.D;
        D3Map d3 = d3_map(TwistCocycle(D, G.h), G.lambda);
        for (int p = 0; p + 3 <= D.dim(); ++p) {
            const std::size_t rp = G.homology_rank(p), rq = G.homology_rank(p + 3);
            const std::size_t ap = A.cohomology(p).dim();
            if (rp == 0 || ap == 0)
                continue;
            if (!G.pairing.count(p) || (rq > 0 && !G.pairing.count(p + 3))) {
                fail(rep.square_i, "square (i): no period pairing for degrees " + std::to_string(p) + ", " +
                                       std::to_string(p + 3));
                continue;
            }
            auto ev = [&](int q) {
                auto gens = free_homology_gens(D, q);
                const auto& Hq = D.H(q);
                FieldMatrix E(gens.size(), Hq.free_rank());
                for (std::size_t i = 0; i < gens.size(); ++i)
                    for (std::size_t j = 0; j < Hq.free_rank(); ++j)
                        E(i, j) = FieldScalar(pair_int(Hq.generator(Hq.first_free_coord() + j), gens[i]));
                return E;
            };
            FieldMatrix Ep = ev(p), Eq = ev(p + 3);
            const IntMatrix& M = d3.at(p);
            const std::size_t fp = D.H(p).first_free_coord(), fq = D.H(p + 3).first_free_coord();
            FieldMatrix F(rq, rp);
            for (std::size_t i = 0; i < rq; ++i)
                for (std::size_t j = 0; j < rp; ++j)
                    F(i, j) = FieldScalar(M(fq + i, fp + j));
            FieldQuotient Hp = A.cohomology(p), Hq = A.cohomology(p + 3);
            for (std::size_t j = 0; j < ap; ++j) {
                FieldVec e(ap, FieldScalar(0));
                e[j] = FieldScalar(1);
                auto x = solve_field(Ep, G.pairing.at(p) * e);
                if (!x)
                    throw std::logic_error("square (i): evaluation matrix is singular");
                FieldVec lhs = Eq * (F * x->particular);
                FieldVec rhs(rq, FieldScalar(0));
                if (rq > 0) {
                    FieldVec prod = A.multiply(Hp.representatives()[j], p, G.H.H, 3);
                    rhs = G.pairing.at(p + 3) * *Hq.coordinates(prod);
                    for (auto& s : rhs)
                        s *= FieldScalar(G.lambda);
                }
                ++rep.checks_i;
                if (lhs != rhs)
                    fail(rep.square_i, "square (i) fails on basis class " + std::to_string(j) + " of H^" +
                                           std::to_string(p));
            }
        }
    }

    for (const auto& in : massey_inputs) {
        const int r = 2 * in.k + 1, p = in.p, par = p % 2;
        FilteredComplex C = as_filtration(A, G.H.H);
        OraclePage P = page(C, r);
        FlatHigherResult fl = d_flat_higher(G, phi(G, in.a, p), in.k, in.a);
        int stage = 0;
        auto sys = massey_defining_system(A, G.H.H, in.a, p, in.k, stage);
        ++rep.checks_ii;
        if (!sys) {
            if (fl.status != FlatHigherResult::Status::Undefined)
                fail(rep.square_ii, "square (ii): flat side defined where the Massey system is not");
            continue;
        }
        PeriodicElement b = PeriodicElement::zero(A, par);
        for (std::size_t j = 0; j < sys->size(); ++j)
            b.components[p + 2 * j] = (*sys)[j];
        auto dz = oracle_differential(C, P, p, par, b.flat());
        if (!dz) {
            fail(rep.square_ii, "square (ii): lifted class does not survive to E_" + std::to_string(r));
            continue;
        }
        ModQClass oracle{p + r, {}};
        if (p + r <= A.top_degree()) {
            FieldVec z = P.entries.at({p + r, 1 - par}).E.lift(*dz);
            oracle = phi(G, PeriodicElement::from_flat(A, 1 - par, z).components[p + r], p + r);
        }
        if (!fl.same_coset(oracle))
            fail(rep.square_ii, "square (ii): phi of the oracle differential is not in the flat coset");
    }

    for (const auto& [omega, p] : curvature_inputs) {
        ModQClass d = d_curv(A, G.H, omega, p);
        auto it = G.pairing.find(p);
        if (it == G.pairing.end() || d.coords.empty())
            continue;
        bool rational = true;
        for (std::size_t i = 0; i < it->second.rows(); ++i)
            for (std::size_t j = 0; j < it->second.cols(); ++j)
                rational = rational && it->second(i, j).is_rational();
        if (!rational)
            continue;
        FieldVec lead = leading_form(A, G.H, omega, p);
        Vec<Rational> periods = sqrt2_part(it->second * *A.cohomology(p).coordinates(lead));
        FieldVec moved = it->second * to_field_vec(d.coords);
        Vec<Rational> via;
        for (const auto& s : moved)
            via.push_back(s.a());
        ++rep.checks_iii;
        if (periods != via)
            fail(rep.square_iii, "square (iii): periods mod Q differ from the transported d_curv class");
    }
    return rep;
}

}  // namespace twahss
