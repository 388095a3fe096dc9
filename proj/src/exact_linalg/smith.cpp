#include "twahss/exact_linalg/smith.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <mutex>
#include <stdexcept>

namespace twahss {

namespace {

std::mutex g_store_mutex;
std::shared_ptr<SnfStore> g_store;

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

struct Eliminator
{
    IntMatrix D, P, Pi, Q, Qi;  // D = P M Q, Pi = P^{-1}, Qi = Q^{-1}

    explicit Eliminator(const IntMatrix& M)
        : D(M), P(IntMatrix::identity(M.rows())), Pi(IntMatrix::identity(M.rows())),
          Q(IntMatrix::identity(M.cols())), Qi(IntMatrix::identity(M.cols()))
    {
    }

    void row_add(std::size_t i, std::size_t t, const Integer& c)
    {
        D.add_row(i, t, c);
        P.add_row(i, t, c);
        Pi.add_col(t, i, -c);
    }
    void row_swap(std::size_t a, std::size_t b)
    {
        D.swap_rows(a, b);
        P.swap_rows(a, b);
        Pi.swap_cols(a, b);
    }
    void row_neg(std::size_t i)
    {
        D.scale_row(i, Integer(-1));
        P.scale_row(i, Integer(-1));
        Pi.scale_col(i, Integer(-1));
    }
    void col_add(std::size_t j, std::size_t t, const Integer& c)
    {
        D.add_col(j, t, c);
        Q.add_col(j, t, c);
        Qi.add_row(t, j, -c);
    }
    void col_swap(std::size_t a, std::size_t b)
    {
        D.swap_cols(a, b);
        Q.swap_cols(a, b);
        Qi.swap_rows(a, b);
    }
};

SmithResult compute_snf(const IntMatrix& M)
{
    const std::size_t m = M.rows(), n = M.cols();
    Eliminator e(M);
    IntMatrix& D = e.D;
    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        bool found = false;
        Integer best;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < m && !(found && best == 1); ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!found || abs_int(D(i, j)) < best)) {
                    found = true;
                    best = abs_int(D(i, j));
                    bi = i;
                    bj = j;
                    if (best == 1)
                        break;
                }
        if (!found)
            break;
        e.row_swap(t, bi);
        e.col_swap(t, bj);

        while (true) {
            const Integer p = D(t, t);
            for (std::size_t i = t + 1; i < m; ++i)
                if (D(i, t) != 0) {
                    Integer q = D(i, t) / p;
                    if (q != 0)
                        e.row_add(i, t, -q);
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (D(t, j) != 0) {
                    Integer q = D(t, j) / p;
                    if (q != 0)
                        e.col_add(j, t, -q);
                }
            // remainders smaller than the pivot become the next pivot
            bool moved = false;
            Integer small = abs_int(p);
            std::size_t si = 0, sj = 0;
            bool in_col = false;
            for (std::size_t i = t + 1; i < m; ++i)
                if (D(i, t) != 0 && abs_int(D(i, t)) < small) {
                    small = abs_int(D(i, t));
                    si = i;
                    in_col = true;
                    moved = true;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (D(t, j) != 0 && abs_int(D(t, j)) < small) {
                    small = abs_int(D(t, j));
                    sj = j;
                    in_col = false;
                    moved = true;
                }
            if (moved) {
                if (in_col)
                    e.row_swap(t, si);
                else
                    e.col_swap(t, sj);
                continue;
            }
            bool bad = false;
            for (std::size_t i = t + 1; i < m && !bad && abs_int(p) != 1; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % p != 0) {
                        e.row_add(t, i, Integer(1));
                        bad = true;
                        break;
                    }
            if (!bad)
                break;
        }
        if (D(t, t) < 0)
            e.row_neg(t);
    }
    SmithResult r;
    r.D = std::move(e.D);
    r.U = std::move(e.Pi);
    r.U_inv = std::move(e.P);
    r.V = std::move(e.Qi);
    r.V_inv = std::move(e.Q);
    r.rank = t;
    return r;
}

}  // namespace

void set_snf_store(std::shared_ptr<SnfStore> store)
{
    std::lock_guard<std::mutex> lock(g_store_mutex);
    g_store = std::move(store);
}

std::shared_ptr<SnfStore> snf_store()
{
    std::lock_guard<std::mutex> lock(g_store_mutex);
    return g_store;
}

SmithResult smith_normal_form(const IntMatrix& M)
{
    auto store = snf_store();
    if (!store || M.empty())
        return compute_snf(M);
    if (auto hit = store->load(M)) {
        if (store->verify) {
            SmithResult fresh = compute_snf(M);
            if (fresh.D != hit->D || fresh.U != hit->U || fresh.V != hit->V)
                throw std::runtime_error("cached Smith form disagrees with recomputation");
        }
        return *hit;
    }
    SmithResult r = compute_snf(M);
    store->save(M, r);
    return r;
}

// ---------------------------------------------------------------------------

Integer FGAbelianGroup::order() const
{
    if (free_rank)
        throw std::logic_error("order of an infinite group");
    Integer o = 1;
    for (const auto& d : invariant_factors)
        o *= d;
    return o;
}

std::string FGAbelianGroup::str() const
{
    if (is_trivial())
        return "0";
    std::string s;
    if (free_rank == 1)
        s = "Z";
    else if (free_rank > 1)
        s = "Z^" + std::to_string(free_rank);
    for (const auto& d : invariant_factors) {
        if (!s.empty())
            s += "+";
        s += "Z/" + d.str();
    }
    return s;
}

FGAbelianGroup group_from_cyclic_orders(const std::vector<Integer>& orders)
{
    IntMatrix R(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
        R(i, i) = orders[i];
    return cokernel_of_map(R).group();
}

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b)
{
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < a.free_rank + b.free_rank; ++i)
        orders.push_back(0);
    for (const auto& d : a.invariant_factors)
        orders.push_back(d);
    for (const auto& d : b.invariant_factors)
        orders.push_back(d);
    return group_from_cyclic_orders(orders);
}

// ---------------------------------------------------------------------------

Presentation::Presentation(const IntMatrix& R) : n_(R.rows())
{
    SmithResult s = smith_normal_form(R);
    U_ = s.U;
    U_inv_ = s.U_inv;
    for (std::size_t i = 0; i < s.rank; ++i) {
        Integer d = s.D(i, i);
        if (d != 1) {
            rows_.push_back(i);
            moduli_.push_back(d);
            group_.invariant_factors.push_back(d);
        }
    }
    for (std::size_t i = s.rank; i < n_; ++i) {
        rows_.push_back(i);
        moduli_.push_back(0);
        ++group_.free_rank;
    }
}

IntVec Presentation::reduce_coords(IntVec c) const
{
    for (std::size_t k = 0; k < c.size(); ++k)
        if (moduli_[k] != 0)
            c[k] = mod_nonneg(c[k], moduli_[k]);
    return c;
}

IntVec Presentation::coordinates(const IntVec& x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("coordinates: ambient dimension mismatch");
    IntVec c(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Integer acc = 0;
        std::size_t r = rows_[k];
        for (std::size_t j = 0; j < n_; ++j)
            if (U_inv_(r, j) != 0 && x[j] != 0)
                acc += U_inv_(r, j) * x[j];
        c[k] = acc;
    }
    return reduce_coords(std::move(c));
}

IntVec Presentation::generator(std::size_t i) const { return U_.column(rows_.at(i)); }

IntVec Presentation::lift(const IntVec& coords) const
{
    IntVec x(n_, Integer(0));
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0)
            for (std::size_t j = 0; j < n_; ++j)
                x[j] += coords[k] * U_(j, rows_[k]);
    return x;
}

Presentation cokernel(const IntMatrix& M) { return Presentation(M.transpose()); }
Presentation cokernel_of_map(const IntMatrix& A) { return Presentation(A); }

IntMatrix integer_kernel(const IntMatrix& A)
{
    SmithResult s = smith_normal_form(A);
    const std::size_t n = A.cols();
    IntMatrix K(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            K(i, j - s.rank) = s.V_inv(i, j);
    return K;
}

std::optional<IntVec> solve_integer(const IntMatrix& A, const IntVec& b)
{
    if (b.size() != A.rows())
        throw std::invalid_argument("solve_integer: dimension mismatch");
    SmithResult s = smith_normal_form(A);
    IntVec z = s.U_inv * b;
    IntVec w(A.cols(), Integer(0));
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i < s.rank) {
            if (z[i] % s.D(i, i) != 0)
                return std::nullopt;
            w[i] = z[i] / s.D(i, i);
        } else if (z[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V_inv * w;
}

// ---------------------------------------------------------------------------

LatticeQuotient::LatticeQuotient(const IntMatrix& basis, const IntMatrix& sub) : basis_(basis)
{
    if (sub.rows() != basis.rows())
        throw std::invalid_argument("LatticeQuotient: ambient mismatch");
    basis_snf_ = smith_normal_form(basis);
    if (basis_snf_.rank != basis.cols())
        throw std::invalid_argument("LatticeQuotient: basis columns are dependent");
    build(sub);
}

LatticeQuotient::LatticeQuotient(const IntMatrix& basis, const IntMatrix& left_inverse, const IntMatrix& sub)
    : basis_(basis), left_inv_(left_inverse), have_left_inv_(true)
{
    if (sub.rows() != basis.rows() || left_inverse.rows() != basis.cols() || left_inverse.cols() != basis.rows())
        throw std::invalid_argument("LatticeQuotient: shape mismatch");
    build(sub);
}

void LatticeQuotient::build(const IntMatrix& sub)
{
    IntMatrix C(basis_.cols(), sub.cols());
    for (std::size_t j = 0; j < sub.cols(); ++j) {
        bool ok = true;
        IntVec c = basis_coords(sub.column(j), ok);
        if (!ok)
            throw std::invalid_argument("LatticeQuotient: sub-lattice not contained in lattice");
        for (std::size_t i = 0; i < c.size(); ++i)
            C(i, j) = c[i];
    }
    pres_ = Presentation(C);
}

IntVec LatticeQuotient::basis_coords(const IntVec& x, bool& ok) const
{
    if (have_left_inv_) {
        IntVec w = left_inv_ * x;
        ok = basis_ * w == x;
        return ok ? w : IntVec{};
    }
    const SmithResult& s = basis_snf_;
    IntVec z = s.U_inv * x;
    IntVec w(basis_.cols(), Integer(0));
    ok = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i < s.rank) {
            if (z[i] % s.D(i, i) != 0) {
                ok = false;
                return {};
            }
            w[i] = z[i] / s.D(i, i);
        } else if (z[i] != 0) {
            ok = false;
            return {};
        }
    }
    return s.V_inv * w;
}

bool LatticeQuotient::contains(const IntVec& x) const
{
    bool ok = true;
    basis_coords(x, ok);
    return ok;
}

IntVec LatticeQuotient::coordinates(const IntVec& x) const
{
    bool ok = true;
    IntVec c = basis_coords(x, ok);
    if (!ok)
        throw std::invalid_argument("LatticeQuotient: vector outside the lattice");
    return pres_.coordinates(c);
}

IntVec LatticeQuotient::representative(std::size_t i) const { return basis_ * pres_.generator(i); }

IntVec LatticeQuotient::representative(const IntVec& coords) const { return basis_ * pres_.lift(coords); }

// ---------------------------------------------------------------------------

std::string TorusGroup::str() const
{
    std::string s;
    if (torus_rank == 1)
        s = "Q/Z";
    else if (torus_rank > 1)
        s = "(Q/Z)^" + std::to_string(torus_rank);
    if (!torsion.is_trivial()) {
        if (!s.empty())
            s += "+";
        s += torsion.str();
    }
    return s.empty() ? "0" : s;
}

TorusGroup torus_kernel(const IntMatrix& M)
{
    SmithResult s = smith_normal_form(M);
    const std::size_t n = M.cols();
    TorusGroup g;
    g.torus_rank = n - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i) {
        Integer d = s.D(i, i);
        if (d == 1)
            continue;
        g.torsion.invariant_factors.push_back(d);
        Vec<Rational> gen(n);
        for (std::size_t j = 0; j < n; ++j)
            gen[j] = frac(Rational(s.V_inv(j, i), d));
        g.torsion_generators.push_back(std::move(gen));
    }
    return g;
}

IntMatrix lattice_basis(const IntMatrix& gens)
{
    SmithResult s = smith_normal_form(gens);
    IntMatrix B(gens.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < gens.rows(); ++i)
            B(i, j) = s.U(i, j) * s.D(j, j);
    return B;
}

TorusGroup annihilator_quotient(const IntMatrix& L1_gens, const IntMatrix& L2_gens)
{
    LatticeQuotient q(lattice_basis(L1_gens), L2_gens);
    TorusGroup g;
    g.torus_rank = q.group().free_rank;
    g.torsion.invariant_factors = q.group().invariant_factors;
    return g;
}

IntMatrix preimage_lattice(const IntMatrix& F, const IntMatrix& L_gens)
{
    // kernel of [F^T | -L] projected to the first m coordinates
    const std::size_t m = F.rows(), n = F.cols();
    if (L_gens.rows() != n)
        throw std::invalid_argument("preimage_lattice: dimension mismatch");
    IntMatrix A(n, m + L_gens.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            A(i, j) = F(j, i);
        for (std::size_t j = 0; j < L_gens.cols(); ++j)
            A(i, m + j) = -L_gens(i, j);
    }
    IntMatrix K = integer_kernel(A);
    return K.block(0, 0, m, K.cols());
}

Vec<Rational> torus_apply(const IntMatrix& M, const Vec<Rational>& x)
{
    if (x.size() != M.cols())
        throw std::invalid_argument("torus_apply: dimension mismatch");
    Vec<Rational> y(M.rows(), Rational(0));
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0)
                acc += Rational(M(i, j)) * x[j];
        y[i] = frac(acc);
    }
    return y;
}

}  // namespace twahss
