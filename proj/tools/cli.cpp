#include "cli.hpp"

#include "snf_cache.hpp"
#include "twahss/ahss_twisted_k/ahss.hpp"
#include "twahss/cohomology_ops/cochain_ops.hpp"
#include "twahss/diff_refinement/diffk.hpp"
#include "twahss/errors.hpp"
#include "twahss/twisted_derham/twisted.hpp"
#include "twahss/util/json_errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace twahss::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

#ifndef TWAHSS_VERSION
#define TWAHSS_VERSION "dev"
#endif

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PreconditionError("cannot read input file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json int_j(const Integer& n)
{
    if (n > Integer(std::numeric_limits<long>::max()) || n < Integer(std::numeric_limits<long>::min()))
        return n.str();
    return n.convert_to<long>();
}

json matrix_j(const IntMatrix& M)
{
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j)
            r.push_back(int_j(M(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json rationals_j(const Vec<Rational>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

json field_vec_j(const FieldVec& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(x.str());
    return a;
}

std::string matrix_str(const IntMatrix& M)
{
    std::string s = "[";
    for (std::size_t i = 0; i < M.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < M.cols(); ++j)
            s += (j ? ", " : "") + M(i, j).str();
        s += "]";
    }
    return s + "]";
}

// inputs are hashed as given: file bytes, or the catalog name
struct Inputs
{
    json provenance = json::object();

    void add(const std::string& key, const std::string& source, const std::string& bytes)
    {
        provenance[key] = json{{"source", source}, {"sha256", sha256_hex(bytes)}};
    }
};

struct Loaded
{
    std::optional<CohomologyData> D;
    std::optional<CDGAModel> A;
    Inputs inputs;
};

void validate_paths(const RunConfig& c)
{
    for (const std::string* p : {&c.complex_path, &c.twist_path, &c.gerbe_path})
        if (!p->empty() && !fs::is_regular_file(*p))
            throw PreconditionError("input file '" + *p + "' does not exist");
    if (!c.cdga.empty() && c.cdga.find(".json") != std::string::npos && !fs::is_regular_file(c.cdga))
        throw PreconditionError("input file '" + c.cdga + "' does not exist");
    if (c.lambda != 1 && c.lambda != -1)
        throw PreconditionError("--lambda must be +1 or -1");
    if (c.format != "table" && c.format != "json")
        throw PreconditionError("--format must be table or json");
}

void load_complex(const RunConfig& c, Loaded& L)
{
    if (!c.model.empty() && !c.complex_path.empty())
        throw PreconditionError("give either --model or --complex, not both");
    if (!c.model.empty()) {
        L.D.emplace(builtin_model(c.model));
        L.inputs.add("complex", "model:" + c.model, c.model);
    } else if (!c.complex_path.empty()) {
        std::string text = read_file(c.complex_path);
        L.D.emplace(load_complex_json(text));
        L.inputs.add("complex", c.complex_path, text);
    } else {
        throw PreconditionError("a complex is required (--model NAME or --complex FILE)");
    }
}

void load_cdga(const RunConfig& c, Loaded& L)
{
    if (c.cdga.empty())
        throw PreconditionError("a CDGA model is required (--cdga NAME or FILE)");
    if (fs::is_regular_file(c.cdga)) {
        std::string text = read_file(c.cdga);
        L.A.emplace(CDGAModel::from_json(text));
        L.inputs.add("cdga", c.cdga, text);
    } else {
        L.A.emplace(builtin_cdga(c.cdga));
        L.inputs.add("cdga", "model:" + c.cdga, c.cdga);
    }
}

FieldVec twist_form(const RunConfig& c, Loaded& L)
{
    const CDGAModel& A = *L.A;
    L.inputs.add("twist_form", c.twist_elem.empty() ? "0" : c.twist_elem, c.twist_elem);
    if (c.twist_elem.empty() || c.twist_elem == "0")
        return FieldVec(A.dim(3), FieldScalar(0));
    return A.parse_element(c.twist_elem, 3);
}

TwistCocycle twist_cocycle(const RunConfig& c, Loaded& L)
{
    const CohomologyData& D = *L.D;
    if (!c.twist_path.empty()) {
        std::string text = read_file(c.twist_path);
        L.inputs.add("twist", c.twist_path, text);
        Cochain h = Cochain::from_json(D.complex(), text);
        if (h.degree() != 3)
            throw PreconditionError("twist cochain must have degree 3");
        return TwistCocycle(D, h.integers());
    }
    if (!c.twist_int)
        throw PreconditionError("a twist is required (--twist-int m or --twist FILE)");
    L.inputs.add("twist", "int:" + std::to_string(*c.twist_int), std::to_string(*c.twist_int));
    return TwistCocycle::from_int(D, Integer(*c.twist_int));
}

json envelope(const RunConfig& c, const Loaded& L)
{
    json j;
    j["schema"] = 1;
    j["command"] = c.command;
    j["provenance"] = json{{"engine_version", TWAHSS_VERSION}, {"lambda", c.lambda}, {"inputs", L.inputs.provenance}};
    return j;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

// p horizontal, q vertical and downward
std::string page_table(const std::string& title, const std::vector<FGAbelianGroup>& row, int qrows)
{
    std::size_t w = 6;
    for (const auto& g : row)
        w = std::max(w, g.str().size() + 2);
    std::ostringstream os;
    os << title << "\n" << pad("", 6);
    for (std::size_t p = 0; p < row.size(); ++p)
        os << pad("p=" + std::to_string(p), w);
    os << "\n";
    for (int q = 0; q > -qrows; --q) {
        os << pad("q=" + std::to_string(q), 6);
        for (const auto& g : row)
            os << pad(q % 2 == 0 ? g.str() : "0", w);
        os << "\n";
    }
    return os.str();
}

json groups_j(const std::vector<FGAbelianGroup>& gs)
{
    json a = json::array();
    for (const auto& g : gs)
        a.push_back(g.str());
    return a;
}

// ---------------------------------------------------------------------------

void cmd_cohomology(const RunConfig& c, std::ostream& out)
{
    Loaded L;
    load_complex(c, L);
    Coeff coeff = parse_coeff(c.coeff);
    auto gs = cohomology(L.D->complex(), coeff);
    json j = envelope(c, L);
    j["coeff"] = coeff_name(coeff);
    json arr = json::array();
    std::string line;
    for (std::size_t p = 0; p < gs.size(); ++p) {
        json e{{"degree", p}, {"group", gs[p].str()}};
        if (coeff == Coeff::QZ) {
            e["torus_rank"] = gs[p].rz.torus_rank;
            e["torsion"] = gs[p].rz.torsion.str();
        }
        arr.push_back(e);
        line += (p ? " H" : "H") + std::to_string(p) + "=" + gs[p].str();
    }
    j["groups"] = arr;
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << line << "\n";
}

void cmd_ahss(const RunConfig& c, std::ostream& out)
{
    Loaded L;
    load_complex(c, L);
    TwistCocycle h = twist_cocycle(c, L);
    AhssResult R = e4_and_einfinity(h, c.lambda);
    const int dim = L.D->dim();
    json j = envelope(c, L);
    j["dimension"] = dim;
    json pages = json::object();
    std::ostringstream tab;
    for (int r : c.pages) {
        if (r < 2)
            throw PreconditionError("pages start at r = 2");
        const IntegralPage& P = r <= 3 ? R.E2 : R.E4;
        pages["E" + std::to_string(r)] = json{{"even_rows", groups_j(P.row)}, {"odd_rows", "0"}};
        tab << page_table("E" + std::to_string(r) + (r >= 4 ? " (= E_inf)" : ""), P.row, 4) << "\n";
    }
    j["pages"] = pages;
    json d3 = json::object();
    for (const auto& [p, M] : R.d3.matrices) {
        if (p + 3 > dim || M.empty())
            continue;
        d3[std::to_string(p)] = matrix_j(M);
        if (!is_zero_hom(M, L.D->H(p + 3).moduli()))
            tab << "d3: H^" << p << " -> H^" << p + 3 << " " << matrix_str(M) << "\n";
    }
    j["d3"] = d3;
    j["d3_squares_to_zero"] = R.d3_squares_to_zero;
    j["converged_at"] = 4;
    auto kpart = [&](const char* name, const std::vector<FGAbelianGroup>& graded, bool resolved,
                     const FGAbelianGroup& total) {
        json k{{"graded", groups_j(graded)}, {"extension_resolved", resolved}};
        std::string g;
        for (const auto& x : graded)
            g += (g.empty() ? "" : ", ") + x.str();
        if (g.empty())
            g = "0";
        tab << name << " graded: " << g;
        if (resolved) {
            k["group"] = total.str();
            tab << "   " << name << " = " << total.str() << "\n";
        } else {
            k["group"] = nullptr;
            tab << "   extension problem unresolved\n";
        }
        return k;
    };
    j["K0"] = kpart("K0", R.K0_graded, R.K0_extension_resolved, R.K0);
    j["K1"] = kpart("K1", R.K1_graded, R.K1_extension_resolved, R.K1);
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << tab.str();
}

void cmd_twisted_derham(const RunConfig& c, std::ostream& out)
{
    Loaded L;
    load_cdga(c, L);
    const CDGAModel& A = *L.A;
    FieldVec H = twist_form(c, L);
    TwistedCohomology T = twisted_cohomology(A, H);
    FilteredComplex C = as_filtration(A, H);
    auto pages = ss_pages(C);
    Convergence conv = converged(C);
    json j = envelope(c, L);
    j["twisted_cohomology"] = json{{"even", T.even_dim()}, {"odd", T.odd_dim()}};
    bool dd = (twisted_matrix(A, H, 1) * twisted_matrix(A, H, 0)).is_zero() &&
              (twisted_matrix(A, H, 0) * twisted_matrix(A, H, 1)).is_zero();
    j["d_H_squared_zero"] = dd;
    std::ostringstream tab;
    tab << "twisted cohomology: even " << T.even_dim() << ", odd " << T.odd_dim() << "\n";
    json pj = json::object();
    for (const auto& P : pages) {
        json e = json::object();
        tab << "E" << P.r << ":";
        for (const auto& [key, entry] : P.entries) {
            if (entry.dim() == 0)
                continue;
            e[std::to_string(key.first) + "," + std::to_string(key.second)] = entry.dim();
            tab << " (" << key.first << "," << key.second << ")=" << entry.dim();
        }
        tab << "\n";
        pj[std::to_string(P.r)] = e;
    }
    j["pages"] = pj;
    j["converged"] = conv.isomorphic;
    tab << "E_inf agrees with H(d_H): " << (conv.isomorphic ? "true" : "false") << "\n";
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << tab.str();
}

void cmd_massey(const RunConfig& c, std::ostream& out)
{
    Loaded L;
    load_cdga(c, L);
    const CDGAModel& A = *L.A;
    FieldVec H = twist_form(c, L);
    if (c.on.empty())
        throw PreconditionError("--on CLASS is required");
    auto [p, x] = A.parse_homogeneous(c.on);
    L.inputs.add("class", c.on, c.on);
    MasseyResult m = massey_differential(A, H, x, p, c.k);
    json j = envelope(c, L);
    j["degree"] = p;
    j["k"] = c.k;
    std::ostringstream tab;
    if (!m.coset) {
        j["defined"] = false;
        j["undefined_stage"] = m.undefined_stage;
        tab << "d_" << 2 * c.k + 1 << "[" << c.on << "]: undefined (defining system stops at stage "
            << m.undefined_stage << ")\n";
    } else {
        const MasseyCoset& mc = *m.coset;
        j["defined"] = true;
        j["target_degree"] = mc.degree;
        j["representative"] = A.element_str(mc.element, mc.degree);
        j["coordinates"] = field_vec_j(mc.representative);
        j["indeterminacy_dim"] = mc.indeterminacy.dim();
        json ib = json::array();
        for (const auto& v : mc.indeterminacy.basis())
            ib.push_back(field_vec_j(v));
        j["indeterminacy_basis"] = ib;
        j["contains_zero"] = mc.contains_zero();
        tab << "d_" << 2 * c.k + 1 << "[" << c.on << "] = [" << A.element_str(mc.element, mc.degree)
            << "] in H^" << mc.degree << ", indeterminacy dim " << mc.indeterminacy.dim() << ", "
            << (mc.contains_zero() ? "coset contains 0" : "nonzero coset") << "\n";
    }
    if (c.verify_oracle) {
        MasseyOracleReport rep = massey_oracle_check(A, H);
        json f = json::array();
        for (const auto& s : rep.failures)
            f.push_back(s);
        j["oracle"] = json{{"agree", rep.agree()},
                           {"classes_checked", rep.classes_checked},
                           {"undefined_checked", rep.undefined_checked},
                           {"failures", f}};
        tab << "oracle agreement = " << (rep.agree() ? "true" : "false") << " (" << rep.classes_checked
            << " classes, " << rep.undefined_checked << " undefined checked)\n";
    }
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << tab.str();
}

FieldScalar field_entry(const json& e)
{
    if (e.is_number_integer())
        return FieldScalar(e.get<long>());
    if (e.is_string())
        return FieldScalar(parse_rational(e.get<std::string>()));
    if (e.is_array() && e.size() == 2)
        return FieldScalar(field_entry(e[0]).a(), field_entry(e[1]).a());
    throw ParseError("pairing entries must be integers, fraction strings or [a, b] for a + b*sqrt2");
}

GerbeData load_gerbe(const RunConfig& c, Loaded& L)
{
    const CohomologyData& D = *L.D;
    const CDGAModel& A = *L.A;
    if (c.gerbe_path.empty()) {
        if (!c.twist_int)
            throw PreconditionError("a twist is required (--twist m or --gerbe FILE)");
        L.inputs.add("twist", "int:" + std::to_string(*c.twist_int), std::to_string(*c.twist_int));
        return standard_gerbe(D, A, Integer(*c.twist_int), c.lambda);
    }
    std::string text = read_file(c.gerbe_path);
    L.inputs.add("gerbe", c.gerbe_path, text);
    json j = parse_json_or_throw(text, "gerbe");
    if (!j.is_object() || !j.contains("h") || !j.contains("H") || !j.contains("pairing"))
        throw ParseError("gerbe JSON needs \"h\", \"H\" and \"pairing\"");
    GerbeData G;
    G.D = &D;
    G.A = &A;
    G.lambda = c.lambda;
    G.h = Cochain::from_json(D.complex(), j["h"].dump()).integers();
    if (!j["H"].is_string())
        throw ParseError("gerbe \"H\" must be a polynomial string");
    G.H.H = A.parse_element(j["H"].get<std::string>(), 3);
    if (j.contains("B") && !j["B"].is_null())
        G.H.B = A.parse_element(j["B"].get<std::string>(), 2);
    if (!j["pairing"].is_object())
        throw ParseError("gerbe \"pairing\" must map degrees to matrices");
    for (const auto& [deg, rows] : j["pairing"].items()) {
        int p = 0;
        try {
            p = std::stoi(deg);
        } catch (const std::exception&) {
            throw ParseError("pairing key '" + deg + "' is not a degree");
        }
        std::vector<FieldVec> rs;
        for (const auto& r : rows) {
            FieldVec v;
            for (const auto& e : r)
                v.push_back(field_entry(e));
            rs.push_back(v);
        }
        G.pairing[p] = FieldMatrix::from_rows(rs, A.cohomology(p).dim());
    }
    G.validate();
    return G;
}

void cmd_diffk(const RunConfig& c, std::ostream& out)
{
    Loaded L;
    load_complex(c, L);
    load_cdga(c, L);
    GerbeData G = load_gerbe(c, L);
    KhatAnswer K = assemble_khat(G, c.degree);
    const char* parity = c.degree % 2 ? "odd" : "even";
    json j = envelope(c, L);
    j["degree"] = c.degree;
    json flat = json::array();
    for (const auto& [p, g] : K.flat_part)
        flat.push_back(json{{"p", p}, {"group", g.str()}});
    j["flat_entries"] = flat;
    j["discrete"] = K.discrete_str();
    j["form_part"] = json{{"kind", std::string("twisted-closed ") + parity + " forms"},
                          {"model_dim", K.form_dim},
                          {"omega0_forced_zero", K.omega0_forced_zero},
                          {"substitution", "finite CDGA model in place of the closed differential forms"}};
    j["extension_resolved"] = K.extension_resolved;
    j["curvature_targets_trivial"] = K.curvature_targets_trivial;
    std::ostringstream tab;
    tab << "Khat^" << c.degree << " = " << K.discrete_str() << " ⊕ twisted-closed " << parity
        << " forms (model dim " << K.form_dim << ")\n";
    for (const auto& [p, g] : K.flat_part)
        tab << "  flat p=" << p << ": " << g.str() << "\n";
    tab << "  extension " << (K.extension_resolved ? "resolved" : "unresolved") << "; form part is the finite CDGA "
        << "model analogue\n";
    if (!K.curvature_targets_trivial)
        tab << "  note: curvature differentials may act on nonzero flat entries\n";
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << tab.str();
}

void cmd_mv_s3(const RunConfig& c, std::ostream& out)
{
    if (!c.twist_int)
        throw PreconditionError("--twist m is required");
    Loaded L;
    L.inputs.add("twist", "int:" + std::to_string(*c.twist_int), std::to_string(*c.twist_int));
    MvS3Report R = mv_s3(Integer(*c.twist_int));
    json j = envelope(c, L);
    j["matrix"] = matrix_j(R.matrix);
    j["cokernel_Z"] = R.cokernel_Z.str();
    j["kernel_Z"] = R.kernel_Z.str();
    j["kernel_QZ"] = R.kernel_QZ.str();
    json gens = json::array();
    for (const auto& g : R.kernel_QZ.torsion_generators)
        gens.push_back(rationals_j(g));
    j["kernel_QZ_generators"] = gens;
    j["khat0_discrete"] = R.khat0_discrete.str();
    j["khat1_discrete"] = R.khat1_discrete.str();
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << "cokernel over Z: " << R.cokernel_Z.str() << "; kernel over Q/Z: " << R.kernel_QZ.str() << "\n";
}

void add_common(CLI::App* s, RunConfig& c)
{
    s->add_option("--format,--report", c.format, "table or json");
    s->add_option("--lambda", c.lambda, "sign of the twist term in d3 (+1 or -1)");
    s->add_option("--cache-dir", c.cache_dir, "SNF cache directory (default: $AHSS_CACHE_DIR)");
    s->add_flag_callback("--verify-cache", [&c] { c.verify_cache = true; }, "recompute every cached Smith form and compare");
    s->add_flag_function("-v,--verbose", [&c](std::int64_t n) { c.verbosity += static_cast<int>(n); });
}

void add_complex(CLI::App* s, RunConfig& c)
{
    s->add_option("--model", c.model, "catalog model, e.g. sphere(3)");
    s->add_option("--complex", c.complex_path, "complex JSON file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"twisted K-theory spectral sequence engine"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TWAHSS_VERSION);

    auto* coh = app.add_subcommand("cohomology", "graded cohomology of a complex");
    add_complex(coh, c);
    coh->add_option("--coeff", c.coeff, "Z, Z2, Q, QZ or RZ");
    add_common(coh, c);

    auto* ahss = app.add_subcommand("ahss", "twisted AHSS pages and graded twisted K");
    add_complex(ahss, c);
    ahss->add_option("--twist-int", c.twist_int, "m times the generator of H^3");
    ahss->add_option("--twist", c.twist_path, "twist cochain JSON file");
    ahss->add_option("--pages", c.pages, "pages to print")->delimiter(',');
    add_common(ahss, c);

    auto* tdr = app.add_subcommand("twisted-derham", "twisted de Rham cohomology of a CDGA and its spectral sequence");
    tdr->add_option("--cdga", c.cdga, "catalog name or CDGA JSON file");
    tdr->add_option("--twist-elem", c.twist_elem, "closed degree-3 element H");
    add_common(tdr, c);

    auto* mas = app.add_subcommand("massey", "higher differential as a Massey coset");
    mas->add_option("--cdga", c.cdga, "catalog name or CDGA JSON file");
    mas->add_option("--twist-elem", c.twist_elem, "closed degree-3 element H");
    mas->add_option("--on", c.on, "closed element x");
    mas->add_option("--k", c.k, "d_{2k+1}");
    mas->add_flag_callback("--verify-oracle", [&c] { c.verify_oracle = true; }, "compare with the filtered-complex oracle");
    add_common(mas, c);

    auto* dk = app.add_subcommand("diffk", "differential twisted K from the refined spectral sequence");
    add_complex(dk, c);
    dk->add_option("--cdga", c.cdga, "catalog name or CDGA JSON file");
    dk->add_option("--twist", c.twist_int, "integer twist m");
    dk->add_option("--gerbe", c.gerbe_path, "gerbe JSON file");
    dk->add_option("--degree", c.degree, "0 or 1");
    add_common(dk, c);

    auto* mv = app.add_subcommand("mv-s3", "Mayer-Vietoris block matrix for the 3-sphere");
    mv->add_option("--twist", c.twist_int, "integer twist m");
    add_common(mv, c);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return static_cast<int>(ErrorKind::Parse);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.twist_elem == "x3" && c.command != "massey" && c.command != "twisted-derham")
        c.twist_elem.clear();

    std::shared_ptr<FileSnfStore> store;
    try {
        validate_paths(c);
        if (c.degree != 0 && c.degree != 1)
            throw PreconditionError("--degree must be 0 or 1");
        std::string dir = c.cache_dir;
        if (dir.empty())
            if (const char* e = std::getenv("AHSS_CACHE_DIR"))
                dir = e;
        if (!dir.empty()) {
            store = std::make_shared<FileSnfStore>(dir);
            store->verify = c.verify_cache;
            set_snf_store(store);
        }
        if (c.command == "cohomology")
            cmd_cohomology(c, out);
        else if (c.command == "ahss")
            cmd_ahss(c, out);
        else if (c.command == "twisted-derham")
            cmd_twisted_derham(c, out);
        else if (c.command == "massey")
            cmd_massey(c, out);
        else if (c.command == "diffk")
            cmd_diffk(c, out);
        else
            cmd_mv_s3(c, out);
        if (store && c.verbosity)
            err << "snf cache: " << store->hits() << " hits, " << store->writes() << " writes\n";
        set_snf_store(nullptr);
        return 0;
    } catch (const Error& e) {
        set_snf_store(nullptr);
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        set_snf_store(nullptr);
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace twahss::cli
