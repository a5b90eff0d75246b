#include "weil2/guard.hpp"
#include "weil2/intertwine.hpp"
#include "weil2/maslov.hpp"
#include "weil2/padic.hpp"
#include "weil2/veritool.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>

using namespace weil2;

namespace {

// input files that do not describe valid objects
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    int q = 2;
    int n = 1;
    std::uint64_t seed = 42;
    int trials = 100;
    int threads = 1;
    std::string json_path;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--q", c.q, "residue field order")->check(CLI::IsMember({2, 4, 8}));
    app->add_option("--n", c.n, "half dimension")->check(CLI::Range(0, 8));
    app->add_option("--seed", c.seed, "seed for sampled checks");
    app->add_option("--trials", c.trials, "sample count")->check(CLI::NonNegativeNumber);
    app->add_option("--threads", c.threads, "worker count")->check(CLI::PositiveNumber);
    app->add_option("--json", c.json_path, "also write the JSON result to PATH");
}

const Field& field_of(int q)
{
    int m = q == 2 ? 1 : q == 4 ? 2 : 3;
    return Field::get(m);
}

Grid grid_of(const Common& c) { return {c.q, c.n, c.seed, c.trials, c.threads}; }

json load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

json wj(const Witt2& x) { return json::array({x.a0(), x.a1()}); }
json cj(const CycInt& z) { return json::array({z.re(), z.im()}); }

json mj(const RMatrix& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j)
            r.push_back(wj(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

Witt2 parse_witt(const Field& f, const json& j)
{
    std::uint32_t a0 = 0, a1 = 0;
    if (j.is_array() && j.size() == 2) {
        a0 = j[0].get<std::uint32_t>();
        a1 = j[1].get<std::uint32_t>();
    } else if (j.is_number_unsigned()) {
        a0 = j.get<std::uint32_t>();
    } else {
        throw InputError("a ring element is [a0, a1]");
    }
    if (a0 >= f.order() || a1 >= f.order())
        throw InputError("ring element out of range for q = " + std::to_string(f.order()));
    return Witt2(f, a0, a1);
}

RMatrix parse_rmatrix(const Field& f, const json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw InputError("a matrix is a non-empty list of rows");
    int rows = static_cast<int>(j.size()), cols = static_cast<int>(j[0].size());
    RMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw InputError("ragged matrix");
        for (int c = 0; c < cols; ++c)
            m(i, c) = parse_witt(f, j[i][c]);
    }
    return m;
}

KMatrix parse_kmatrix(const Field& f, const json& j, int cols)
{
    if (!j.is_array())
        throw InputError("a k-matrix is a list of rows");
    KMatrix m(f, static_cast<int>(j.size()), cols);
    for (int i = 0; i < m.rows(); ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw InputError("k-matrix rows must have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            auto v = j[i][c].get<std::uint32_t>();
            if (v >= f.order())
                throw InputError("k entry out of range");
            m.at(i, c) = v;
        }
    }
    return m;
}

QFormR parse_form(const Field& f, const json& j)
{
    if (!j.contains("B"))
        throw InputError("form file needs {n, B}");
    RMatrix b = parse_rmatrix(f, j["B"]);
    if (b.rows() != b.cols() || !b.is_symmetric())
        throw InputError("B must be square and symmetric");
    if (j.contains("n") && j["n"].get<int>() != b.rows())
        throw InputError("n does not match B");
    return QFormR(b);
}

// a list of lagrangians, each an n x 2n matrix over R
std::vector<Lagrangian> parse_tuple(const Field& f, const json& j)
{
    const json& list = j.is_object() ? j.at("tuple") : j;
    std::vector<Lagrangian> out;
    for (const auto& l : list) {
        try {
            out.emplace_back(parse_rmatrix(f, l));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    if (out.empty())
        throw InputError("empty tuple");
    for (const auto& l : out)
        if (l.n() != out.front().n())
            throw InputError("lagrangians of different sizes");
    return out;
}

EnhLagrangian parse_enhanced(const Heis& h, const json& j)
{
    KMatrix l = parse_kmatrix(h.field(), j.at("L"), h.dim());
    std::vector<Witt2> alpha;
    for (const auto& a : j.at("alpha"))
        alpha.push_back(parse_witt(h.field(), a));
    try {
        return EnhLagrangian(h, l, alpha);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

json enh_json(const EnhLagrangian& e)
{
    json rows = json::array();
    for (int i = 0; i < e.basis().rows(); ++i) {
        json r = json::array();
        for (int c = 0; c < e.basis().cols(); ++c)
            r.push_back(e.basis().at(i, c));
        rows.push_back(r);
    }
    json alpha = json::array();
    for (const auto& a : e.alpha_basis())
        alpha.push_back(wj(a));
    return {{"L", rows}, {"alpha", alpha}};
}

json base(const std::string& command, const Common& c)
{
    return {{"schema", "weil2/1"}, {"command", command}, {"q", c.q}, {"n", c.n}};
}

int emit(const json& out, const Common& c, bool ok)
{
    std::string text = out.dump(2);
    if (!c.json_path.empty()) {
        std::ofstream f(c.json_path);
        if (!f)
            throw InputError("cannot write " + c.json_path);
        f << text << '\n';
    }
    std::cout << text << '\n';
    return ok ? 0 : 1;
}

bool transverse_enh(const EnhLagrangian& a, const EnhLagrangian& b)
{
    std::size_t common = 0;
    for (std::uint32_t x : a.elements())
        common += b.contains(x);
    return common == 1;
}

// --- subcommands ---

int cmd_lagr(const Common& c, bool list)
{
    const Field& f = field_of(c.q);
    SympSpace v(f, c.n);
    auto all = enumerate_lagrangians(v);
    json out = base("lagr", c);
    std::uint64_t kf = 1;
    for (int i = 1; i <= c.n; ++i)
        kf *= ipow_sat(f.order(), i) + 1;
    std::uint64_t formula = kf * ipow_sat(f.order(), c.n * (c.n + 1) / 2);
    out["count"] = all.size();
    out["formula"] = formula;
    if (list) {
        json ls = json::array();
        for (const auto& l : all)
            ls.push_back(mj(l.basis()));
        out["lagrangians"] = ls;
    }
    return emit(out, c, all.size() == formula);
}

int cmd_gauss(const Common& c, const std::string& path, bool invariants)
{
    const Field& f = field_of(c.q);
    QFormR q = parse_form(f, load(path));
    json out = base(invariants ? "invariants" : "gauss", c);
    out["n"] = q.n();
    out["B"] = mj(q.matrix());
    out["gauss"] = cj(gauss_sum(q, c.threads));
    if (invariants) {
        auto d = discriminant(q);
        out["disc"] = d ? json(*d) : json(nullptr);
        out["stratum"] = stratum(q).i;
        // Arf of the k-form on {x : q(x) in 2R}, when that form is nondegenerate
        KMatrix diag(f, 1, q.n());
        for (int i = 0; i < q.n(); ++i)
            diag.at(0, i) = f.sqrt(q.matrix()(i, i).a0());
        KMatrix sub = diag.kernel();
        out["arf"] = nullptr;
        if (sub.rows() > 0 && sub.rows() % 2 == 0) {
            KQuadForm k = restrict_to_2r(q, sub);
            if (k.polar().rank() == sub.rows())
                out["arf"] = arf(k).cls;
        }
    }
    return emit(out, c, true);
}

int cmd_maslov(const Common& c, const std::string& path, const std::string& check, int split)
{
    const Field& f = field_of(c.q);
    auto t = parse_tuple(f, load(path));
    json out = base("maslov", c);
    out["n"] = t.front().n();
    out["check"] = check;
    bool ok = false;
    MaslovKernel k(t);
    auto st = k.module().structure();
    out["kernel"] = {{"structure", json::array({st.first, st.second})}, {"gram", mj(*k.module().gram())}};
    if (check == "dihedral") {
        DihedralReport r = isometry_dihedral(k);
        out["shift_ok"] = r.shift_ok;
        out["reversal_ok"] = r.reversal_ok;
        ok = r.shift_ok && r.reversal_ok;
    } else if (check == "chain") {
        if (t.size() < 4)
            throw InputError("chain needs at least four lagrangians");
        json splits = json::array();
        ok = true;
        int lo = split > 0 ? split : 1, hi = split > 0 ? split : static_cast<int>(t.size()) - 2;
        if (lo < 1 || hi > static_cast<int>(t.size()) - 2)
            throw InputError("split must lie in 1..m-2");
        for (int s = lo; s <= hi; ++s) {
            ChainReport r = isometry_chain(t, s);
            bool g = !r.gauss_ok || *r.gauss_ok;
            splits.push_back({{"split", s}, {"transverse", r.transverse}, {"ok", r.ok},
                              {"gauss_ok", r.gauss_ok ? json(*r.gauss_ok) : json(nullptr)}});
            ok = ok && r.ok && g;
        }
        out["splits"] = splits;
    } else if (check == "cocycle") {
        if (t.size() != 4)
            throw InputError("cocycle needs four lagrangians");
        CocycleReport r = maslov_cocycle(t[0], t[1], t[2], t[3]);
        out["steps_ok"] = r.steps_ok;
        out["gauss_ok"] = r.gauss_ok;
        out["lhs"] = cj(r.lhs);
        out["rhs"] = cj(r.rhs);
        ok = r.steps_ok && r.gauss_ok;
    } else {
        if (t.size() != 5)
            throw InputError("new needs (N, N1, N2, L, M)");
        NewIsometryReport r = isometry_new(t[0], t[1], t[2], t[3], t[4]);
        out["dihedral_ok"] = r.dihedral_ok;
        out["d_free_isotropic"] = r.d_free_isotropic;
        out["d_perp_ok"] = r.d_perp_ok;
        out["isometry_ok"] = r.isometry_ok;
        ok = r.ok();
    }
    out["ok"] = ok;
    return emit(out, c, ok);
}

int cmd_model(const Common& c, const std::string& path, const std::string& check)
{
    Heis h(field_of(c.q), c.n);
    EnhLagrangian l = parse_enhanced(h, load(path));
    json out = base("model", c);
    out["check"] = check;
    out["lagrangian"] = enh_json(l);
    bool ok;
    if (check == "svn") {
        Model m(h, l);
        int cd = commutant_dim(m);
        out["dim"] = m.dim();
        out["expected_dim"] = ipow_sat(h.q(), c.n);
        out["commutant_dim"] = cd;
        ok = m.dim() == static_cast<int>(ipow_sat(h.q(), c.n)) && cd == 1;
    } else {
        // tau is a splitting of L x Z over L
        ok = true;
        for (std::uint32_t x : l.elements())
            for (std::uint32_t y : l.elements())
                ok = ok && h.mul(l.tau(x), l.tau(y)) == l.tau(x ^ y);
        out["elements"] = l.elements().size();
    }
    out["ok"] = ok;
    return emit(out, c, ok);
}

int cmd_intertwine(const Common& c, const std::string& path, const std::string& check)
{
    Heis h(field_of(c.q), c.n);
    json j = load(path);
    const json& list = j.is_object() ? j.at("triple") : j;
    if (list.size() != 3)
        throw InputError("a triple has three enhanced lagrangians");
    std::vector<EnhLagrangian> t;
    for (const auto& e : list)
        t.push_back(parse_enhanced(h, e));
    json out = base("intertwine", c);
    out["check"] = check;
    bool ok;
    if (check == "compose") {
        if (!transverse_enh(t[0], t[1]) || !transverse_enh(t[0], t[2]))
            throw InputError("compose needs L1 transverse to L2 and L3");
        CompositionReport r = verify_composition(t[0], t[1], t[2]);
        out["C"] = cj(r.c);
        out["product_ok"] = r.product_ok;
        out["inverse_ok"] = r.inverse_ok;
        ok = r.product_ok && r.inverse_ok;
    } else {
        if (!transverse_enh(t[0], t[1]) || !transverse_enh(t[1], t[2]) || !transverse_enh(t[0], t[2]))
            throw InputError("convolve needs a pairwise transverse triple");
        HFun conv = convolve(h, f0_function(t[0], t[1]), f0_function(t[1], t[2]), c.threads);
        HFun want = f0_function(t[0], t[2]);
        CycInt vol = CycInt(static_cast<std::int64_t>(ipow_sat(h.q(), c.n + 2)));
        CycInt s = vol * c123(t[0], t[1], t[2]);
        ok = true;
        for (std::uint32_t x = 0; x < h.size(); ++x)
            ok = ok && conv[x] == s * want[x];
        out["C"] = cj(c123(t[0], t[1], t[2]));
        out["scalar"] = cj(s);
    }
    out["ok"] = ok;
    return emit(out, c, ok);
}

int cmd_cocycle(Common c, int pairs)
{
    c.trials = pairs;
    json t = emit_table("cocycle-phases", grid_of(c));
    bool ok = true;
    for (const auto& row : t["rows"])
        ok = ok && !row[4].is_null() && row[5].get<int>() >= 0 && row[2] != json::array({0, 0});
    t["ok"] = ok;
    return emit(t, c, ok);
}

int cmd_padic(const Common& c, const std::string& check)
{
    const Field& f = field_of(c.q);
    json out = base("padic", c);
    out["check"] = check;
    json rows = json::array();
    bool ok = true;
    if (check == "lemmaB2") {
        for (const auto& lm : LatticeModel::enumerate(f, c.n)) {
            LemmaReport r = lemma_report(lm);
            bool good = r.dim_m == 0 && r.lemma_ok && (r.chains > 0) == (r.arf == 0) &&
                        (r.chains == 0 || r.dim_n == static_cast<int>(ipow_sat(f.order(), c.n)));
            rows.push_back({{"arf", r.arf},
                            {"chains", r.chains},
                            {"dim_M", r.dim_m},
                            {"dim_N", r.chains > 0 ? json(r.dim_n) : json(nullptr)},
                            {"dim_2M", r.dim_2m},
                            {"ok", good}});
            ok = ok && good;
        }
    } else {
        Heis h(f, c.n);
        for (const auto& lm : LatticeModel::enumerate(f, c.n))
            for (const auto& s : vanishing_lagrangians(lm)) {
                Reduction r = reduce_to_heisenberg(h, NChain(lm, s));
                json shift = json::array();
                for (const auto& w : r.shift)
                    shift.push_back(wj(w));
                rows.push_back({{"model_dim", r.model_dim},
                                {"tau_ok", r.tau_ok},
                                {"restriction_ok", r.restriction_ok},
                                {"equivariant", r.equivariant},
                                {"solution_dim", r.solution_dim},
                                {"ok", r.ok()}});
                ok = ok && r.ok();
            }
    }
    out["rows"] = rows;
    out["ok"] = ok;
    return emit(out, c, ok);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"weil2: exact checks for the Weil representation in characteristic two"};
    app.require_subcommand(1);
    Common c;

    auto* lagr = app.add_subcommand("lagr", "enumerate free lagrangians of R^{2n}");
    add_common(lagr, c);
    bool list = false, count = false;
    auto* lo = lagr->add_flag("--list", list, "print every lagrangian");
    lagr->add_flag("--count", count, "print the count only")->excludes(lo);

    std::string form;
    auto* gauss = app.add_subcommand("gauss", "Gauss sum of a quadratic form");
    add_common(gauss, c);
    gauss->add_option("--form", form, "form file {n, B}")->required()->check(CLI::ExistingFile);
    auto* inv = app.add_subcommand("invariants", "Gauss sum, discriminant, stratum and Arf of a form");
    add_common(inv, c);
    inv->add_option("--form", form, "form file {n, B}")->required()->check(CLI::ExistingFile);

    std::string tuple, check;
    int split = 0;
    auto* maslov = app.add_subcommand("maslov", "isometries of Maslov kernels");
    add_common(maslov, c);
    maslov->add_option("--tuple", tuple, "list of lagrangian bases")->required()->check(CLI::ExistingFile);
    maslov->add_option("--check", check)->required()->check(CLI::IsMember({"dihedral", "chain", "cocycle", "new"}));
    maslov->add_option("--split", split, "chain split point; all splits when omitted");

    std::string lagr_file;
    auto* model = app.add_subcommand("model", "models of the Heisenberg group");
    add_common(model, c);
    model->add_option("--lagr", lagr_file, "enhanced lagrangian {L, alpha}")->required()->check(CLI::ExistingFile);
    model->add_option("--check", check)->required()->check(CLI::IsMember({"svn", "split"}));

    std::string triple;
    auto* inter = app.add_subcommand("intertwine", "intertwiners between models");
    add_common(inter, c);
    inter->add_option("--triple", triple, "three enhanced lagrangians")->required()->check(CLI::ExistingFile);
    inter->add_option("--check", check)->required()->check(CLI::IsMember({"compose", "convolve"}));

    int pairs = 200;
    auto* coc = app.add_subcommand("cocycle", "sampled metaplectic cocycle values");
    add_common(coc, c);
    coc->add_option("--pairs", pairs)->check(CLI::NonNegativeNumber);

    auto* padic = app.add_subcommand("padic", "fixed spaces and the reduction to H(N^perp/N)");
    add_common(padic, c);
    padic->add_option("--check", check)->required()->check(CLI::IsMember({"lemmaB2", "reduce"}));

    std::string name;
    auto* suite = app.add_subcommand("suite", "run an invariant suite");
    add_common(suite, c);
    suite->add_option("name", name)->required()->check(CLI::IsMember(suite_names()));

    std::string kind;
    auto* table = app.add_subcommand("table", "emit a data table");
    add_common(table, c);
    table->add_option("kind", kind)->required()->check(CLI::IsMember(table_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help and version exit 0; every other parse failure is a usage error
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*lagr)
            return cmd_lagr(c, list);
        if (*gauss)
            return cmd_gauss(c, form, false);
        if (*inv)
            return cmd_gauss(c, form, true);
        if (*maslov)
            return cmd_maslov(c, tuple, check, split);
        if (*model)
            return cmd_model(c, lagr_file, check);
        if (*inter)
            return cmd_intertwine(c, triple, check);
        if (*coc)
            return cmd_cocycle(c, pairs);
        if (*padic)
            return cmd_padic(c, check);
        if (*suite) {
            VerifyReport r = run_suite(name, grid_of(c));
            return emit(r.to_json(), c, r.ok());
        }
        if (*table)
            return emit(emit_table(kind, grid_of(c)), c, true);
    } catch (const SizeGuardError& e) {
        std::cerr << "size guard: " << e.what() << '\n';
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
