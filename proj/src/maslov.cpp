#include "weil2/maslov.hpp"

#include "weil2/guard.hpp"
#include "weil2/intertwine.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace weil2 {

namespace {

RMatrix empty_rows(const Field& f, int cols) { return RMatrix(f, 0, cols); }

RMatrix stacked_bases(const std::vector<Lagrangian>& t)
{
    RMatrix s = t.front().basis();
    for (std::size_t i = 1; i < t.size(); ++i)
        s = RMatrix::vstack(s, t[i].basis());
    return s;
}

void check_tuple(const std::vector<Lagrangian>& t)
{
    if (t.size() < 2)
        throw std::invalid_argument("maslov kernel needs at least two lagrangians");
    for (const auto& l : t)
        if (&l.field() != &t.front().field() || l.n() != t.front().n() || l.basis().cols() != 2 * l.n())
            throw std::invalid_argument("lagrangians live in different spaces");
}

RMatrix kernel_generators(const std::vector<Lagrangian>& t)
{
    check_tuple(t);
    return kernel(stacked_bases(t).transpose());
}

// A[(i,a),(j,b)] = omega~(B_i[a], B_j[b]) for j <= i
RMatrix ambient_gram(const std::vector<Lagrangian>& t)
{
    const Field& f = t.front().field();
    int m = static_cast<int>(t.size()), n = t.front().n();
    RMatrix j = standard_omega(f, n);
    RMatrix a(f, m * n, m * n);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= i; ++k) {
            RMatrix blk = t[i].basis() * j * t[k].basis().transpose();
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    a(i * n + r, k * n + c) = blk(r, c);
        }
    return a;
}

RVector block(const RVector& v, int n, int i) { return RVector(v.begin() + i * n, v.begin() + (i + 1) * n); }

void add_block(RVector& v, int n, int i, const RVector& c, bool negate = false)
{
    for (int r = 0; r < n; ++r)
        v[i * n + r] = negate ? v[i * n + r] - c[r] : v[i * n + r] + c[r];
}

// moves block i of every row to block dest[i] of a vector with m_dst blocks
RMatrix move_blocks(const RMatrix& rows, int n, const std::vector<int>& dest, int m_dst)
{
    const Field& f = rows.field();
    std::vector<RVector> out;
    for (int r = 0; r < rows.rows(); ++r) {
        RVector v = rows.row(r), w = zero_vector(f, m_dst * n);
        for (std::size_t i = 0; i < dest.size(); ++i)
            add_block(w, n, dest[i], block(v, n, static_cast<int>(i)));
        out.push_back(w);
    }
    return RMatrix::from_rows(f, m_dst * n, out);
}

RMatrix block_diag(const RMatrix& a, const RMatrix& b)
{
    const Field& f = a.field();
    RMatrix out(f, a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

FgRModule direct_sum(const FgRModule& a, const FgRModule& b)
{
    return FgRModule(a.field(), a.gens() + b.gens(), block_diag(a.relations(), b.relations()),
                     block_diag(*a.gram(), *b.gram()));
}

// f has trivial kernel as a map a -> b
bool injective(const RMatrix& f, const FgRModule& a, const FgRModule& b)
{
    RMatrix ker = kernel(RMatrix::vstack(f, b.relations()).transpose());
    for (int r = 0; r < ker.rows(); ++r) {
        RVector full = ker.row(r);
        if (!a.is_zero_element(RVector(full.begin(), full.begin() + a.gens())))
            return false;
    }
    return true;
}

bool rows_in_span(const RMatrix& rows, const RMatrix& span)
{
    for (int r = 0; r < rows.rows(); ++r)
        if (!in_row_span(span, rows.row(r)))
            return false;
    return true;
}

void require_transverse(const Lagrangian& a, const Lagrangian& b, const char* what)
{
    if (!transverse(a, b))
        throw std::invalid_argument(what);
}

struct GraphData {
    RMatrix a, bc, bc_inv, r;
};

// L3 rows y_j = a_j B1 + b_j B2
GraphData graph_data(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3)
{
    require_transverse(l1, l2, "pi_U needs L1 cap L2 = 0");
    require_transverse(l1, l3, "pi_U needs L1 cap L3 = 0");
    const Field& f = l1.field();
    int n = l1.n();
    RMatrix s = RMatrix::vstack(l1.basis(), l2.basis()).transpose();
    RMatrix a(f, n, n), bc(f, n, n);
    for (int j = 0; j < n; ++j) {
        auto x = solve(s, l3.basis().row(j));
        if (!x)
            throw std::logic_error("L1 + L2 does not span");
        for (int i = 0; i < n; ++i) {
            a(j, i) = (*x)[i];
            bc(j, i) = (*x)[n + i];
        }
    }
    auto inv = inverse(bc);
    if (!inv)
        throw std::logic_error("L3 is not a graph over L2");
    RMatrix r = (*inv * a).scaled(-Witt2::one(f));
    return {a, bc, *inv, r};
}

} // namespace

// --- kernels ---

MaslovKernel::MaslovKernel(std::vector<Lagrangian> tuple)
    : tuple_(std::move(tuple)), gens_(kernel_generators(tuple_)),
      module_(FgRModule::submodule(gens_, ambient_gram(tuple_)))
{
}

bool MaslovKernel::is_free() const { return module_.structure().second == 0; }

RVector MaslovKernel::component(const RVector& v, int i) const { return vec_mat(block(v, n(), i), tuple_[i].basis()); }

bool MaslovKernel::contains(const RVector& v) const
{
    RVector s = zero_vector(field(), 2 * n());
    for (int i = 0; i < m(); ++i)
        s = vec_add(s, component(v, i));
    return vec_is_zero(s);
}

std::optional<RVector> MaslovKernel::coords(const RVector& v) const
{
    if (gens_.rows() == 0)
        return vec_is_zero(v) ? std::optional<RVector>(RVector{}) : std::nullopt;
    return solve(gens_.transpose(), v);
}

RMatrix MaslovKernel::coords_of(const RMatrix& rows) const
{
    std::vector<RVector> out;
    for (int r = 0; r < rows.rows(); ++r) {
        auto c = coords(rows.row(r));
        if (!c)
            throw std::invalid_argument("vector is not in the Maslov kernel");
        out.push_back(*c);
    }
    return RMatrix::from_rows(field(), gens_.rows(), out);
}

Witt2 MaslovKernel::pairing(const RVector& v, const RVector& w, const std::optional<RVector>& constant) const
{
    const SympSpace sp(field(), n());
    RVector partial = constant ? *constant : zero_vector(field(), 2 * n());
    Witt2 s = Witt2::zero(field());
    for (int i = 0; i < m(); ++i) {
        partial = vec_add(partial, component(w, i));
        s += sp.omega(component(v, i), partial);
    }
    return s;
}

RMatrix MaslovKernel::gram_with_constant(const RVector& constant) const
{
    int g = gens_.rows();
    RMatrix out(field(), g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            out(i, j) = pairing(gens_.row(i), gens_.row(j), constant);
    return out;
}

MaslovKernel maslov_kernel(const std::vector<Lagrangian>& tuple) { return MaslovKernel(tuple); }

CycInt maslov_gauss(const MaslovKernel& k, int threads)
{
    if (!k.is_free())
        throw std::invalid_argument("Gauss sums are taken on free Maslov kernels only");
    if (k.module().gens() == 0)
        return CycInt(1);
    return gauss_sum(QFormR(*k.module().gram()), threads);
}

// --- quotients ---

namespace {

RMatrix boundary_rows(const MaslovKernel& k)
{
    const Field& f = k.field();
    int m = k.m(), n = k.n();
    std::vector<RVector> rows;
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        RMatrix cap = intersection_generators(k.tuple()[i], k.tuple()[j]);
        for (int r = 0; r < cap.rows(); ++r) {
            RVector x = cap.row(r), v = zero_vector(f, m * n);
            add_block(v, n, i, *k.tuple()[i].coords(x));
            add_block(v, n, j, *k.tuple()[j].coords(x), true);
            rows.push_back(v);
        }
    }
    return k.coords_of(RMatrix::from_rows(f, m * n, rows));
}

} // namespace

MaslovQuotient::MaslovQuotient(MaslovKernel k)
    : k_(std::move(k)), boundary_(boundary_rows(k_)),
      module_(k_.field(), k_.module().gens(), RMatrix::vstack(k_.module().relations(), boundary_), *k_.module().gram())
{
}

bool MaslovQuotient::boundary_in_radical() const
{
    const RMatrix& g = *k_.module().gram();
    for (int r = 0; r < boundary_.rows(); ++r)
        if (!vec_is_zero(vec_mat(boundary_.row(r), g)))
            return false;
    return true;
}

bool MaslovQuotient::is_perfect() const
{
    check_guard(std::uint64_t{1} << module_.log2_size(), 1 << 20, "MaslovQuotient::is_perfect");
    int g = module_.gens();
    std::uint64_t radical = 0;
    module_.for_each([&](const RVector& y) {
        for (int j = 0; j < g; ++j) {
            RVector e = zero_vector(k_.field(), g);
            e[j] = Witt2::one(k_.field());
            if (!module_.form(y, e).is_zero())
                return;
        }
        ++radical;
    });
    return radical == 1;
}

// --- pi_U ---

PiU pi_U(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3)
{
    GraphData d = graph_data(l1, l2, l3);
    RMatrix j = standard_omega(l1.field(), l1.n());
    return {l2, d.r * l1.basis() * j * l2.basis().transpose(), d.r};
}

bool verify_pi_U(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3)
{
    GraphData d = graph_data(l1, l2, l3);
    const Field& f = l1.field();
    int n = l1.n();
    RMatrix phi = pi_U(l1, l2, l3).phi;
    if (!phi.is_symmetric())
        return false;
    MaslovKernel k({l1, l2, l3});
    std::vector<RVector> rows;
    for (int i = 0; i < n; ++i) {
        RVector v = zero_vector(f, 3 * n), e = zero_vector(f, n);
        e[i] = Witt2::one(f);
        add_block(v, n, 0, d.r.row(i), true);
        add_block(v, n, 1, e);
        add_block(v, n, 2, d.bc_inv.row(i), true);
        rows.push_back(v);
    }
    RMatrix amb = RMatrix::from_rows(f, 3 * n, rows);
    for (int i = 0; i < n; ++i)
        if (!k.contains(amb.row(i)))
            return false;
    FgRModule src(f, n, empty_rows(f, n), phi);
    if (!is_isometry(k.coords_of(amb), src, k.module()))
        return false;
    // L2 cap L3 in L2 coordinates against the left kernel of phi
    RMatrix cap = intersection_generators(l2, l3);
    std::vector<RVector> cap_coords;
    for (int r = 0; r < cap.rows(); ++r)
        cap_coords.push_back(*l2.coords(cap.row(r)));
    RMatrix capc = RMatrix::from_rows(f, n, cap_coords);
    RMatrix rad = kernel(phi.transpose());
    for (int r = 0; r < capc.rows(); ++r)
        if (!vec_is_zero(vec_mat(capc.row(r), phi)))
            return false;
    for (int r = 0; r < rad.rows(); ++r)
        if (!l3.contains(vec_mat(rad.row(r), l2.basis())))
            return false;
    return true;
}

LagrangianFromQ lagrangian_from_qform(const Heis& h, const Lagrangian& l1, const Lagrangian& l2, const QFormR& q)
{
    require_transverse(l1, l2, "lagrangian_from_qform needs L1 cap L2 = 0");
    const Field& f = l1.field();
    if (q.n() != l1.n())
        throw std::invalid_argument("form has the wrong dimension");
    RMatrix j = standard_omega(f, l1.n());
    auto pinv = inverse(l1.basis() * j * l2.basis().transpose());
    if (!pinv)
        throw std::logic_error("transverse lagrangians are not in duality");
    RMatrix r = q.matrix() * *pinv;
    Lagrangian lt(r * l1.basis() - l2.basis());
    return {lt, EnhLagrangian::epsilon(h, lt)};
}

// --- dihedral ---

bool verify_shift(const MaslovKernel& k, int s)
{
    int m = k.m();
    s = ((s % m) + m) % m;
    std::vector<Lagrangian> rot;
    std::vector<int> dest(m);
    for (int i = 0; i < m; ++i) {
        rot.push_back(k.tuple()[(i + s) % m]);
        dest[(i + s) % m] = i;
    }
    MaslovKernel target(rot);
    RMatrix img = move_blocks(k.generators(), k.n(), dest, m);
    return is_isometry(target.coords_of(img), k.module(), target.module());
}

bool verify_reversal(const MaslovKernel& k)
{
    int m = k.m();
    std::vector<Lagrangian> rev(k.tuple().rbegin(), k.tuple().rend());
    std::vector<int> dest(m);
    for (int i = 0; i < m; ++i)
        dest[i] = m - 1 - i;
    MaslovKernel target(rev);
    const FgRModule& t = target.module();
    FgRModule neg(t.field(), t.gens(), t.relations(), t.gram()->scaled(-Witt2::one(t.field())));
    RMatrix img = move_blocks(k.generators(), k.n(), dest, m);
    return is_isometry(target.coords_of(img), k.module(), neg);
}

DihedralReport isometry_dihedral(const MaslovKernel& k)
{
    DihedralReport rep;
    rep.shift_ok = true;
    for (int s = 1; s < k.m(); ++s)
        rep.shift_ok = rep.shift_ok && verify_shift(k, s);
    rep.reversal_ok = verify_reversal(k);
    return rep;
}

// --- chain ---

ChainReport isometry_chain(const std::vector<Lagrangian>& tuple, int split)
{
    int m = static_cast<int>(tuple.size());
    if (split < 1 || split > m - 1)
        throw std::invalid_argument("split position out of range");
    const Field& f = tuple.front().field();
    int n = tuple.front().n();
    std::vector<Lagrangian> first(tuple.begin(), tuple.begin() + split + 1);
    std::vector<Lagrangian> second{tuple.front()};
    second.insert(second.end(), tuple.begin() + split, tuple.end());
    std::vector<int> dest_a, dest_b{0};
    for (int i = 0; i <= split; ++i)
        dest_a.push_back(i);
    for (int i = split; i < m; ++i)
        dest_b.push_back(i);

    MaslovKernel ka(first), kb(second), kf(tuple);
    ChainReport rep;
    rep.transverse = transverse(tuple.front(), tuple[split]);
    RMatrix img = RMatrix::vstack(move_blocks(ka.generators(), n, dest_a, m), move_blocks(kb.generators(), n, dest_b, m));
    RMatrix fmap = kf.coords_of(img);

    if (rep.transverse) {
        rep.ok = is_isometry(fmap, direct_sum(ka.module(), kb.module()), kf.module());
        if (ka.is_free() && kb.is_free() && kf.is_free())
            rep.gauss_ok = maslov_gauss(ka) * maslov_gauss(kb) == maslov_gauss(kf);
        return rep;
    }

    MaslovQuotient ta(ka), tb(kb), tf(kf);
    FgRModule s = direct_sum(ta.module(), tb.module());
    const RMatrix& g = *kf.module().gram();
    // I: x at L_k and -x at L_1 for x in L_1 cap L_k
    RMatrix cap = intersection_generators(tuple.front(), tuple[split]);
    std::vector<RVector> erows;
    for (int r = 0; r < cap.rows(); ++r) {
        RVector v = zero_vector(f, m * n);
        add_block(v, n, 0, *tuple.front().coords(cap.row(r)), true);
        add_block(v, n, split, *tuple[split].coords(cap.row(r)));
        erows.push_back(v);
    }
    RMatrix ec = kf.coords_of(RMatrix::from_rows(f, m * n, erows));
    const FgRModule& t = tf.module();
    FgRModule ti(f, t.gens(), RMatrix::vstack(t.relations(), ec), g);

    bool isotropic = (ec * g * ec.transpose()).is_zero();
    bool orthogonal = (fmap * g * ec.transpose()).is_zero();
    bool hom = is_homomorphism(fmap, s, ti) && fmap * g * fmap.transpose() == *s.gram();
    bool inj = injective(fmap, s, ti);
    int log_i = t.log2_size() - ti.log2_size();
    int log_perp = t.log2_size() - FgRModule::submodule(g * ec.transpose()).log2_size();
    rep.ok = isotropic && orthogonal && hom && inj && s.log2_size() + log_i == log_perp;
    return rep;
}

// --- cocycle ---

CocycleReport maslov_cocycle(const Lagrangian& l0, const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3)
{
    std::vector<Lagrangian> all{l0, l1, l2, l3};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            require_transverse(all[i], all[j], "maslov_cocycle needs pairwise transverse lagrangians");
    CocycleReport rep;
    ChainReport c1 = isometry_chain({l1, l2, l3, l0}, 2);
    ChainReport c2 = isometry_chain({l0, l1, l2, l3}, 2);
    rep.steps_ok = c1.transverse && c1.ok && verify_shift(MaslovKernel({l1, l2, l3, l0}), 3) && c2.transverse && c2.ok &&
                   verify_shift(MaslovKernel({l1, l3, l0}), 2);
    rep.lhs = maslov_gauss(MaslovKernel({l1, l2, l3})) * maslov_gauss(MaslovKernel({l0, l1, l3}));
    rep.rhs = maslov_gauss(MaslovKernel({l0, l1, l2})) * maslov_gauss(MaslovKernel({l0, l2, l3}));
    rep.gauss_ok = rep.lhs == rep.rhs;
    return rep;
}

// --- new isometries ---

bool verify_inclusion(const std::vector<Lagrangian>& tuple)
{
    int m = static_cast<int>(tuple.size());
    if (m < 3)
        throw std::invalid_argument("inclusion needs at least three lagrangians");
    std::vector<Lagrangian> head(tuple.begin(), tuple.end() - 1);
    MaslovKernel ks(head), kt(tuple);
    std::vector<int> dest;
    for (int i = 0; i < m - 1; ++i)
        dest.push_back(i);
    RMatrix img = move_blocks(ks.generators(), ks.n(), dest, m);
    for (int r = 0; r < img.rows(); ++r)
        if (!kt.contains(img.row(r)))
            return false;
    RMatrix fmap = kt.coords_of(img);
    return is_homomorphism(fmap, ks.module(), kt.module()) &&
           fmap * *kt.module().gram() * fmap.transpose() == *ks.module().gram() &&
           injective(fmap, ks.module(), kt.module());
}

NewIsometryReport isometry_new(const Lagrangian& nn, const Lagrangian& n1, const Lagrangian& n2, const Lagrangian& l,
                               const Lagrangian& mm)
{
    for (const Lagrangian* a : {&nn, &n1, &n2})
        for (const Lagrangian* b : {&l, &mm})
            require_transverse(*a, *b, "isometry_new needs each N transverse to L and M");
    const Field& f = l.field();
    int n = l.n();
    NewIsometryReport rep;
    rep.dihedral_ok = verify_shift(MaslovKernel({n2, mm, n1, l}), 1) && verify_shift(MaslovKernel({n1, mm, nn, l}), 3);

    // X = K_{M,N',L,N''} (+) K_{L,N',M,N}, ambient of 8 blocks
    MaslovKernel x1({mm, n1, l, n2}), x2({l, n1, mm, nn});
    RMatrix genx = block_diag(x1.generators(), x2.generators());
    RMatrix gx = block_diag(*x1.module().gram(), *x2.module().gram());
    int gxn = genx.rows();
    auto x_coords = [&](const RVector& v) {
        RVector a(v.begin(), v.begin() + 4 * n), b(v.begin() + 4 * n, v.end());
        RVector ca = *x1.coords(a), cb = *x2.coords(b);
        ca.insert(ca.end(), cb.begin(), cb.end());
        return ca;
    };

    MaslovKernel k3({mm, n1, l});
    std::vector<RVector> drows;
    for (int r = 0; r < k3.generators().rows(); ++r) {
        RVector c = k3.generators().row(r), v = zero_vector(f, 8 * n);
        add_block(v, n, 0, block(c, n, 0));
        add_block(v, n, 1, block(c, n, 1));
        add_block(v, n, 2, block(c, n, 2));
        add_block(v, n, 4, block(c, n, 2));
        add_block(v, n, 5, block(c, n, 1));
        add_block(v, n, 6, block(c, n, 0));
        drows.push_back(x_coords(v));
    }
    RMatrix dc = RMatrix::from_rows(f, gxn, drows);
    auto ds = FgRModule::submodule(dc).structure();
    rep.d_free_isotropic = ds.first == n && ds.second == 0 && dc.rows() == n && (dc * gx * dc.transpose()).is_zero();

    // {n'_1 = n'_2} in X coordinates
    RMatrix sel(f, 8 * n, n);
    for (int i = 0; i < n; ++i) {
        sel(n + i, i) = Witt2::one(f);
        sel(5 * n + i, i) = -Witt2::one(f);
    }
    RMatrix dp = kernel((genx * sel).transpose());
    RMatrix perp = kernel((dc * gx));
    rep.d_perp_ok = rows_in_span(dp, perp) && rows_in_span(perp, dp) && rows_in_span(dc, dp);
    if (!rep.d_perp_ok)
        return rep;

    std::vector<RVector> dc_in_dp;
    for (int r = 0; r < dc.rows(); ++r)
        dc_in_dp.push_back(*solve(dp.transpose(), dc.row(r)));
    RMatrix rel = RMatrix::vstack(kernel(dp.transpose()), RMatrix::from_rows(f, dp.rows(), dc_in_dp));
    FgRModule quot(f, dp.rows(), rel, dp * gx * dp.transpose());

    MaslovKernel target({n2, mm, nn, l});
    std::vector<RVector> img;
    for (int r = 0; r < dp.rows(); ++r) {
        RVector a = vec_mat(dp.row(r), genx), v = zero_vector(f, 4 * n);
        add_block(v, n, 0, block(a, n, 3));
        add_block(v, n, 1, block(a, n, 0));
        add_block(v, n, 1, block(a, n, 6), true);
        add_block(v, n, 2, block(a, n, 7), true);
        add_block(v, n, 3, block(a, n, 2));
        add_block(v, n, 3, block(a, n, 4), true);
        img.push_back(v);
    }
    RMatrix imgm = RMatrix::from_rows(f, 4 * n, img);
    for (int r = 0; r < imgm.rows(); ++r)
        if (!target.contains(imgm.row(r)))
            return rep;
    rep.isometry_ok = is_isometry(target.coords_of(imgm), quot, target.module());
    return rep;
}

// --- Gauss-sum shadows ---

ThetaReport theta_descent(const SympSpace& v)
{
    std::vector<Lagrangian> all = enumerate_lagrangians(v);
    check_guard(static_cast<std::uint64_t>(all.size()) * all.size() * all.size(), 1 << 22, "theta_descent");
    std::map<std::tuple<std::size_t, std::size_t, std::uint32_t>, CycInt> seen;
    ThetaReport rep;
    rep.ok = true;
    for (std::size_t il = 0; il < all.size(); ++il)
        for (std::size_t im = 0; im < all.size(); ++im)
            for (const auto& nn : all) {
                if (!transverse(nn, all[il]) || !transverse(nn, all[im]))
                    continue;
                ++rep.triples;
                QFormR q(pi_U(nn, all[il], all[im]).phi);
                CycInt g = maslov_gauss(MaslovKernel({nn, all[il], all[im]}));
                auto [it, fresh] = seen.emplace(std::make_tuple(il, im, qform_index(q)), g);
                if (!fresh && !(it->second == g))
                    rep.ok = false;
            }
    rep.classes = seen.size();
    return rep;
}

std::vector<N1Case> n1_cases(const Heis& h)
{
    if (h.n() != 1)
        throw std::invalid_argument("n1_cases needs n = 1");
    const Field& f = h.field();
    Lagrangian l1 = Lagrangian::standard(f, 1), l2 = Lagrangian::dual_standard(f, 1);
    EnhLagrangian e1 = EnhLagrangian::epsilon(h, l1), e2 = EnhLagrangian::epsilon(h, l2);
    std::vector<N1Case> out;
    for (const Witt2& b : all_witt(f)) {
        if (!b.is_unit())
            continue;
        RMatrix row(f, 1, 2);
        row(0, 0) = Witt2::one(f);
        row(0, 1) = b;
        Lagrangian l(row);
        RMatrix mb(f, 1, 1);
        mb(0, 0) = -b;
        std::uint32_t b0inv = f.inv(b.a0());
        Witt2 tw(f, f.mul(b.a1(), f.sqr(b0inv)), 0);
        out.push_back({b, c123(EnhLagrangian::epsilon(h, l), e1, e2), gauss_sum(QFormR(mb)), tw});
    }
    return out;
}

bool n1_suite_ok(const std::vector<N1Case>& cases)
{
    for (const auto& a : cases) {
        if (!(a.c == a.gauss))
            return false;
        for (const auto& b : cases)
            if (!(a.c * psi_tr(b.h) == b.c * psi_tr(a.h)))
                return false;
    }
    return !cases.empty();
}

} // namespace weil2
