#include "weil2/intertwine.hpp"

#include "weil2/guard.hpp"

#include <stdexcept>
#include <thread>

namespace weil2 {

namespace {

std::uint32_t basis_row(const EnhLagrangian& l, int i)
{
    const Heis& h = l.heis();
    std::uint32_t v = 0;
    for (int j = 0; j < h.dim(); ++j)
        v |= l.basis().at(i, j) << (j * h.field().m());
    return v;
}

std::vector<std::uint32_t> intersection(const EnhLagrangian& a, const EnhLagrangian& b)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t x : a.elements())
        if (b.contains(x))
            out.push_back(x);
    return out;
}

// a k-basis of the span of `vecs`
std::vector<std::uint32_t> span_basis(const Heis& h, const std::vector<std::uint32_t>& vecs)
{
    KMatrix m(h.field(), static_cast<int>(vecs.size()), h.dim());
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (int j = 0; j < h.dim(); ++j)
            m.at(static_cast<int>(r), j) = h.coord(vecs[r], j);
    KMatrix e = m.echelon();
    std::vector<std::uint32_t> out;
    for (int r = 0; r < e.rows(); ++r) {
        std::uint32_t v = 0;
        for (int j = 0; j < h.dim(); ++j)
            v |= e.at(r, j) << (j * h.field().m());
        out.push_back(v);
    }
    return out;
}

void require_same_heis(const EnhLagrangian& a, const EnhLagrangian& b)
{
    if (&a.heis() != &b.heis())
        throw std::invalid_argument("enhanced lagrangians live in different Heisenberg groups");
}

CycMatrix build_flat(const Model& m1, const Model& m2, std::uint32_t w)
{
    const Heis& h = m1.heis();
    const EnhLagrangian& l1 = m1.lagrangian();
    // one representative per coset of L1 cap L2 in L1
    std::vector<std::int8_t> seen(h.vsize(), 0);
    std::vector<std::uint32_t> cap = intersection(l1, m2.lagrangian());
    std::vector<std::uint32_t> reps;
    for (std::uint32_t x : l1.elements()) {
        if (seen[x])
            continue;
        reps.push_back(x);
        for (std::uint32_t y : cap)
            seen[x ^ y] = 1;
    }
    HeisElem wz{w, Witt2::zero(h.field())};
    CycMatrix out(m1.dim(), m2.dim());
    for (int i = 0; i < m1.dim(); ++i)
        for (std::uint32_t x : reps) {
            HeisElem y = h.mul(h.mul(wz, l1.tau(x)), m1.rep(i));
            for (int j = 0; j < m2.dim(); ++j)
                out(i, j) += m2.eval_basis(j, y);
        }
    return out;
}

} // namespace

bool commutes_with_heis(const IntertwinerOp& op)
{
    const Heis& h = op.source.heis();
    Model src(h, op.source), dst(h, op.target);
    for (const auto& g : h.generators())
        if (!(dst.rho(g) * op.matrix == op.matrix * src.rho(g)))
            return false;
    return true;
}

IntertwinerOp op_F(const EnhLagrangian& l1, const EnhLagrangian& l2)
{
    require_same_heis(l1, l2);
    const Heis& h = l1.heis();
    check_guard(h.size(), 1 << 20, "op_F");
    Model m1(h, l1), m2(h, l2);
    CycMatrix out(m1.dim(), m2.dim());
    for (int i = 0; i < m1.dim(); ++i)
        for (std::uint32_t x : l1.elements()) {
            HeisElem y = h.mul(l1.tau(x), m1.rep(i));
            for (int j = 0; j < m2.dim(); ++j)
                out(i, j) += m2.eval_basis(j, y);
        }
    return {l2, l1, out};
}

bool is_flat_w(const EnhLagrangian& l1, const EnhLagrangian& l2, std::uint32_t w)
{
    const Heis& h = l1.heis();
    for (std::uint32_t x : span_basis(h, intersection(l1, l2)))
        if (!(l2.alpha(x) - l1.alpha(x) == h.omega(x, w).frobenius()))
            return false;
    return true;
}

std::optional<std::uint32_t> least_flat_w(const EnhLagrangian& l1, const EnhLagrangian& l2)
{
    require_same_heis(l1, l2);
    const Heis& h = l1.heis();
    for (std::uint32_t t = 0; t < h.vsize(); ++t) {
        std::uint32_t w = 0, s = t;
        for (int i = h.dim() - 1; i >= 0; --i) {
            w |= (s % h.q()) << (i * h.field().m());
            s /= h.q();
        }
        if (is_flat_w(l1, l2, w))
            return w;
    }
    return std::nullopt;
}

IntertwinerOp op_F_flat(const EnhLagrangian& l1, const EnhLagrangian& l2, std::optional<std::uint32_t> w)
{
    require_same_heis(l1, l2);
    const Heis& h = l1.heis();
    check_guard(h.size(), 1 << 20, "op_F_flat");
    if (w) {
        if (!is_flat_w(l1, l2, *w))
            throw std::invalid_argument("w does not match the enhancements on the intersection");
    } else {
        w = least_flat_w(l1, l2);
        if (!w)
            throw std::logic_error("no w matches the enhancements on the intersection");
    }
    Model m1(h, l1), m2(h, l2);
    return {l2, l1, build_flat(m1, m2, *w)};
}

std::vector<std::uint32_t> graph_map(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3)
{
    require_same_heis(l1, l2);
    require_same_heis(l1, l3);
    const Heis& h = l1.heis();
    if (intersection(l1, l2).size() != 1 || intersection(l1, l3).size() != 1)
        throw std::invalid_argument("need L1 cap L2 = L1 cap L3 = 0");
    // first component of the decomposition V = L1 + L2
    std::vector<std::uint32_t> comp1(h.vsize());
    for (std::uint32_t a : l1.elements())
        for (std::uint32_t b : l2.elements())
            comp1[a ^ b] = a;
    std::vector<std::uint32_t> r(h.vsize(), 0);
    for (std::uint32_t x : l3.elements())
        r[x ^ comp1[x]] = comp1[x];
    return r;
}

Witt2 q123_value(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3, std::uint32_t m)
{
    const Heis& h = l1.heis();
    std::uint32_t r = graph_map(l1, l2, l3)[m];
    HeisElem e = h.mul(h.mul(l3.tau(r ^ m), l2.tau(m)), l1.tau(r));
    if (e.v != 0)
        throw std::logic_error("product is not central");
    return e.z;
}

QFormR q123(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3)
{
    const Heis& h = l1.heis();
    const Field& f = h.field();
    std::vector<std::uint32_t> r = graph_map(l1, l2, l3);
    auto value = [&](std::uint32_t m) {
        HeisElem e = h.mul(h.mul(l3.tau(r[m] ^ m), l2.tau(m)), l1.tau(r[m]));
        return e.z;
    };
    int n = h.n();
    std::vector<std::uint32_t> rows(n);
    for (int i = 0; i < n; ++i)
        rows[i] = basis_row(l2, i);
    RMatrix b(f, n, n);
    for (int i = 0; i < n; ++i) {
        b(i, i) = value(rows[i]);
        for (int j = i + 1; j < n; ++j) {
            Witt2 p = value(rows[i] ^ rows[j]) - value(rows[i]) - value(rows[j]);
            b(i, j) = b(j, i) = Witt2(f, f.sqrt(p.a1()), 0);
        }
    }
    return QFormR(b);
}

CycInt c123(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3)
{
    return gauss_sum(q123(l1, l2, l3));
}

CompositionReport verify_composition(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3)
{
    CompositionReport rep;
    rep.c = c123(l1, l2, l3);
    CycMatrix f12 = op_F(l1, l2).matrix, f23 = op_F(l2, l3).matrix, f13 = op_F(l1, l3).matrix;
    CycMatrix f21 = op_F(l2, l1).matrix;
    CycInt qn(static_cast<std::int64_t>(ipow_sat(l1.heis().q(), l1.heis().n())));
    rep.product_ok = f12 * f23 == f13.scaled(rep.c);
    rep.inverse_ok = (f21 * f13).scaled(rep.c) == f23.scaled(qn);
    return rep;
}

HFun f0_function(const EnhLagrangian& l, const EnhLagrangian& m)
{
    require_same_heis(l, m);
    const Heis& h = l.heis();
    if (intersection(l, m).size() != 1)
        throw std::invalid_argument("f0 needs transverse lagrangians");
    HFun out(h.size());
    for (std::uint32_t a : l.elements())
        for (std::uint32_t b : m.elements()) {
            HeisElem lm = h.mul(l.tau(a), m.tau(b));
            for (const auto& z : all_witt(h.field()))
                out[h.index(h.mul(lm, h.central(z)))] = psi_tr(z);
        }
    return out;
}

HFun convolve(const Heis& h, const HFun& f, const HFun& g, int threads)
{
    std::uint32_t total = h.size();
    check_guard(static_cast<std::uint64_t>(total) * total, 1ull << 26, "convolve");
    std::vector<HeisElem> inv;
    inv.reserve(total);
    for (std::uint32_t y = 0; y < total; ++y)
        inv.push_back(h.inv(h.elem(y)));
    HFun out(total);
    auto work = [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t x = lo; x < hi; ++x) {
            HeisElem hx = h.elem(x);
            CycInt s(0);
            for (std::uint32_t y = 0; y < total; ++y)
                if (!g[y].is_zero())
                    s += f[h.index(h.mul(hx, inv[y]))] * g[y];
            out[x] = s;
        }
    };
    if (threads <= 1) {
        work(0, total);
        return out;
    }
    std::vector<std::thread> pool;
    std::uint32_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint32_t lo = std::min(total, t * chunk), hi = std::min(total, lo + chunk);
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool)
        th.join();
    return out;
}

// --- metaplectic cocycle ---

Metaplectic::Metaplectic(const EnhLagrangian& base) : model_(base.heis(), base) {}

CycMatrix Metaplectic::operator_of(const AspElement& g) const
{
    const EnhLagrangian& base = model_.lagrangian();
    EnhLagrangian gl = base.apply(g);
    Model to(model_.heis(), gl);
    CycMatrix t = asp_transport(model_, to, g);
    return op_F_flat(base, gl).matrix * t;
}

bool Metaplectic::is_metaplectic(const AspElement& g, const CycMatrix& mg) const
{
    for (const auto& x : model_.heis().generators())
        if (!(model_.rho(g.act(x)) * mg == mg * model_.rho(x)))
            return false;
    return true;
}

CycRatio Metaplectic::cocycle(const AspElement& g, const AspElement& h) const
{
    auto c = proportional(operator_of(g) * operator_of(h), operator_of(g * h));
    if (!c)
        throw std::logic_error("M[g] M[h] is not a multiple of M[gh]");
    return *c;
}

CycRatio metaplectic_cocycle(const AspElement& g, const AspElement& h, const EnhLagrangian& base)
{
    return Metaplectic(base).cocycle(g, h);
}

bool ratio_equal(const CycRatio& a, const CycRatio& b) { return a.num * b.den == b.num * a.den; }

bool cocycle_identity(const Metaplectic& mp, const AspElement& g, const AspElement& h, const AspElement& k)
{
    CycRatio a = mp.cocycle(g, h), b = mp.cocycle(g * h, k);
    CycRatio c = mp.cocycle(g, h * k), d = mp.cocycle(h, k);
    return ratio_equal({a.num * b.num, a.den * b.den}, {c.num * d.num, c.den * d.den});
}

} // namespace weil2
