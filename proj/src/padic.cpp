#include "weil2/padic.hpp"

#include "weil2/guard.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace weil2 {

namespace {

CycInt half_character(const Field& f, std::uint32_t x) { return psi_tr(Witt2::twice(Gf2m(f, x))); }

// u with chi(phi(m) + <u, m>) = 1 on all of `elems`
std::vector<std::uint32_t> support_of(const Heis& h, const std::vector<std::uint32_t>& phi,
                                      const std::vector<std::uint32_t>& elems)
{
    check_guard(static_cast<std::uint64_t>(h.vsize()) * elems.size(), 1ull << 26, "fixed_space");
    const CycInt one(1);
    std::vector<std::uint32_t> out;
    for (std::uint32_t u = 0; u < h.vsize(); ++u) {
        bool ok = true;
        for (std::uint32_t m : elems)
            if (!(half_character(h.field(), phi[m] ^ h.omega_k(u, m)) == one)) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(u);
    }
    return out;
}

std::vector<std::uint32_t> orthogonal(const Heis& h, const std::vector<std::uint32_t>& elems)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t u = 0; u < h.vsize(); ++u)
        if (std::all_of(elems.begin(), elems.end(), [&](std::uint32_t m) { return h.omega_k(u, m) == 0; }))
            out.push_back(u);
    return out;
}

std::uint32_t packed_row(const Heis& h, const KMatrix& m, int r)
{
    std::uint32_t v = 0;
    for (int j = 0; j < h.dim(); ++j)
        v |= m.at(r, j) << (j * h.field().m());
    return v;
}

void require_vectors(const LatticeModel& lm, const KMatrix& m)
{
    if (&m.field() != &lm.field() || m.cols() != 2 * lm.n())
        throw std::invalid_argument("rows are not vectors of M/2M");
}

// a (packed): coordinates 0..n-1; b: n..2n-1
RVector a_part(const Heis& h, std::uint32_t v)
{
    RVector out;
    for (int i = 0; i < h.n(); ++i)
        out.emplace_back(h.field(), h.coord(v, i), 0);
    return out;
}

RVector b_part(const Heis& h, std::uint32_t v)
{
    RVector out;
    for (int i = 0; i < h.n(); ++i)
        out.emplace_back(h.field(), h.coord(v, h.n() + i), 0);
    return out;
}

Witt2 dot(const Field& f, const RVector& x, const RVector& y)
{
    Witt2 s = Witt2::zero(f);
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

} // namespace

// --- lattice models ---

LatticeModel::LatticeModel(const Field& f, int n, const KQuadForm& phi) : h_(f, n), form_(phi)
{
    if (&phi.field() != &f || phi.dim() != 2 * n)
        throw std::invalid_argument("phi must be a form on k^{2n}");
    table_.resize(h_.vsize());
    for (std::uint32_t x = 0; x < h_.vsize(); ++x)
        table_[x] = form_.eval(x);
    for (int i = 0; i < h_.dim(); ++i)
        for (int j = i + 1; j < h_.dim(); ++j) {
            std::uint32_t ei = h_.basis_vector(i), ej = h_.basis_vector(j);
            if ((table_[ei ^ ej] ^ table_[ei] ^ table_[ej]) != h_.omega_k(ei, ej))
                throw std::invalid_argument("the polar of phi is not the standard pairing");
        }
}

LatticeModel LatticeModel::standard(const Field& f, int n)
{
    KMatrix u(f, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        u.at(i, n + i) = 1;
    return LatticeModel(f, n, KQuadForm{u});
}

std::vector<LatticeModel> LatticeModel::enumerate(const Field& f, int n)
{
    std::uint64_t count = ipow_sat(f.order(), 2 * n);
    check_guard(count, 1 << 16, "LatticeModel::enumerate");
    std::vector<LatticeModel> out;
    for (std::uint64_t t = 0; t < count; ++t) {
        KMatrix u(f, 2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            u.at(i, n + i) = 1;
        std::uint64_t s = t;
        for (int i = 0; i < 2 * n; ++i) {
            u.at(i, i) = static_cast<std::uint32_t>(s % f.order());
            s /= f.order();
        }
        out.emplace_back(f, n, KQuadForm{u});
    }
    return out;
}

CycInt LatticeModel::chi(std::uint32_t m, std::uint32_t z) const { return half_character(field(), table_[m] ^ z); }

int LatticeModel::arf_class() const { return arf(form_).cls; }

std::vector<std::uint32_t> span_elements(const Heis& h, const KMatrix& rows)
{
    std::vector<std::uint32_t> out{0};
    for (int r = 0; r < rows.rows(); ++r) {
        std::uint32_t v = packed_row(h, rows, r);
        std::size_t size = out.size();
        for (std::uint32_t c = 1; c < h.q(); ++c) {
            std::uint32_t cv = h.scale(c, v);
            for (std::size_t i = 0; i < size; ++i)
                out.push_back(out[i] ^ cv);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<KMatrix> vanishing_lagrangians(const LatticeModel& lm)
{
    std::vector<KMatrix> out;
    for (const KMatrix& l : enumerate_k_lagrangians(lm.heis())) {
        auto elems = span_elements(lm.heis(), l);
        if (std::all_of(elems.begin(), elems.end(), [&](std::uint32_t m) { return lm.phi(m) == 0; }))
            out.push_back(l);
    }
    return out;
}

FixedSpace fixed_space(const LatticeModel& lm, const KMatrix& m1)
{
    require_vectors(lm, m1);
    std::vector<std::uint32_t> phi(lm.heis().vsize());
    for (std::uint32_t x = 0; x < phi.size(); ++x)
        phi[x] = lm.phi(x);
    FixedSpace fs;
    fs.support = support_of(lm.heis(), phi, span_elements(lm.heis(), m1));
    fs.dim = static_cast<int>(fs.support.size());
    return fs;
}

bool fixed_space_lemma(const LatticeModel& lm, const KMatrix& m1)
{
    const Heis& h = lm.heis();
    auto elems = span_elements(h, m1);
    auto perp = orthogonal(h, elems);
    auto support = fixed_space(lm, m1).support;
    bool vanishing = std::all_of(elems.begin(), elems.end(), [&](std::uint32_t m) { return lm.phi(m) == 0; });
    if (vanishing)
        return support == perp;
    if (support.empty())
        return true;
    std::vector<std::uint32_t> coset;
    for (std::uint32_t p : perp)
        coset.push_back(support.front() ^ p);
    std::sort(coset.begin(), coset.end());
    return coset == support;
}

// --- chains ---

NChain::NChain(const LatticeModel& lm, const KMatrix& s) : lm_(lm), s_(s)
{
    require_vectors(lm, s);
    const Heis& h = lm_.heis();
    const Field& f = h.field();
    int n = h.n();
    if (s.rows() != n || s.rank() != n)
        throw std::invalid_argument("N/2M must have dimension n");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (h.omega_k(packed_row(h, s, i), packed_row(h, s, j)) != 0)
                throw std::invalid_argument("N/2M is not isotropic");
    for (std::uint32_t m : span_elements(h, s))
        if (lm_.phi(m) != 0)
            throw std::invalid_argument("phi does not vanish on N/2M");

    // a coordinate lagrangian transverse to N/2M, then the dual basis in it
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::uint32_t> u(n);
        for (int j = 0; j < n; ++j)
            u[j] = h.basis_vector((mask >> j & 1) ? n + j : j);
        KMatrix p(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                p.at(i, j) = h.omega_k(packed_row(h, s, i), u[j]);
        if (p.rank() != n)
            continue;
        g_.clear();
        for (int i = 0; i < n; ++i)
            g_.push_back(packed_row(h, s, i));
        for (int j = 0; j < n; ++j) {
            std::vector<std::uint32_t> e(n, 0);
            e[j] = 1;
            auto x = p.solve(e);
            std::uint32_t t = 0;
            for (int k = 0; k < n; ++k)
                t ^= h.scale((*x)[k], u[k]);
            g_.push_back(t);
        }
        break;
    }
    if (g_.empty())
        throw std::logic_error("no coordinate lagrangian is transverse to N/2M");
    adapted_.resize(h.vsize());
    for (std::uint32_t x = 0; x < h.vsize(); ++x)
        adapted_[x] = lm_.phi(to_original(x));
}

std::uint32_t NChain::to_original(std::uint32_t x) const
{
    const Heis& h = lm_.heis();
    std::uint32_t y = 0;
    for (int i = 0; i < h.dim(); ++i)
        y ^= h.scale(h.coord(x, i), g_[i]);
    return y;
}

bool NChain::self_orthogonal() const
{
    const Heis& h = lm_.heis();
    auto elems = span_elements(h, s_);
    return orthogonal(h, elems) == elems;
}

// --- H(N^perp / N) ---

ReducedHeis::ReducedHeis(const NChain& chain) : chain_(chain) {}

HeisElem ReducedHeis::reduce(const RVector& a, const RVector& b, const Witt2& z) const
{
    const Heis& h = shape();
    const Field& f = h.field();
    int n = h.n();
    // y = n + y_can with n = (gamma, 2 delta) in N, so
    // z_can = z - (1/2)<n, y_can> = z - 2 (gamma.b~ - delta.a~)
    std::vector<std::uint32_t> coords(2 * n);
    Witt2 corr = Witt2::zero(f);
    for (int i = 0; i < n; ++i) {
        coords[i] = a[i].a0();
        coords[n + i] = b[i].a0();
        Witt2 gamma(f, f.sqrt(a[i].a1()), 0), delta(f, f.sqrt(b[i].a1()), 0);
        Witt2 at(f, a[i].a0(), 0), bt(f, b[i].a0(), 0);
        corr += gamma * bt - delta * at;
    }
    return {h.pack(coords), z - Witt2::two(f) * corr};
}

HeisElem ReducedHeis::mul(const HeisElem& x, const HeisElem& y) const
{
    const Heis& h = shape();
    const Field& f = h.field();
    RVector a1 = a_part(h, x.v), b1 = b_part(h, x.v), a2 = a_part(h, y.v), b2 = b_part(h, y.v);
    RVector a(h.n(), Witt2::zero(f)), b(h.n(), Witt2::zero(f));
    for (int i = 0; i < h.n(); ++i) {
        a[i] = a1[i] + a2[i];
        b[i] = b1[i] + b2[i];
    }
    return reduce(a, b, x.z + y.z + dot(f, a1, b2) - dot(f, b1, a2));
}

HeisElem ReducedHeis::inv(const HeisElem& x) const
{
    const Heis& h = shape();
    RVector a = a_part(h, x.v), b = b_part(h, x.v);
    for (auto& c : a)
        c = -c;
    for (auto& c : b)
        c = -c;
    return reduce(a, b, -x.z);
}

HeisElem ReducedHeis::delta(const RVector& a, const RVector& b) const
{
    const Heis& h = shape();
    const Field& f = h.field();
    std::vector<std::uint32_t> coords;
    RVector ay;
    for (const auto& c : a) {
        coords.push_back(c.a0());
        ay.push_back(Witt2::two(f) * c);
    }
    for (const auto& c : b)
        coords.push_back(c.a0());
    std::uint32_t m = h.pack(coords);
    return reduce(ay, b, Witt2::twice(Gf2m(f, chain_.phi_adapted(m))));
}

HeisElem ReducedHeis::tau(std::uint32_t v) const
{
    const Heis& h = shape();
    return delta(RVector(h.n(), Witt2::zero(h.field())), b_part(h, v));
}

Witt2 ReducedHeis::cocycle(std::uint32_t v1, std::uint32_t v2) const
{
    Witt2 zero = Witt2::zero(shape().field());
    return mul({v1, zero}, {v2, zero}).z;
}

// --- the induced model ---

ReducedModel::ReducedModel(const ReducedHeis& red) : red_(red)
{
    const Heis& h = red_.shape();
    std::uint32_t qn = static_cast<std::uint32_t>(ipow_sat(h.q(), h.n()));
    Witt2 zero = Witt2::zero(h.field());
    for (std::uint32_t r = 0; r < qn; ++r) {
        reps_.push_back(r);
        HFun f(h.size());
        for (std::uint32_t x = 0; x < qn; ++x) {
            HeisElem t = red_.tau(x << (h.n() * h.field().m()));
            for (const auto& z : all_witt(h.field()))
                f[h.index(red_.mul(red_.mul(t, {0, z}), {r, zero}))] = psi_tr(z);
        }
        basis_.push_back(std::move(f));
    }
}

bool ReducedModel::contains(const HFun& f) const
{
    const Heis& h = red_.shape();
    std::uint32_t qn = static_cast<std::uint32_t>(ipow_sat(h.q(), h.n()));
    for (std::uint32_t x = 0; x < qn; ++x) {
        HeisElem t = red_.tau(x << (h.n() * h.field().m()));
        for (const auto& z : all_witt(h.field())) {
            HeisElem tz = red_.mul(t, {0, z});
            CycInt c = psi_tr(z);
            for (std::uint32_t k = 0; k < h.size(); ++k)
                if (!(f[h.index(red_.mul(tz, h.elem(k)))] == c * f[k]))
                    return false;
        }
    }
    return true;
}

std::vector<CycInt> ReducedModel::coords(const HFun& f) const
{
    const Heis& h = red_.shape();
    std::vector<CycInt> c;
    for (std::uint32_t r : reps_)
        c.push_back(f[h.index({r, Witt2::zero(h.field())})]);
    return c;
}

CycMatrix ReducedModel::rho(const HeisElem& x) const
{
    const Heis& h = red_.shape();
    CycMatrix m(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
        std::uint32_t k = h.index(red_.mul({reps_[i], Witt2::zero(h.field())}, x));
        for (int j = 0; j < dim(); ++j)
            m(i, j) = basis_[j][k];
    }
    return m;
}

// --- reduction ---

namespace {

bool tau_checks(const ReducedHeis& red)
{
    const Heis& h = red.shape();
    const Field& f = h.field();
    int n = h.n();
    check_guard(ipow_sat(h.q(), 4 * n), 1 << 20, "tau lifts");
    auto ring = all_witt(f);
    std::uint64_t lifts = ipow_sat(h.q() * h.q(), 2 * n);
    for (std::uint64_t t = 0; t < lifts; ++t) {
        RVector a, b;
        std::uint64_t s = t;
        for (int i = 0; i < 2 * n; ++i) {
            (i < n ? a : b).push_back(ring[s % ring.size()]);
            s /= ring.size();
        }
        std::vector<std::uint32_t> bc(2 * n, 0);
        for (int i = 0; i < n; ++i)
            bc[n + i] = b[i].a0();
        if (!(red.delta(a, b) == red.tau(h.pack(bc))))
            return false;
    }
    std::uint32_t qn = static_cast<std::uint32_t>(ipow_sat(h.q(), n));
    int shift = n * f.m();
    for (std::uint32_t x = 0; x < qn; ++x)
        for (std::uint32_t y = 0; y < qn; ++y)
            if (!(red.mul(red.tau(x << shift), red.tau(y << shift)) == red.tau((x ^ y) << shift)))
                return false;
    return true;
}

struct Theta {
    std::vector<Witt2> shift;
    EnhLagrangian lagrangian;
};

std::optional<Theta> find_theta(const Heis& h, const ReducedHeis& red)
{
    const Field& f = h.field();
    int n = h.n();
    std::uint32_t vs = h.vsize();
    // d = c - beta must be the coboundary of the shift
    std::vector<Witt2> d;
    d.reserve(static_cast<std::size_t>(vs) * vs);
    for (std::uint32_t x = 0; x < vs; ++x)
        for (std::uint32_t y = 0; y < vs; ++y)
            d.push_back(red.cocycle(x, y) - h.beta(x, y));
    auto dd = [&](std::uint32_t x, std::uint32_t y) { return d[static_cast<std::size_t>(x) * vs + y]; };

    std::vector<std::uint32_t> basis;
    for (int i = 0; i < h.dim(); ++i)
        for (int t = 0; t < f.m(); ++t)
            basis.push_back((1u << t) << (i * f.m()));
    for (std::uint32_t b : basis)
        if (!dd(b, b).in_2R())
            return std::nullopt;
    std::uint64_t choices = ipow_sat(h.q(), static_cast<int>(basis.size()));
    check_guard(choices * vs * vs, 1ull << 28, "theta search");

    KMatrix lb(f, n, 2 * n);
    for (int i = 0; i < n; ++i)
        lb.at(i, n + i) = 1;
    std::uint32_t qn = static_cast<std::uint32_t>(ipow_sat(h.q(), n));
    int bshift = n * f.m();

    for (std::uint64_t c = 0; c < choices; ++c) {
        std::vector<Witt2> s(vs, Witt2::zero(f));
        std::vector<std::uint32_t> span{0};
        std::uint64_t digits = c;
        for (std::uint32_t b : basis) {
            Witt2 sb(f, f.sqrt(dd(b, b).a1()), static_cast<std::uint32_t>(digits % h.q()));
            digits /= h.q();
            std::size_t size = span.size();
            for (std::size_t i = 0; i < size; ++i) {
                std::uint32_t v = span[i];
                s[v ^ b] = s[v] + sb - dd(v, b);
                span.push_back(v ^ b);
            }
        }
        bool ok = true;
        for (std::uint32_t x = 0; x < vs && ok; ++x)
            for (std::uint32_t y = 0; y < vs; ++y)
                if (!(dd(x, y) == s[x] + s[y] - s[x ^ y])) {
                    ok = false;
                    break;
                }
        if (!ok)
            continue;
        std::vector<Witt2> alpha;
        for (int i = 0; i < n; ++i) {
            std::uint32_t v = h.basis_vector(n + i);
            alpha.push_back(red.tau(v).z + s[v]);
        }
        try {
            EnhLagrangian l(h, lb, alpha);
            for (std::uint32_t x = 0; x < qn && ok; ++x) {
                std::uint32_t v = x << bshift;
                ok = l.alpha(v) == red.tau(v).z + s[v];
            }
            if (ok)
                return Theta{s, l};
        } catch (const std::invalid_argument&) {
        }
    }
    return std::nullopt;
}

} // namespace

Reduction reduce_to_heisenberg(const Heis& h, const NChain& chain)
{
    const LatticeModel& lm = chain.model();
    if (&h.field() != &lm.field() || h.n() != lm.n())
        throw std::invalid_argument("Heisenberg group does not match the chain");
    ReducedHeis red(chain);
    Reduction rep;
    rep.tau_ok = tau_checks(red);

    auto theta = find_theta(h, red);
    if (!theta)
        throw std::logic_error("no isomorphism of H(N^perp/N) onto H(V) fixes tau");
    rep.shift = theta->shift;
    rep.lagrangian = theta->lagrangian;

    ReducedModel rm(red);
    Model hm(h, *rep.lagrangian);
    rep.model_dim = rm.dim();
    int d = rm.dim();

    // delta functions of H^N in adapted coordinates restricted to H(N^perp/N)
    const Field& f = h.field();
    int n = h.n();
    std::vector<std::uint32_t> s0;
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(ipow_sat(h.q(), n)); ++a)
        s0.push_back(a);
    std::vector<std::uint32_t> phi(h.vsize());
    for (std::uint32_t x = 0; x < h.vsize(); ++x)
        phi[x] = chain.phi_adapted(x);
    auto support = support_of(h, phi, s0);
    rep.restriction_ok = support == rm.reps() && hm.dim() == d;
    for (std::size_t j = 0; j < support.size() && rep.restriction_ok; ++j) {
        HFun g(h.size());
        for (std::uint32_t k = 0; k < h.size(); ++k) {
            HeisElem e = h.elem(k);
            if ((e.v & (support.size() - 1)) != support[j])
                continue;
            std::vector<std::uint32_t> bc(2 * n, 0);
            for (int i = 0; i < n; ++i)
                bc[n + i] = h.coord(e.v, n + i);
            Witt2 z = e.z + Witt2::twice(Gf2m(f, chain.phi_adapted(h.pack(bc)))) +
                      dot(f, a_part(h, e.v), b_part(h, e.v));
            g[k] = psi_tr(z);
        }
        std::vector<CycInt> unit(d, CycInt(0));
        unit[j] = CycInt(1);
        rep.restriction_ok = rm.contains(g) && rm.coords(g) == unit;
    }

    // T: F -> F o theta^{-1}
    CycMatrix t(d, d);
    auto to_red = [&](const HeisElem& x) { return HeisElem{x.v, x.z - rep.shift[x.v]}; };
    bool inside = true;
    for (int j = 0; j < d; ++j) {
        HFun g(h.size());
        for (std::uint32_t k = 0; k < h.size(); ++k)
            g[k] = rm.basis_function(j)[h.index(to_red(h.elem(k)))];
        inside = inside && hm.contains(g);
        auto c = hm.coords(g);
        for (int i = 0; i < d; ++i)
            t(i, j) = c[i];
    }
    auto gens = h.generators();
    rep.equivariant = inside && cyc_rank(t) == d;
    CycMatrix sys(static_cast<int>(gens.size()) * d * d, d * d);
    int row = 0;
    for (const auto& g : gens) {
        CycMatrix a = hm.rho(g), b = rm.rho(to_red(g));
        if (!(a * t == t * b))
            rep.equivariant = false;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j, ++row)
                for (int k = 0; k < d; ++k) {
                    sys(row, k * d + j) += a(i, k);
                    sys(row, i * d + k) -= b(k, j);
                }
    }
    CycMatrix ker = cyc_kernel(sys);
    rep.solution_dim = ker.rows();
    if (rep.solution_dim == 1) {
        std::vector<CycInt> flat, sol;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                flat.push_back(t(i, j));
                sol.push_back(ker(0, i * d + j));
            }
        rep.solution_matches = proportional(flat, sol).has_value();
    }
    return rep;
}

bool splitting_push(const ReducedHeis& red, int samples, std::uint64_t seed)
{
    const Heis& h = red.shape();
    const Field& f = h.field();
    auto sigma = [&](std::uint32_t v) {
        std::uint32_t s = 0;
        for (int i = 0; i < h.n(); ++i)
            s ^= f.mul(h.coord(v, i), h.coord(v, h.n() + i));
        return s;
    };
    auto check = [&](std::uint32_t x, std::uint32_t y) {
        return red.cocycle(x, y).a0() == (sigma(x ^ y) ^ sigma(x) ^ sigma(y));
    };
    if (samples > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint32_t> pick(0, h.vsize() - 1);
        for (int t = 0; t < samples; ++t) {
            std::uint32_t x = pick(rng);
            std::uint32_t y = pick(rng);
            if (!check(x, y))
                return false;
        }
        return true;
    }
    for (std::uint32_t x = 0; x < h.vsize(); ++x)
        for (std::uint32_t y = 0; y < h.vsize(); ++y)
            if (!check(x, y))
                return false;
    return true;
}

LemmaReport lemma_report(const LatticeModel& lm)
{
    const Field& f = lm.field();
    int n = lm.n();
    LemmaReport rep;
    rep.arf = lm.arf_class();
    auto chains = vanishing_lagrangians(lm);
    rep.chains = static_cast<int>(chains.size());
    rep.dim_m = fixed_space(lm, KMatrix::identity(f, 2 * n)).dim;
    rep.dim_2m = fixed_space(lm, KMatrix(f, 0, 2 * n)).dim;
    bool ok = rep.dim_m == 0 && rep.dim_2m == static_cast<int>(ipow_sat(f.order(), 2 * n));
    for (const auto& s : chains) {
        int d = fixed_space(lm, s).dim;
        rep.dim_n = d;
        ok = ok && d == static_cast<int>(ipow_sat(f.order(), n)) && fixed_space_lemma(lm, s);
    }
    rep.lemma_ok = ok;
    return rep;
}

} // namespace weil2
