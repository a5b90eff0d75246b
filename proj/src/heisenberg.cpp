#include "weil2/heisenberg.hpp"

#include "weil2/guard.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace weil2 {

namespace {

RMatrix default_beta(const Field& f, int n)
{
    RMatrix b(f, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        b(i, n + i) = Witt2::one(f);
    return b;
}

Witt2 teich_sq(const Field& f, std::uint32_t c) { return Witt2(f, f.sqr(c), 0); }

} // namespace

Heis::Heis(const Field& f, int n) : Heis(f, n, default_beta(f, n)) {}

Heis::Heis(const Field& f, int n, const RMatrix& beta_tilde)
    : f_(&f), n_(n), vsize_(0), beta_tilde_(beta_tilde), space_(f, n), bk_(f, 2 * n, 2 * n)
{
    if (beta_tilde.rows() != 2 * n || beta_tilde.cols() != 2 * n)
        throw std::invalid_argument("beta~ has the wrong shape");
    if (!(beta_tilde - beta_tilde.transpose() == standard_omega(f, n)))
        throw std::invalid_argument("beta~ - beta~^T must equal the standard form");
    if (2 * n * f.m() > 24)
        throw SizeGuardError("Heis: packed vectors exceed 24 bits");
    vsize_ = static_cast<std::uint32_t>(ipow_sat(f.order(), 2 * n));
    check_guard(size(), std::uint64_t(1) << 20, "Heis");
    bk_ = reduce_mod2(beta_tilde);
    if (vsize_ <= 256) {
        beta_table_.resize(static_cast<std::size_t>(vsize_) * vsize_);
        for (std::uint32_t x = 0; x < vsize_; ++x)
            for (std::uint32_t y = 0; y < vsize_; ++y) {
                std::uint32_t s = 0;
                for (int i = 0; i < 2 * n; ++i) {
                    std::uint32_t xi = coord(x, i);
                    if (!xi)
                        continue;
                    for (int j = 0; j < 2 * n; ++j)
                        s ^= f.mul(xi, f.mul(bk_.at(i, j), coord(y, j)));
                }
                beta_table_[static_cast<std::size_t>(x) * vsize_ + y] = s;
            }
    }
}

std::uint32_t Heis::pack(const std::vector<std::uint32_t>& coords) const
{
    std::uint32_t v = 0;
    for (int i = 0; i < dim(); ++i)
        v |= coords[i] << (i * f_->m());
    return v;
}

std::vector<std::uint32_t> Heis::unpack(std::uint32_t v) const
{
    std::vector<std::uint32_t> c(dim());
    for (int i = 0; i < dim(); ++i)
        c[i] = coord(v, i);
    return c;
}

std::uint32_t Heis::scale(std::uint32_t a, std::uint32_t v) const
{
    std::uint32_t w = 0;
    for (int i = 0; i < dim(); ++i)
        w |= f_->mul(a, coord(v, i)) << (i * f_->m());
    return w;
}

std::uint32_t Heis::reduce(const RVector& x) const
{
    std::uint32_t v = 0;
    for (int i = 0; i < dim(); ++i)
        v |= x[i].a0() << (i * f_->m());
    return v;
}

RVector Heis::lift(std::uint32_t v) const
{
    RVector x;
    x.reserve(dim());
    for (int i = 0; i < dim(); ++i)
        x.emplace_back(*f_, coord(v, i), 0);
    return x;
}

std::uint32_t Heis::apply(const KMatrix& g, std::uint32_t v) const
{
    std::uint32_t w = 0;
    for (int i = 0; i < dim(); ++i) {
        std::uint32_t s = 0;
        for (int j = 0; j < dim(); ++j)
            s ^= f_->mul(g.at(i, j), coord(v, j));
        w |= s << (i * f_->m());
    }
    return w;
}

std::uint32_t Heis::beta_k(std::uint32_t x, std::uint32_t y) const
{
    if (!beta_table_.empty())
        return beta_table_[static_cast<std::size_t>(x) * vsize_ + y];
    std::uint32_t s = 0;
    for (int i = 0; i < dim(); ++i) {
        std::uint32_t xi = coord(x, i);
        if (!xi)
            continue;
        for (int j = 0; j < dim(); ++j)
            s ^= f_->mul(xi, f_->mul(bk_.at(i, j), coord(y, j)));
    }
    return s;
}

std::uint32_t Heis::omega_k(std::uint32_t x, std::uint32_t y) const { return beta_k(x, y) ^ beta_k(y, x); }

HeisElem Heis::mul(const HeisElem& a, const HeisElem& b) const { return {a.v ^ b.v, a.z + b.z + beta(a.v, b.v)}; }

HeisElem Heis::inv(const HeisElem& a) const { return {a.v, -a.z - beta(a.v, a.v)}; }

HeisElem Heis::elem(std::uint32_t idx) const
{
    std::uint32_t qq = q() * q();
    return {idx / qq, Witt2::from_index(*f_, idx % qq)};
}

std::vector<HeisElem> Heis::generators() const
{
    std::vector<HeisElem> g;
    for (int i = 0; i < dim(); ++i)
        for (int b = 0; b < f_->m(); ++b)
            g.push_back({(1u << b) << (i * f_->m()), Witt2::zero(*f_)});
    g.push_back(central(Witt2::one(*f_)));
    return g;
}

HFun right_translate(const Heis& h, const HFun& f, const HeisElem& g)
{
    HFun out(f.size());
    for (std::uint32_t k = 0; k < h.size(); ++k)
        out[k] = f[h.index(h.mul(h.elem(k), g))];
    return out;
}

// --- enhanced lagrangians ---

EnhLagrangian::EnhLagrangian(const Heis& h, const KMatrix& basis, const std::vector<Witt2>& alpha_on_basis)
    : h_(&h), basis_(basis), alpha_(h.vsize(), -1)
{
    const Field& f = h.field();
    int n = h.n();
    if (basis.rows() != n || basis.cols() != 2 * n || basis.rank() != n)
        throw std::invalid_argument("enhanced lagrangian needs n independent rows");
    if (static_cast<int>(alpha_on_basis.size()) != n)
        throw std::invalid_argument("one alpha value per basis row");
    std::vector<std::uint32_t> rows(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint32_t> c(2 * n);
        for (int j = 0; j < 2 * n; ++j)
            c[j] = basis.at(i, j);
        rows[i] = h.pack(c);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (h.omega_k(rows[i], rows[j]))
                throw std::invalid_argument("rows are not isotropic");
        if (alpha_on_basis[i].a0() != h.beta_k(rows[i], rows[i]))
            throw std::invalid_argument("alpha is inconsistent with beta on a basis row");
    }
    elements_ = {0};
    alpha_[0] = 0;
    for (int i = 0; i < n; ++i) {
        std::size_t cur = elements_.size();
        for (std::uint32_t c = 1; c < h.q(); ++c) {
            std::uint32_t cl = h.scale(c, rows[i]);
            Witt2 base = teich_sq(f, c) * alpha_on_basis[i];
            for (std::size_t e = 0; e < cur; ++e) {
                std::uint32_t x = elements_[e];
                Witt2 a = Witt2::from_index(f, alpha_[x]) + base + h.beta(x, cl);
                alpha_[x ^ cl] = static_cast<std::int32_t>(a.index());
                elements_.push_back(x ^ cl);
            }
        }
    }
    basis_ = basis.echelon();
    pivots_.clear();
    alpha_basis_.clear();
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint32_t> c(2 * n);
        int p = -1;
        for (int j = 0; j < 2 * n; ++j) {
            c[j] = basis_.at(i, j);
            if (p < 0 && c[j])
                p = j;
        }
        pivots_.push_back(p);
        alpha_basis_.push_back(alpha(h.pack(c)));
    }
}

EnhLagrangian EnhLagrangian::epsilon(const Heis& h, const Lagrangian& lt)
{
    std::vector<Witt2> a;
    for (int i = 0; i < lt.n(); ++i) {
        RVector r = lt.basis().row(i);
        a.push_back(bilinear(r, h.beta_tilde(), r));
    }
    return EnhLagrangian(h, reduce_mod2(lt.basis()), a);
}

Witt2 EnhLagrangian::alpha(std::uint32_t v) const
{
    if (alpha_[v] < 0)
        throw std::invalid_argument("vector is not in the lagrangian");
    return Witt2::from_index(h_->field(), static_cast<std::uint32_t>(alpha_[v]));
}

std::uint32_t EnhLagrangian::projection(std::uint32_t w) const
{
    std::uint32_t x = 0;
    int m = h_->field().m();
    for (int i = 0; i < h_->n(); ++i) {
        std::uint32_t c = h_->coord(w, pivots_[i]);
        if (!c)
            continue;
        std::uint32_t row = 0;
        for (int j = 0; j < h_->dim(); ++j)
            row |= basis_.at(i, j) << (j * m);
        x ^= h_->scale(c, row);
    }
    return x;
}

EnhLagrangian EnhLagrangian::apply(const AspElement& g) const
{
    const Heis& h = *h_;
    int n = h.n();
    KMatrix nb(h.field(), n, 2 * n);
    std::vector<Witt2> na;
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint32_t> c(2 * n);
        for (int j = 0; j < 2 * n; ++j)
            c[j] = basis_.at(i, j);
        std::uint32_t r = h.pack(c);
        std::uint32_t gr = g.apply_v(r);
        for (int j = 0; j < 2 * n; ++j)
            nb.at(i, j) = h.coord(gr, j);
        na.push_back(alpha(r) + g.alpha(r));
    }
    return EnhLagrangian(h, nb, na);
}

bool EnhLagrangian::is_valid() const
{
    const Heis& h = *h_;
    const Field& f = h.field();
    for (std::uint32_t x : elements_) {
        for (std::uint32_t y : elements_)
            if (!(alpha(x ^ y) == alpha(x) + alpha(y) + h.beta(x, y)))
                return false;
        for (std::uint32_t c = 0; c < h.q(); ++c)
            if (!(alpha(h.scale(c, x)) == teich_sq(f, c) * alpha(x)))
                return false;
    }
    return true;
}

bool EnhLagrangian::operator==(const EnhLagrangian& o) const
{
    return basis_ == o.basis_ && alpha_basis_ == o.alpha_basis_;
}

std::vector<EnhLagrangian> all_enhancements(const Heis& h, const KMatrix& l)
{
    KMatrix b = l.echelon();
    int n = h.n();
    std::vector<std::uint32_t> d(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint32_t> c(2 * n);
        for (int j = 0; j < 2 * n; ++j)
            c[j] = b.at(i, j);
        std::uint32_t r = h.pack(c);
        d[i] = h.beta_k(r, r);
    }
    std::vector<EnhLagrangian> out;
    std::uint64_t total = ipow_sat(h.q(), n);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<Witt2> a;
        std::uint64_t s = t;
        for (int i = 0; i < n; ++i) {
            a.emplace_back(h.field(), d[i], static_cast<std::uint32_t>(s % h.q()));
            s /= h.q();
        }
        out.emplace_back(h, b, a);
    }
    return out;
}

std::vector<KMatrix> enumerate_k_lagrangians(const Heis& h)
{
    int n = h.n();
    std::uint32_t q = h.q();
    check_guard(ipow_sat(q, n * (n + 1) / 2) << n, 1 << 16, "enumerate_k_lagrangians");
    std::vector<KMatrix> out;
    std::vector<int> piv(n);
    std::function<void(int, int)> choose = [&](int i, int start) {
        if (i == n) {
            std::vector<bool> is_piv(2 * n, false);
            for (int p : piv)
                is_piv[p] = true;
            std::vector<std::pair<int, int>> free;
            for (int r = 0; r < n; ++r)
                for (int j = piv[r] + 1; j < 2 * n; ++j)
                    if (!is_piv[j])
                        free.emplace_back(r, j);
            std::uint64_t total = ipow_sat(q, static_cast<int>(free.size()));
            for (std::uint64_t t = 0; t < total; ++t) {
                KMatrix k(h.field(), n, 2 * n);
                for (int r = 0; r < n; ++r)
                    k.at(r, piv[r]) = 1;
                std::uint64_t s = t;
                for (auto [r, j] : free) {
                    k.at(r, j) = static_cast<std::uint32_t>(s % q);
                    s /= q;
                }
                std::vector<std::uint32_t> rows(n);
                for (int r = 0; r < n; ++r) {
                    std::vector<std::uint32_t> c(2 * n);
                    for (int j = 0; j < 2 * n; ++j)
                        c[j] = k.at(r, j);
                    rows[r] = h.pack(c);
                }
                bool iso = true;
                for (int a = 0; a < n && iso; ++a)
                    for (int b = a + 1; b < n; ++b)
                        if (h.omega_k(rows[a], rows[b])) {
                            iso = false;
                            break;
                        }
                if (iso)
                    out.push_back(k);
            }
            return;
        }
        for (int p = start; p < 2 * n; ++p) {
            piv[i] = p;
            choose(i + 1, p + 1);
        }
    };
    choose(0, 0);
    return out;
}

std::vector<EnhLagrangian> enumerate_enhanced(const Heis& h)
{
    std::vector<EnhLagrangian> out;
    for (const auto& l : enumerate_k_lagrangians(h))
        for (auto& e : all_enhancements(h, l))
            out.push_back(std::move(e));
    return out;
}

// --- affine symplectic group ---

AspElement::AspElement(const Heis& h, const KMatrix& g, std::vector<Witt2> alpha)
    : h_(&h), g_(g), alpha_(std::move(alpha)), img_(h.vsize())
{
    if (g.rows() != h.dim() || g.cols() != h.dim() || alpha_.size() != h.vsize())
        throw std::invalid_argument("ASp element has the wrong shape");
    for (std::uint32_t v = 0; v < h.vsize(); ++v)
        img_[v] = h.apply(g, v);
}

AspElement AspElement::identity(const Heis& h)
{
    return AspElement(h, KMatrix::identity(h.field(), h.dim()),
                      std::vector<Witt2>(h.vsize(), Witt2::zero(h.field())));
}

KMatrix symplectic_mod2(const RMatrix& gt) { return reduce_mod2(gt); }

AspElement AspElement::xi(const Heis& h, const RMatrix& gt)
{
    if (!is_symplectic(gt))
        throw std::invalid_argument("xi needs a symplectic matrix");
    std::vector<Witt2> a;
    a.reserve(h.vsize());
    for (std::uint32_t v = 0; v < h.vsize(); ++v) {
        RVector x = h.lift(v);
        RVector gx = mat_vec(gt, x);
        a.push_back(bilinear(gx, h.beta_tilde(), gx) - bilinear(x, h.beta_tilde(), x));
    }
    return AspElement(h, reduce_mod2(gt), std::move(a));
}

AspElement AspElement::from_basis(const Heis& h, const KMatrix& g, const std::vector<Witt2>& alpha_on_basis)
{
    const Field& f = h.field();
    int d = h.dim();
    if (static_cast<int>(alpha_on_basis.size()) != d)
        throw std::invalid_argument("one alpha value per basis vector");
    std::vector<std::uint32_t> ge(d);
    for (int i = 0; i < d; ++i) {
        std::uint32_t e = h.basis_vector(i);
        ge[i] = h.apply(g, e);
        if (alpha_on_basis[i].a0() != (h.beta_k(ge[i], ge[i]) ^ h.beta_k(e, e)))
            throw std::invalid_argument("alpha is inconsistent on a basis vector");
    }
    std::vector<Witt2> a(h.vsize(), Witt2::zero(f));
    std::vector<std::uint32_t> done{0};
    for (int i = 0; i < d; ++i) {
        std::size_t cur = done.size();
        for (std::uint32_t c = 1; c < h.q(); ++c) {
            std::uint32_t ce = h.scale(c, h.basis_vector(i));
            std::uint32_t gce = h.scale(c, ge[i]);
            Witt2 base = teich_sq(f, c) * alpha_on_basis[i];
            for (std::size_t k = 0; k < cur; ++k) {
                std::uint32_t x = done[k];
                std::uint32_t gx = h.apply(g, x);
                a[x ^ ce] = a[x] + base + h.beta(gx, gce) - h.beta(x, ce);
                done.push_back(x ^ ce);
            }
        }
    }
    return AspElement(h, g, std::move(a));
}

AspElement AspElement::operator*(const AspElement& o) const
{
    std::vector<Witt2> a;
    a.reserve(alpha_.size());
    for (std::uint32_t v = 0; v < h_->vsize(); ++v)
        a.push_back(alpha_[o.img_[v]] + o.alpha_[v]);
    return AspElement(*h_, g_ * o.g_, std::move(a));
}

AspElement AspElement::inverse() const
{
    const Heis& h = *h_;
    std::vector<std::uint32_t> pre(h.vsize(), UINT32_MAX);
    for (std::uint32_t v = 0; v < h.vsize(); ++v)
        pre[img_[v]] = v;
    KMatrix gi(h.field(), h.dim(), h.dim());
    for (int j = 0; j < h.dim(); ++j) {
        std::uint32_t c = pre[h.basis_vector(j)];
        if (c == UINT32_MAX)
            throw std::invalid_argument("ASp element is not invertible");
        for (int i = 0; i < h.dim(); ++i)
            gi.at(i, j) = h.coord(c, i);
    }
    std::vector<Witt2> a;
    a.reserve(h.vsize());
    for (std::uint32_t v = 0; v < h.vsize(); ++v)
        a.push_back(-alpha_[pre[v]]);
    return AspElement(h, gi, std::move(a));
}

bool AspElement::is_valid() const
{
    const Heis& h = *h_;
    const Field& f = h.field();
    std::vector<bool> hit(h.vsize(), false);
    for (std::uint32_t v = 0; v < h.vsize(); ++v)
        hit[img_[v]] = true;
    for (bool b : hit)
        if (!b)
            return false;
    for (std::uint32_t x = 0; x < h.vsize(); ++x) {
        for (std::uint32_t y = 0; y < h.vsize(); ++y) {
            if (h.omega_k(img_[x], img_[y]) != h.omega_k(x, y))
                return false;
            if (!(alpha_[x ^ y] == alpha_[x] + alpha_[y] + h.beta(img_[x], img_[y]) - h.beta(x, y)))
                return false;
        }
        for (std::uint32_t c = 0; c < h.q(); ++c)
            if (!(alpha_[h.scale(c, x)] == teich_sq(f, c) * alpha_[x]))
                return false;
    }
    return true;
}

std::vector<AspElement> enumerate_asp(const Heis& h)
{
    int d = h.dim();
    std::uint32_t q = h.q();
    check_guard(ipow_sat(q, d * d), 1 << 16, "enumerate_asp");
    std::uint64_t total = ipow_sat(q, d * d);
    std::vector<AspElement> out;
    for (std::uint64_t t = 0; t < total; ++t) {
        KMatrix g(h.field(), d, d);
        std::uint64_t s = t;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                g.at(i, j) = static_cast<std::uint32_t>(s % q);
                s /= q;
            }
        std::vector<std::uint32_t> ge(d);
        for (int i = 0; i < d; ++i)
            ge[i] = h.apply(g, h.basis_vector(i));
        bool symp = true;
        for (int i = 0; i < d && symp; ++i)
            for (int j = 0; j < d; ++j)
                if (h.omega_k(ge[i], ge[j]) != h.omega_k(h.basis_vector(i), h.basis_vector(j))) {
                    symp = false;
                    break;
                }
        if (!symp)
            continue;
        std::uint64_t na = ipow_sat(q, d);
        for (std::uint64_t a = 0; a < na; ++a) {
            std::vector<Witt2> vals;
            std::uint64_t r = a;
            for (int i = 0; i < d; ++i) {
                std::uint32_t e = h.basis_vector(i);
                vals.emplace_back(h.field(), h.beta_k(ge[i], ge[i]) ^ h.beta_k(e, e), static_cast<std::uint32_t>(r % q));
                r /= q;
            }
            out.push_back(AspElement::from_basis(h, g, vals));
        }
    }
    return out;
}

// --- models ---

Model::Model(const Heis& h, const EnhLagrangian& l) : h_(&h), l_(l), rep_index_(h.vsize(), -1)
{
    std::vector<bool> is_piv(h.dim(), false);
    for (int p : l.pivots())
        is_piv[p] = true;
    std::vector<int> comp;
    for (int j = 0; j < h.dim(); ++j)
        if (!is_piv[j])
            comp.push_back(j);
    std::uint64_t total = ipow_sat(h.q(), h.n());
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint32_t v = 0;
        std::uint64_t s = t;
        for (int j : comp) {
            v |= static_cast<std::uint32_t>(s % h.q()) << (j * h.field().m());
            s /= h.q();
        }
        rep_index_[v] = static_cast<std::int32_t>(reps_.size());
        reps_.push_back(v);
    }
}

CycInt Model::eval_basis(int j, const HeisElem& y) const
{
    std::uint32_t x = l_.projection(y.v);
    if ((y.v ^ x) != reps_[j])
        return CycInt(0);
    return psi_tr(y.z - l_.alpha(x) - h_->beta(x, reps_[j]));
}

HFun Model::basis_function(int j) const
{
    HFun f(h_->size());
    for (std::uint32_t k = 0; k < h_->size(); ++k)
        f[k] = eval_basis(j, h_->elem(k));
    return f;
}

std::vector<CycInt> Model::coords(const HFun& f) const
{
    std::vector<CycInt> c;
    for (int j = 0; j < dim(); ++j)
        c.push_back(f[h_->index(rep(j))]);
    return c;
}

HFun Model::from_coords(const std::vector<CycInt>& c) const
{
    HFun f(h_->size());
    for (std::uint32_t k = 0; k < h_->size(); ++k) {
        HeisElem y = h_->elem(k);
        std::uint32_t x = l_.projection(y.v);
        int j = rep_index_[y.v ^ x];
        f[k] = c[j] * psi_tr(y.z - l_.alpha(x) - h_->beta(x, reps_[j]));
    }
    return f;
}

bool Model::contains(const HFun& f) const { return f.size() == h_->size() && from_coords(coords(f)) == f; }

CycMatrix Model::rho(const HeisElem& x) const
{
    CycMatrix m(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
        HeisElem hx = h_->mul(rep(i), x);
        for (int j = 0; j < dim(); ++j)
            m(i, j) = eval_basis(j, hx);
    }
    return m;
}

int commutant_dim(const Model& m)
{
    int d = m.dim();
    auto gens = m.heis().generators();
    CycMatrix sys(static_cast<int>(gens.size()) * d * d, d * d);
    int row = 0;
    for (const auto& g : gens) {
        CycMatrix r = m.rho(g);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j, ++row)
                for (int k = 0; k < d; ++k) {
                    sys(row, i * d + k) += r(k, j);
                    sys(row, k * d + j) -= r(i, k);
                }
    }
    return d * d - cyc_rank(sys);
}

CycMatrix asp_transport(const Model& from, const Model& to, const AspElement& g)
{
    if (!(from.lagrangian().apply(g) == to.lagrangian()))
        throw std::invalid_argument("target model is not over g.L");
    AspElement gi = g.inverse();
    CycMatrix m(to.dim(), from.dim());
    for (int i = 0; i < to.dim(); ++i) {
        HeisElem y = gi.act(to.rep(i));
        for (int j = 0; j < from.dim(); ++j)
            m(i, j) = from.eval_basis(j, y);
    }
    return m;
}

} // namespace weil2
