#include "weil2/qforms.hpp"

#include "weil2/guard.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

namespace weil2 {

std::uint32_t pack_k(const Field& f, const std::vector<std::uint32_t>& x)
{
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        v |= x[i] << (i * f.m());
    return v;
}

std::uint32_t coord_k(const Field& f, std::uint32_t x, int i) { return (x >> (i * f.m())) & (f.order() - 1); }

namespace {

std::uint32_t scale_k(const Field& f, int n, std::uint32_t a, std::uint32_t v)
{
    std::uint32_t w = 0;
    for (int i = 0; i < n; ++i)
        w |= f.mul(a, coord_k(f, v, i)) << (i * f.m());
    return w;
}

std::uint32_t kform(const KMatrix& m, std::uint32_t x, std::uint32_t y)
{
    const Field& f = m.field();
    std::uint32_t s = 0;
    for (int i = 0; i < m.rows(); ++i) {
        std::uint32_t xi = coord_k(f, x, i);
        if (!xi)
            continue;
        for (int j = 0; j < m.cols(); ++j)
            s ^= f.mul(xi, f.mul(m.at(i, j), coord_k(f, y, j)));
    }
    return s;
}

std::uint32_t row_packed(const KMatrix& m, int r)
{
    std::uint32_t v = 0;
    for (int j = 0; j < m.cols(); ++j)
        v |= m.at(r, j) << (j * m.field().m());
    return v;
}

KMatrix rows_to_matrix(const Field& f, int n, const std::vector<std::uint32_t>& rows)
{
    KMatrix k(f, static_cast<int>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j < n; ++j)
            k.at(static_cast<int>(r), j) = coord_k(f, rows[r], j);
    return k;
}

// all vectors in the span of `rows`
std::vector<std::uint32_t> span_of(const Field& f, int n, const std::vector<std::uint32_t>& rows)
{
    std::vector<std::uint32_t> out{0};
    for (std::uint32_t r : rows) {
        std::size_t cur = out.size();
        for (std::uint32_t c = 1; c < f.order(); ++c) {
            std::uint32_t cr = scale_k(f, n, c, r);
            for (std::size_t i = 0; i < cur; ++i)
                out.push_back(out[i] ^ cr);
        }
    }
    return out;
}

} // namespace

QFormR::QFormR(const RMatrix& b) : b_(b)
{
    if (b.rows() != b.cols() || !b.is_symmetric())
        throw std::invalid_argument("quadratic form needs a symmetric matrix");
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            if (i != j)
                b_(i, j) = Witt2(b.field(), b(i, j).a0(), 0);
}

QFormR QFormR::zero(const Field& f, int n) { return QFormR(RMatrix(f, n, n)); }

QFormR QFormR::diagonal(const Field& f, const std::vector<Witt2>& d)
{
    int n = static_cast<int>(d.size());
    RMatrix b(f, n, n);
    for (int i = 0; i < n; ++i)
        b(i, i) = d[i];
    return QFormR(b);
}

QFormR QFormR::normal_form(const Field& f, int n, std::uint32_t eps)
{
    if (n < 2 || n % 2)
        throw std::invalid_argument("normal form needs even n >= 2");
    RMatrix b(f, n, n);
    b(0, 0) = Witt2::one(f);
    b(0, 1) = b(1, 0) = Witt2::one(f);
    b(1, 1) = Witt2(f, 0, eps);
    for (int i = 2; i < n; i += 2)
        b(i, i + 1) = b(i + 1, i) = Witt2::one(f);
    return QFormR(b);
}

std::uint32_t QFormR::vsize() const { return static_cast<std::uint32_t>(ipow_sat(field().order(), n())); }

Witt2 QFormR::eval(std::uint32_t x) const
{
    const Field& f = field();
    Witt2 s = Witt2::zero(f);
    std::uint32_t cross = 0;
    for (int i = 0; i < n(); ++i) {
        std::uint32_t xi = coord_k(f, x, i);
        if (!xi)
            continue;
        std::uint32_t c = f.sqr(xi);
        const Witt2& d = b_(i, i);
        s += Witt2(f, f.mul(d.a0(), c), f.mul(d.a1(), f.sqr(c)));
        for (int j = i + 1; j < n(); ++j)
            cross ^= f.mul(b_(i, j).a0(), f.mul(xi, coord_k(f, x, j)));
    }
    return s + Witt2(f, 0, f.sqr(cross));
}

Witt2 QFormR::eval(const std::vector<std::uint32_t>& x) const { return eval(pack_k(field(), x)); }

QFormR QFormR::transformed(const RMatrix& g) const { return QFormR(g.transpose() * b_ * g); }

QFormR QFormR::direct_sum(const QFormR& o) const
{
    int a = n(), b = o.n();
    RMatrix m(field(), a + b, a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j)
            m(i, j) = b_(i, j);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j)
            m(a + i, a + j) = o.b_(i, j);
    return QFormR(m);
}

std::uint32_t qform_index(const QFormR& q)
{
    const Field& f = q.field();
    std::uint32_t qq = f.order() * f.order();
    std::uint32_t idx = 0, radix = 1;
    for (int i = 0; i < q.n(); ++i) {
        idx += q.matrix()(i, i).index() * radix;
        radix *= qq;
    }
    for (int i = 0; i < q.n(); ++i)
        for (int j = i + 1; j < q.n(); ++j) {
            idx += q.matrix()(i, j).a0() * radix;
            radix *= f.order();
        }
    return idx;
}

QFormR qform_from_index(const Field& f, int n, std::uint32_t idx)
{
    std::uint32_t qq = f.order() * f.order();
    RMatrix b(f, n, n);
    for (int i = 0; i < n; ++i) {
        b(i, i) = Witt2::from_index(f, idx % qq);
        idx /= qq;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            b(i, j) = b(j, i) = Witt2(f, idx % f.order(), 0);
            idx /= f.order();
        }
    return QFormR(b);
}

std::vector<QFormR> enumerate_qforms(const Field& f, int n)
{
    std::uint64_t total = ipow_sat(f.order(), 2 * n + n * (n - 1) / 2);
    check_guard(total, 1 << 16, "enumerate_qforms");
    std::vector<QFormR> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i)
        out.push_back(qform_from_index(f, n, static_cast<std::uint32_t>(i)));
    return out;
}

bool is_nondegenerate(const QFormR& q) { return q.polar().rank() == q.n(); }

bool in_open_orbit(const QFormR& q)
{
    if (!is_nondegenerate(q))
        return false;
    for (int i = 0; i < q.n(); ++i)
        if (q.matrix()(i, i).a0() != 0)
            return true;
    return false;
}

Witt2 QaForm::eval(const Field& f, std::uint32_t x) const
{
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < ystar.size(); ++i)
        s ^= f.mul(ystar[i], coord_k(f, x, static_cast<int>(i)));
    return Witt2(f, 0, f.sqr(f.sqr(s)));
}

QFormR QaForm::to_qform(const Field& f) const
{
    std::vector<Witt2> d;
    for (std::uint32_t y : ystar)
        d.emplace_back(f, 0, f.sqr(f.sqr(y)));
    return QFormR::diagonal(f, d);
}

CycInt gauss_sum(const QFormR& q, int threads)
{
    std::uint32_t total = q.vsize();
    check_guard(total, 1 << 20, "gauss_sum");
    auto partial = [&q](std::uint32_t lo, std::uint32_t hi) {
        // counts per value of tr in Z/4
        std::int64_t c[4] = {0, 0, 0, 0};
        for (std::uint32_t x = lo; x < hi; ++x)
            ++c[witt_trace(q.eval(x)).value()];
        return CycInt(c[0] - c[2], c[1] - c[3]);
    };
    if (threads <= 1 || total < 4096)
        return partial(0, total);
    std::vector<CycInt> parts(threads);
    std::vector<std::thread> pool;
    std::uint32_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint32_t lo = std::min(total, t * chunk), hi = std::min(total, lo + chunk);
        pool.emplace_back([&, t, lo, hi] { parts[t] = partial(lo, hi); });
    }
    for (auto& th : pool)
        th.join();
    CycInt s(0);
    for (const auto& p : parts)
        s += p;
    return s;
}

CycInt gamma_one(const Field& f) { return gauss_sum(QFormR::diagonal(f, {Witt2::one(f)})); }

// --- Fourier transform over finite dual pairs ---

DualPair free_pair(const Field& f, int d)
{
    std::uint32_t qq = f.order() * f.order();
    std::uint32_t size = static_cast<std::uint32_t>(ipow_sat(qq, d));
    auto coords = [&f, d, qq](std::uint32_t idx) {
        RVector v;
        for (int i = 0; i < d; ++i) {
            v.push_back(Witt2::from_index(f, idx % qq));
            idx /= qq;
        }
        return v;
    };
    DualPair p;
    p.m_size = p.d_size = size;
    p.pair = [coords](std::uint32_t a, std::uint32_t b) { return dot(coords(a), coords(b)); };
    p.neg_m = [coords, qq, d](std::uint32_t a) {
        RVector v = coords(a);
        std::uint32_t idx = 0, radix = 1;
        for (int i = 0; i < d; ++i) {
            idx += (-v[i]).index() * radix;
            radix *= qq;
        }
        return idx;
    };
    return p;
}

DualPair qstar_pair(const Field& f, int n)
{
    std::uint32_t size = static_cast<std::uint32_t>(ipow_sat(f.order(), 2 * n + n * (n - 1) / 2));
    // Q^*(L) uses the same mixed radix: a_i in R, then e_ij in k
    DualPair p;
    p.m_size = p.d_size = size;
    p.pair = [&f, n](std::uint32_t a, std::uint32_t b) {
        std::uint32_t qq = f.order() * f.order();
        Witt2 s = Witt2::zero(f);
        for (int i = 0; i < n; ++i) {
            s += Witt2::from_index(f, a % qq) * Witt2::from_index(f, b % qq);
            a /= qq;
            b /= qq;
        }
        std::uint32_t cross = 0;
        for (int i = 0; i < n * (n - 1) / 2; ++i) {
            cross ^= f.mul(a % f.order(), b % f.order());
            a /= f.order();
            b /= f.order();
        }
        return s + Witt2(f, 0, f.sqr(cross));
    };
    p.neg_m = [&f, n](std::uint32_t a) {
        std::uint32_t qq = f.order() * f.order();
        std::uint32_t out = 0, radix = 1;
        for (int i = 0; i < n; ++i) {
            out += (-Witt2::from_index(f, a % qq)).index() * radix;
            a /= qq;
            radix *= qq;
        }
        return out + a * radix;
    };
    return p;
}

std::uint32_t pi_q(const Field& f, int n, std::uint32_t x)
{
    std::uint32_t qq = f.order() * f.order();
    std::uint32_t idx = 0, radix = 1;
    for (int i = 0; i < n; ++i) {
        idx += f.sqr(coord_k(f, x, i)) * radix;
        radix *= qq;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            idx += f.mul(coord_k(f, x, i), coord_k(f, x, j)) * radix;
            radix *= f.order();
        }
    return idx;
}

bool is_perfect(const DualPair& p)
{
    if (p.m_size != p.d_size)
        return false;
    for (std::uint32_t m = 1; m < p.m_size; ++m) {
        bool hit = false;
        for (std::uint32_t d = 0; d < p.d_size && !hit; ++d)
            hit = !p.pair(m, d).is_zero();
        if (!hit)
            return false;
    }
    for (std::uint32_t d = 1; d < p.d_size; ++d) {
        bool hit = false;
        for (std::uint32_t m = 0; m < p.m_size && !hit; ++m)
            hit = !p.pair(m, d).is_zero();
        if (!hit)
            return false;
    }
    return true;
}

std::vector<CycInt> fourier_w2(const DualPair& p, const std::vector<CycInt>& f, bool inverse_char)
{
    if (!is_perfect(p))
        throw std::invalid_argument("pairing is not perfect");
    std::vector<CycInt> out(p.d_size);
    for (std::uint32_t d = 0; d < p.d_size; ++d)
        for (std::uint32_t m = 0; m < p.m_size; ++m) {
            if (f[m].is_zero())
                continue;
            CycInt c = psi_tr(p.pair(m, d));
            out[d] += f[m] * (inverse_char ? c.conj() : c);
        }
    return out;
}

std::vector<CycInt> fourier_w2_dual(const DualPair& p, const std::vector<CycInt>& g, bool inverse_char)
{
    if (!is_perfect(p))
        throw std::invalid_argument("pairing is not perfect");
    std::vector<CycInt> out(p.m_size);
    for (std::uint32_t m = 0; m < p.m_size; ++m)
        for (std::uint32_t d = 0; d < p.d_size; ++d) {
            if (g[d].is_zero())
                continue;
            CycInt c = psi_tr(p.pair(m, d));
            out[m] += g[d] * (inverse_char ? c.conj() : c);
        }
    return out;
}

// --- invariants ---

Witt2 qform_det(const QFormR& q) { return det(q.matrix()); }

std::optional<std::uint32_t> discriminant(const QFormR& q)
{
    Witt2 d = qform_det(q);
    if (d.a0() == 0)
        return std::nullopt;
    const Field& f = q.field();
    std::uint32_t inv = f.inv(d.a0());
    return f.mul(d.a1(), f.sqr(inv));
}

Stratum stratum(const QFormR& q)
{
    const Field& f = q.field();
    Stratum s{0, true, std::nullopt, q.polar().kernel()};
    s.i = s.kernel.rows();
    for (int r = 0; r < s.kernel.rows(); ++r)
        if (!q.eval(row_packed(s.kernel, r)).is_zero())
            s.vanishes_on_kernel = false;
    if (s.vanishes_on_kernel) {
        // the kernel basis has an identity block at its pivot columns, so the
        // remaining coordinates span a complement
        std::vector<bool> piv(q.n(), false);
        KMatrix e = s.kernel.echelon();
        for (int r = 0; r < e.rows(); ++r)
            for (int j = 0; j < q.n(); ++j)
                if (e.at(r, j)) {
                    piv[j] = true;
                    break;
                }
        std::vector<int> keep;
        for (int j = 0; j < q.n(); ++j)
            if (!piv[j])
                keep.push_back(j);
        RMatrix b(f, static_cast<int>(keep.size()), static_cast<int>(keep.size()));
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t c = 0; c < keep.size(); ++c)
                b(static_cast<int>(a), static_cast<int>(c)) = q.matrix()(keep[a], keep[c]);
        s.induced = QFormR(b);
    }
    return s;
}

// --- k-valued quadratic forms ---

std::uint32_t KQuadForm::eval(std::uint32_t x) const
{
    const Field& f = field();
    std::uint32_t s = 0;
    for (int i = 0; i < dim(); ++i) {
        std::uint32_t xi = coord_k(f, x, i);
        if (!xi)
            continue;
        for (int j = i; j < dim(); ++j)
            s ^= f.mul(upper.at(i, j), f.mul(xi, coord_k(f, x, j)));
    }
    return s;
}

KMatrix KQuadForm::polar() const
{
    KMatrix p(field(), dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            if (i != j)
                p.at(i, j) = upper.at(i, j) ^ upper.at(j, i);
    return p;
}

KQuadForm restrict_to_2r(const QFormR& q, const KMatrix& sub)
{
    const Field& f = q.field();
    int d = sub.rows();
    KMatrix phi = q.polar();
    std::vector<std::uint32_t> rows(d);
    for (int a = 0; a < d; ++a)
        rows[a] = row_packed(sub, a);
    KQuadForm out{KMatrix(f, d, d)};
    for (int a = 0; a < d; ++a) {
        Witt2 v = q.eval(rows[a]);
        if (v.a0() != 0)
            throw std::invalid_argument("form is not 2R-valued on the subspace");
        out.upper.at(a, a) = f.sqrt(v.a1());
        for (int b = a + 1; b < d; ++b)
            out.upper.at(a, b) = kform(phi, rows[a], rows[b]);
    }
    return out;
}

int abs_trace(const Field& f, std::uint32_t a) { return static_cast<int>(f.trace(a)); }

namespace {

// hyperbolic pairs (e_i, f_i) for a non-degenerate alternating form on the
// span of `vecs` (packed in dimension n); throws if degenerate
std::vector<std::uint32_t> symplectic_pairs(const KMatrix& phi, std::vector<std::uint32_t> vecs)
{
    const Field& f = phi.field();
    int n = phi.rows();
    std::vector<std::uint32_t> out;
    vecs.erase(std::remove(vecs.begin(), vecs.end(), 0u), vecs.end());
    while (!vecs.empty()) {
        std::uint32_t e = vecs.front();
        std::size_t k = 1;
        while (k < vecs.size() && kform(phi, e, vecs[k]) == 0)
            ++k;
        if (k == vecs.size())
            throw std::invalid_argument("degenerate polar form");
        std::uint32_t fv = scale_k(f, n, f.inv(kform(phi, e, vecs[k])), vecs[k]);
        out.push_back(e);
        out.push_back(fv);
        std::vector<std::uint32_t> rest;
        for (std::size_t i = 1; i < vecs.size(); ++i) {
            if (i == k)
                continue;
            std::uint32_t v = vecs[i];
            // v + phi(v,f) e + phi(v,e) f is orthogonal to e and f
            std::uint32_t w = v ^ scale_k(f, n, kform(phi, v, fv), e) ^ scale_k(f, n, kform(phi, v, e), fv);
            if (w)
                rest.push_back(w);
        }
        // keep an independent set
        KMatrix m = rows_to_matrix(f, n, rest).echelon();
        vecs.clear();
        for (int r = 0; r < m.rows(); ++r)
            vecs.push_back(row_packed(m, r));
    }
    return out;
}

} // namespace

ArfResult arf(const KQuadForm& q)
{
    const Field& f = q.field();
    int d = q.dim();
    if (d % 2)
        throw std::invalid_argument("Arf invariant needs even dimension");
    std::vector<std::uint32_t> basis;
    for (int i = 0; i < d; ++i)
        basis.push_back(1u << (i * f.m()));
    ArfResult r{0, 0, symplectic_pairs(q.polar(), basis)};
    for (std::size_t i = 0; i < r.symplectic_basis.size(); i += 2)
        r.representative ^= f.mul(q.eval(r.symplectic_basis[i]), q.eval(r.symplectic_basis[i + 1]));
    r.cls = abs_trace(f, r.representative);
    return r;
}

std::uint64_t count_zeros(const KQuadForm& q)
{
    std::uint64_t total = ipow_sat(q.field().order(), q.dim());
    check_guard(total, 1 << 20, "count_zeros");
    std::uint64_t c = 0;
    for (std::uint32_t x = 0; x < total; ++x)
        c += q.eval(x) == 0;
    return c;
}

// --- Clifford algebra ---

namespace {

class Clifford {
public:
    explicit Clifford(const KQuadForm& q) : q_(q), f_(q.field()), d_(q.dim()), phi_(q.polar())
    {
        std::uint32_t size = 1u << d_;
        table_.assign(static_cast<std::size_t>(size) * size, {});
        for (std::uint32_t s = 0; s < size; ++s)
            for (std::uint32_t t = 0; t < size; ++t) {
                std::vector<int> w;
                for (int i = 0; i < d_; ++i)
                    if (s >> i & 1)
                        w.push_back(i);
                for (int i = 0; i < d_; ++i)
                    if (t >> i & 1)
                        w.push_back(i);
                std::vector<std::uint32_t> out(size, 0);
                reduce(w, 1, out);
                table_[s * size + t] = out;
            }
    }

    std::uint32_t size() const { return 1u << d_; }

    std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const
    {
        std::vector<std::uint32_t> out(size(), 0);
        for (std::uint32_t s = 0; s < size(); ++s) {
            if (!a[s])
                continue;
            for (std::uint32_t t = 0; t < size(); ++t) {
                if (!b[t])
                    continue;
                std::uint32_t c = f_.mul(a[s], b[t]);
                const auto& p = table_[s * size() + t];
                for (std::uint32_t u = 0; u < size(); ++u)
                    out[u] ^= f_.mul(c, p[u]);
            }
        }
        return out;
    }

    // degree-one element for a packed vector of E
    std::vector<std::uint32_t> vec(std::uint32_t x) const
    {
        std::vector<std::uint32_t> out(size(), 0);
        for (int i = 0; i < d_; ++i)
            out[1u << i] = coord_k(f_, x, i);
        return out;
    }

    std::vector<std::uint32_t> scalar(std::uint32_t c) const
    {
        std::vector<std::uint32_t> out(size(), 0);
        out[0] = c;
        return out;
    }

private:
    void reduce(std::vector<int> w, std::uint32_t coeff, std::vector<std::uint32_t>& out) const
    {
        if (!coeff)
            return;
        for (std::size_t p = 0; p + 1 < w.size(); ++p) {
            if (w[p] < w[p + 1])
                continue;
            std::vector<int> shorter(w);
            shorter.erase(shorter.begin() + static_cast<long>(p), shorter.begin() + static_cast<long>(p) + 2);
            if (w[p] == w[p + 1]) {
                reduce(shorter, f_.mul(coeff, q_.upper.at(w[p], w[p])), out);
                return;
            }
            // e_a e_b = e_b e_a + phi(a,b)
            std::uint32_t c = phi_.at(w[p], w[p + 1]);
            std::swap(w[p], w[p + 1]);
            reduce(w, coeff, out);
            reduce(shorter, f_.mul(coeff, c), out);
            return;
        }
        std::uint32_t mask = 0;
        for (int i : w)
            mask |= 1u << i;
        out[mask] ^= coeff;
    }

    const KQuadForm& q_;
    const Field& f_;
    int d_;
    KMatrix phi_;
    std::vector<std::vector<std::uint32_t>> table_;
};

std::vector<std::uint32_t> vadd(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] ^= b[i];
    return a;
}

} // namespace

std::vector<std::uint32_t> clifford_transport(const KQuadForm& q, const KMatrix& g, const std::vector<std::uint32_t>& elem)
{
    Clifford c(q);
    int d = q.dim();
    std::vector<std::vector<std::uint32_t>> img(d);
    for (int i = 0; i < d; ++i) {
        std::uint32_t col = 0;
        for (int r = 0; r < d; ++r)
            col |= g.at(r, i) << (r * q.field().m());
        img[i] = c.vec(col);
    }
    std::vector<std::uint32_t> out(c.size(), 0);
    for (std::uint32_t s = 0; s < c.size(); ++s) {
        if (!elem[s])
            continue;
        std::vector<std::uint32_t> p = c.scalar(elem[s]);
        for (int i = 0; i < d; ++i)
            if (s >> i & 1)
                p = c.mul(p, img[i]);
        out = vadd(out, p);
    }
    return out;
}

CliffordCenter clifford_center(const KQuadForm& q, bool enumerate_orthogonal)
{
    const Field& f = q.field();
    int d = q.dim();
    if (d > 6)
        throw SizeGuardError("clifford_center: dimension above 6");
    Clifford c(q);
    ArfResult a = arf(q);
    CliffordCenter out;

    // center of the even part: z with z g = g z for g = e_i e_j
    std::vector<std::uint32_t> even;
    for (std::uint32_t s = 0; s < c.size(); ++s)
        if (__builtin_popcount(s) % 2 == 0)
            even.push_back(s);
    std::vector<std::vector<std::uint32_t>> gens;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            std::vector<std::uint32_t> g(c.size(), 0);
            g[(1u << i) | (1u << j)] = 1;
            gens.push_back(g);
        }
    KMatrix sys(f, static_cast<int>(gens.size() * c.size()), static_cast<int>(even.size()));
    for (std::size_t col = 0; col < even.size(); ++col) {
        std::vector<std::uint32_t> z(c.size(), 0);
        z[even[col]] = 1;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            std::vector<std::uint32_t> comm = vadd(c.mul(z, gens[gi]), c.mul(gens[gi], z));
            for (std::uint32_t u = 0; u < c.size(); ++u)
                sys.at(static_cast<int>(gi * c.size() + u), static_cast<int>(col)) = comm[u];
        }
    }
    out.center_dim = static_cast<int>(even.size()) - sys.rank();

    std::vector<std::uint32_t> z(c.size(), 0);
    for (std::size_t i = 0; i < a.symplectic_basis.size(); i += 2)
        z = vadd(z, c.mul(c.vec(a.symplectic_basis[i]), c.vec(a.symplectic_basis[i + 1])));
    out.z = z;
    std::vector<std::uint32_t> zz = vadd(c.mul(z, z), z);
    out.z2_plus_z = zz[0];
    bool scalar = true;
    for (std::uint32_t u = 1; u < c.size(); ++u)
        scalar = scalar && zz[u] == 0;
    out.z2_consistent = scalar && zz[0] == a.representative;

    if (enumerate_orthogonal) {
        std::uint64_t total = ipow_sat(f.order(), d * d);
        check_guard(total, 1 << 16, "clifford_center O(Q)");
        std::uint64_t vs = ipow_sat(f.order(), d);
        std::vector<std::uint32_t> z1 = z;
        z1[0] ^= 1;
        for (std::uint64_t t = 0; t < total; ++t) {
            KMatrix g(f, d, d);
            std::uint64_t s = t;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    g.at(i, j) = static_cast<std::uint32_t>(s % f.order());
                    s /= f.order();
                }
            if (g.rank() != d)
                continue;
            bool orth = true;
            for (std::uint32_t x = 0; x < vs && orth; ++x) {
                std::uint32_t gx = 0;
                for (int i = 0; i < d; ++i) {
                    std::uint32_t v = 0;
                    for (int j = 0; j < d; ++j)
                        v ^= f.mul(g.at(i, j), coord_k(f, x, j));
                    gx |= v << (i * f.m());
                }
                orth = q.eval(gx) == q.eval(x);
            }
            if (!orth)
                continue;
            std::vector<std::uint32_t> gz = clifford_transport(q, g, z);
            if (gz == z)
                ++out.fixes;
            else if (gz == z1)
                ++out.swaps;
            else
                ++out.other;
        }
    }
    return out;
}

// --- normal forms and multiplicative lines ---

std::optional<NormalForm> normal_form_even(const QFormR& q)
{
    const Field& f = q.field();
    int n = q.n();
    if (n < 2 || n % 2)
        throw std::invalid_argument("normal form needs even n");
    if (!in_open_orbit(q))
        throw std::invalid_argument("form is not in the open orbit");
    KMatrix phi = q.polar();
    std::vector<std::uint32_t> ystar(n);
    for (int i = 0; i < n; ++i)
        ystar[i] = f.sqrt(phi.at(i, i));
    auto ystar_at = [&](std::uint32_t x) {
        std::uint32_t s = 0;
        for (int i = 0; i < n; ++i)
            s ^= f.mul(ystar[i], coord_k(f, x, i));
        return s;
    };
    // l2 with phi(l2, .) = y*
    auto sol = phi.solve(ystar);
    if (!sol)
        throw std::logic_error("polar form is not invertible");
    std::uint32_t l2 = pack_k(f, *sol);
    Witt2 ql2 = q.eval(l2);
    if (ql2.a0() != 0)
        return std::nullopt;
    std::uint32_t eps = ql2.a1();
    std::uint32_t total = q.vsize();
    for (std::uint32_t l = 0; l < total; ++l) {
        if (ystar_at(l) != 1 || !(q.eval(l) == Witt2::one(f)))
            continue;
        // W = {w : phi(w,l) = phi(w,l2) = 0}
        KMatrix cond(f, 2, n);
        for (int j = 0; j < n; ++j) {
            std::uint32_t e = 1u << (j * f.m());
            cond.at(0, j) = kform(phi, l, e);
            cond.at(1, j) = kform(phi, l2, e);
        }
        KMatrix w = cond.kernel();
        std::vector<std::uint32_t> wrows;
        for (int r = 0; r < w.rows(); ++r)
            wrows.push_back(row_packed(w, r));
        // hyperbolic basis of the k-form sqrt(q) on W
        std::vector<std::uint32_t> hyper;
        bool ok = true;
        std::vector<std::uint32_t> cur = wrows;
        auto qk = [&](std::uint32_t x) { return f.sqrt(q.eval(x).a1()); };
        while (!cur.empty() && ok) {
            std::vector<std::uint32_t> sp = span_of(f, n, cur);
            std::uint32_t e = 0;
            for (std::uint32_t v : sp)
                if (v && qk(v) == 0) {
                    e = v;
                    break;
                }
            if (!e) {
                ok = false;
                break;
            }
            std::uint32_t fv = 0;
            for (std::uint32_t v : cur)
                if (kform(phi, e, v)) {
                    fv = scale_k(f, n, f.inv(kform(phi, e, v)), v);
                    break;
                }
            if (!fv) {
                ok = false;
                break;
            }
            fv ^= scale_k(f, n, qk(fv), e);
            hyper.push_back(e);
            hyper.push_back(fv);
            std::vector<std::uint32_t> rest;
            for (std::uint32_t v : cur) {
                std::uint32_t u = v ^ scale_k(f, n, kform(phi, v, fv), e) ^ scale_k(f, n, kform(phi, v, e), fv);
                if (u)
                    rest.push_back(u);
            }
            KMatrix m = rows_to_matrix(f, n, rest).echelon();
            cur.clear();
            for (int r = 0; r < m.rows(); ++r)
                cur.push_back(row_packed(m, r));
        }
        if (!ok)
            continue;
        std::vector<std::uint32_t> cols{l, l2};
        cols.insert(cols.end(), hyper.begin(), hyper.end());
        KMatrix basis = rows_to_matrix(f, n, cols).transpose();
        if (basis.rank() != n)
            continue;
        if (!(q.transformed(basis) == QFormR::normal_form(f, n, eps)))
            throw std::logic_error("normal form construction failed to verify");
        return NormalForm{eps, basis};
    }
    return std::nullopt;
}

std::vector<std::uint32_t> multiplicative_lines(const QFormR& q, const std::optional<KMatrix>& sub)
{
    const Field& f = q.field();
    int n = q.n();
    std::vector<std::uint32_t> rows;
    if (sub) {
        for (int r = 0; r < sub->rows(); ++r)
            rows.push_back(row_packed(*sub, r));
    } else {
        for (int i = 0; i < n; ++i)
            rows.push_back(1u << (i * f.m()));
    }
    std::set<std::uint32_t> lines;
    for (std::uint32_t v : span_of(f, n, rows)) {
        if (!v)
            continue;
        std::uint32_t rep = v;
        for (std::uint32_t c = 2; c < f.order(); ++c)
            rep = std::min(rep, scale_k(f, n, c, v));
        if (q.eval(v).a1() == 0)
            lines.insert(rep);
    }
    return {lines.begin(), lines.end()};
}

std::optional<KMatrix> w_perp(const QFormR& q)
{
    auto nf = normal_form_even(q);
    if (!nf)
        return std::nullopt;
    KMatrix out(q.field(), 2, q.n());
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < q.n(); ++j)
            out.at(r, j) = nf->basis.at(j, r);
    return out;
}

PowerReport power_identities(const QFormR& q)
{
    if (!is_nondegenerate(q))
        throw std::invalid_argument("power identities need a non-degenerate form");
    PowerReport r;
    r.gamma = gauss_sum(q);
    r.gamma4_ok = r.gamma.pow(4) == gamma_one(q.field()).pow(4 * static_cast<unsigned>(q.n()));
    r.disc = discriminant(q);
    return r;
}

} // namespace weil2
