#include "weil2/symplectic.hpp"

#include "weil2/guard.hpp"

#include <set>
#include <stdexcept>

namespace weil2 {

RMatrix standard_omega(const Field& f, int n)
{
    RMatrix j(f, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = Witt2::one(f);
        j(n + i, i) = -Witt2::one(f);
    }
    return j;
}

SympSpace::SympSpace(const Field& f, int n) : f_(&f), n_(n), omega_(standard_omega(f, n))
{
    if (n < 1)
        throw std::invalid_argument("symplectic rank must be positive");
}

Witt2 SympSpace::omega(const RVector& x, const RVector& y) const
{
    Witt2 s = Witt2::zero(*f_);
    for (int i = 0; i < n_; ++i)
        s += x[i] * y[n_ + i] - x[n_ + i] * y[i];
    return s;
}

RVector SympSpace::basis_vector(int i) const
{
    RVector v = zero_vector(*f_, 2 * n_);
    v[i] = Witt2::one(*f_);
    return v;
}

bool is_symplectic(const RMatrix& g)
{
    if (g.rows() != g.cols() || g.rows() % 2)
        return false;
    RMatrix j = standard_omega(g.field(), g.rows() / 2);
    return g.transpose() * j * g == j;
}

RMatrix canonical_basis(const RMatrix& b)
{
    Echelon e = reduce(b);
    int r = e.unit_pivots + e.two_pivots;
    return e.form.block(0, 0, r, b.cols());
}

bool is_lagrangian(const RMatrix& b, const SympSpace& v)
{
    if (b.rows() != v.n() || b.cols() != v.dim() || &b.field() != &v.field())
        return false;
    if (!(b * v.omega() * b.transpose()).is_zero())
        return false;
    return reduce(b).unit_pivots == v.n();
}

Lagrangian::Lagrangian(const RMatrix& basis) : basis_(basis)
{
    if (basis.cols() != 2 * basis.rows() || !is_lagrangian(basis, SympSpace(basis.field(), basis.rows())))
        throw std::invalid_argument("not a free lagrangian");
    basis_ = canonical_basis(basis);
}

Lagrangian Lagrangian::standard(const Field& f, int n)
{
    RMatrix b(f, n, 2 * n);
    for (int i = 0; i < n; ++i)
        b(i, i) = Witt2::one(f);
    return Lagrangian(b);
}

Lagrangian Lagrangian::dual_standard(const Field& f, int n)
{
    RMatrix b(f, n, 2 * n);
    for (int i = 0; i < n; ++i)
        b(i, n + i) = Witt2::one(f);
    return Lagrangian(b);
}

std::optional<RVector> Lagrangian::coords(const RVector& v) const
{
    // canonical form carries an identity block at its pivot columns
    RVector c = zero_vector(field(), n());
    for (int i = 0; i < n(); ++i) {
        int j = 0;
        while (!basis_(i, j).is_unit())
            ++j;
        c[i] = v[j];
    }
    if (!(vec_mat(c, basis_) == v))
        return std::nullopt;
    return c;
}

bool Lagrangian::contains(const RVector& v) const { return coords(v).has_value(); }

std::vector<RVector> Lagrangian::elements() const
{
    std::vector<RVector> out;
    FgRModule free(field(), n(), RMatrix(field(), 0, n()));
    free.for_each([&](const RVector& c) { out.push_back(vec_mat(c, basis_)); });
    return out;
}

Lagrangian Lagrangian::apply(const RMatrix& g) const { return Lagrangian(basis_ * g.transpose()); }

bool transverse(const Lagrangian& a, const Lagrangian& b)
{
    return det(RMatrix::vstack(a.basis(), b.basis())).is_unit();
}

RMatrix intersection_generators(const Lagrangian& a, const Lagrangian& b)
{
    const Field& f = a.field();
    RMatrix nb = b.basis().scaled(-Witt2::one(f));
    RMatrix ker = kernel(RMatrix::vstack(a.basis(), nb).transpose());
    std::vector<RVector> gens;
    for (int r = 0; r < ker.rows(); ++r) {
        RVector full = ker.row(r);
        RVector c(full.begin(), full.begin() + a.n());
        gens.push_back(vec_mat(c, a.basis()));
    }
    return RMatrix::from_rows(f, a.basis().cols(), gens);
}

FgRModule intersect(const Lagrangian& a, const Lagrangian& b)
{
    return FgRModule::submodule(intersection_generators(a, b));
}

namespace {

void for_combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i)
        c[i] = i;
    while (true) {
        fn(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++c[i];
        for (int j = i + 1; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

} // namespace

std::vector<Lagrangian> enumerate_lagrangians(const SympSpace& v)
{
    const Field& f = v.field();
    int n = v.n();
    std::uint32_t q = f.order();
    check_guard(ipow_sat(q, n * (n + 1)), 4096, "enumerate_lagrangians");
    RMatrix omega = v.omega();
    std::set<RMatrix> found;
    for_combinations(2 * n, n, [&](const std::vector<int>& piv) {
        std::vector<bool> is_piv(2 * n, false);
        for (int p : piv)
            is_piv[p] = true;
        // free positions of a reduced echelon form over k, then the positions
        // whose 2R-part may be lifted freely
        std::vector<std::pair<int, int>> kfree, lift;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 2 * n; ++j) {
                if (is_piv[j])
                    continue;
                lift.emplace_back(i, j);
                if (j > piv[i])
                    kfree.emplace_back(i, j);
            }
        std::uint64_t nk = ipow_sat(q, static_cast<int>(kfree.size()));
        std::uint64_t nl = ipow_sat(q, static_cast<int>(lift.size()));
        for (std::uint64_t a = 0; a < nk; ++a) {
            KMatrix km(f, n, 2 * n);
            for (int i = 0; i < n; ++i)
                km.at(i, piv[i]) = 1;
            std::uint64_t t = a;
            for (auto [i, j] : kfree) {
                km.at(i, j) = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            RMatrix base = teichmuller_lift(km);
            bool iso_mod2 = true;
            RMatrix g = base * omega * base.transpose();
            for (int i = 0; i < n && iso_mod2; ++i)
                for (int j = 0; j < n; ++j)
                    if (g(i, j).a0() != 0) {
                        iso_mod2 = false;
                        break;
                    }
            if (!iso_mod2)
                continue;
            for (std::uint64_t b = 0; b < nl; ++b) {
                RMatrix m = base;
                std::uint64_t s = b;
                for (auto [i, j] : lift) {
                    m(i, j) = Witt2(f, m(i, j).a0(), static_cast<std::uint32_t>(s % q));
                    s /= q;
                }
                if ((m * omega * m.transpose()).is_zero())
                    found.insert(canonical_basis(m));
            }
        }
    });
    std::vector<Lagrangian> out;
    out.reserve(found.size());
    for (const auto& b : found)
        out.emplace_back(b);
    return out;
}

RMatrix random_symmetric(const Field& f, int n, std::mt19937_64& rng)
{
    std::uint32_t qq = f.order() * f.order();
    RMatrix s(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            s(i, j) = Witt2::from_index(f, static_cast<std::uint32_t>(rng() % qq));
            s(j, i) = s(i, j);
        }
    return s;
}

RMatrix random_gl(const Field& f, int n, std::mt19937_64& rng)
{
    std::uint32_t qq = f.order() * f.order();
    while (true) {
        RMatrix a(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = Witt2::from_index(f, static_cast<std::uint32_t>(rng() % qq));
        if (det(a).is_unit())
            return a;
    }
}

RMatrix sp_upper(const RMatrix& s)
{
    int n = s.rows();
    RMatrix g = RMatrix::identity(s.field(), 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, n + j) = s(i, j);
    return g;
}

RMatrix sp_lower(const RMatrix& s)
{
    int n = s.rows();
    RMatrix g = RMatrix::identity(s.field(), 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(n + i, j) = s(i, j);
    return g;
}

RMatrix sp_levi(const RMatrix& a)
{
    int n = a.rows();
    auto inv = inverse(a);
    if (!inv)
        throw std::invalid_argument("levi block is not invertible");
    RMatrix it = inv->transpose();
    RMatrix g(a.field(), 2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g(i, j) = a(i, j);
            g(n + i, n + j) = it(i, j);
        }
    return g;
}

RMatrix random_sp(const SympSpace& v, std::mt19937_64& rng, int length)
{
    const Field& f = v.field();
    int n = v.n();
    if (length <= 0)
        length = 3 + 2 * n;
    RMatrix g = RMatrix::identity(f, 2 * n);
    for (int k = 0; k < length; ++k) {
        switch (rng() % 3) {
        case 0:
            g = g * sp_upper(random_symmetric(f, n, rng));
            break;
        case 1:
            g = g * sp_lower(random_symmetric(f, n, rng));
            break;
        default:
            g = g * sp_levi(random_gl(f, n, rng));
        }
    }
    return g;
}

Lagrangian random_lagrangian(const SympSpace& v, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return Lagrangian::standard(v.field(), v.n()).apply(random_sp(v, rng));
}

Lagrangian coordinate_lagrangian(const Field& f, int n, unsigned mask)
{
    RMatrix b(f, n, 2 * n);
    for (int i = 0; i < n; ++i)
        b(i, (mask >> i & 1) ? i : n + i) = Witt2::one(f);
    return Lagrangian(b);
}

RMatrix adapted_symplectic_basis(const Lagrangian& l)
{
    const Field& f = l.field();
    int n = l.n();
    SympSpace v(f, n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Lagrangian c = coordinate_lagrangian(f, n, mask);
        if (!transverse(l, c))
            continue;
        RMatrix p(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                p(i, j) = v.omega(l.basis().row(i), c.basis().row(j));
        RMatrix m = inverse(p)->transpose() * c.basis();
        return RMatrix::vstack(l.basis(), m).transpose();
    }
    throw std::logic_error("no transverse coordinate lagrangian");
}

std::optional<PFactor> p_stabilizer_factor(const RMatrix& g, const Lagrangian& l)
{
    int n = l.n();
    RMatrix h = adapted_symplectic_basis(l);
    RMatrix gp = *inverse(h) * g * h;
    if (!gp.block(n, 0, n, n).is_zero())
        return std::nullopt;
    RMatrix a = gp.block(0, 0, n, n);
    auto ainv = inverse(a);
    if (!ainv)
        return std::nullopt;
    PFactor p{h, a, *ainv * gp.block(0, n, n, n)};
    if (!(p_recompose(p) == g))
        return std::nullopt;
    return p;
}

RMatrix p_recompose(const PFactor& p)
{
    return p.adapt * sp_levi(p.gl) * sp_upper(p.sym) * *inverse(p.adapt);
}

} // namespace weil2
