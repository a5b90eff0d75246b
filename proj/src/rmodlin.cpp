#include "weil2/rmodlin.hpp"

#include <stdexcept>

namespace weil2 {

namespace {

void check_same(const Field& a, const Field& b)
{
    if (&a != &b)
        throw std::invalid_argument("field context mismatch");
}

void swap_rows(RMatrix& a, int i, int j)
{
    if (i == j)
        return;
    for (int c = 0; c < a.cols(); ++c)
        std::swap(a(i, c), a(j, c));
}

void swap_cols(RMatrix& a, int i, int j)
{
    if (i == j)
        return;
    for (int r = 0; r < a.rows(); ++r)
        std::swap(a(r, i), a(r, j));
}

void scale_row(RMatrix& a, int i, const Witt2& s)
{
    for (int c = 0; c < a.cols(); ++c)
        a(i, c) = s * a(i, c);
}

// row i -= s * row j
void sub_row(RMatrix& a, int i, int j, const Witt2& s)
{
    for (int c = 0; c < a.cols(); ++c)
        if (!a(j, c).is_zero())
            a(i, c) -= s * a(j, c);
}

// col i -= col j * s
void sub_col(RMatrix& a, int i, int j, const Witt2& s)
{
    for (int r = 0; r < a.rows(); ++r)
        if (!a(r, j).is_zero())
            a(r, i) -= a(r, j) * s;
}

// w with 2 * w = e for e in 2R
Witt2 half(const Witt2& e)
{
    const Field& f = e.field();
    return {f, f.sqrt(e.a1()), 0};
}

// u with u * e = 2 for e = (0, c), c != 0
Witt2 two_normalizer(const Witt2& e)
{
    const Field& f = e.field();
    return {f, f.sqrt(f.inv(e.a1())), 0};
}

} // namespace

RMatrix::RMatrix(const Field& f, int rows, int cols)
    : f_(&f), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, Witt2::zero(f))
{
}

RMatrix::RMatrix(const Field& f, int rows, int cols, const std::vector<Witt2>& entries)
    : f_(&f), rows_(rows), cols_(cols), e_(entries)
{
    if (entries.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("entry count does not match shape");
    for (const auto& x : entries)
        check_same(x.field(), f);
}

RMatrix RMatrix::identity(const Field& f, int n)
{
    RMatrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = Witt2::one(f);
    return m;
}

RMatrix RMatrix::from_rows(const Field& f, int cols, const std::vector<RVector>& rows)
{
    RMatrix m(f, static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        m.set_row(i, rows[i]);
    return m;
}

RVector RMatrix::row(int i) const
{
    return RVector(e_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                   e_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

RVector RMatrix::col(int j) const
{
    RVector v;
    v.reserve(rows_);
    for (int i = 0; i < rows_; ++i)
        v.push_back((*this)(i, j));
    return v;
}

void RMatrix::set_row(int i, const RVector& v)
{
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("row length mismatch");
    for (int j = 0; j < cols_; ++j) {
        check_same(v[j].field(), *f_);
        (*this)(i, j) = v[j];
    }
}

RMatrix RMatrix::transpose() const
{
    RMatrix t(*f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RMatrix RMatrix::block(int r0, int c0, int nr, int nc) const
{
    RMatrix b(*f_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
            b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

RMatrix RMatrix::scaled(const Witt2& s) const
{
    RMatrix r = *this;
    for (auto& x : r.e_)
        x = s * x;
    return r;
}

RMatrix RMatrix::vstack(const RMatrix& a, const RMatrix& b)
{
    check_same(a.field(), b.field());
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack column mismatch");
    RMatrix m(a.field(), a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            m(a.rows() + i, j) = b(i, j);
    return m;
}

RMatrix RMatrix::hstack(const RMatrix& a, const RMatrix& b)
{
    return vstack(a.transpose(), b.transpose()).transpose();
}

RMatrix RMatrix::operator+(const RMatrix& o) const
{
    check_same(*f_, *o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch");
    RMatrix r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k)
        r.e_[k] += o.e_[k];
    return r;
}

RMatrix RMatrix::operator-(const RMatrix& o) const
{
    check_same(*f_, *o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch");
    RMatrix r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k)
        r.e_[k] -= o.e_[k];
    return r;
}

RMatrix RMatrix::operator*(const RMatrix& o) const
{
    check_same(*f_, *o.f_);
    if (cols_ != o.rows_)
        throw std::invalid_argument("shape mismatch");
    RMatrix r(*f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Witt2& a = (*this)(i, k);
            if (a.is_zero())
                continue;
            for (int j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

bool RMatrix::operator==(const RMatrix& o) const
{
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool RMatrix::is_zero() const
{
    for (const auto& x : e_)
        if (!x.is_zero())
            return false;
    return true;
}

bool RMatrix::is_symmetric() const
{
    if (rows_ != cols_)
        return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i)))
                return false;
    return true;
}

bool RMatrix::operator<(const RMatrix& o) const
{
    if (rows_ != o.rows_)
        return rows_ < o.rows_;
    if (cols_ != o.cols_)
        return cols_ < o.cols_;
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (e_[k].index() != o.e_[k].index())
            return e_[k].index() < o.e_[k].index();
    return false;
}

std::ostream& operator<<(std::ostream& os, const RMatrix& m)
{
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    return os << "]";
}

Witt2 dot(const RVector& a, const RVector& b)
{
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("dot: size mismatch or empty");
    Witt2 s = Witt2::zero(a[0].field());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

RVector vec_add(const RVector& a, const RVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch");
    RVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += b[i];
    return r;
}

RVector vec_sub(const RVector& a, const RVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch");
    RVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] -= b[i];
    return r;
}

RVector vec_neg(const RVector& a)
{
    RVector r = a;
    for (auto& x : r)
        x = -x;
    return r;
}

RVector vec_scale(const Witt2& s, const RVector& a)
{
    RVector r = a;
    for (auto& x : r)
        x = s * x;
    return r;
}

RVector zero_vector(const Field& f, int n) { return RVector(n, Witt2::zero(f)); }

bool vec_is_zero(const RVector& a)
{
    for (const auto& x : a)
        if (!x.is_zero())
            return false;
    return true;
}

RVector mat_vec(const RMatrix& m, const RVector& v)
{
    if (static_cast<int>(v.size()) != m.cols())
        throw std::invalid_argument("mat_vec size mismatch");
    RVector r = zero_vector(m.field(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!v[j].is_zero())
                r[i] += m(i, j) * v[j];
    return r;
}

RVector vec_mat(const RVector& v, const RMatrix& m)
{
    if (static_cast<int>(v.size()) != m.rows())
        throw std::invalid_argument("vec_mat size mismatch");
    RVector r = zero_vector(m.field(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero())
            continue;
        for (int j = 0; j < m.cols(); ++j)
            r[j] += v[i] * m(i, j);
    }
    return r;
}

Witt2 bilinear(const RVector& x, const RMatrix& g, const RVector& y)
{
    Witt2 s = Witt2::zero(g.field());
    for (int i = 0; i < g.rows(); ++i) {
        if (x[i].is_zero())
            continue;
        for (int j = 0; j < g.cols(); ++j)
            if (!y[j].is_zero() && !g(i, j).is_zero())
                s += x[i] * g(i, j) * y[j];
    }
    return s;
}

Echelon reduce(const RMatrix& m)
{
    const Field& f = m.field();
    RMatrix a = m;
    RMatrix t = RMatrix::identity(f, m.rows());
    Witt2 fac = Witt2::one(f);
    const Witt2 minus_one = -Witt2::one(f);
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < a.cols() && r < a.rows(); ++j) {
        int i = r;
        while (i < a.rows() && !a(i, j).is_unit())
            ++i;
        if (i == a.rows())
            continue;
        if (i != r) {
            swap_rows(a, r, i);
            swap_rows(t, r, i);
            fac *= minus_one;
        }
        Witt2 u = a(r, j).inverse();
        scale_row(a, r, u);
        scale_row(t, r, u);
        fac *= u;
        for (int k = 0; k < a.rows(); ++k) {
            if (k == r || a(k, j).is_zero())
                continue;
            Witt2 s = a(k, j);
            sub_row(a, k, r, s);
            sub_row(t, k, r, s);
        }
        pivots.push_back(j);
        ++r;
    }
    int units = r;
    for (int j = 0; j < a.cols() && r < a.rows(); ++j) {
        int i = r;
        while (i < a.rows() && a(i, j).is_zero())
            ++i;
        if (i == a.rows())
            continue;
        if (i != r) {
            swap_rows(a, r, i);
            swap_rows(t, r, i);
            fac *= minus_one;
        }
        Witt2 u = two_normalizer(a(r, j));
        scale_row(a, r, u);
        scale_row(t, r, u);
        fac *= u;
        for (int k = 0; k < a.rows(); ++k) {
            if (k == r || a(k, j).a1() == 0)
                continue;
            Witt2 w = half(Witt2(f, 0, a(k, j).a1()));
            sub_row(a, k, r, w);
            sub_row(t, k, r, w);
        }
        pivots.push_back(j);
        ++r;
    }
    return Echelon{a, pivots, units, r - units, t, fac};
}

Diagonal diagonalize(const RMatrix& m)
{
    const Field& f = m.field();
    RMatrix a = m;
    RMatrix p = RMatrix::identity(f, m.rows());
    RMatrix q = RMatrix::identity(f, m.cols());
    Witt2 fac = Witt2::one(f);
    const Witt2 minus_one = -Witt2::one(f);
    int t = 0;
    auto find = [&](bool unit) -> std::pair<int, int> {
        for (int i = t; i < a.rows(); ++i)
            for (int j = t; j < a.cols(); ++j)
                if (unit ? a(i, j).is_unit() : !a(i, j).is_zero())
                    return {i, j};
        return {-1, -1};
    };
    auto bring = [&](int i, int j) {
        if (i != t) {
            swap_rows(a, t, i);
            swap_rows(p, t, i);
            fac *= minus_one;
        }
        if (j != t) {
            swap_cols(a, t, j);
            swap_cols(q, t, j);
            fac *= minus_one;
        }
    };
    while (true) {
        auto [i, j] = find(true);
        if (i < 0)
            break;
        bring(i, j);
        Witt2 u = a(t, t).inverse();
        scale_row(a, t, u);
        scale_row(p, t, u);
        fac *= u;
        for (int k = 0; k < a.rows(); ++k)
            if (k != t && !a(k, t).is_zero()) {
                Witt2 s = a(k, t);
                sub_row(a, k, t, s);
                sub_row(p, k, t, s);
            }
        for (int k = 0; k < a.cols(); ++k)
            if (k != t && !a(t, k).is_zero()) {
                Witt2 s = a(t, k);
                sub_col(a, k, t, s);
                sub_col(q, k, t, s);
            }
        ++t;
    }
    int units = t;
    while (true) {
        auto [i, j] = find(false);
        if (i < 0)
            break;
        bring(i, j);
        Witt2 u = two_normalizer(a(t, t));
        scale_row(a, t, u);
        scale_row(p, t, u);
        fac *= u;
        for (int k = 0; k < a.rows(); ++k)
            if (k != t && !a(k, t).is_zero()) {
                Witt2 w = half(a(k, t));
                sub_row(a, k, t, w);
                sub_row(p, k, t, w);
            }
        for (int k = 0; k < a.cols(); ++k)
            if (k != t && !a(t, k).is_zero()) {
                Witt2 w = half(a(t, k));
                sub_col(a, k, t, w);
                sub_col(q, k, t, w);
            }
        ++t;
    }
    return Diagonal{p, a, q, units, t - units, fac};
}

Witt2 det(const RMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("det of non-square matrix");
    const Field& f = m.field();
    Diagonal d = diagonalize(m);
    Witt2 prod = Witt2::one(f);
    for (int i = 0; i < m.rows(); ++i)
        prod *= d.D(i, i);
    return prod * d.det_factor.inverse();
}

RMatrix kernel(const RMatrix& m)
{
    const Field& f = m.field();
    Diagonal d = diagonalize(m);
    std::vector<RVector> gens;
    int rank = d.units + d.twos;
    for (int i = d.units; i < m.cols(); ++i) {
        RVector c = d.Q.col(i);
        if (i < rank)
            c = vec_scale(Witt2::two(f), c);
        gens.push_back(c);
    }
    return RMatrix::from_rows(f, m.cols(), gens);
}

std::optional<RVector> solve(const RMatrix& m, const RVector& b)
{
    const Field& f = m.field();
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    Diagonal d = diagonalize(m);
    RVector c = mat_vec(d.P, b);
    RVector y = zero_vector(f, m.cols());
    int rank = d.units + d.twos;
    for (int i = 0; i < m.rows(); ++i) {
        if (i < d.units)
            y[i] = c[i];
        else if (i < rank) {
            if (!c[i].in_2R())
                return std::nullopt;
            y[i] = half(c[i]);
        } else if (!c[i].is_zero())
            return std::nullopt;
    }
    return mat_vec(d.Q, y);
}

std::optional<RMatrix> inverse(const RMatrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    Diagonal d = diagonalize(m);
    if (d.units != m.rows())
        return std::nullopt;
    return d.Q * d.P;
}

bool in_row_span(const RMatrix& m, const RVector& v) { return solve(m.transpose(), v).has_value(); }

FgRModule::FgRModule(const Field& f, int gens, RMatrix relations)
    : f_(&f), g_(gens), rel_(std::move(relations)), diag_(diagonalize(rel_)), qinv_(RMatrix::identity(f, gens))
{
    prepare();
}

FgRModule::FgRModule(const Field& f, int gens, RMatrix relations, RMatrix gram)
    : f_(&f), g_(gens), rel_(std::move(relations)), gram_(std::move(gram)), diag_(diagonalize(rel_)),
      qinv_(RMatrix::identity(f, gens))
{
    if (gram_->rows() != g_ || gram_->cols() != g_)
        throw std::invalid_argument("gram shape mismatch");
    prepare();
}

void FgRModule::prepare()
{
    if (rel_.cols() != g_)
        throw std::invalid_argument("relation width mismatch");
    qinv_ = *inverse(diag_.Q);
}

FgRModule FgRModule::submodule(const RMatrix& gens, const std::optional<RMatrix>& ambient_gram)
{
    const Field& f = gens.field();
    RMatrix rel = kernel(gens.transpose());
    if (ambient_gram)
        return FgRModule(f, gens.rows(), rel, gens * *ambient_gram * gens.transpose());
    return FgRModule(f, gens.rows(), rel);
}

std::pair<int, int> FgRModule::structure() const
{
    return {g_ - diag_.units - diag_.twos, diag_.twos};
}

int FgRModule::log2_size() const
{
    auto [a, b] = structure();
    return f_->m() * (2 * a + b);
}

RVector FgRModule::canonical(const RVector& x) const
{
    // the relation span is spanned by D Q^-1, so reduce the coordinates x Q
    RVector y = vec_mat(x, diag_.Q);
    for (int i = 0; i < diag_.units + diag_.twos && i < g_; ++i) {
        if (i < diag_.units)
            y[i] = Witt2::zero(*f_);
        else
            y[i] = Witt2(*f_, y[i].a0(), 0);
    }
    return vec_mat(y, qinv_);
}

bool FgRModule::is_zero_element(const RVector& x) const { return vec_is_zero(canonical(x)); }

bool FgRModule::gram_descends() const
{
    if (!gram_)
        return true;
    if (!gram_->is_symmetric())
        return false;
    for (int r = 0; r < rel_.rows(); ++r)
        if (!vec_is_zero(vec_mat(rel_.row(r), *gram_)))
            return false;
    return true;
}

Witt2 FgRModule::form(const RVector& x, const RVector& y) const
{
    if (!gram_)
        throw std::logic_error("module carries no form");
    return bilinear(x, *gram_, y);
}

void FgRModule::for_each(const std::function<void(const RVector&)>& fn) const
{
    std::vector<std::uint32_t> range(g_);
    std::uint32_t q = f_->order();
    for (int i = 0; i < g_; ++i)
        range[i] = i < diag_.units ? 1 : i < diag_.units + diag_.twos ? q : q * q;
    std::vector<std::uint32_t> idx(g_, 0);
    RVector y = zero_vector(*f_, g_);
    while (true) {
        for (int i = 0; i < g_; ++i)
            y[i] = Witt2::from_index(*f_, idx[i]);
        fn(vec_mat(y, qinv_));
        int k = 0;
        while (k < g_ && ++idx[k] == range[k])
            idx[k++] = 0;
        if (k == g_)
            break;
    }
}

bool is_homomorphism(const RMatrix& f, const FgRModule& a, const FgRModule& b)
{
    if (f.rows() != a.gens() || f.cols() != b.gens())
        return false;
    for (int r = 0; r < a.relations().rows(); ++r)
        if (!b.is_zero_element(vec_mat(a.relations().row(r), f)))
            return false;
    return true;
}

bool is_bijective(const RMatrix& f, const FgRModule& a, const FgRModule& b)
{
    if (!is_homomorphism(f, a, b) || a.log2_size() != b.log2_size())
        return false;
    RMatrix s = RMatrix::vstack(f, b.relations());
    RMatrix ker = kernel(s.transpose());
    for (int r = 0; r < ker.rows(); ++r) {
        RVector full = ker.row(r);
        RVector x(full.begin(), full.begin() + a.gens());
        if (!a.is_zero_element(x))
            return false;
    }
    return true;
}

bool is_isometry(const RMatrix& f, const FgRModule& a, const FgRModule& b)
{
    if (!a.gram() || !b.gram() || !is_bijective(f, a, b))
        return false;
    for (int i = 0; i < a.gens(); ++i)
        for (int j = 0; j < a.gens(); ++j)
            if (!(b.form(f.row(i), f.row(j)) == (*a.gram())(i, j)))
                return false;
    return true;
}

KMatrix::KMatrix(const Field& f, int rows, int cols)
    : f_(&f), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, 0)
{
}

KMatrix KMatrix::identity(const Field& f, int n)
{
    KMatrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

KMatrix KMatrix::transpose() const
{
    KMatrix t(*f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

KMatrix KMatrix::operator*(const KMatrix& o) const
{
    check_same(*f_, *o.f_);
    if (cols_ != o.rows_)
        throw std::invalid_argument("shape mismatch");
    KMatrix r(*f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k)
            if (at(i, k))
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) ^= f_->mul(at(i, k), o.at(k, j));
    return r;
}

bool KMatrix::operator==(const KMatrix& o) const
{
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

namespace {

// reduced row echelon form in place, returns pivot columns
std::vector<int> rref(KMatrix& a)
{
    const Field& f = a.field();
    std::vector<int> piv;
    int r = 0;
    for (int j = 0; j < a.cols() && r < a.rows(); ++j) {
        int i = r;
        while (i < a.rows() && a.at(i, j) == 0)
            ++i;
        if (i == a.rows())
            continue;
        for (int c = 0; c < a.cols(); ++c)
            std::swap(a.at(r, c), a.at(i, c));
        std::uint32_t u = f.inv(a.at(r, j));
        for (int c = 0; c < a.cols(); ++c)
            a.at(r, c) = f.mul(u, a.at(r, c));
        for (int k = 0; k < a.rows(); ++k) {
            if (k == r || a.at(k, j) == 0)
                continue;
            std::uint32_t s = a.at(k, j);
            for (int c = 0; c < a.cols(); ++c)
                a.at(k, c) ^= f.mul(s, a.at(r, c));
        }
        piv.push_back(j);
        ++r;
    }
    return piv;
}

} // namespace

int KMatrix::rank() const
{
    KMatrix a = *this;
    return static_cast<int>(rref(a).size());
}

KMatrix KMatrix::echelon() const
{
    KMatrix a = *this;
    int r = static_cast<int>(rref(a).size());
    KMatrix out(*f_, r, cols_);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols_; ++j)
            out.at(i, j) = a.at(i, j);
    return out;
}

KMatrix KMatrix::kernel() const
{
    KMatrix a = *this;
    std::vector<int> piv = rref(a);
    std::vector<bool> is_piv(cols_, false);
    for (int p : piv)
        is_piv[p] = true;
    KMatrix k(*f_, cols_ - static_cast<int>(piv.size()), cols_);
    int r = 0;
    for (int j = 0; j < cols_; ++j) {
        if (is_piv[j])
            continue;
        k.at(r, j) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            k.at(r, piv[i]) = a.at(static_cast<int>(i), j);
        ++r;
    }
    return k;
}

std::optional<std::vector<std::uint32_t>> KMatrix::solve(const std::vector<std::uint32_t>& b) const
{
    KMatrix a(*f_, rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            a.at(i, j) = at(i, j);
        a.at(i, cols_) = b[i];
    }
    std::vector<int> piv = rref(a);
    if (!piv.empty() && piv.back() == cols_)
        return std::nullopt;
    std::vector<std::uint32_t> x(cols_, 0);
    for (std::size_t i = 0; i < piv.size(); ++i)
        x[piv[i]] = a.at(static_cast<int>(i), cols_);
    return x;
}

KMatrix reduce_mod2(const RMatrix& m)
{
    KMatrix k(m.field(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            k.at(i, j) = m(i, j).a0();
    return k;
}

RMatrix teichmuller_lift(const KMatrix& m)
{
    RMatrix r(m.field(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = Witt2(m.field(), m.at(i, j), 0);
    return r;
}

} // namespace weil2
