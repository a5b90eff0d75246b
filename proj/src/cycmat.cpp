#include "weil2/cycmat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace weil2 {

namespace {

using boost::multiprecision::cpp_int;

struct BigGauss {
    cpp_int re, im;

    bool is_zero() const { return re == 0 && im == 0; }
    BigGauss operator*(const BigGauss& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    BigGauss operator-(const BigGauss& o) const { return {re - o.re, im - o.im}; }
    cpp_int norm() const { return re * re + im * im; }
    BigGauss conj() const { return {re, -im}; }
};

BigGauss exact_div(const BigGauss& a, const BigGauss& d)
{
    BigGauss p = a * d.conj();
    cpp_int n = d.norm();
    if (p.re % n != 0 || p.im % n != 0)
        throw std::logic_error("inexact Gaussian division in elimination");
    return {p.re / n, p.im / n};
}

BigGauss big(const CycInt& z) { return {cpp_int(z.re()), cpp_int(z.im())}; }

using BigMatrix = std::vector<std::vector<BigGauss>>;

// Fraction-free Gauss-Jordan (Bareiss). Returns pivot columns. Every pivot row
// ends with the same pivot value and zeros in the other pivot columns.
std::vector<int> bareiss(BigMatrix& a, int cols)
{
    int rows = static_cast<int>(a.size());
    std::vector<int> piv;
    BigGauss prev{1, 0};
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        BigGauss pv = a[r][c];
        for (int i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            BigGauss f = a[i][c];
            for (int j = 0; j < cols; ++j)
                a[i][j] = exact_div(pv * a[i][j] - f * a[r][j], prev);
        }
        prev = pv;
        piv.push_back(c);
        ++r;
    }
    return piv;
}

} // namespace

CycMatrix CycMatrix::identity(int n)
{
    CycMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = CycInt(1);
    return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const
{
    if (cols_ != o.rows_)
        throw std::invalid_argument("shape mismatch");
    CycMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const CycInt& a = (*this)(i, k);
            if (a.is_zero())
                continue;
            for (int j = 0; j < o.cols_; ++j)
                if (!o(k, j).is_zero())
                    r(i, j) += a * o(k, j);
        }
    return r;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch");
    CycMatrix r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k)
        r.e_[k] += o.e_[k];
    return r;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch");
    CycMatrix r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k)
        r.e_[k] -= o.e_[k];
    return r;
}

CycMatrix CycMatrix::scaled(const CycInt& s) const
{
    CycMatrix r = *this;
    for (auto& x : r.e_)
        x *= s;
    return r;
}

bool CycMatrix::is_zero() const
{
    for (const auto& x : e_)
        if (!x.is_zero())
            return false;
    return true;
}

CycMatrix CycMatrix::transpose() const
{
    CycMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

std::optional<CycRatio> proportional(const std::vector<CycInt>& x, const std::vector<CycInt>& y)
{
    if (x.size() != y.size())
        return std::nullopt;
    std::size_t k = 0;
    while (k < y.size() && y[k].is_zero())
        ++k;
    if (k == y.size())
        return std::nullopt;
    CycInt a = x[k], b = y[k];
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(b * x[j] == a * y[j]))
            return std::nullopt;
    return CycRatio{a, b};
}

std::optional<CycRatio> proportional(const CycMatrix& x, const CycMatrix& y)
{
    if (x.rows() != y.rows() || x.cols() != y.cols())
        return std::nullopt;
    std::vector<CycInt> a, b;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            a.push_back(x(i, j));
            b.push_back(y(i, j));
        }
    return proportional(a, b);
}

int cyc_rank(const CycMatrix& m)
{
    BigMatrix a(m.rows(), std::vector<BigGauss>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            a[i][j] = big(m(i, j));
    return static_cast<int>(bareiss(a, m.cols()).size());
}

CycMatrix cyc_kernel(const CycMatrix& m)
{
    int cols = m.cols();
    BigMatrix a(m.rows(), std::vector<BigGauss>(cols));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < cols; ++j)
            a[i][j] = big(m(i, j));
    std::vector<int> piv = bareiss(a, cols);
    std::vector<bool> is_piv(cols, false);
    for (int p : piv)
        is_piv[p] = true;
    CycMatrix out(cols - static_cast<int>(piv.size()), cols);
    int r = 0;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f])
            continue;
        // pivot row i reads d_i x_{p_i} + a_{i f} x_f = 0; take x_f = prod d
        BigGauss scale{1, 0};
        for (std::size_t i = 0; i < piv.size(); ++i)
            scale = scale * a[i][piv[i]];
        std::vector<BigGauss> x(cols, BigGauss{0, 0});
        x[f] = scale;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            BigGauss t = a[i][f] * scale;
            t = exact_div(BigGauss{-t.re, -t.im}, a[i][piv[i]]);
            x[piv[i]] = t;
        }
        // remove the common Gaussian-integer content by rational gcd of parts
        cpp_int g = 0;
        for (const auto& v : x) {
            g = gcd(g, abs(v.re));
            g = gcd(g, abs(v.im));
        }
        for (int j = 0; j < cols; ++j) {
            cpp_int re = x[j].re / g, im = x[j].im / g;
            if (re > INT64_MAX || re < INT64_MIN || im > INT64_MAX || im < INT64_MIN)
                throw std::overflow_error("kernel vector exceeds int64");
            out(r, j) = CycInt(static_cast<std::int64_t>(re), static_cast<std::int64_t>(im));
        }
        ++r;
    }
    return out;
}

bool norm_is_power(const CycRatio& r, std::uint64_t q, int* power)
{
    if (r.num.is_zero() || r.den.is_zero())
        return false;
    cpp_int a = cpp_int(r.num.re()) * r.num.re() + cpp_int(r.num.im()) * r.num.im();
    cpp_int b = cpp_int(r.den.re()) * r.den.re() + cpp_int(r.den.im()) * r.den.im();
    cpp_int g = gcd(a, b);
    a /= g;
    b /= g;
    if (a != 1 && b != 1)
        return false;
    cpp_int t = a == 1 ? b : a;
    int k = 0;
    while (t > 1) {
        if (t % q != 0)
            return false;
        t /= q;
        ++k;
    }
    if (power)
        *power = a == 1 ? -k : k;
    return true;
}

int ratio_mu8_index(const CycRatio& r)
{
    if (r.den.is_zero())
        return -1;
    return (r.num * r.den.conj()).mu8_index();
}

} // namespace weil2
