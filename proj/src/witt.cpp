#include "weil2/witt.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace weil2 {

namespace {

int degree(std::uint32_t p)
{
    int d = -1;
    while (p) {
        p >>= 1;
        ++d;
    }
    return d;
}

bool is_irreducible(std::uint32_t p, int m)
{
    // trial division by every polynomial of degree 1..m/2
    for (std::uint32_t d = 2; d < (1u << (m / 2 + 1)); ++d) {
        int dd = degree(d);
        if (dd < 1 || dd > m / 2)
            continue;
        std::uint32_t r = p;
        while (degree(r) >= dd)
            r ^= d << (degree(r) - dd);
        if (r == 0)
            return false;
    }
    return true;
}

void check_same(const Field* a, const Field* b)
{
    if (a != b)
        throw std::invalid_argument("field context mismatch");
}

std::int64_t add_ck(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("CycInt overflow");
    return r;
}

std::int64_t sub_ck(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("CycInt overflow");
    return r;
}

std::int64_t mul_ck(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("CycInt overflow");
    return r;
}

} // namespace

std::uint32_t Field::default_modulus(int m)
{
    static const std::uint32_t table[] = {0,       0b11,     0b111,     0b1011,    0b10011,  0b100101,
                                          0b1000011, 0b10000011, 0b100011011, 0b1000010001, 0b10000001001,
                                          0b100000000101, 0b1000001010011};
    if (m < 1 || m > 12)
        throw std::invalid_argument("unsupported field degree");
    return table[m];
}

const Field& Field::get(int m) { return get(m, default_modulus(m)); }

const Field& Field::get(int m, std::uint32_t modulus)
{
    static std::mutex mu;
    static std::map<std::pair<int, std::uint32_t>, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, modulus);
    auto it = cache.find(key);
    if (it != cache.end())
        return *it->second;
    if (m < 1 || m > 12 || degree(modulus) != m || !is_irreducible(modulus, m))
        throw std::invalid_argument("modulus is not an irreducible polynomial of degree m");
    auto* f = new Field(m, modulus);
    cache.emplace(key, std::unique_ptr<Field>(f));
    return *f;
}

Field::Field(int m, std::uint32_t modulus) : m_(m), modulus_(modulus)
{
    if (m <= 8) {
        std::uint32_t q = order();
        table_.resize(static_cast<std::size_t>(q) * q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                table_[(a << m_) | b] = static_cast<std::uint16_t>(slow_mul(a, b));
    }
}

std::uint32_t Field::slow_mul(std::uint32_t a, std::uint32_t b) const
{
    std::uint32_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (1u << m_))
            a ^= modulus_;
    }
    return r;
}

std::uint32_t Field::inv(std::uint32_t a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero");
    // a^(q-2)
    std::uint32_t r = 1, base = a, e = order() - 2;
    while (e) {
        if (e & 1)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::uint32_t Field::sqrt(std::uint32_t a) const
{
    // a^(2^(m-1))
    for (int i = 0; i + 1 < m_; ++i)
        a = sqr(a);
    return a;
}

unsigned Field::trace(std::uint32_t a) const
{
    std::uint32_t t = 0, x = a;
    for (int i = 0; i < m_; ++i) {
        t ^= x;
        x = sqr(x);
    }
    return t & 1u;
}

Gf2m::Gf2m(const Field& f, std::uint32_t bits) : f_(&f), v_(bits)
{
    if (bits >= f.order())
        throw std::out_of_range("field element out of range");
}

Gf2m Gf2m::operator+(const Gf2m& o) const
{
    check_same(f_, o.f_);
    return {*f_, v_ ^ o.v_};
}

Gf2m Gf2m::operator*(const Gf2m& o) const
{
    check_same(f_, o.f_);
    return {*f_, f_->mul(v_, o.v_)};
}

Gf2m Gf2m::inverse() const { return {*f_, f_->inv(v_)}; }

Witt2::Witt2(const Field& f, std::uint32_t a0, std::uint32_t a1) : f_(&f), a0_(a0), a1_(a1)
{
    if (a0 >= f.order() || a1 >= f.order())
        throw std::out_of_range("Witt component out of range");
}

Witt2::Witt2(const Gf2m& a0, const Gf2m& a1) : f_(&a0.field()), a0_(a0.bits()), a1_(a1.bits())
{
    check_same(&a0.field(), &a1.field());
}

Witt2 Witt2::from_int(const Field& f, int k)
{
    static const std::uint32_t c[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    int r = ((k % 4) + 4) % 4;
    return {f, c[r][0], c[r][1]};
}

Witt2 Witt2::from_index(const Field& f, std::uint32_t idx)
{
    std::uint32_t mask = f.order() - 1;
    return {f, idx & mask, (idx >> f.m()) & mask};
}

Witt2 Witt2::operator+(const Witt2& o) const
{
    check_same(f_, o.f_);
    Witt2 r = *this;
    r.a0_ = a0_ ^ o.a0_;
    r.a1_ = a1_ ^ o.a1_ ^ f_->mul(a0_, o.a0_);
    return r;
}

Witt2 Witt2::operator-() const
{
    Witt2 r = *this;
    r.a1_ = a1_ ^ f_->sqr(a0_);
    return r;
}

Witt2 Witt2::operator*(const Witt2& o) const
{
    check_same(f_, o.f_);
    Witt2 r = *this;
    r.a0_ = f_->mul(a0_, o.a0_);
    r.a1_ = f_->mul(f_->sqr(a0_), o.a1_) ^ f_->mul(a1_, f_->sqr(o.a0_));
    return r;
}

Witt2 Witt2::inverse() const
{
    if (!is_unit())
        throw std::domain_error("Witt vector is not a unit");
    std::uint32_t c0 = f_->inv(a0_);
    std::uint32_t c04 = f_->sqr(f_->sqr(c0));
    return {*f_, c0, f_->mul(a1_, c04)};
}

Witt2 Witt2::frobenius() const { return {*f_, f_->sqr(a0_), f_->sqr(a1_)}; }

CycInt CycInt::operator+(const CycInt& o) const { return {add_ck(re_, o.re_), add_ck(im_, o.im_)}; }

CycInt CycInt::operator-(const CycInt& o) const { return {sub_ck(re_, o.re_), sub_ck(im_, o.im_)}; }

CycInt CycInt::operator*(const CycInt& o) const
{
    return {sub_ck(mul_ck(re_, o.re_), mul_ck(im_, o.im_)), add_ck(mul_ck(re_, o.im_), mul_ck(im_, o.re_))};
}

std::int64_t CycInt::norm() const { return add_ck(mul_ck(re_, re_), mul_ck(im_, im_)); }

CycInt CycInt::pow(unsigned e) const
{
    CycInt r(1), b = *this;
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

bool CycInt::divisible_by(const CycInt& d) const
{
    if (d.is_zero())
        return is_zero();
    CycInt p = *this * d.conj();
    std::int64_t n = d.norm();
    return p.re_ % n == 0 && p.im_ % n == 0;
}

CycInt CycInt::div_exact(const CycInt& d) const
{
    if (d.is_zero() || !divisible_by(d))
        throw std::domain_error("CycInt inexact division");
    CycInt p = *this * d.conj();
    std::int64_t n = d.norm();
    return {p.re_ / n, p.im_ / n};
}

int CycInt::mu8_index() const
{
    if (is_zero())
        return -1;
    if (im_ == 0)
        return re_ > 0 ? 0 : 4;
    if (re_ == 0)
        return im_ > 0 ? 2 : 6;
    if (re_ == im_)
        return re_ > 0 ? 1 : 5;
    if (re_ == -im_)
        return re_ > 0 ? 7 : 3;
    return -1;
}

std::string CycInt::str() const
{
    std::ostringstream os;
    if (im_ == 0)
        os << re_;
    else if (re_ == 0)
        os << (im_ == 1 ? "" : im_ == -1 ? "-" : std::to_string(im_)) << "i";
    else {
        os << re_ << (im_ < 0 ? "-" : "+");
        std::int64_t a = im_ < 0 ? -im_ : im_;
        if (a != 1)
            os << a;
        os << "i";
    }
    return os.str();
}

Witt2 witt_add(const Witt2& x, const Witt2& y) { return x + y; }
Witt2 witt_mul(const Witt2& x, const Witt2& y) { return x * y; }
Witt2 witt_frobenius(const Witt2& x) { return x.frobenius(); }

Zmod4 witt_trace(const Witt2& x)
{
    const Field& f = x.field();
    Witt2 s = Witt2::zero(f), y = x;
    for (int i = 0; i < f.m(); ++i) {
        s += y;
        y = y.frobenius();
    }
    if (s.a0() > 1 || s.a1() > 1)
        throw std::logic_error("trace left the prime field");
    return Zmod4(static_cast<int>(s.a0() + 2 * s.a1()));
}

CycInt psi(Zmod4 z)
{
    static const CycInt v[4] = {CycInt(1), CycInt(0, 1), CycInt(-1), CycInt(0, -1)};
    return v[z.value()];
}

Zmod4 to_zmod4(const Witt2& x)
{
    if (x.field().m() != 1)
        throw std::invalid_argument("Z/4 isomorphism needs F_2");
    return Zmod4(static_cast<int>(x.a0() + 2 * x.a1()));
}

Witt2 from_zmod4(const Field& f2, Zmod4 z)
{
    if (f2.m() != 1)
        throw std::invalid_argument("Z/4 isomorphism needs F_2");
    return Witt2::from_int(f2, z.value());
}

std::vector<Witt2> all_witt(const Field& f)
{
    std::vector<Witt2> out;
    std::uint32_t q = f.order();
    out.reserve(static_cast<std::size_t>(q) * q);
    for (std::uint32_t i = 0; i < q * q; ++i)
        out.push_back(Witt2::from_index(f, i));
    return out;
}

std::vector<Gf2m> all_gf(const Field& f)
{
    std::vector<Gf2m> out;
    for (std::uint32_t i = 0; i < f.order(); ++i)
        out.emplace_back(f, i);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Gf2m& x) { return os << x.bits(); }

std::ostream& operator<<(std::ostream& os, const Witt2& x) { return os << "(" << x.a0() << "," << x.a1() << ")"; }

std::ostream& operator<<(std::ostream& os, const Zmod4& x) { return os << x.value(); }

} // namespace weil2
