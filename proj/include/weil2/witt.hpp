#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace weil2 {

// GF(2^m) in a polynomial basis. Instances are interned and never freed, so
// elements may hold a raw pointer to their field.
class Field {
public:
    static const Field& get(int m);
    static const Field& get(int m, std::uint32_t modulus);
    static std::uint32_t default_modulus(int m);

    int m() const { return m_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t order() const { return 1u << m_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return table_.empty() ? slow_mul(a, b) : table_[(a << m_) | b];
    }
    std::uint32_t sqr(std::uint32_t a) const { return mul(a, a); }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t sqrt(std::uint32_t a) const;
    // absolute trace to F_2
    unsigned trace(std::uint32_t a) const;

private:
    Field(int m, std::uint32_t modulus);
    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;

    int m_;
    std::uint32_t modulus_;
    std::vector<std::uint16_t> table_;
};

class Gf2m {
public:
    Gf2m(const Field& f, std::uint32_t bits);

    const Field& field() const { return *f_; }
    std::uint32_t bits() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Gf2m operator+(const Gf2m& o) const;
    Gf2m operator-(const Gf2m& o) const { return *this + o; }
    Gf2m operator*(const Gf2m& o) const;
    Gf2m& operator+=(const Gf2m& o) { return *this = *this + o; }
    Gf2m& operator*=(const Gf2m& o) { return *this = *this * o; }
    bool operator==(const Gf2m& o) const { return f_ == o.f_ && v_ == o.v_; }

    Gf2m inverse() const;
    Gf2m square() const { return {*f_, f_->sqr(v_)}; }
    Gf2m sqrt() const { return {*f_, f_->sqrt(v_)}; }
    unsigned trace() const { return f_->trace(v_); }

private:
    const Field* f_;
    std::uint32_t v_;
};

class Zmod4 {
public:
    constexpr Zmod4() = default;
    constexpr explicit Zmod4(int v) : v_(static_cast<std::uint8_t>(((v % 4) + 4) % 4)) {}

    constexpr int value() const { return v_; }
    constexpr Zmod4 operator+(Zmod4 o) const { return Zmod4(v_ + o.v_); }
    constexpr Zmod4 operator-(Zmod4 o) const { return Zmod4(v_ - o.v_); }
    constexpr Zmod4 operator-() const { return Zmod4(-v_); }
    constexpr Zmod4 operator*(Zmod4 o) const { return Zmod4(v_ * o.v_); }
    constexpr bool operator==(const Zmod4&) const = default;

private:
    std::uint8_t v_ = 0;
};

// Length-two Witt vector (a0, a1) over GF(2^m).
class Witt2 {
public:
    Witt2(const Field& f, std::uint32_t a0 = 0, std::uint32_t a1 = 0);
    Witt2(const Gf2m& a0, const Gf2m& a1);

    static Witt2 zero(const Field& f) { return {f, 0, 0}; }
    static Witt2 one(const Field& f) { return {f, 1, 0}; }
    static Witt2 two(const Field& f) { return {f, 0, 1}; }
    static Witt2 from_int(const Field& f, int k);
    static Witt2 teichmuller(const Gf2m& a) { return {a.field(), a.bits(), 0}; }

    const Field& field() const { return *f_; }
    std::uint32_t a0() const { return a0_; }
    std::uint32_t a1() const { return a1_; }
    Gf2m c0() const { return {*f_, a0_}; }
    Gf2m c1() const { return {*f_, a1_}; }

    bool is_zero() const { return a0_ == 0 && a1_ == 0; }
    bool is_unit() const { return a0_ != 0; }
    bool in_2R() const { return a0_ == 0; }

    Witt2 operator+(const Witt2& o) const;
    Witt2 operator-(const Witt2& o) const { return *this + (-o); }
    Witt2 operator-() const;
    Witt2 operator*(const Witt2& o) const;
    Witt2& operator+=(const Witt2& o) { return *this = *this + o; }
    Witt2& operator-=(const Witt2& o) { return *this = *this - o; }
    Witt2& operator*=(const Witt2& o) { return *this = *this * o; }
    bool operator==(const Witt2& o) const { return f_ == o.f_ && a0_ == o.a0_ && a1_ == o.a1_; }

    Witt2 inverse() const;
    Witt2 frobenius() const;
    // x mod 2, and the map k -> 2R, a -> (0, a^2)
    Gf2m reduce() const { return c0(); }
    static Witt2 twice(const Gf2m& a) { return {a.field(), 0, a.field().sqr(a.bits())}; }

    // dense index in [0, q^2), a0 + q*a1
    std::uint32_t index() const { return a0_ | (a1_ << f_->m()); }
    static Witt2 from_index(const Field& f, std::uint32_t idx);

private:
    const Field* f_;
    std::uint32_t a0_, a1_;
};

// Exact Gaussian integer. Arithmetic is checked and throws std::overflow_error.
class CycInt {
public:
    constexpr CycInt() = default;
    constexpr CycInt(std::int64_t re, std::int64_t im = 0) : re_(re), im_(im) {}

    static constexpr CycInt i() { return {0, 1}; }

    std::int64_t re() const { return re_; }
    std::int64_t im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator-() const { return *this * CycInt(-1); }
    CycInt operator*(const CycInt& o) const;
    CycInt& operator+=(const CycInt& o) { return *this = *this + o; }
    CycInt& operator-=(const CycInt& o) { return *this = *this - o; }
    CycInt& operator*=(const CycInt& o) { return *this = *this * o; }
    bool operator==(const CycInt&) const = default;

    CycInt conj() const { return {re_, -im_}; }
    std::int64_t norm() const;
    CycInt pow(unsigned e) const;
    bool divisible_by(const CycInt& d) const;
    // exact quotient; throws std::domain_error if d does not divide
    CycInt div_exact(const CycInt& d) const;
    // u with z = u * 8th root of unity power, expressed as index k in 0..7 of
    // ((1+i)/sqrt2)^k if z / |z| is such a root, else -1
    int mu8_index() const;
    bool operator<(const CycInt& o) const { return re_ != o.re_ ? re_ < o.re_ : im_ < o.im_; }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const CycInt& z) { return os << z.str(); }

private:
    std::int64_t re_ = 0, im_ = 0;
};

Witt2 witt_add(const Witt2& x, const Witt2& y);
Witt2 witt_mul(const Witt2& x, const Witt2& y);
Witt2 witt_frobenius(const Witt2& x);
Zmod4 witt_trace(const Witt2& x);
CycInt psi(Zmod4 z);
inline CycInt psi_tr(const Witt2& x) { return psi(witt_trace(x)); }

// (a0,a1) -> a0 + 2 a1 over F_2
Zmod4 to_zmod4(const Witt2& x);
Witt2 from_zmod4(const Field& f2, Zmod4 z);

// all q^2 elements of R in index order
std::vector<Witt2> all_witt(const Field& f);
std::vector<Gf2m> all_gf(const Field& f);

std::ostream& operator<<(std::ostream& os, const Gf2m& x);
std::ostream& operator<<(std::ostream& os, const Witt2& x);
std::ostream& operator<<(std::ostream& os, const Zmod4& x);

} // namespace weil2
