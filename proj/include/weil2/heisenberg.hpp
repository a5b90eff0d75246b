#pragma once

#include "weil2/cycmat.hpp"
#include "weil2/symplectic.hpp"

#include <optional>
#include <vector>

namespace weil2 {

// Element (v, z) of H(V). v is a packed k-vector: coordinate i occupies bits
// [i*m, (i+1)*m), so vector addition is XOR.
struct HeisElem {
    std::uint32_t v;
    Witt2 z;
    bool operator==(const HeisElem& o) const { return v == o.v && z == o.z; }
};

// H(V) = V x R with (v1,z1)(v2,z2) = (v1+v2, z1+z2+beta(v1,v2)),
// beta(x,y) = 2 beta~(x~,y~).
class Heis {
public:
    Heis(const Field& f, int n);
    Heis(const Field& f, int n, const RMatrix& beta_tilde);

    const Field& field() const { return *f_; }
    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    std::uint32_t q() const { return f_->order(); }
    std::uint32_t vsize() const { return vsize_; }
    std::uint32_t size() const { return vsize_ * q() * q(); }
    const RMatrix& beta_tilde() const { return beta_tilde_; }
    const SympSpace& space() const { return space_; }

    std::uint32_t pack(const std::vector<std::uint32_t>& coords) const;
    std::vector<std::uint32_t> unpack(std::uint32_t v) const;
    std::uint32_t coord(std::uint32_t v, int i) const { return (v >> (i * f_->m())) & (q() - 1); }
    std::uint32_t scale(std::uint32_t a, std::uint32_t v) const;
    std::uint32_t reduce(const RVector& x) const;
    RVector lift(std::uint32_t v) const;
    std::uint32_t basis_vector(int i) const { return 1u << (i * f_->m()); }
    // column-convention action of a k-matrix
    std::uint32_t apply(const KMatrix& g, std::uint32_t v) const;

    // beta~ mod 2 and omega~ mod 2 as k-bilinear forms
    std::uint32_t beta_k(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t omega_k(std::uint32_t x, std::uint32_t y) const;
    Witt2 beta(std::uint32_t x, std::uint32_t y) const { return Witt2(*f_, 0, f_->sqr(beta_k(x, y))); }
    Witt2 omega(std::uint32_t x, std::uint32_t y) const { return Witt2(*f_, 0, f_->sqr(omega_k(x, y))); }

    HeisElem identity() const { return {0, Witt2::zero(*f_)}; }
    HeisElem central(const Witt2& z) const { return {0, z}; }
    HeisElem mul(const HeisElem& a, const HeisElem& b) const;
    HeisElem inv(const HeisElem& a) const;
    std::uint32_t index(const HeisElem& h) const { return h.v * q() * q() + h.z.index(); }
    HeisElem elem(std::uint32_t idx) const;
    // (a e_i, 0) for a in an F_2-basis of k, and (0, 1)
    std::vector<HeisElem> generators() const;

private:
    const Field* f_;
    int n_;
    std::uint32_t vsize_;
    RMatrix beta_tilde_;
    SympSpace space_;
    KMatrix bk_;
    std::vector<std::uint32_t> beta_table_;
};

using HFun = std::vector<CycInt>;

HFun right_translate(const Heis& h, const HFun& f, const HeisElem& g);

class AspElement;

// Enhanced lagrangian (L, alpha); tau(x) = (x, alpha(x)) is a homomorphism.
class EnhLagrangian {
public:
    EnhLagrangian(const Heis& h, const KMatrix& basis, const std::vector<Witt2>& alpha_on_basis);
    static EnhLagrangian epsilon(const Heis& h, const Lagrangian& lt);

    const Heis& heis() const { return *h_; }
    const KMatrix& basis() const { return basis_; }
    const std::vector<Witt2>& alpha_basis() const { return alpha_basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const std::vector<std::uint32_t>& elements() const { return elements_; }

    bool contains(std::uint32_t v) const { return alpha_[v] >= 0; }
    Witt2 alpha(std::uint32_t v) const;
    HeisElem tau(std::uint32_t x) const { return {x, alpha(x)}; }
    // x in L with w - x in the coordinate complement of the pivot columns
    std::uint32_t projection(std::uint32_t w) const;

    EnhLagrangian apply(const AspElement& g) const;
    // alpha(l1+l2)-alpha(l1)-alpha(l2) = beta(l1,l2) and the scaling rule
    bool is_valid() const;

    bool operator==(const EnhLagrangian& o) const;
    bool same_lagrangian(const EnhLagrangian& o) const { return basis_ == o.basis_; }

private:
    const Heis* h_;
    KMatrix basis_;
    std::vector<Witt2> alpha_basis_;
    std::vector<int> pivots_;
    std::vector<std::int32_t> alpha_;
    std::vector<std::uint32_t> elements_;
};

// all enhancements of a k-lagrangian (a torsor of size q^n)
std::vector<EnhLagrangian> all_enhancements(const Heis& h, const KMatrix& l);
std::vector<KMatrix> enumerate_k_lagrangians(const Heis& h);
std::vector<EnhLagrangian> enumerate_enhanced(const Heis& h);

// (g, alpha) acting on H(V) by (v,z) -> (gv, z + alpha(v)).
class AspElement {
public:
    AspElement(const Heis& h, const KMatrix& g, std::vector<Witt2> alpha);
    static AspElement identity(const Heis& h);
    static AspElement xi(const Heis& h, const RMatrix& gt);
    // extend values on the standard basis by the two defining rules
    static AspElement from_basis(const Heis& h, const KMatrix& g, const std::vector<Witt2>& alpha_on_basis);

    const Heis& heis() const { return *h_; }
    const KMatrix& g() const { return g_; }
    Witt2 alpha(std::uint32_t v) const { return alpha_[v]; }
    std::uint32_t apply_v(std::uint32_t v) const { return img_[v]; }
    HeisElem act(const HeisElem& x) const { return {img_[x.v], x.z + alpha_[x.v]}; }

    // this after o
    AspElement operator*(const AspElement& o) const;
    AspElement inverse() const;
    bool is_valid() const;
    bool operator==(const AspElement& o) const { return g_ == o.g_ && alpha_ == o.alpha_; }

private:
    const Heis* h_;
    KMatrix g_;
    std::vector<Witt2> alpha_;
    std::vector<std::uint32_t> img_;
};

KMatrix symplectic_mod2(const RMatrix& gt);
// all of ASp(V) by brute force over k-matrices; guarded
std::vector<AspElement> enumerate_asp(const Heis& h);

// The model H_L: functions with f(z tau(x) h) = psi(tr z) f(h), stored on all
// of H(V). Basis function j is supported on the coset of (v_j, 0) with v_j
// running over the coordinate complement of L.
class Model {
public:
    Model(const Heis& h, const EnhLagrangian& l);

    const Heis& heis() const { return *h_; }
    const EnhLagrangian& lagrangian() const { return l_; }
    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<std::uint32_t>& reps() const { return reps_; }
    HeisElem rep(int j) const { return {reps_[j], Witt2::zero(h_->field())}; }

    // value of basis function j at x
    CycInt eval_basis(int j, const HeisElem& x) const;
    HFun basis_function(int j) const;
    std::vector<CycInt> coords(const HFun& f) const;
    HFun from_coords(const std::vector<CycInt>& c) const;
    bool contains(const HFun& f) const;
    // matrix of right translation by x in the basis
    CycMatrix rho(const HeisElem& x) const;

private:
    const Heis* h_;
    EnhLagrangian l_;
    std::vector<std::uint32_t> reps_;
    std::vector<std::int32_t> rep_index_;
};

// dimension over Q(i) of the commutant of rho(H)
int commutant_dim(const Model& m);
// matrix of f -> (f(g^{-1} .)) from `from` to `to`; to must model g.L
CycMatrix asp_transport(const Model& from, const Model& to, const AspElement& g);

} // namespace weil2
