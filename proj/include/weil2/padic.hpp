#pragma once

#include "weil2/heisenberg.hpp"
#include "weil2/qforms.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace weil2 {

// Finite data of a lattice M = O^{2n} over an unramified O with O/4O = R.
// phi is recorded through M/2M = k^{2n}: phi(m) in (1/2)O/O = k, and its
// polar must be the standard pairing <m1, m2> mod 2 (a_i b'_i + b_i a'_i).
// Vectors are packed like Heis vectors: a-part in coordinates 0..n-1.
class LatticeModel {
public:
    // throws std::invalid_argument unless polar(phi) is the standard pairing
    LatticeModel(const Field& f, int n, const KQuadForm& phi);
    // phi(a, b) = a.b
    static LatticeModel standard(const Field& f, int n);
    // every phi with the standard polar: a.b + sum c_i x_i^2
    static std::vector<LatticeModel> enumerate(const Field& f, int n);

    const Field& field() const { return h_.field(); }
    int n() const { return h_.n(); }
    const Heis& heis() const { return h_; }
    const KQuadForm& form() const { return form_; }

    std::uint32_t phi(std::uint32_t m) const { return table_[m]; }
    std::uint32_t pairing(std::uint32_t x, std::uint32_t y) const { return h_.omega_k(x, y); }
    // chi(phi(m) + z) for z in (1/2)O/O = k
    CycInt chi(std::uint32_t m, std::uint32_t z) const;
    // Arf class of phi
    int arf_class() const;

private:
    Heis h_;
    KQuadForm form_;
    std::vector<std::uint32_t> table_;
};

// all packed elements of the row span
std::vector<std::uint32_t> span_elements(const Heis& h, const KMatrix& rows);

// k-lagrangians of M/2M on which phi vanishes
std::vector<KMatrix> vanishing_lagrangians(const LatticeModel& lm);

// Invariants under M1, 2M <= M1 <= M, given by rows spanning M1/2M. The
// space is spanned by delta functions at the u in k^{2n} with
// chi(phi(m) + <u, m>) = 1 for all m in M1/2M.
struct FixedSpace {
    int dim = 0;
    std::vector<std::uint32_t> support;
};
// throws std::invalid_argument if the rows are not vectors of M/2M
FixedSpace fixed_space(const LatticeModel& lm, const KMatrix& m1);
// when phi vanishes on M1/2M the support is its orthogonal; otherwise the
// support is empty or a coset of the orthogonal
bool fixed_space_lemma(const LatticeModel& lm, const KMatrix& m1);

// 2M < N < M with N/2M lagrangian and phi = 0 on it, together with a
// symplectic change of basis g sending span(e_1..e_n) onto N/2M.
class NChain {
public:
    // throws std::invalid_argument unless s spans a lagrangian killed by phi
    NChain(const LatticeModel& lm, const KMatrix& s);

    const LatticeModel& model() const { return lm_; }
    const KMatrix& subspace() const { return s_; }
    // columns of g as packed vectors: g e_i, then g e_{n+i}
    const std::vector<std::uint32_t>& adapted_basis() const { return g_; }
    std::uint32_t to_original(std::uint32_t x) const;
    // phi in the adapted coordinates; zero on the a-part
    std::uint32_t phi_adapted(std::uint32_t x) const { return adapted_[x]; }
    // N^perp = (1/2)N, i.e. N/2M is its own orthogonal
    bool self_orthogonal() const;

private:
    LatticeModel lm_;
    KMatrix s_;
    std::vector<std::uint32_t> g_;
    std::vector<std::uint32_t> adapted_;
};

// H(N^perp / N) in adapted coordinates. A point of N^perp is y = (a/2, b)
// with a, b in R^n, the center is (1/4)O/O = R, and
// (y1, z1)(y2, z2) = (y1 + y2, z1 + z2 + a1.b2 - b1.a2).
// Elements are stored on the canonical representatives (teich a, teich b)
// as HeisElem{packed (a mod 2, b mod 2), z}.
class ReducedHeis {
public:
    explicit ReducedHeis(const NChain& chain);

    const NChain& chain() const { return chain_; }
    const Heis& shape() const { return chain_.model().heis(); }
    std::uint32_t size() const { return shape().size(); }

    HeisElem reduce(const RVector& a, const RVector& b, const Witt2& z) const;
    HeisElem mul(const HeisElem& x, const HeisElem& y) const;
    HeisElem inv(const HeisElem& x) const;
    // delta(m, -phi(m)) for a lift m = (a, b) in R^{2n} of a point of M
    HeisElem delta(const RVector& a, const RVector& b) const;
    // tau on M/N = {(0, b)}
    HeisElem tau(std::uint32_t v) const;
    // z-part of (v1, 0)(v2, 0)
    Witt2 cocycle(std::uint32_t v1, std::uint32_t v2) const;

private:
    NChain chain_;
};

// The model of H(N^perp/N) induced from (M/N, tau): functions with
// F(tau(x) (0, z) h) = psi(tr z) F(h), basis indexed by reps (a, 0).
class ReducedModel {
public:
    explicit ReducedModel(const ReducedHeis& red);

    const ReducedHeis& group() const { return red_; }
    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<std::uint32_t>& reps() const { return reps_; }
    const HFun& basis_function(int j) const { return basis_[j]; }
    // true iff f obeys the transformation law
    bool contains(const HFun& f) const;
    std::vector<CycInt> coords(const HFun& f) const;
    CycMatrix rho(const HeisElem& x) const;

private:
    ReducedHeis red_;
    std::vector<std::uint32_t> reps_;
    std::vector<HFun> basis_;
};

struct Reduction {
    // theta(v, z) = (v, z + shift[v]) is an isomorphism onto Heis(f, n)
    std::vector<Witt2> shift;
    // theta(M/N, tau) as an enhanced lagrangian of Heis(f, n)
    std::optional<EnhLagrangian> lagrangian;
    int model_dim = 0;
    // tau is a homomorphism independent of the lift of m
    bool tau_ok = false;
    // restriction of the delta functions of H^N lands bijectively in the model
    bool restriction_ok = false;
    // F -> F o theta^{-1} into Model(h, L) commutes with every generator
    bool equivariant = false;
    // dimension of the space of intertwiners found by linear solve
    int solution_dim = 0;
    // the explicit intertwiner spans that space
    bool solution_matches = false;
    bool ok() const
    {
        return lagrangian && tau_ok && restriction_ok && equivariant && solution_dim == 1 && solution_matches;
    }
};
// h must be the standard Heis(f, n) of the chain's field; throws
// std::logic_error if no theta compatible with the k-scaling exists
Reduction reduce_to_heisenberg(const Heis& h, const NChain& chain);

// sigma(a, b) = a.b splits the push-forward of H(N^perp/N) along
// (1/4)O/O -> (1/4)O/(1/2)O = k; checked on all pairs, or on `samples`
// seeded pairs when samples > 0
bool splitting_push(const ReducedHeis& red, int samples = 0, std::uint64_t seed = 0);

// invariant dimensions for one phi; dim_n is -1 when no chain exists
struct LemmaReport {
    int arf = 0;
    int chains = 0;
    int dim_m = -1;
    int dim_n = -1;
    int dim_2m = -1;
    bool lemma_ok = false;
};
LemmaReport lemma_report(const LatticeModel& lm);

} // namespace weil2
