#pragma once

#include "weil2/heisenberg.hpp"
#include "weil2/qforms.hpp"
#include "weil2/symplectic.hpp"

#include <optional>
#include <vector>

namespace weil2 {

// K = ker((+) L_i -> V~). An element is the concatenation (c_1..c_m) of
// coefficient vectors, with v_i = c_i B_i for the basis B_i of L_i.
// q(v, w) = sum_i omega~(v_i, w^_i) with the antiderivative
// w^_i = w_1 + ... + w_i, i.e. fixed to vanish on the edge {m, 1}.
class MaslovKernel {
public:
    explicit MaslovKernel(std::vector<Lagrangian> tuple);

    const std::vector<Lagrangian>& tuple() const { return tuple_; }
    const Field& field() const { return tuple_.front().field(); }
    int m() const { return static_cast<int>(tuple_.size()); }
    int n() const { return tuple_.front().n(); }
    // generators of K as rows of length m n
    const RMatrix& generators() const { return gens_; }
    const FgRModule& module() const { return module_; }
    bool is_free() const;

    RVector component(const RVector& v, int i) const;
    bool contains(const RVector& v) const;
    // coordinates in the generators; nullopt outside K
    std::optional<RVector> coords(const RVector& v) const;
    // row-wise coords; throws std::invalid_argument if a row is outside K
    RMatrix coords_of(const RMatrix& rows) const;

    // the form on ambient vectors with antiderivative shifted by `constant`
    Witt2 pairing(const RVector& v, const RVector& w, const std::optional<RVector>& constant = std::nullopt) const;
    RMatrix gram_with_constant(const RVector& constant) const;

private:
    std::vector<Lagrangian> tuple_;
    RMatrix gens_;
    FgRModule module_;
};

// throws std::invalid_argument for m < 2 or mismatched ambient spaces
MaslovKernel maslov_kernel(const std::vector<Lagrangian>& tuple);
// Gauss sum over K (x) k; throws std::invalid_argument unless K is free
CycInt maslov_gauss(const MaslovKernel& k, int threads = 1);

// T = K / Im d, d(x) = x at i and -x at i+1 for x in L_i cap L_{i+1}.
class MaslovQuotient {
public:
    explicit MaslovQuotient(MaslovKernel k);

    const MaslovKernel& kernel() const { return k_; }
    // Im d in the generator coordinates of K
    const RMatrix& boundary() const { return boundary_; }
    const FgRModule& module() const { return module_; }

    bool boundary_in_radical() const;
    // {y : b(x, y) = 0 for all x} = {0}; guarded enumeration
    bool is_perfect() const;

private:
    MaslovKernel k_;
    RMatrix boundary_;
    FgRModule module_;
};

// L3 = {r(x) - x : x in L2} with r: L2 -> L1; phi(x, y) = omega~(r(x), y).
struct PiU {
    Lagrangian l2;
    // in the basis of L2
    RMatrix phi;
    // r(u B2) = u r B1
    RMatrix r;
};
// throws std::invalid_argument unless L1 cap L2 = L1 cap L3 = 0
PiU pi_U(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3);
// x -> (-r(x), x, r(x) - x) is an isometry (L2, phi) -> K_{1,2,3} and
// L2 cap L3 is the kernel of phi
bool verify_pi_U(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3);

struct LagrangianFromQ {
    Lagrangian lt;
    EnhLagrangian enh;
};
// L3 with pi_U(L1, L2, L3) = Q on L2, and its epsilon-enhancement
LagrangianFromQ lagrangian_from_qform(const Heis& h, const Lagrangian& l1, const Lagrangian& l2, const QFormR& q);

// (v_1..v_m) -> (v_{s+1}..v_m, v_1..v_s) onto K of the rotated tuple
bool verify_shift(const MaslovKernel& k, int s);
// (v_1..v_m) -> (v_m..v_1) onto (K_{m..1}, -q)
bool verify_reversal(const MaslovKernel& k);

struct DihedralReport {
    bool shift_ok = false;
    bool reversal_ok = false;
};
DihedralReport isometry_dihedral(const MaslovKernel& k);

// Splitting at position `split` (0-based, 1 <= split <= m-2):
// K_{1..k} (+) K_{1,k..m} -> K_{1..m} with k = split + 1.
struct ChainReport {
    // L_1 cap L_k = 0: the map is a bijective isometry
    bool transverse = false;
    // otherwise: isometry onto I^perp / I for the isotropic image I of L_1 cap L_k
    bool ok = false;
    // gamma(K_{1..k}) gamma(K_{1,k..m}) = gamma(K_{1..m}) when all are free
    std::optional<bool> gauss_ok;
};
ChainReport isometry_chain(const std::vector<Lagrangian>& tuple, int split);

struct CocycleReport {
    bool steps_ok = false;
    bool gauss_ok = false;
    // gamma(123) gamma(013) and gamma(012) gamma(023)
    CycInt lhs{0}, rhs{0};
};
// throws std::invalid_argument unless pairwise transverse
CocycleReport maslov_cocycle(const Lagrangian& l0, const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3);

// (v_1..v_{m-1}) -> (v_1..v_{m-1}, 0)
bool verify_inclusion(const std::vector<Lagrangian>& tuple);

struct NewIsometryReport {
    bool dihedral_ok = false;
    bool d_free_isotropic = false;
    // {n'_1 = n'_2} is the orthogonal of D
    bool d_perp_ok = false;
    bool isometry_ok = false;
    bool ok() const { return dihedral_ok && d_free_isotropic && d_perp_ok && isometry_ok; }
};
// D^perp / D in K_{N'',M,N',L} (+) K_{N',M,N,L} against K_{N'',M,N,L}; throws
// std::invalid_argument unless every N is transverse to L and M
NewIsometryReport isometry_new(const Lagrangian& n, const Lagrangian& n1, const Lagrangian& n2, const Lagrangian& l,
                               const Lagrangian& m);

struct ThetaReport {
    std::uint64_t triples = 0;
    std::uint64_t classes = 0;
    bool ok = false;
};
// gamma(K_{N,L,M}) over all N transverse to L and M depends only on
// (L, M, pi_U(N, L, M))
ThetaReport theta_descent(const SympSpace& v);

// n = 1, L = <e_1 + b e_2>, L1 = <e_1>, L2 = <e_2>, b a unit
struct N1Case {
    Witt2 b;
    CycInt c{0};
    CycInt gauss{0};
    // (b_1 b_0^-2, 0)
    Witt2 h;
};
std::vector<N1Case> n1_cases(const Heis& h);
// c = gauss(-b x~^2) and c(b) / c(b') = psi(tr h(b) - tr h(b'))
bool n1_suite_ok(const std::vector<N1Case>& cases);

} // namespace weil2
