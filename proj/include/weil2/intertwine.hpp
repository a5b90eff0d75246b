#pragma once

#include "weil2/heisenberg.hpp"
#include "weil2/qforms.hpp"

#include <optional>

namespace weil2 {

// Operator H_source -> H_target as a matrix in the Model bases (rows: target).
struct IntertwinerOp {
    EnhLagrangian source;
    EnhLagrangian target;
    CycMatrix matrix;
};

// rho_target(h) F = F rho_source(h) for the generators of H(V)
bool commutes_with_heis(const IntertwinerOp& op);

// (F f)(h) = sum_{m in L1} f(tau_1(m) h), from H_L2 to H_L1
IntertwinerOp op_F(const EnhLagrangian& l1, const EnhLagrangian& l2);

// alpha_2(x) - alpha_1(x) = Fr(omega(x, w)) on L1 cap L2
bool is_flat_w(const EnhLagrangian& l1, const EnhLagrangian& l2, std::uint32_t w);
// lexicographically least valid w, coordinate 0 most significant
std::optional<std::uint32_t> least_flat_w(const EnhLagrangian& l1, const EnhLagrangian& l2);
// sum over L1 / (L1 cap L2) of f((w,0) tau_1(x) h); throws std::logic_error
// when no valid w exists and std::invalid_argument for an invalid given w
IntertwinerOp op_F_flat(const EnhLagrangian& l1, const EnhLagrangian& l2, std::optional<std::uint32_t> w = std::nullopt);

// the map r: L2 -> L1 with L3 = {r(m) + m}, as a table indexed by packed m
// (entries outside L2 are zero); throws unless L1 cap L2 = L1 cap L3 = 0
std::vector<std::uint32_t> graph_map(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3);
// z-part of tau_3(r(m) - m) tau_2(m) tau_1(-r(m))
Witt2 q123_value(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3, std::uint32_t m);
// the form above in the coordinates of the basis rows of L2
QFormR q123(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3);
CycInt c123(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3);

struct CompositionReport {
    CycInt c;
    // F12 F23 = C F13
    bool product_ok = false;
    // C F21 F13 = q^n F23
    bool inverse_ok = false;
};
CompositionReport verify_composition(const EnhLagrangian& l1, const EnhLagrangian& l2, const EnhLagrangian& l3);

// psi(tr z) at tau_L(l) tau_M(m) z; L and M transverse
HFun f0_function(const EnhLagrangian& l, const EnhLagrangian& m);
// (f*g)(x) = sum_y f(x y^-1) g(y)
HFun convolve(const Heis& h, const HFun& f, const HFun& g, int threads = 1);

// g -> M[g] = F_flat(L, gL) o (f -> f(g^-1 .)) on H_L
class Metaplectic {
public:
    explicit Metaplectic(const EnhLagrangian& base);

    const Model& model() const { return model_; }
    CycMatrix operator_of(const AspElement& g) const;
    // rho(g h) M[g] = M[g] rho(h) for the generators h
    bool is_metaplectic(const AspElement& g, const CycMatrix& mg) const;
    // c with M[g] M[h] = c M[gh]; throws std::logic_error if not a scalar
    CycRatio cocycle(const AspElement& g, const AspElement& h) const;

private:
    Model model_;
};

CycRatio metaplectic_cocycle(const AspElement& g, const AspElement& h, const EnhLagrangian& base);
// c(g,h) c(gh,k) = c(g,hk) c(h,k)
bool cocycle_identity(const Metaplectic& mp, const AspElement& g, const AspElement& h, const AspElement& k);
bool ratio_equal(const CycRatio& a, const CycRatio& b);

} // namespace weil2
