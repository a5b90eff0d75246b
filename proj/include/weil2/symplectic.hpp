#pragma once

#include "weil2/rmodlin.hpp"

#include <optional>
#include <random>
#include <vector>

namespace weil2 {

// R^{2n} with basis (e_1..e_n, e_{-1}..e_{-n}) and the standard form
// omega~(e_i, e_{-j}) = delta_ij. Vectors are coordinate rows; group elements
// act on the left of column vectors, so a basis matrix B maps to B g^T.
class SympSpace {
public:
    SympSpace(const Field& f, int n);

    const Field& field() const { return *f_; }
    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    std::uint32_t q() const { return f_->order(); }
    const RMatrix& omega() const { return omega_; }

    Witt2 omega(const RVector& x, const RVector& y) const;
    RVector basis_vector(int i) const;

private:
    const Field* f_;
    int n_;
    RMatrix omega_;
};

RMatrix standard_omega(const Field& f, int n);
bool is_symplectic(const RMatrix& g);

// A free lagrangian direct summand, stored in canonical echelon form.
class Lagrangian {
public:
    explicit Lagrangian(const RMatrix& basis);

    static Lagrangian standard(const Field& f, int n);
    static Lagrangian dual_standard(const Field& f, int n);

    const RMatrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }
    int n() const { return basis_.rows(); }

    bool contains(const RVector& v) const;
    // coefficients c with v = c * basis
    std::optional<RVector> coords(const RVector& v) const;
    std::vector<RVector> elements() const;
    Lagrangian apply(const RMatrix& g) const;
    KMatrix reduction() const { return reduce_mod2(basis_); }

    bool operator==(const Lagrangian& o) const { return basis_ == o.basis_; }
    bool operator<(const Lagrangian& o) const { return basis_ < o.basis_; }

private:
    RMatrix basis_;
};

bool is_lagrangian(const RMatrix& b, const SympSpace& v);
RMatrix canonical_basis(const RMatrix& b);
bool transverse(const Lagrangian& a, const Lagrangian& b);
FgRModule intersect(const Lagrangian& a, const Lagrangian& b);
// generators (rows) of the intersection inside R^{2n}
RMatrix intersection_generators(const Lagrangian& a, const Lagrangian& b);

std::vector<Lagrangian> enumerate_lagrangians(const SympSpace& v);
Lagrangian random_lagrangian(const SympSpace& v, std::uint64_t seed);

RMatrix random_symmetric(const Field& f, int n, std::mt19937_64& rng);
RMatrix random_gl(const Field& f, int n, std::mt19937_64& rng);
RMatrix random_sp(const SympSpace& v, std::mt19937_64& rng, int length = 0);
// [[I,S],[0,I]], [[I,0],[S,I]], [[A,0],[0,A^-T]]
RMatrix sp_upper(const RMatrix& s);
RMatrix sp_lower(const RMatrix& s);
RMatrix sp_levi(const RMatrix& a);

// Symplectic h with h e_i = l_i (rows of L) and h e_{-i} in a transverse
// coordinate lagrangian.
RMatrix adapted_symplectic_basis(const Lagrangian& l);
// coordinate lagrangian spanned by e_i (i in mask) and e_{-j} (j not in mask)
Lagrangian coordinate_lagrangian(const Field& f, int n, unsigned mask);

struct PFactor {
    RMatrix adapt;
    RMatrix gl;
    RMatrix sym;
};
// g = adapt * levi(gl) * upper(sym) * adapt^-1 when g preserves L
std::optional<PFactor> p_stabilizer_factor(const RMatrix& g, const Lagrangian& l);
RMatrix p_recompose(const PFactor& p);

} // namespace weil2
