#pragma once

#include "weil2/cycmat.hpp"
#include "weil2/rmodlin.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace weil2 {

// R-valued form q(x) = x~^T B x~ on L = k^n. Canonical B: symmetric, diagonal
// entries in R, off-diagonal entries Teichmuller (2R part dropped).
class QFormR {
public:
    explicit QFormR(const RMatrix& b);
    static QFormR zero(const Field& f, int n);
    // q(x) = sum b_i x~_i^2
    static QFormR diagonal(const Field& f, const std::vector<Witt2>& d);
    // y,y2,x_1,x_-1,...: (0,eps) y2~^2 + 2 y~ y2~ + y~^2 + 2 sum x~_i x~_-i
    static QFormR normal_form(const Field& f, int n, std::uint32_t eps);

    const Field& field() const { return b_.field(); }
    int n() const { return b_.rows(); }
    const RMatrix& matrix() const { return b_; }

    // x packed: coordinate i in bits [i*m, (i+1)*m)
    Witt2 eval(std::uint32_t x) const;
    Witt2 eval(const std::vector<std::uint32_t>& x) const;
    // value at an arbitrary lift
    Witt2 eval_lift(const RVector& x) const { return bilinear(x, b_, x); }
    // B mod 2
    KMatrix polar() const { return reduce_mod2(b_); }

    // x -> q(g x)
    QFormR transformed(const RMatrix& g) const;
    QFormR transformed(const KMatrix& g) const { return transformed(teichmuller_lift(g)); }
    QFormR scaled(const Witt2& s) const { return QFormR(b_.scaled(s)); }
    QFormR direct_sum(const QFormR& o) const;

    bool operator==(const QFormR& o) const { return b_ == o.b_; }
    bool operator<(const QFormR& o) const { return b_ < o.b_; }

    std::uint32_t vsize() const;

private:
    RMatrix b_;
};

std::uint32_t pack_k(const Field& f, const std::vector<std::uint32_t>& x);
std::uint32_t coord_k(const Field& f, std::uint32_t x, int i);

// all elements of Q^!(L^*) with dim L = n (guarded)
std::vector<QFormR> enumerate_qforms(const Field& f, int n);
// polar form non-degenerate
bool is_nondegenerate(const QFormR& q);
// polar form non-degenerate with nonzero additive part (the open orbit U)
bool in_open_orbit(const QFormR& q);

// Additive form x -> (0, <x,y*>^4) = 2 <x,y*>^2~
struct QaForm {
    std::vector<std::uint32_t> ystar;
    Witt2 eval(const Field& f, std::uint32_t x) const;
    QFormR to_qform(const Field& f) const;
};

// sum over L of psi(tr q(x)); threads > 1 splits the domain
CycInt gauss_sum(const QFormR& q, int threads = 1);
// Gauss sum of x -> x~^2 in one variable
CycInt gamma_one(const Field& f);

// Finite dual pair (M, D) with an R-valued pairing, elements indexed 0..size-1.
struct DualPair {
    std::uint32_t m_size = 0;
    std::uint32_t d_size = 0;
    std::function<Witt2(std::uint32_t, std::uint32_t)> pair;
    // index of -m in M
    std::function<std::uint32_t(std::uint32_t)> neg_m;
};

// R^d with the dot product
DualPair free_pair(const Field& f, int d);
// Q^*(L) against Q^!(L^*); D indices are those of qstar_form / qform_index
DualPair qstar_pair(const Field& f, int n);
std::uint32_t qform_index(const QFormR& q);
QFormR qform_from_index(const Field& f, int n, std::uint32_t idx);
// index in Q^*(L) of pi_Q(x)
std::uint32_t pi_q(const Field& f, int n, std::uint32_t x);

// F(d) = sum_m f(m) psi(+-tr <m,d>); throws if the pairing is not perfect
std::vector<CycInt> fourier_w2(const DualPair& p, const std::vector<CycInt>& f, bool inverse_char = false);
// transform of a function on D back to M
std::vector<CycInt> fourier_w2_dual(const DualPair& p, const std::vector<CycInt>& g, bool inverse_char = false);
bool is_perfect(const DualPair& p);

// det B = (d0, d1) with d0 != 0 gives d1 / d0^2
std::optional<std::uint32_t> discriminant(const QFormR& q);

struct Stratum {
    int i = 0;
    bool vanishes_on_kernel = false;
    std::optional<QFormR> induced;
    // rows: k-basis of ker(polar)
    KMatrix kernel;
};
Stratum stratum(const QFormR& q);

struct NormalForm {
    std::uint32_t eps;
    // columns are the new basis y, y2, x_1, x_-1, ...
    KMatrix basis;
};
// nullopt when the search over k fails (possible over finite fields);
// throws std::invalid_argument if q is not in the open orbit or n is odd
std::optional<NormalForm> normal_form_even(const QFormR& q);

// k-valued quadratic form Q(x) = sum_{i<=j} u_ij x_i x_j
struct KQuadForm {
    KMatrix upper;
    const Field& field() const { return upper.field(); }
    int dim() const { return upper.rows(); }
    std::uint32_t eval(std::uint32_t x) const;
    // Q(x+y) - Q(x) - Q(y)
    KMatrix polar() const;
};

// 2R-valued part of q on a subspace spanned by the rows of `sub`, as a k-form
KQuadForm restrict_to_2r(const QFormR& q, const KMatrix& sub);

struct ArfResult {
    std::uint32_t representative;
    // absolute trace of the representative: the class in k / {x^2 + x}
    int cls;
    // e_1, f_1, e_2, f_2, ... with polar(e_i, f_i) = 1
    std::vector<std::uint32_t> symplectic_basis;
};
ArfResult arf(const KQuadForm& q);
int abs_trace(const Field& f, std::uint32_t a);
std::uint64_t count_zeros(const KQuadForm& q);

struct CliffordCenter {
    // coefficients of z over the monomials e_S (S a bitmask), in k
    std::vector<std::uint32_t> z;
    // dimension of the center of the even part
    int center_dim = 0;
    // z^2 + z as a scalar
    std::uint32_t z2_plus_z = 0;
    bool z2_consistent = false;
    // brute-force O(Q) over F_2: elements fixing z and elements sending z to z+1
    int fixes = 0;
    int swaps = 0;
    int other = 0;
};
CliffordCenter clifford_center(const KQuadForm& q, bool enumerate_orthogonal = true);
// image of z under the algebra automorphism induced by g (columns = images)
std::vector<std::uint32_t> clifford_transport(const KQuadForm& q, const KMatrix& g, const std::vector<std::uint32_t>& elem);

// lines E in span(rows of sub) (default: all of L) with q(e) = (a, 0)
std::vector<std::uint32_t> multiplicative_lines(const QFormR& q, const std::optional<KMatrix>& sub = std::nullopt);
// span of the first two normal-form vectors; nullopt if normal form fails
std::optional<KMatrix> w_perp(const QFormR& q);

struct PowerReport {
    CycInt gamma;
    bool gamma4_ok = false;
    std::optional<std::uint32_t> disc;
};
PowerReport power_identities(const QFormR& q);

// determinant helper used for disc invariance tests
Witt2 qform_det(const QFormR& q);

} // namespace weil2
