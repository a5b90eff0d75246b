#pragma once

#include "weil2/witt.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace weil2 {

using RVector = std::vector<Witt2>;
using KVector = std::vector<Gf2m>;

// Dense matrix over R = W2(F_q), row-major.
class RMatrix {
public:
    RMatrix(const Field& f, int rows, int cols);
    RMatrix(const Field& f, int rows, int cols, const std::vector<Witt2>& entries);
    static RMatrix identity(const Field& f, int n);
    static RMatrix from_rows(const Field& f, int cols, const std::vector<RVector>& rows);

    const Field& field() const { return *f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Witt2& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Witt2& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    RVector row(int i) const;
    RVector col(int j) const;
    void set_row(int i, const RVector& v);
    RMatrix transpose() const;
    RMatrix block(int r0, int c0, int nr, int nc) const;
    RMatrix scaled(const Witt2& s) const;
    // stack rows of a over rows of b
    static RMatrix vstack(const RMatrix& a, const RMatrix& b);
    static RMatrix hstack(const RMatrix& a, const RMatrix& b);

    RMatrix operator+(const RMatrix& o) const;
    RMatrix operator-(const RMatrix& o) const;
    RMatrix operator*(const RMatrix& o) const;
    bool operator==(const RMatrix& o) const;

    bool is_zero() const;
    bool is_symmetric() const;
    bool operator<(const RMatrix& o) const;

private:
    const Field* f_;
    int rows_, cols_;
    std::vector<Witt2> e_;
};

std::ostream& operator<<(std::ostream& os, const RMatrix& m);

Witt2 dot(const RVector& a, const RVector& b);
RVector vec_add(const RVector& a, const RVector& b);
RVector vec_sub(const RVector& a, const RVector& b);
RVector vec_neg(const RVector& a);
RVector vec_scale(const Witt2& s, const RVector& a);
RVector zero_vector(const Field& f, int n);
bool vec_is_zero(const RVector& a);
RVector mat_vec(const RMatrix& m, const RVector& v);
RVector vec_mat(const RVector& v, const RMatrix& m);
// x^T G y
Witt2 bilinear(const RVector& x, const RMatrix& g, const RVector& y);

struct Echelon {
    RMatrix form;
    // pivot column per nonzero row, in row order
    std::vector<int> pivot_cols;
    int unit_pivots = 0;
    int two_pivots = 0;
    // form = transform * input
    RMatrix transform;
    // det(form) = det_factor * det(input) when square
    Witt2 det_factor;
};

// Row echelon form: unit pivots (normalized to 1) first, then 2-pivots
// (normalized to 2) among the rows lying in 2R. Columns above a unit pivot are
// cleared; columns above a 2-pivot are reduced to Teichmuller entries.
Echelon reduce(const RMatrix& m);

// P * m * Q = D with D diagonal, entries 1, 2 or 0 in that order.
struct Diagonal {
    RMatrix P, D, Q;
    int units = 0;
    int twos = 0;
    // det(D) = det_factor * det(m) when square
    Witt2 det_factor;
};
Diagonal diagonalize(const RMatrix& m);

Witt2 det(const RMatrix& m);
// rows generate {v : m v = 0}
RMatrix kernel(const RMatrix& m);
// some x with m x = b
std::optional<RVector> solve(const RMatrix& m, const RVector& b);
std::optional<RMatrix> inverse(const RMatrix& m);
// row space membership
bool in_row_span(const RMatrix& m, const RVector& v);

// R^g / (row span of relations), optionally with a symmetric R-valued form
// on generators.
class FgRModule {
public:
    FgRModule(const Field& f, int gens, RMatrix relations);
    FgRModule(const Field& f, int gens, RMatrix relations, RMatrix gram);

    // submodule of R^d generated by rows of gens, with induced gram
    static FgRModule submodule(const RMatrix& gens, const std::optional<RMatrix>& ambient_gram = std::nullopt);

    const Field& field() const { return *f_; }
    int gens() const { return g_; }
    const RMatrix& relations() const { return rel_; }
    const std::optional<RMatrix>& gram() const { return gram_; }

    // (a, b) with M = R^a + k^b
    std::pair<int, int> structure() const;
    // |M| = q^(2a+b), as a power of 2
    int log2_size() const;
    // canonical coset representative of x in R^g
    RVector canonical(const RVector& x) const;
    bool is_zero_element(const RVector& x) const;
    bool gram_descends() const;
    Witt2 form(const RVector& x, const RVector& y) const;
    // calls fn on the canonical representative of each element
    void for_each(const std::function<void(const RVector&)>& fn) const;

private:
    void prepare();

    const Field* f_;
    int g_;
    RMatrix rel_;
    std::optional<RMatrix> gram_;
    Diagonal diag_;
    RMatrix qinv_;
};

// f has one row per generator of a, giving its image in b's generator
// coordinates.
bool is_isometry(const RMatrix& f, const FgRModule& a, const FgRModule& b);
bool is_homomorphism(const RMatrix& f, const FgRModule& a, const FgRModule& b);
bool is_bijective(const RMatrix& f, const FgRModule& a, const FgRModule& b);

// Linear algebra over k = F_q.
class KMatrix {
public:
    KMatrix(const Field& f, int rows, int cols);
    static KMatrix identity(const Field& f, int n);

    const Field& field() const { return *f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::uint32_t at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    Gf2m operator()(int i, int j) const { return {*f_, at(i, j)}; }

    KMatrix transpose() const;
    KMatrix operator*(const KMatrix& o) const;
    bool operator==(const KMatrix& o) const;
    int rank() const;
    // reduced row echelon form with zero rows dropped
    KMatrix echelon() const;
    // rows generate {v : m v = 0}
    KMatrix kernel() const;
    std::optional<std::vector<std::uint32_t>> solve(const std::vector<std::uint32_t>& b) const;

private:
    const Field* f_;
    int rows_, cols_;
    std::vector<std::uint32_t> e_;
};

KMatrix reduce_mod2(const RMatrix& m);
RMatrix teichmuller_lift(const KMatrix& m);

} // namespace weil2
