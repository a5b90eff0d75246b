#pragma once

#include "weil2/witt.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace weil2 {

// Dense matrix over Z[i].
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}
    static CycMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    CycInt& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const CycInt& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    CycMatrix operator*(const CycMatrix& o) const;
    CycMatrix operator+(const CycMatrix& o) const;
    CycMatrix operator-(const CycMatrix& o) const;
    CycMatrix scaled(const CycInt& s) const;
    bool operator==(const CycMatrix& o) const = default;
    bool is_zero() const;
    CycMatrix transpose() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<CycInt> e_;
};

// A Gaussian rational num/den.
struct CycRatio {
    CycInt num;
    CycInt den;
};

// (a, b) with b * x = a * y, taken from the first entry where y is nonzero;
// none unless x is a Q(i)-multiple of y. A zero y gives none.
std::optional<CycRatio> proportional(const CycMatrix& x, const CycMatrix& y);
std::optional<CycRatio> proportional(const std::vector<CycInt>& x, const std::vector<CycInt>& y);

// Exact rank over Q(i).
int cyc_rank(const CycMatrix& m);
// Rows form a basis (over Q(i)) of {v : m v = 0}, scaled to Gaussian integers.
CycMatrix cyc_kernel(const CycMatrix& m);

// True iff |r|^2 = q^k for some integer k; k is written to *power.
bool norm_is_power(const CycRatio& r, std::uint64_t q, int* power = nullptr);
// k in 0..7 with r/|r| = exp(2 pi i k / 8), or -1.
int ratio_mu8_index(const CycRatio& r);

} // namespace weil2
