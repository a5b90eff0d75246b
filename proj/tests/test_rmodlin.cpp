#include <doctest.h>

#include "weil2/rmodlin.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace weil2;

namespace {

RMatrix random_matrix(const Field& f, int r, int c, std::mt19937_64& rng, bool two_heavy = false)
{
    RMatrix m(f, r, c);
    std::uint32_t q = f.order();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            std::uint32_t idx = rng() % (q * q);
            if (two_heavy && rng() % 2)
                idx &= ~(q - 1);
            m(i, j) = Witt2::from_index(f, idx);
        }
    return m;
}

Witt2 leibniz_det(const RMatrix& m)
{
    const Field& f = m.field();
    int n = m.rows();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Witt2 s = Witt2::zero(f);
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                inv += p[i] > p[j];
        Witt2 t = inv % 2 ? -Witt2::one(f) : Witt2::one(f);
        for (int i = 0; i < n; ++i)
            t *= m(i, p[i]);
        s += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return s;
}

// all vectors of R^n
std::vector<RVector> all_vectors(const Field& f, int n)
{
    std::vector<RVector> out;
    std::uint32_t qq = f.order() * f.order();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= qq;
    for (std::uint64_t k = 0; k < total; ++k) {
        RVector v;
        std::uint64_t t = k;
        for (int i = 0; i < n; ++i) {
            v.push_back(Witt2::from_index(f, static_cast<std::uint32_t>(t % qq)));
            t /= qq;
        }
        out.push_back(v);
    }
    return out;
}

} // namespace

TEST_CASE("reduce examples")
{
    const Field& f = Field::get(1);
    RMatrix id = RMatrix::identity(f, 3);
    Echelon e = reduce(id);
    CHECK(e.form == id);
    CHECK(e.unit_pivots == 3);

    RMatrix two(f, 1, 1, {Witt2::two(f)});
    e = reduce(two);
    CHECK(e.two_pivots == 1);
    RMatrix k = kernel(two);
    CHECK(k.rows() == 1);
    CHECK(k(0, 0) == Witt2::two(f));
}

TEST_CASE("reduce transform and det factor")
{
    std::mt19937_64 rng(7);
    for (int m = 1; m <= 2; ++m) {
        const Field& f = Field::get(m);
        for (int t = 0; t < 300; ++t) {
            int n = 1 + static_cast<int>(rng() % 3);
            RMatrix a = random_matrix(f, n, n, rng, t % 2);
            Echelon e = reduce(a);
            CHECK(e.transform * a == e.form);
            CHECK(det(e.form) == e.det_factor * det(a));
            CHECK(e.unit_pivots + e.two_pivots <= n);
        }
    }
}

TEST_CASE("det matches Leibniz expansion")
{
    const Field& f = Field::get(1);
    CHECK(det(RMatrix(f, 2, 2, {Witt2::one(f), Witt2::zero(f), Witt2::zero(f), Witt2::two(f)})) ==
          Witt2::two(f));
    std::mt19937_64 rng(11);
    for (int m = 1; m <= 2; ++m) {
        const Field& fm = Field::get(m);
        for (int t = 0; t < 500; ++t) {
            int n = 1 + static_cast<int>(rng() % 4);
            RMatrix a = random_matrix(fm, n, n, rng, t % 3 == 0);
            CHECK(det(a) == leibniz_det(a));
        }
    }
}

TEST_CASE("det multiplicative, exhaustive 2x2 over W2(F_2)")
{
    const Field& f = Field::get(1);
    auto vs = all_vectors(f, 4);
    std::vector<RMatrix> mats;
    for (const auto& v : vs)
        mats.emplace_back(f, 2, 2, v);
    for (std::size_t i = 0; i < mats.size(); i += 3)
        for (const auto& b : mats)
            CHECK(det(mats[i] * b) == det(mats[i]) * det(b));
}

TEST_CASE("diagonalize")
{
    std::mt19937_64 rng(5);
    for (int m = 1; m <= 2; ++m) {
        const Field& f = Field::get(m);
        for (int t = 0; t < 300; ++t) {
            int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
            RMatrix a = random_matrix(f, r, c, rng, t % 2);
            Diagonal d = diagonalize(a);
            CHECK(d.P * a * d.Q == d.D);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    if (i != j)
                        CHECK(d.D(i, j).is_zero());
                    else if (i < d.units)
                        CHECK(d.D(i, j) == Witt2::one(f));
                    else if (i < d.units + d.twos)
                        CHECK(d.D(i, j) == Witt2::two(f));
                    else
                        CHECK(d.D(i, j).is_zero());
                }
        }
    }
}

TEST_CASE("solve round trip and kernel against enumeration")
{
    const Field& f = Field::get(1);
    std::mt19937_64 rng(1234);
    int solvable = 0;
    for (int t = 0; t < 1000; ++t) {
        RMatrix a = random_matrix(f, 4, 4, rng, t % 2);
        RVector b;
        for (int i = 0; i < 4; ++i)
            b.push_back(Witt2::from_index(f, static_cast<std::uint32_t>(rng() % 4)));
        auto x = solve(a, b);
        if (x) {
            ++solvable;
            CHECK(mat_vec(a, *x) == b);
        }
    }
    CHECK(solvable > 0);

    auto vs2 = all_vectors(f, 2);
    auto vs3 = all_vectors(f, 3);
    for (int t = 0; t < 100; ++t) {
        RMatrix a = random_matrix(f, 2, 3, rng, t % 2);
        RMatrix k = kernel(a);
        std::set<std::vector<std::uint32_t>> brute, spanned;
        for (const auto& v : vs3)
            if (vec_is_zero(mat_vec(a, v))) {
                std::vector<std::uint32_t> key;
                for (const auto& x : v)
                    key.push_back(x.index());
                brute.insert(key);
            }
        auto coeffs = all_vectors(f, k.rows());
        for (const auto& c : coeffs) {
            RVector v = k.rows() ? vec_mat(c, k) : zero_vector(f, 3);
            std::vector<std::uint32_t> key;
            for (const auto& x : v)
                key.push_back(x.index());
            spanned.insert(key);
        }
        CHECK(brute == spanned);
        // solvability agrees with enumeration
        for (const auto& b : vs2) {
            bool exists = false;
            for (const auto& v : vs3)
                if (mat_vec(a, v) == b) {
                    exists = true;
                    break;
                }
            CHECK(solve(a, b).has_value() == exists);
        }
    }
}

TEST_CASE("kernel of [1 1] is free of rank one")
{
    const Field& f = Field::get(1);
    RMatrix a(f, 1, 2, {Witt2::one(f), Witt2::one(f)});
    FgRModule k = FgRModule::submodule(kernel(a));
    CHECK(k.structure() == std::make_pair(1, 0));
}

TEST_CASE("module structure")
{
    const Field& f = Field::get(1);
    FgRModule free3(f, 3, RMatrix(f, 0, 3));
    CHECK(free3.structure() == std::make_pair(3, 0));
    FgRModule rk(f, 1, RMatrix(f, 1, 1, {Witt2::two(f)}));
    CHECK(rk.structure() == std::make_pair(0, 1));

    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        RMatrix rel = random_matrix(f, 1 + static_cast<int>(rng() % 3), 3, rng, true);
        FgRModule mod(f, 3, rel);
        std::set<std::vector<std::uint32_t>> reps;
        int count = 0;
        mod.for_each([&](const RVector& v) {
            ++count;
            std::vector<std::uint32_t> key;
            for (const auto& x : v)
                key.push_back(x.index());
            reps.insert(key);
        });
        CHECK(count == (1 << mod.log2_size()));
        CHECK(reps.size() == static_cast<std::size_t>(count));
        // coset count by brute force: vectors modulo the relation span
        std::set<std::vector<std::uint32_t>> cosets;
        for (const auto& v : all_vectors(f, 3)) {
            RVector c = mod.canonical(v);
            std::vector<std::uint32_t> key;
            for (const auto& x : c)
                key.push_back(x.index());
            cosets.insert(key);
            CHECK(mod.canonical(c) == c);
            CHECK(in_row_span(rel, vec_sub(v, c)));
        }
        CHECK(cosets.size() == static_cast<std::size_t>(count));
    }
}

TEST_CASE("isometry examples")
{
    const Field& f = Field::get(1);
    FgRModule line(f, 1, RMatrix(f, 0, 1), RMatrix::identity(f, 1));
    CHECK(is_isometry(RMatrix::identity(f, 1), line, line));
    RMatrix neg(f, 1, 1, {-Witt2::one(f)});
    CHECK(is_isometry(neg, line, line));

    RMatrix hyp(f, 2, 2, {Witt2::zero(f), Witt2::one(f), Witt2::one(f), Witt2::zero(f)});
    FgRModule plane(f, 2, RMatrix(f, 0, 2), hyp);
    RMatrix swap(f, 2, 2, {Witt2::zero(f), Witt2::one(f), Witt2::one(f), Witt2::zero(f)});
    CHECK(is_isometry(swap, plane, plane));
    RMatrix dbl = RMatrix::identity(f, 2).scaled(Witt2::two(f));
    CHECK_FALSE(is_isometry(dbl, plane, plane));

    // quotient form well defined: R/2R with form [1] descends only if 2*1 = 0
    FgRModule bad(f, 1, RMatrix(f, 1, 1, {Witt2::two(f)}), RMatrix::identity(f, 1));
    CHECK_FALSE(bad.gram_descends());
    FgRModule good(f, 1, RMatrix(f, 1, 1, {Witt2::two(f)}), RMatrix(f, 1, 1, {Witt2::two(f)}));
    CHECK(good.gram_descends());
}

TEST_CASE("k-linear algebra")
{
    const Field& f = Field::get(2);
    KMatrix a(f, 2, 3);
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(1, 1) = 3;
    a.at(1, 2) = 1;
    CHECK(a.rank() == 2);
    KMatrix k = a.kernel();
    CHECK(k.rows() == 1);
    CHECK((a * k.transpose()) == KMatrix(f, 2, 1));
    auto x = a.solve({1, 1});
    REQUIRE(x);
    CHECK((f.mul(1, (*x)[0]) ^ f.mul(2, (*x)[1])) == 1u);
}
