#include <doctest.h>

#include "weil2/cycmat.hpp"

#include <random>

using namespace weil2;

namespace {

CycMatrix random_cyc(int r, int c, std::mt19937_64& rng)
{
    CycMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = CycInt(static_cast<std::int64_t>(rng() % 5) - 2, static_cast<std::int64_t>(rng() % 5) - 2);
    return m;
}

} // namespace

TEST_CASE("cyc rank and kernel")
{
    CHECK(cyc_rank(CycMatrix::identity(3)) == 3);
    CHECK(cyc_rank(CycMatrix(2, 3)) == 0);
    CycMatrix m(2, 2);
    m(0, 0) = CycInt(1, 1);
    m(0, 1) = CycInt(2, 0);
    m(1, 0) = CycInt(1, 0);
    m(1, 1) = CycInt(1, -1);
    // second row is (1-i)/2 times the first
    CHECK(cyc_rank(m) == 1);
    CycMatrix k = cyc_kernel(m);
    REQUIRE(k.rows() == 1);
    CHECK((m * k.transpose()).is_zero());

    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 5);
        // rank-deficient by construction
        CycMatrix a = random_cyc(r, 2, rng) * random_cyc(2, c, rng);
        int rk = cyc_rank(a);
        CHECK(rk <= 2);
        CycMatrix ker = cyc_kernel(a);
        CHECK(ker.rows() == c - rk);
        CHECK((a * ker.transpose()).is_zero());
        CHECK(cyc_rank(ker) == ker.rows());
    }
}

TEST_CASE("proportionality and ratios")
{
    std::vector<CycInt> y{CycInt(0), CycInt(1, 1), CycInt(2)};
    std::vector<CycInt> x;
    for (auto& v : y)
        x.push_back(v * CycInt(0, 1));
    auto r = proportional(x, y);
    REQUIRE(r);
    CHECK(ratio_mu8_index(*r) == 2);
    int k = 99;
    CHECK(norm_is_power(*r, 2, &k));
    CHECK(k == 0);
    x[0] = CycInt(1);
    CHECK_FALSE(proportional(x, y));
    CHECK_FALSE(proportional(y, std::vector<CycInt>(3)));
    CycRatio s{CycInt(2, 2), CycInt(1)};
    CHECK(norm_is_power(s, 2, &k));
    CHECK(k == 3);
    CHECK(ratio_mu8_index(s) == 1);
    CHECK_FALSE(norm_is_power(CycRatio{CycInt(3), CycInt(1)}, 2));
    CHECK(norm_is_power(CycRatio{CycInt(1), CycInt(4)}, 4, &k));
    CHECK(k == -2);
}
