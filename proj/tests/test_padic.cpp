#include <doctest.h>

#include "weil2/guard.hpp"
#include "weil2/padic.hpp"

#include <random>

using namespace weil2;

namespace {

KMatrix random_rows(const Field& f, int rows, int cols, std::mt19937_64& rng)
{
    KMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<std::uint32_t>(rng() % f.order());
    return m;
}

RVector random_rvec(const Field& f, int n, std::mt19937_64& rng)
{
    RVector v;
    for (int i = 0; i < n; ++i)
        v.emplace_back(f, static_cast<std::uint32_t>(rng() % f.order()), static_cast<std::uint32_t>(rng() % f.order()));
    return v;
}

struct Size {
    int m, n;
};

const Size kSizes[] = {{1, 1}, {1, 2}, {2, 1}};

} // namespace

TEST_CASE("lattice models")
{
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        auto all = LatticeModel::enumerate(f, n);
        CHECK(all.size() == ipow_sat(f.order(), 2 * n));
        for (const auto& lm : all) {
            const Heis& h = lm.heis();
            for (std::uint32_t x = 0; x < h.vsize(); ++x)
                for (std::uint32_t y = 0; y < h.vsize(); ++y) {
                    REQUIRE((lm.phi(x ^ y) ^ lm.phi(x) ^ lm.phi(y)) == lm.pairing(x, y));
                    // chi_phi is a character of M/2M x (1/2)O/O
                    for (std::uint32_t z1 = 0; z1 < h.q(); ++z1) {
                        std::uint32_t z2 = (z1 * 7 + y) % h.q();
                        REQUIRE(lm.chi(x ^ y, z1 ^ z2 ^ lm.pairing(x, y)) == lm.chi(x, z1) * lm.chi(y, z2));
                    }
                }
        }
    }
    const Field& f = Field::get(1);
    KMatrix bad(f, 2, 2);
    bad.at(0, 0) = 1;
    CHECK_THROWS_AS(LatticeModel(f, 1, KQuadForm{bad}), std::invalid_argument);
}

TEST_CASE("chains exist exactly for arf class zero")
{
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        int with = 0;
        for (const auto& lm : LatticeModel::enumerate(f, n)) {
            auto chains = vanishing_lagrangians(lm);
            CHECK((!chains.empty()) == (lm.arf_class() == 0));
            // oracle: a totally singular n-space exists iff phi has
            // q^{2n-1} + q^{n-1}(q-1) zeros
            std::uint64_t q = f.order();
            std::uint64_t hyperbolic = ipow_sat(q, 2 * n - 1) + ipow_sat(q, n - 1) * (q - 1);
            CHECK((!chains.empty()) == (count_zeros(lm.form()) == hyperbolic));
            with += !chains.empty();
        }
        CHECK(with > 0);
    }
    CHECK(vanishing_lagrangians(LatticeModel::standard(Field::get(1), 1)).size() == 2);
}

TEST_CASE("fixed spaces")
{
    std::mt19937_64 rng(11);
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        std::uint64_t q = f.order();
        for (const auto& lm : LatticeModel::enumerate(f, n)) {
            LemmaReport rep = lemma_report(lm);
            CHECK(rep.dim_m == 0);
            CHECK(rep.dim_2m == static_cast<int>(ipow_sat(q, 2 * n)));
            CHECK(rep.lemma_ok);
            if (rep.chains > 0)
                CHECK(rep.dim_n == static_cast<int>(ipow_sat(q, n)));
            for (int t = 0; t < 20; ++t) {
                KMatrix s = random_rows(f, static_cast<int>(rng() % (2 * n + 1)), 2 * n, rng);
                CHECK(fixed_space_lemma(lm, s));
            }
        }
    }
    const Field& f = Field::get(1);
    CHECK_THROWS_AS(fixed_space(LatticeModel::standard(f, 1), KMatrix(f, 1, 3)), std::invalid_argument);
}

TEST_CASE("chains and adapted bases")
{
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        for (const auto& lm : LatticeModel::enumerate(f, n)) {
            const Heis& h = lm.heis();
            for (const auto& s : vanishing_lagrangians(lm)) {
                NChain c(lm, s);
                CHECK(c.self_orthogonal());
                const auto& g = c.adapted_basis();
                for (int i = 0; i < h.dim(); ++i)
                    for (int j = 0; j < h.dim(); ++j)
                        REQUIRE(lm.pairing(g[i], g[j]) == h.omega_k(h.basis_vector(i), h.basis_vector(j)));
                for (std::uint32_t x = 0; x < h.vsize(); ++x) {
                    REQUIRE(c.phi_adapted(x) == lm.phi(c.to_original(x)));
                    if (x < ipow_sat(h.q(), n))
                        REQUIRE(c.phi_adapted(x) == 0);
                }
            }
        }
    }
    const Field& f = Field::get(1);
    LatticeModel lm = LatticeModel::standard(f, 1);
    KMatrix diag(f, 1, 2);
    diag.at(0, 0) = diag.at(0, 1) = 1;
    CHECK_THROWS_AS(NChain(lm, diag), std::invalid_argument);
    CHECK_THROWS_AS(NChain(lm, KMatrix(f, 0, 2)), std::invalid_argument);
}

TEST_CASE("reduced heisenberg group")
{
    std::mt19937_64 rng(5);
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        LatticeModel lm = LatticeModel::standard(f, n);
        NChain c(lm, vanishing_lagrangians(lm).front());
        ReducedHeis red(c);
        const Heis& h = red.shape();
        Heis std_heis(f, n);
        bool exhaustive = h.size() <= 64;
        std::uint32_t count = exhaustive ? h.size() : 200;
        auto pick = [&](std::uint32_t i) { return exhaustive ? h.elem(i) : h.elem(static_cast<std::uint32_t>(rng() % h.size())); };
        HeisElem e = h.identity();
        for (std::uint32_t i = 0; i < count; ++i) {
            HeisElem x = pick(i);
            REQUIRE(red.mul(x, e) == x);
            REQUIRE(red.mul(e, x) == x);
            REQUIRE(red.mul(x, red.inv(x)) == e);
            for (std::uint32_t j = 0; j < count; ++j) {
                HeisElem y = pick(j);
                // commutator (0, omega)
                HeisElem com = red.mul(red.mul(x, y), red.inv(red.mul(y, x)));
                REQUIRE(com == HeisElem{0, std_heis.omega(x.v, y.v)});
                if (exhaustive)
                    for (std::uint32_t k = 0; k < count; ++k) {
                        HeisElem z = pick(k);
                        REQUIRE(red.mul(red.mul(x, y), z) == red.mul(x, red.mul(y, z)));
                    }
            }
        }
        // the law does not depend on the lifts of y in N^perp
        for (int t = 0; t < 500; ++t) {
            RVector a1 = random_rvec(f, n, rng), b1 = random_rvec(f, n, rng);
            RVector a2 = random_rvec(f, n, rng), b2 = random_rvec(f, n, rng);
            Witt2 z1 = random_rvec(f, 1, rng)[0], z2 = random_rvec(f, 1, rng)[0];
            RVector a(n, Witt2::zero(f)), b(n, Witt2::zero(f));
            Witt2 z = z1 + z2;
            for (int i = 0; i < n; ++i) {
                a[i] = a1[i] + a2[i];
                b[i] = b1[i] + b2[i];
                z += a1[i] * b2[i] - b1[i] * a2[i];
            }
            REQUIRE(red.mul(red.reduce(a1, b1, z1), red.reduce(a2, b2, z2)) == red.reduce(a, b, z));
        }
    }
}

TEST_CASE("splitting of the push-forward")
{
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        for (const auto& lm : LatticeModel::enumerate(f, n))
            for (const auto& s : vanishing_lagrangians(lm)) {
                ReducedHeis red(NChain(lm, s));
                if (n == 1)
                    CHECK(splitting_push(red));
                else
                    CHECK(splitting_push(red, 300, 17));
            }
    }
}

TEST_CASE("reduction to the heisenberg model")
{
    for (auto [m, n] : kSizes) {
        const Field& f = Field::get(m);
        Heis h(f, n);
        int runs = 0;
        for (const auto& lm : LatticeModel::enumerate(f, n))
            for (const auto& s : vanishing_lagrangians(lm)) {
                Reduction rep = reduce_to_heisenberg(h, NChain(lm, s));
                CAPTURE(m);
                CAPTURE(n);
                CHECK(rep.tau_ok);
                CHECK(rep.restriction_ok);
                CHECK(rep.equivariant);
                CHECK(rep.solution_dim == 1);
                CHECK(rep.solution_matches);
                CHECK(rep.model_dim == static_cast<int>(ipow_sat(f.order(), n)));
                CHECK(rep.shift[0].is_zero());
                ++runs;
            }
        CHECK(runs > 0);
    }
}
