#include <doctest.h>

#include "weil2/guard.hpp"
#include "weil2/symplectic.hpp"

#include <deque>
#include <set>

using namespace weil2;

namespace {

RMatrix row_matrix(const Field& f, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> entries)
{
    std::vector<Witt2> e;
    for (auto [a0, a1] : entries)
        e.emplace_back(f, a0, a1);
    return RMatrix(f, 1, static_cast<int>(e.size()), e);
}

// orbit of the standard lagrangian under a generating set of Sp
std::set<Lagrangian> sp_orbit(const SympSpace& v)
{
    const Field& f = v.field();
    int n = v.n();
    std::vector<RMatrix> gens;
    std::uint32_t qq = f.order() * f.order();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (std::uint32_t x = 1; x < qq; ++x) {
                RMatrix s(f, n, n);
                s(i, j) = Witt2::from_index(f, x);
                s(j, i) = s(i, j);
                gens.push_back(sp_upper(s));
                gens.push_back(sp_lower(s));
            }
    for (std::uint32_t x = 0; x < qq; ++x) {
        Witt2 w = Witt2::from_index(f, x);
        if (!w.is_unit())
            continue;
        RMatrix a = RMatrix::identity(f, n);
        a(0, 0) = w;
        gens.push_back(sp_levi(a));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                RMatrix a = RMatrix::identity(f, n);
                a(i, j) = Witt2::one(f);
                gens.push_back(sp_levi(a));
            }
    std::set<Lagrangian> seen{Lagrangian::standard(f, n)};
    std::deque<Lagrangian> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
        Lagrangian l = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            Lagrangian m = l.apply(g);
            if (seen.insert(m).second)
                todo.push_back(m);
        }
    }
    return seen;
}

} // namespace

TEST_CASE("is_lagrangian examples")
{
    const Field& f = Field::get(1);
    SympSpace v(f, 1);
    CHECK(is_lagrangian(Lagrangian::standard(f, 2).basis(), SympSpace(f, 2)));
    RMatrix both(f, 2, 2, {Witt2::one(f), Witt2::zero(f), Witt2::zero(f), Witt2::one(f)});
    CHECK_FALSE(is_lagrangian(both, v));
    RMatrix tilt = row_matrix(f, {{1, 0}, {0, 1}});
    CHECK(v.omega(tilt.row(0), tilt.row(0)).is_zero());
    CHECK(is_lagrangian(tilt, v));
    RMatrix two = row_matrix(f, {{0, 1}, {0, 1}});
    CHECK_FALSE(is_lagrangian(two, v));
}

TEST_CASE("transversality and intersections")
{
    const Field& f = Field::get(1);
    for (int n = 1; n <= 2; ++n) {
        Lagrangian a = Lagrangian::standard(f, n), b = Lagrangian::dual_standard(f, n);
        CHECK(transverse(a, b));
        CHECK(intersect(a, a).structure() == std::make_pair(n, 0));
        CHECK(intersect(a, b).structure() == std::make_pair(0, 0));
    }
    Lagrangian a = Lagrangian::standard(f, 1);
    Lagrangian b(row_matrix(f, {{1, 0}, {0, 1}}));
    CHECK_FALSE(transverse(a, b));
    FgRModule i = intersect(a, b);
    CHECK(i.structure() == std::make_pair(0, 1));
    // common elements by enumeration
    int common = 0;
    for (const auto& x : a.elements())
        common += b.contains(x);
    CHECK(common == (1 << i.log2_size()));
}

TEST_CASE("lagrangian enumeration q=2 n=1 matches a full scan")
{
    const Field& f = Field::get(1);
    SympSpace v(f, 1);
    auto ls = enumerate_lagrangians(v);
    std::set<std::set<std::uint32_t>> spans;
    for (std::uint32_t x = 0; x < 16; ++x) {
        RVector w{Witt2::from_index(f, x & 3), Witt2::from_index(f, x >> 2)};
        if (!w[0].is_unit() && !w[1].is_unit())
            continue;
        std::set<std::uint32_t> span;
        for (std::uint32_t c = 0; c < 4; ++c) {
            RVector y = vec_scale(Witt2::from_index(f, c), w);
            span.insert(y[0].index() | y[1].index() << 2);
        }
        spans.insert(span);
    }
    CHECK(spans.size() == 6);
    CHECK(ls.size() == spans.size());
    std::set<std::set<std::uint32_t>> from_enum;
    for (const auto& l : ls) {
        std::set<std::uint32_t> span;
        for (const auto& y : l.elements())
            span.insert(y[0].index() | y[1].index() << 2);
        from_enum.insert(span);
    }
    CHECK(from_enum == spans);
}

TEST_CASE("lagrangian enumeration matches the Sp orbit")
{
    for (auto [m, n] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
        const Field& f = Field::get(m);
        SympSpace v(f, n);
        auto ls = enumerate_lagrangians(v);
        auto orbit = sp_orbit(v);
        CHECK(std::set<Lagrangian>(ls.begin(), ls.end()) == orbit);
        CHECK(ls.size() == orbit.size());
    }
    CHECK_THROWS_AS(enumerate_lagrangians(SympSpace(Field::get(1), 4)), SizeGuardError);
}

TEST_CASE("canonical form is basis independent")
{
    std::mt19937_64 rng(3);
    for (int m = 1; m <= 2; ++m) {
        const Field& f = Field::get(m);
        SympSpace v(f, 2);
        auto ls = enumerate_lagrangians(v);
        std::set<Lagrangian> all(ls.begin(), ls.end());
        for (int t = 0; t < 100; ++t) {
            Lagrangian l = random_lagrangian(v, rng());
            CHECK(all.count(l) == 1);
            Lagrangian same(random_gl(f, 2, rng) * l.basis());
            CHECK(same == l);
            CHECK(Lagrangian(l.basis()) == l);
        }
    }
}

TEST_CASE("Sp action preserves lagrangians and transversality")
{
    std::mt19937_64 rng(17);
    for (int m = 1; m <= 2; ++m) {
        const Field& f = Field::get(m);
        for (int n = 1; n <= 2; ++n) {
            SympSpace v(f, n);
            for (int t = 0; t < 50; ++t) {
                RMatrix g = random_sp(v, rng);
                CHECK(is_symplectic(g));
                Lagrangian a = random_lagrangian(v, rng()), b = random_lagrangian(v, rng());
                Lagrangian ga = a.apply(g), gb = b.apply(g);
                CHECK(is_lagrangian(ga.basis(), v));
                CHECK(transverse(a, b) == transverse(ga, gb));
                CHECK(intersect(a, b).structure() == intersect(ga, gb).structure());
            }
        }
    }
}

TEST_CASE("P(L) factorization")
{
    const Field& f = Field::get(1);
    Lagrangian l1 = Lagrangian::standard(f, 1);
    auto id = p_stabilizer_factor(RMatrix::identity(f, 2), l1);
    REQUIRE(id);
    CHECK(id->gl == RMatrix::identity(f, 1));
    CHECK(id->sym.is_zero());
    for (std::uint32_t s = 0; s < 4; ++s) {
        RMatrix sm(f, 1, 1, {Witt2::from_index(f, s)});
        auto p = p_stabilizer_factor(sp_upper(sm), l1);
        REQUIRE(p);
        CHECK(p->gl == RMatrix::identity(f, 1));
        CHECK(p->sym == sm);
    }
    CHECK_FALSE(p_stabilizer_factor(sp_lower(RMatrix(f, 1, 1, {Witt2::one(f)})), l1));

    std::mt19937_64 rng(500);
    for (int m = 1; m <= 2; ++m) {
        const Field& fm = Field::get(m);
        for (int t = 0; t < 250; ++t) {
            int n = 1 + t % 2;
            SympSpace v(fm, n);
            Lagrangian l = random_lagrangian(v, rng());
            RMatrix h = adapted_symplectic_basis(l);
            CHECK(is_symplectic(h));
            RMatrix p = h * sp_levi(random_gl(fm, n, rng)) * sp_upper(random_symmetric(fm, n, rng)) * *inverse(h);
            CHECK(l.apply(p) == l);
            auto fac = p_stabilizer_factor(p, l);
            REQUIRE(fac);
            CHECK(p_recompose(*fac) == p);
        }
    }
}

TEST_CASE("transverse complements of a lagrangian (reported count)")
{
    const Field& f = Field::get(1);
    SympSpace v(f, 1);
    auto ls = enumerate_lagrangians(v);
    for (const auto& l : ls) {
        int count = 0;
        for (const auto& n : ls)
            count += transverse(l, n);
        // a torsor under symmetric 1x1 matrices over R
        CHECK(count == 4);
    }
}
