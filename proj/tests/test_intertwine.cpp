#include <doctest.h>

#include "weil2/guard.hpp"
#include "weil2/intertwine.hpp"

#include <map>
#include <random>

using namespace weil2;

namespace {

std::size_t cap_size(const EnhLagrangian& a, const EnhLagrangian& b)
{
    std::size_t c = 0;
    for (std::uint32_t x : a.elements())
        c += b.contains(x);
    return c;
}

bool transverse(const EnhLagrangian& a, const EnhLagrangian& b) { return cap_size(a, b) == 1; }

bool tau_agree(const EnhLagrangian& a, const EnhLagrangian& b)
{
    for (std::uint32_t x : a.elements())
        if (b.contains(x) && !(a.alpha(x) == b.alpha(x)))
            return false;
    return true;
}

EnhLagrangian eps_span(const Heis& h, const std::vector<std::vector<Witt2>>& rows)
{
    RVector flat;
    for (const auto& r : rows)
        flat.insert(flat.end(), r.begin(), r.end());
    RMatrix b(h.field(), static_cast<int>(rows.size()), h.dim(), flat);
    return EnhLagrangian::epsilon(h, Lagrangian(b));
}

// L1 = <e_1>, L2 = <e_-1>, L3 = <e_1 + e_-1> with epsilon enhancements
std::vector<EnhLagrangian> standard_triple(const Heis& h)
{
    const Field& f = h.field();
    Witt2 o = Witt2::one(f), z = Witt2::zero(f);
    return {eps_span(h, {{o, z}}), eps_span(h, {{z, o}}), eps_span(h, {{o, o}})};
}

CycInt qpow(const Heis& h, int e) { return CycInt(static_cast<std::int64_t>(ipow_sat(h.q(), e))); }

} // namespace

TEST_CASE("op_F basics")
{
    const Field& f = Field::get(1);
    Heis h(f, 1);
    auto all = enumerate_enhanced(h);
    REQUIRE(all.size() == 6);
    for (const auto& a : all)
        for (const auto& b : all) {
            IntertwinerOp op = op_F(a, b);
            CHECK(commutes_with_heis(op));
            CHECK(op.matrix.is_zero() == !tau_agree(a, b));
            if (a == b)
                CHECK(op.matrix == CycMatrix::identity(op.matrix.rows()).scaled(qpow(h, 1)));
            else if (a.same_lagrangian(b))
                CHECK(op.matrix.is_zero());
            if (transverse(a, b))
                CHECK(cyc_rank(op.matrix) == op.matrix.rows());
            if (tau_agree(a, b)) {
                CycInt s = qpow(h, 1) * CycInt(static_cast<std::int64_t>(cap_size(a, b)));
                CHECK(op_F(b, a).matrix * op.matrix == CycMatrix::identity(op.matrix.cols()).scaled(s));
            }
        }

    Heis h2(f, 2);
    std::mt19937_64 rng(41);
    auto all2 = enumerate_enhanced(h2);
    for (int trial = 0; trial < 60; ++trial) {
        const auto& a = all2[rng() % all2.size()];
        const auto& b = all2[rng() % all2.size()];
        IntertwinerOp op = op_F(a, b);
        CHECK(commutes_with_heis(op));
        CHECK(op.matrix.is_zero() == !tau_agree(a, b));
        if (!op.matrix.is_zero())
            CHECK(cyc_rank(op.matrix) == op.matrix.rows());
    }
}

TEST_CASE("op_F_flat")
{
    const Field& f = Field::get(1);
    for (int n : {1, 2}) {
        Heis h(f, n);
        auto all = enumerate_enhanced(h);
        std::mt19937_64 rng(43);
        int trials = n == 1 ? 36 : 80;
        for (int t = 0; t < trials; ++t) {
            const auto& a = n == 1 ? all[t / 6] : all[rng() % all.size()];
            const auto& b = n == 1 ? all[t % 6] : all[rng() % all.size()];
            IntertwinerOp op = op_F_flat(a, b);
            CHECK(commutes_with_heis(op));
            CHECK(!op.matrix.is_zero());
            CHECK(cyc_rank(op.matrix) == op.matrix.rows());
            if (transverse(a, b))
                CHECK(op.matrix == op_F(a, b).matrix);
            if (a == b)
                CHECK(proportional(op.matrix, CycMatrix::identity(op.matrix.rows())));
            // every valid w gives a proportional operator
            for (std::uint32_t w = 0; w < h.vsize(); ++w)
                if (is_flat_w(a, b, w))
                    CHECK(proportional(op_F_flat(a, b, w).matrix, op.matrix));
        }
        for (std::uint32_t w = 0; w < h.vsize(); ++w)
            if (!is_flat_w(all[0], all[1], w)) {
                CHECK_THROWS_AS(op_F_flat(all[0], all[1], w), std::invalid_argument);
                break;
            }
    }
}

TEST_CASE("q123 and c123")
{
    const Field& f = Field::get(1);
    Heis h(f, 1);
    auto st = standard_triple(h);
    CHECK(q123(st[0], st[1], st[2]) == QFormR::diagonal(f, {-Witt2::one(f)}));
    CHECK(c123(st[0], st[1], st[2]) == CycInt(1, -1));
    CHECK(q123(st[0], st[1], st[1]) == QFormR::zero(f, 1));
    CHECK(c123(st[0], st[1], st[1]) == CycInt(2));
    CHECK_THROWS_AS(q123(st[0], st[0], st[1]), std::invalid_argument);

    for (int m : {1, 2})
        for (int n : {1, 2}) {
            if (m == 2 && n == 2)
                continue;
            const Field& g = Field::get(m);
            Heis hh(g, n);
            auto all = enumerate_enhanced(hh);
            std::mt19937_64 rng(47);
            int done = 0;
            for (int trial = 0; trial < 4000 && done < 150; ++trial) {
                const auto& a = all[rng() % all.size()];
                const auto& b = all[rng() % all.size()];
                const auto& c = all[rng() % all.size()];
                if (!transverse(a, b) || !transverse(a, c))
                    continue;
                ++done;
                auto r = graph_map(a, b, c);
                QFormR q = q123(a, b, c);
                for (std::uint32_t x : b.elements()) {
                    Witt2 v = q123_value(a, b, c, x);
                    Witt2 formula = b.alpha(x) + a.alpha(r[x]) - c.alpha(x ^ r[x]) + hh.beta(x, r[x]);
                    CHECK(v == formula);
                    std::vector<std::uint32_t> coords;
                    for (int p : b.pivots())
                        coords.push_back(hh.coord(x, p));
                    CHECK(q.eval(coords) == v);
                    for (std::uint32_t y : b.elements())
                        CHECK(q123_value(a, b, c, x ^ y) - v - q123_value(a, b, c, y) == hh.omega(r[x], y));
                }
                CHECK(c123(a, b, c) == gauss_sum(q));
                if (transverse(b, c))
                    CHECK(c123(a, b, c).norm() == static_cast<std::int64_t>(ipow_sat(hh.q(), n)));
            }
            CHECK(done > 0);
        }
}

TEST_CASE("composition law")
{
    const Field& f = Field::get(1);
    Heis h(f, 1);
    auto all = enumerate_enhanced(h);
    int admissible = 0;
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) {
                if (!transverse(a, b) || !transverse(a, c))
                    continue;
                ++admissible;
                CompositionReport r = verify_composition(a, b, c);
                CHECK(r.product_ok);
                CHECK(r.inverse_ok);
            }
    CHECK(admissible > 0);

    for (auto [m, n] : {std::pair{2, 1}, std::pair{1, 2}}) {
        Heis hh(Field::get(m), n);
        auto els = enumerate_enhanced(hh);
        std::mt19937_64 rng(53 + m);
        int done = 0;
        while (done < 500) {
            const auto& a = els[rng() % els.size()];
            const auto& b = els[rng() % els.size()];
            const auto& c = els[rng() % els.size()];
            if (!transverse(a, b) || !transverse(a, c))
                continue;
            ++done;
            CompositionReport r = verify_composition(a, b, c);
            CHECK(r.product_ok);
            CHECK(r.inverse_ok);
        }
    }
}

TEST_CASE("convolution of f0 functions")
{
    const Field& f = Field::get(1);
    Heis h(f, 1);
    auto st = standard_triple(h);
    HFun f12 = f0_function(st[0], st[1]);
    CHECK(f12[h.index(h.identity())] == CycInt(1));
    CycInt vol_nz = qpow(h, 1) * CycInt(static_cast<std::int64_t>(h.q() * h.q()));
    CHECK(vol_nz == CycInt(8));

    HFun conv = convolve(h, f12, f0_function(st[1], st[2]));
    HFun f13 = f0_function(st[0], st[2]);
    for (std::uint32_t x = 0; x < h.size(); ++x)
        CHECK(conv[x] == vol_nz * CycInt(1, -1) * f13[x]);
    CHECK(convolve(h, f12, f0_function(st[1], st[2]), 3) == conv);
    CHECK_THROWS_AS(f0_function(st[0], st[0]), std::invalid_argument);

    for (int m : {1, 2}) {
        Heis hh(Field::get(m), 1);
        auto all = enumerate_enhanced(hh);
        CycInt vol = qpow(hh, 1) * CycInt(static_cast<std::int64_t>(hh.q() * hh.q()));
        int checked = 0;
        for (const auto& l : all)
            for (const auto& nn : all)
                for (const auto& mm : all) {
                    if (!transverse(l, nn) || !transverse(nn, mm))
                        continue;
                    HFun c = convolve(hh, f0_function(l, nn), f0_function(nn, mm), 2);
                    if (transverse(l, mm)) {
                        HFun want = f0_function(l, mm);
                        CycInt s = vol * c123(l, nn, mm);
                        bool ok = true;
                        for (std::uint32_t x = 0; x < hh.size(); ++x)
                            ok = ok && c[x] == s * want[x];
                        CHECK(ok);
                        ++checked;
                    } else if (l == mm) {
                        // supported over L, with value vol(N x Z) vol(L) at 1
                        for (std::uint32_t x = 0; x < hh.size(); ++x)
                            if (!l.contains(hh.elem(x).v))
                                CHECK(c[x] == CycInt(0));
                        CHECK(c[hh.index(hh.identity())] == vol * qpow(hh, 1));
                    }
                    if (m == 2 && checked > 40)
                        break;
                }
        CHECK(checked > 0);
    }
}

TEST_CASE("metaplectic cocycle")
{
    const Field& f = Field::get(1);
    Heis h(f, 1);
    auto asp = enumerate_asp(h);
    REQUIRE(asp.size() == 24);
    EnhLagrangian base = EnhLagrangian::epsilon(h, Lagrangian::standard(f, 1));
    Metaplectic mp(base);
    AspElement id = AspElement::identity(h);
    CHECK(mp.operator_of(id) == CycMatrix::identity(mp.model().dim()));
    CycRatio c0 = mp.cocycle(id, id);
    CHECK(ratio_equal(c0, {CycInt(1), CycInt(1)}));

    std::vector<CycMatrix> ops;
    for (const auto& g : asp) {
        ops.push_back(mp.operator_of(g));
        CHECK(mp.is_metaplectic(g, ops.back()));
        CHECK(cyc_rank(ops.back()) == mp.model().dim());
    }
    auto find = [&](const AspElement& g) {
        for (std::size_t i = 0; i < asp.size(); ++i)
            if (asp[i] == g)
                return i;
        throw std::logic_error("missing element");
    };
    std::map<int, int> phases;
    for (std::size_t i = 0; i < asp.size(); ++i)
        for (std::size_t j = 0; j < asp.size(); ++j) {
            auto c = proportional(ops[i] * ops[j], ops[find(asp[i] * asp[j])]);
            REQUIRE(c);
            int k = 0;
            CHECK(norm_is_power(*c, 2, &k));
            int ph = ratio_mu8_index(*c);
            CHECK(ph >= 0);
            ++phases[ph];
        }
    MESSAGE("phase histogram size " << phases.size());

    std::mt19937_64 rng(59);
    for (int t = 0; t < 40; ++t) {
        const auto& g = asp[rng() % asp.size()];
        const auto& hh = asp[rng() % asp.size()];
        const auto& k = asp[rng() % asp.size()];
        CHECK(cocycle_identity(mp, g, hh, k));
    }

    for (auto [m, n] : {std::pair{2, 1}, std::pair{1, 2}}) {
        const Field& g = Field::get(m);
        Heis hh(g, n);
        auto els = enumerate_asp(hh);
        Metaplectic mq(EnhLagrangian::epsilon(hh, Lagrangian::standard(g, n)));
        for (int t = 0; t < 20; ++t) {
            const auto& a = els[rng() % els.size()];
            const auto& b = els[rng() % els.size()];
            CHECK(mq.is_metaplectic(a, mq.operator_of(a)));
            CycRatio c = mq.cocycle(a, b);
            CHECK(norm_is_power(c, hh.q()));
            CHECK(ratio_mu8_index(c) >= 0);
        }
    }
}
