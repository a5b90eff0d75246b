#include "weil2/veritool.hpp"

#include "weil2/guard.hpp"
#include "weil2/intertwine.hpp"
#include "weil2/maslov.hpp"
#include "weil2/padic.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace weil2 {

namespace {

const Field& field_for(int q)
{
    switch (q) {
    case 2:
        return Field::get(1);
    case 4:
        return Field::get(2);
    case 8:
        return Field::get(3);
    default:
        throw std::invalid_argument("q must be 2, 4 or 8");
    }
}

std::mt19937_64 rng_for(std::uint64_t seed, const std::string& name)
{
    // FNV-1a keeps streams apart per check and independent of scheduling
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name)
        h = (h ^ c) * 1099511628211ull;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return std::mt19937_64(seq);
}

json wj(const Witt2& x) { return json::array({x.a0(), x.a1()}); }
json cj(const CycInt& z) { return json::array({z.re(), z.im()}); }

json mj(const RMatrix& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j)
            r.push_back(wj(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json tuple_json(const std::vector<Lagrangian>& t)
{
    json out = json::array();
    for (const auto& l : t)
        out.push_back(mj(l.basis()));
    return out;
}

CheckResult result(const std::string& name, bool ok, json detail = json::object())
{
    return {name, ok ? Status::pass : Status::fail, std::move(detail)};
}

CheckResult report(const std::string& name, json detail) { return {name, Status::reported, std::move(detail)}; }

CheckResult combine(const std::string& name, const std::vector<CheckResult>& parts)
{
    bool ok = true;
    json detail = json::object();
    for (const auto& p : parts) {
        ok = ok && p.status != Status::fail;
        json d = p.detail;
        d["status"] = to_string(p.status);
        detail[p.name] = d;
    }
    return result(name, ok, detail);
}

CycInt qpow(std::uint32_t q, int e) { return CycInt(static_cast<std::int64_t>(ipow_sat(q, e))); }

std::string size_tag(const Field& f, int n) { return "q" + std::to_string(f.order()) + "n" + std::to_string(n); }

// --- witt ---

CheckResult witt_axioms(const Field& f)
{
    auto all = all_witt(f);
    Witt2 zero = Witt2::zero(f), one = Witt2::one(f);
    for (const auto& x : all) {
        if (!(x + zero == x && x * one == x && x + (-x) == zero))
            return result("ring axioms " + std::to_string(f.order()), false, {{"x", wj(x)}});
        for (const auto& y : all) {
            if (!(x + y == y + x && x * y == y * x))
                return result("ring axioms " + std::to_string(f.order()), false, {{"x", wj(x)}, {"y", wj(y)}});
            for (const auto& z : all)
                if (!((x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z))
                    return result("ring axioms " + std::to_string(f.order()), false,
                                  {{"x", wj(x)}, {"y", wj(y)}, {"z", wj(z)}});
        }
    }
    return result("ring axioms " + std::to_string(f.order()), true, {{"elements", all.size()}});
}

CheckResult witt_z4()
{
    const Field& f = Field::get(1);
    bool ok = true;
    for (int a = 0; a < 4; ++a) {
        Witt2 x = from_zmod4(f, Zmod4(a));
        ok = ok && to_zmod4(x) == Zmod4(a);
        for (int b = 0; b < 4; ++b) {
            Witt2 y = from_zmod4(f, Zmod4(b));
            ok = ok && to_zmod4(x + y) == Zmod4(a + b) && to_zmod4(x * y) == Zmod4(a * b);
        }
    }
    return result("isomorphism to Z/4", ok);
}

CheckResult witt_trace(const Field& f)
{
    auto all = all_witt(f);
    bool ok = true;
    for (const auto& x : all)
        for (const auto& y : all)
            ok = ok && witt_trace(x + y) == witt_trace(x) + witt_trace(y) && psi_tr(x + y) == psi_tr(x) * psi_tr(y);
    return result("trace and psi", ok);
}

// --- heisenberg ---

CheckResult heis_axioms(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    const std::string name = "group axioms";
    bool exhaustive = samples == 0;
    std::uint32_t count = exhaustive ? h.size() : static_cast<std::uint32_t>(samples);
    auto pick = [&](std::uint32_t i) { return exhaustive ? h.elem(i) : h.elem(static_cast<std::uint32_t>(rng() % h.size())); };
    if (exhaustive)
        check_guard(static_cast<std::uint64_t>(count) * count * count, 1ull << 24, "heis_axioms");
    HeisElem e = h.identity();
    std::uint64_t triples = 0;
    for (std::uint32_t i = 0; i < count; ++i) {
        HeisElem a = pick(i);
        if (!(h.mul(a, e) == a && h.mul(e, a) == a && h.mul(a, h.inv(a)) == e && h.mul(h.inv(a), a) == e))
            return result(name, false, {{"a", h.index(a)}});
        std::uint32_t inner = exhaustive ? count : 1;
        for (std::uint32_t j = 0; j < inner; ++j) {
            HeisElem b = exhaustive ? h.elem(j) : pick(j);
            for (std::uint32_t k = 0; k < inner; ++k) {
                HeisElem c = exhaustive ? h.elem(k) : pick(k);
                ++triples;
                if (!(h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c))))
                    return result(name, false, {{"a", h.index(a)}, {"b", h.index(b)}, {"c", h.index(c)}});
            }
        }
    }
    return result(name, true, {{"size", h.size()}, {"triples", triples}, {"exhaustive", exhaustive}});
}

CheckResult heis_commutator(const Field& f, int n)
{
    Heis h(f, n);
    check_guard(static_cast<std::uint64_t>(h.vsize()) * h.vsize(), 1 << 20, "heis_commutator");
    for (std::uint32_t x = 0; x < h.vsize(); ++x)
        for (std::uint32_t y = 0; y < h.vsize(); ++y) {
            HeisElem a{x, Witt2::zero(f)}, b{y, Witt2::zero(f)};
            HeisElem c = h.mul(h.mul(a, b), h.mul(h.inv(a), h.inv(b)));
            if (!(c == h.central(h.omega(x, y))))
                return result("commutator", false, {{"x", x}, {"y", y}});
        }
    return result("commutator", true, {{"pairs", h.vsize() * h.vsize()}});
}

std::vector<Lagrangian> some_lagrangians(const SympSpace& v, int samples, std::mt19937_64& rng)
{
    if (samples == 0)
        return enumerate_lagrangians(v);
    std::vector<Lagrangian> out;
    for (int t = 0; t < samples; ++t)
        out.push_back(random_lagrangian(v, rng()));
    return out;
}

CheckResult tau_epsilon(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    auto ls = some_lagrangians(SympSpace(f, n), samples, rng);
    for (const auto& lt : ls) {
        EnhLagrangian e = EnhLagrangian::epsilon(h, lt);
        bool ok = e.is_valid();
        for (std::uint32_t x : e.elements())
            for (std::uint32_t y : e.elements())
                ok = ok && h.mul(e.tau(x), e.tau(y)) == e.tau(x ^ y);
        if (!ok)
            return result("tau of epsilon " + size_tag(f, n), false, {{"lagrangian", mj(lt.basis())}});
    }
    return result("tau of epsilon " + size_tag(f, n), true, {{"lagrangians", ls.size()}, {"exhaustive", samples == 0}});
}

std::vector<EnhLagrangian> some_enhanced(const Heis& h, int samples, std::mt19937_64& rng)
{
    auto all = enumerate_enhanced(h);
    if (samples == 0 || static_cast<std::size_t>(samples) >= all.size())
        return all;
    std::vector<EnhLagrangian> out;
    for (int t = 0; t < samples; ++t)
        out.push_back(all[rng() % all.size()]);
    return out;
}

CheckResult model_dims(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    auto es = some_enhanced(h, samples, rng);
    int want = static_cast<int>(ipow_sat(f.order(), n));
    for (std::size_t i = 0; i < es.size(); ++i) {
        Model md(h, es[i]);
        if (md.dim() != want || !md.contains(md.basis_function(md.dim() - 1)))
            return result("model dimension " + size_tag(f, n), false, {{"index", i}, {"dim", md.dim()}});
    }
    return result("model dimension " + size_tag(f, n), true, {{"lagrangians", es.size()}, {"dim", want}});
}

CheckResult commutant(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    auto es = some_enhanced(h, samples, rng);
    for (std::size_t i = 0; i < es.size(); ++i) {
        int d = commutant_dim(Model(h, es[i]));
        if (d != 1)
            return result("commutant " + size_tag(f, n), false, {{"index", i}, {"dim", d}});
    }
    return result("commutant " + size_tag(f, n), true, {{"lagrangians", es.size()}});
}

// --- intertwine ---

bool enh_transverse(const EnhLagrangian& a, const EnhLagrangian& b)
{
    std::size_t c = 0;
    for (std::uint32_t x : a.elements())
        c += b.contains(x);
    return c == 1;
}

CheckResult composition(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    auto all = enumerate_enhanced(h);
    const std::string name = "composition " + size_tag(f, n);
    int done = 0;
    auto run = [&](const EnhLagrangian& a, const EnhLagrangian& b, const EnhLagrangian& c) {
        CompositionReport r = verify_composition(a, b, c);
        ++done;
        return r.product_ok && r.inverse_ok;
    };
    if (samples == 0) {
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j)
                for (std::size_t k = 0; k < all.size(); ++k) {
                    if (!enh_transverse(all[i], all[j]) || !enh_transverse(all[i], all[k]))
                        continue;
                    if (!run(all[i], all[j], all[k]))
                        return result(name, false, {{"triple", {i, j, k}}});
                }
    } else {
        while (done < samples) {
            std::size_t i = rng() % all.size(), j = rng() % all.size(), k = rng() % all.size();
            if (!enh_transverse(all[i], all[j]) || !enh_transverse(all[i], all[k]))
                continue;
            if (!run(all[i], all[j], all[k]))
                return result(name, false, {{"triple", {i, j, k}}});
        }
    }
    return result(name, done > 0, {{"triples", done}, {"exhaustive", samples == 0}});
}

CheckResult flat_transverse(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    auto all = enumerate_enhanced(h);
    const std::string name = "flat equals F " + size_tag(f, n);
    int done = 0;
    std::size_t total = samples == 0 ? all.size() * all.size() : static_cast<std::size_t>(samples);
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t i = samples == 0 ? t / all.size() : rng() % all.size();
        std::size_t j = samples == 0 ? t % all.size() : rng() % all.size();
        if (!enh_transverse(all[i], all[j]))
            continue;
        ++done;
        if (!(op_F_flat(all[i], all[j], 0u).matrix == op_F(all[i], all[j]).matrix))
            return result(name, false, {{"pair", {i, j}}});
    }
    return result(name, done > 0, {{"pairs", done}});
}

CheckResult convolution(const Field& f, int threads, int samples, std::mt19937_64& rng)
{
    Heis h(f, 1);
    auto all = enumerate_enhanced(h);
    CycInt vol = qpow(h.q(), 1) * CycInt(static_cast<std::int64_t>(h.q() * h.q()));
    const std::string name = "convolution " + size_tag(f, 1);
    int checked = 0;
    auto run = [&](std::size_t l, std::size_t nn, std::size_t m) {
        HFun c = convolve(h, f0_function(all[l], all[nn]), f0_function(all[nn], all[m]), threads);
        CycInt s = vol * c123(all[l], all[nn], all[m]);
        HFun want = f0_function(all[l], all[m]);
        ++checked;
        for (std::uint32_t x = 0; x < h.size(); ++x)
            if (!(c[x] == s * want[x]))
                return false;
        return true;
    };
    auto admissible = [&](std::size_t l, std::size_t nn, std::size_t m) {
        return enh_transverse(all[l], all[nn]) && enh_transverse(all[nn], all[m]) && enh_transverse(all[l], all[m]);
    };
    if (samples == 0) {
        for (std::size_t l = 0; l < all.size(); ++l)
            for (std::size_t nn = 0; nn < all.size(); ++nn)
                for (std::size_t m = 0; m < all.size(); ++m)
                    if (admissible(l, nn, m) && !run(l, nn, m))
                        return result(name, false, {{"triple", {l, nn, m}}});
    } else {
        while (checked < samples) {
            std::size_t l = rng() % all.size(), nn = rng() % all.size(), m = rng() % all.size();
            if (admissible(l, nn, m) && !run(l, nn, m))
                return result(name, false, {{"triple", {l, nn, m}}});
        }
    }
    return result(name, checked > 0, {{"triples", checked}, {"exhaustive", samples == 0}});
}

std::vector<AspElement> asp_pool(const Heis& h, std::mt19937_64& rng)
{
    try {
        return enumerate_asp(h);
    } catch (const SizeGuardError&) {
        std::vector<AspElement> out;
        SympSpace v(h.field(), h.n());
        for (int t = 0; t < 64; ++t)
            out.push_back(AspElement::xi(h, random_sp(v, rng)));
        return out;
    }
}

CheckResult metaplectic_pairs(const Field& f, int n, int pairs, std::mt19937_64& rng, json* phases = nullptr)
{
    Heis h(f, n);
    auto els = asp_pool(h, rng);
    Metaplectic mp(EnhLagrangian::epsilon(h, Lagrangian::standard(f, n)));
    std::map<int, int> hist;
    const std::string name = "cocycle values " + size_tag(f, n);
    for (int t = 0; t < pairs; ++t) {
        std::size_t i = rng() % els.size(), j = rng() % els.size();
        CycRatio c = mp.cocycle(els[i], els[j]);
        int k = ratio_mu8_index(c);
        if (c.num.is_zero() || !norm_is_power(c, h.q()) || k < 0)
            return result(name, false, {{"pair", {i, j}}, {"num", cj(c.num)}, {"den", cj(c.den)}});
        ++hist[k];
    }
    if (phases) {
        json hj = json::object();
        int mu4 = 0;
        for (auto [k, c] : hist) {
            hj[std::to_string(k)] = c;
            if (k % 2 == 0)
                mu4 += c;
        }
        *phases = {{"mu8_histogram", hj}, {"in_mu4", mu4}, {"pairs", pairs}};
    }
    return result(name, true, {{"pairs", pairs}, {"group_sample", els.size()}});
}

CheckResult metaplectic_triples(const Field& f, int n, int triples, std::mt19937_64& rng)
{
    Heis h(f, n);
    auto els = asp_pool(h, rng);
    Metaplectic mp(EnhLagrangian::epsilon(h, Lagrangian::standard(f, n)));
    for (int t = 0; t < triples; ++t) {
        std::size_t i = rng() % els.size(), j = rng() % els.size(), k = rng() % els.size();
        if (!cocycle_identity(mp, els[i], els[j], els[k]))
            return result("cocycle identity " + size_tag(f, n), false, {{"triple", {i, j, k}}});
    }
    return result("cocycle identity " + size_tag(f, n), true, {{"triples", triples}});
}

CheckResult phase_report(const Field& f, int n, int pairs, std::mt19937_64& rng)
{
    json phases;
    CheckResult r = metaplectic_pairs(f, n, pairs, rng, &phases);
    if (r.status == Status::fail)
        return r;
    phases["note"] = "normalized phases of c(g,h); the mu4 and mu2 refinements are not certified";
    return report("mu4 and mu2 phase statistics " + size_tag(f, n), phases);
}

// --- qforms ---

std::vector<QFormR> forms_or_samples(const Field& f, int n, int samples, std::mt19937_64& rng, bool nondegenerate)
{
    std::vector<QFormR> out;
    if (samples == 0) {
        for (const auto& q : enumerate_qforms(f, n))
            if (!nondegenerate || is_nondegenerate(q))
                out.push_back(q);
        return out;
    }
    while (static_cast<int>(out.size()) < samples) {
        QFormR q(random_symmetric(f, n, rng));
        if (!nondegenerate || is_nondegenerate(q))
            out.push_back(q);
    }
    return out;
}

CheckResult gauss_norm(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    auto qs = forms_or_samples(f, n, samples, rng, true);
    for (const auto& q : qs)
        if (gauss_sum(q).norm() != static_cast<std::int64_t>(ipow_sat(f.order(), n)))
            return result("gauss norm " + size_tag(f, n), false, {{"form", mj(q.matrix())}});
    return result("gauss norm " + size_tag(f, n), true, {{"forms", qs.size()}});
}

CheckResult strata_vanishing(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    auto qs = forms_or_samples(f, n, samples, rng, false);
    int zero = 0;
    for (const auto& q : qs) {
        Stratum s = stratum(q);
        CycInt g = gauss_sum(q);
        bool ok = s.vanishes_on_kernel ? s.induced && stratum(*s.induced).i == 0 &&
                                             g == qpow(f.order(), s.i) * gauss_sum(*s.induced)
                                       : g.is_zero();
        zero += g.is_zero();
        if (!ok)
            return result("strata " + size_tag(f, n), false, {{"form", mj(q.matrix())}});
    }
    return result("strata " + size_tag(f, n), true, {{"forms", qs.size()}, {"vanishing", zero}});
}

CheckResult gamma_fourth(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    auto qs = forms_or_samples(f, n, samples, rng, true);
    for (const auto& q : qs)
        if (!power_identities(q).gamma4_ok)
            return result("gamma^4 " + size_tag(f, n), false, {{"form", mj(q.matrix())}});
    return result("gamma^4 " + size_tag(f, n), true, {{"forms", qs.size()}, {"exhaustive", samples == 0}});
}

CheckResult disc_law(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    auto qs = forms_or_samples(f, n, samples, rng, true);
    std::map<std::uint32_t, CycInt> by_disc;
    const std::string name = "discriminant law " + size_tag(f, n);
    for (const auto& q : qs) {
        PowerReport r = power_identities(q);
        if (!r.disc)
            return result(name, false, {{"form", mj(q.matrix())}});
        CycInt g2 = r.gamma * r.gamma;
        auto [it, fresh] = by_disc.emplace(*r.disc, g2);
        if (!(it->second == g2))
            return result(name, false, {{"form", mj(q.matrix())}, {"disc", *r.disc}});
    }
    for (const auto& [d, g] : by_disc)
        for (const auto& [d2, g2] : by_disc)
            if (!(g2 == (abs_trace(f, d ^ d2) == 0 ? g : -g)))
                return result(name, false, {{"discs", {d, d2}}});
    return result(name, true, {{"forms", qs.size()}, {"classes", by_disc.size()}});
}

CheckResult det_invariance(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    const std::string name = "det(B + C) = det B " + std::to_string(n) + "x" + std::to_string(n) + " q" +
                             std::to_string(f.order());
    auto ring = all_witt(f);
    auto check = [&](const RMatrix& b, const RMatrix& c) { return det(b + c) == det(b) && QFormR(b + c) == QFormR(b); };
    std::uint64_t done = 0;
    if (samples == 0) {
        if (n != 2)
            throw std::invalid_argument("exhaustive determinant check is for 2x2");
        for (const auto& a : ring)
            for (const auto& d : ring)
                for (const auto& o : ring)
                    for (std::uint32_t t = 0; t < f.order(); ++t) {
                        RMatrix b(f, 2, 2), c(f, 2, 2);
                        b(0, 0) = a;
                        b(1, 1) = d;
                        b(0, 1) = b(1, 0) = o;
                        c(0, 1) = c(1, 0) = Witt2(f, 0, t);
                        ++done;
                        if (!check(b, c))
                            return result(name, false, {{"B", mj(b)}, {"C", mj(c)}});
                    }
    } else {
        for (int s = 0; s < samples; ++s) {
            RMatrix b = random_symmetric(f, n, rng), c(f, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    c(i, j) = c(j, i) = Witt2(f, 0, static_cast<std::uint32_t>(rng() % f.order()));
            ++done;
            if (!check(b, c))
                return result(name, false, {{"B", mj(b)}, {"C", mj(c)}});
        }
    }
    return result(name, true, {{"pairs", done}, {"exhaustive", samples == 0}});
}

std::vector<KQuadForm> nondegenerate_kforms(const Field& f, int d)
{
    int entries = d * (d + 1) / 2;
    std::uint64_t total = ipow_sat(f.order(), entries);
    check_guard(total, 1 << 16, "nondegenerate_kforms");
    std::vector<KQuadForm> out;
    for (std::uint64_t t = 0; t < total; ++t) {
        KQuadForm q{KMatrix(f, d, d)};
        std::uint64_t s = t;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                q.upper.at(i, j) = static_cast<std::uint32_t>(s % f.order());
                s /= f.order();
            }
        if (q.polar().rank() == d)
            out.push_back(q);
    }
    return out;
}

CheckResult arf_zero_counts(const Field& f, int max_dim)
{
    std::int64_t q = f.order();
    int forms = 0;
    for (int d = 2; d <= max_dim; d += 2)
        for (const auto& k : nondegenerate_kforms(f, d)) {
            ArfResult a = arf(k);
            std::int64_t half = static_cast<std::int64_t>(ipow_sat(q, d / 2));
            std::int64_t base = static_cast<std::int64_t>(ipow_sat(q, d - 1));
            std::int64_t want = a.cls == 0 ? base + half - half / q : base - half + half / q;
            ++forms;
            if (static_cast<std::int64_t>(count_zeros(k)) != want)
                return result("arf against zero counts", false, {{"dim", d}, {"arf", a.cls}});
        }
    return result("arf against zero counts", true, {{"forms", forms}});
}

CheckResult clifford(const Field& f, int max_dim)
{
    int forms = 0, fixes = 0, swaps = 0, other = 0;
    for (int d = 2; d <= max_dim; d += 2)
        for (const auto& k : nondegenerate_kforms(f, d)) {
            CliffordCenter c = clifford_center(k, d == 2);
            ++forms;
            if (c.center_dim != 2 || !c.z2_consistent || abs_trace(f, c.z2_plus_z) != arf(k).cls)
                return result("clifford center", false, {{"dim", d}, {"center_dim", c.center_dim}});
            if (d == 2) {
                fixes += c.fixes > 0;
                swaps += c.swaps > 0;
                other += c.other;
            }
        }
    return result("clifford center", fixes > 0 && swaps > 0 && other == 0,
                  {{"forms", forms}, {"dim2_fixing", fixes}, {"dim2_swapping", swaps}});
}

CheckResult odd_covering_report(const Field& f)
{
    json detail = json::object();
    for (int n : {1, 3}) {
        std::set<std::pair<std::int64_t, std::int64_t>> values;
        int forms = 0;
        for (const auto& q : enumerate_qforms(f, n)) {
            if (!is_nondegenerate(q))
                continue;
            auto d = discriminant(q);
            CycInt r = gauss_sum(q) * psi_tr(Witt2(f, *d ^ 1, 0)).conj();
            values.insert({r.re(), r.im()});
            ++forms;
        }
        json vs = json::array();
        for (auto [re, im] : values)
            vs.push_back(json::array({re, im}));
        detail["n" + std::to_string(n)] = {{"forms", forms}, {"ratios", vs}, {"constant", values.size() == 1}};
    }
    detail["note"] = "gamma(q) / psi(tr((disc q + 1, 0))) over nondegenerate forms, odd n";
    return report("odd n covering shadow", detail);
}

// --- maslov ---

std::vector<Lagrangian> random_tuple(const SympSpace& v, int m, std::mt19937_64& rng)
{
    std::vector<Lagrangian> t;
    for (int i = 0; i < m; ++i)
        t.push_back(random_lagrangian(v, rng()));
    return t;
}

std::optional<Lagrangian> random_transverse(const SympSpace& v, const std::vector<Lagrangian>& to, std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 256; ++attempt) {
        Lagrangian l = random_lagrangian(v, rng());
        bool ok = true;
        for (const auto& o : to)
            ok = ok && transverse(l, o);
        if (ok)
            return l;
    }
    return std::nullopt;
}

// four pairwise transverse lagrangians; some triples admit no fourth, so
// the whole tuple is redrawn
std::vector<Lagrangian> random_u4(const SympSpace& v, std::mt19937_64& rng)
{
    for (int attempt = 0; attempt < 1024; ++attempt) {
        std::vector<Lagrangian> t{random_lagrangian(v, rng())};
        bool ok = true;
        for (int i = 1; i < 4 && ok; ++i) {
            auto l = random_transverse(v, t, rng);
            if (l)
                t.push_back(*l);
            else
                ok = false;
        }
        if (ok)
            return t;
    }
    throw std::logic_error("no four pairwise transverse lagrangians found");
}

bool pairwise_transverse(const std::vector<Lagrangian>& t)
{
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!transverse(t[i], t[j]))
                return false;
    return true;
}

CheckResult maslov_gram(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    SympSpace v(f, n);
    for (int t = 0; t < samples; ++t) {
        auto tuple = random_tuple(v, 3 + t % 2, rng);
        if (t % 5 == 0)
            tuple[1] = tuple[0];
        MaslovKernel k(tuple);
        RVector cst;
        for (int i = 0; i < 2 * n; ++i)
            cst.push_back(Witt2::from_index(f, static_cast<std::uint32_t>(rng() % (f.order() * f.order()))));
        bool ok = k.module().gram()->is_symmetric() && k.gram_with_constant(cst) == *k.module().gram();
        MaslovQuotient tq(k);
        ok = ok && tq.boundary_in_radical();
        if (pairwise_transverse(tuple))
            ok = ok && k.is_free();
        if (!ok)
            return result("gram symmetry " + size_tag(f, n), false, {{"tuple", tuple_json(tuple)}});
    }
    return result("gram symmetry " + size_tag(f, n), true, {{"tuples", samples}});
}

CheckResult maslov_pi_u(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    SympSpace v(f, n);
    int done = 0;
    const std::string name = "pi_U " + size_tag(f, n);
    if (samples == 0) {
        auto all = enumerate_lagrangians(v);
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& c : all)
                    if (transverse(a, b) && transverse(a, c)) {
                        ++done;
                        if (!verify_pi_U(a, b, c))
                            return result(name, false, {{"tuple", tuple_json({a, b, c})}});
                    }
    } else {
        for (; done < samples; ++done) {
            Lagrangian a = random_lagrangian(v, rng());
            auto b = random_transverse(v, {a}, rng);
            auto c = done % 7 == 0 ? b : random_transverse(v, {a}, rng);
            if (!verify_pi_U(a, *b, *c))
                return result(name, false, {{"tuple", tuple_json({a, *b, *c})}});
        }
    }
    return result(name, done > 0, {{"triples", done}, {"exhaustive", samples == 0}});
}

CheckResult maslov_dihedral(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    SympSpace v(f, n);
    for (int t = 0; t < samples; ++t) {
        auto tuple = random_tuple(v, 3 + t % 3, rng);
        DihedralReport r = isometry_dihedral(MaslovKernel(tuple));
        if (!r.shift_ok || !r.reversal_ok)
            return result("dihedral " + size_tag(f, n), false, {{"tuple", tuple_json(tuple)}});
    }
    return result("dihedral " + size_tag(f, n), true, {{"tuples", samples}});
}

CheckResult maslov_chain(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    SympSpace v(f, n);
    int part1 = 0, part2 = 0, gauss = 0;
    auto run = [&](const std::vector<Lagrangian>& t, int split) {
        ChainReport r = isometry_chain(t, split);
        (r.transverse ? part1 : part2)++;
        if (r.gauss_ok) {
            ++gauss;
            return r.ok && *r.gauss_ok;
        }
        return r.ok;
    };
    const std::string name = "chain " + size_tag(f, n);
    if (samples == 0) {
        auto all = enumerate_lagrangians(v);
        check_guard(ipow_sat(all.size(), 4), 1 << 16, "maslov_chain");
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& c : all)
                    for (const auto& d : all)
                        if (!run({a, b, c, d}, 2))
                            return result(name, false, {{"tuple", tuple_json({a, b, c, d})}});
    } else {
        for (int t = 0; t < samples; ++t) {
            auto tuple = random_tuple(v, 4 + t % 2, rng);
            int split = 1 + static_cast<int>(rng() % (tuple.size() - 2));
            if (t % 3 == 0)
                tuple[split] = tuple[0];
            if (!run(tuple, split))
                return result(name, false, {{"tuple", tuple_json(tuple)}, {"split", split}});
        }
    }
    return result(name, true, {{"transverse", part1}, {"isotropic_reduction", part2}, {"gauss_products", gauss}});
}

CheckResult maslov_cocycle_check(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    SympSpace v(f, n);
    int done = 0;
    const std::string name = "maslov cocycle " + size_tag(f, n);
    auto run = [&](const std::vector<Lagrangian>& t) {
        CocycleReport r = maslov_cocycle(t[0], t[1], t[2], t[3]);
        ++done;
        return r.steps_ok && r.gauss_ok;
    };
    if (samples == 0) {
        auto all = enumerate_lagrangians(v);
        check_guard(ipow_sat(all.size(), 4), 1 << 16, "maslov_cocycle");
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& c : all)
                    for (const auto& d : all)
                        if (pairwise_transverse({a, b, c, d}) && !run({a, b, c, d}))
                            return result(name, false, {{"tuple", tuple_json({a, b, c, d})}});
        return result(name, true, {{"u4_tuples", done}, {"exhaustive", true}});
    }
    for (int t = 0; t < samples; ++t) {
        auto tuple = random_u4(v, rng);
        if (!run(tuple))
            return result(name, false, {{"tuple", tuple_json(tuple)}});
    }
    return result(name, true, {{"u4_tuples", done}, {"exhaustive", false}});
}

CheckResult maslov_new(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    SympSpace v(f, n);
    int done = 0;
    const std::string name = "new isometry " + size_tag(f, n);
    if (samples == 0) {
        auto all = enumerate_lagrangians(v);
        for (const auto& l : all)
            for (const auto& m : all) {
                std::vector<const Lagrangian*> ns;
                for (const auto& x : all)
                    if (transverse(x, l) && transverse(x, m))
                        ns.push_back(&x);
                for (const Lagrangian* a : ns)
                    for (const Lagrangian* b : ns)
                        for (const Lagrangian* c : ns) {
                            ++done;
                            if (!isometry_new(*a, *b, *c, l, m).ok())
                                return result(name, false, {{"tuple", tuple_json({*a, *b, *c, l, m})}});
                        }
                if (!verify_inclusion({l, m, all[0]}))
                    return result(name, false, {{"inclusion", tuple_json({l, m, all[0]})}});
            }
    } else {
        for (; done < samples; ++done) {
            Lagrangian l = random_lagrangian(v, rng()), m = random_lagrangian(v, rng());
            auto a = random_transverse(v, {l, m}, rng), b = random_transverse(v, {l, m}, rng);
            auto c = done % 4 == 0 ? b : random_transverse(v, {l, m}, rng);
            if (!a || !b || !c)
                continue;
            if (!isometry_new(*a, *b, *c, l, m).ok())
                return result(name, false, {{"tuple", tuple_json({*a, *b, *c, l, m})}});
        }
    }
    return result(name, done > 0, {{"tuples", done}, {"exhaustive", samples == 0}});
}

CheckResult theta_check(const Field& f)
{
    ThetaReport r = theta_descent(SympSpace(f, 1));
    return result("theta descent " + size_tag(f, 1), r.ok, {{"triples", r.triples}, {"classes", r.classes}});
}

CheckResult n1_check(const Field& f)
{
    auto cases = n1_cases(Heis(f, 1));
    json rows = json::array();
    for (const auto& c : cases)
        rows.push_back({{"b", wj(c.b)}, {"C", cj(c.c)}, {"gauss", cj(c.gauss)}});
    return result("n = 1 suite q" + std::to_string(f.order()), n1_suite_ok(cases), {{"cases", rows}});
}

// --- padic ---

CheckResult padic_lemma(const Field& f, int n)
{
    int forms = 0, with_chain = 0;
    for (const auto& lm : LatticeModel::enumerate(f, n)) {
        LemmaReport r = lemma_report(lm);
        ++forms;
        with_chain += r.chains > 0;
        bool ok = r.dim_m == 0 && r.lemma_ok && (r.chains > 0) == (r.arf == 0) &&
                  (r.chains == 0 || r.dim_n == static_cast<int>(ipow_sat(f.order(), n)));
        if (!ok)
            return result("fixed spaces " + size_tag(f, n), false,
                          {{"form", forms - 1}, {"dim_m", r.dim_m}, {"dim_n", r.dim_n}, {"arf", r.arf}});
    }
    return result("fixed spaces " + size_tag(f, n), true, {{"forms", forms}, {"with_chain", with_chain}});
}

CheckResult padic_reduce(const Field& f, int n, int samples, std::mt19937_64& rng)
{
    Heis h(f, n);
    std::vector<NChain> all;
    for (const auto& lm : LatticeModel::enumerate(f, n))
        for (const auto& s : vanishing_lagrangians(lm))
            all.emplace_back(lm, s);
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < all.size(); ++i)
        picks.push_back(i);
    if (samples > 0 && !all.empty()) {
        picks.clear();
        for (int t = 0; t < samples; ++t)
            picks.push_back(rng() % all.size());
    }
    for (std::size_t i : picks) {
        Reduction r = reduce_to_heisenberg(h, all[i]);
        if (!r.ok())
            return result("reduction " + size_tag(f, n), false,
                          {{"chain", i},
                           {"tau_ok", r.tau_ok},
                           {"restriction_ok", r.restriction_ok},
                           {"equivariant", r.equivariant},
                           {"solution_dim", r.solution_dim}});
    }
    return result("reduction " + size_tag(f, n), !picks.empty(),
                  {{"chains", all.size()}, {"checked", picks.size()}, {"exhaustive", samples == 0}});
}

CheckResult padic_split(const Field& f, int n, int samples, std::uint64_t seed)
{
    int chains = 0;
    for (const auto& lm : LatticeModel::enumerate(f, n))
        for (const auto& s : vanishing_lagrangians(lm)) {
            ++chains;
            if (!splitting_push(ReducedHeis(NChain(lm, s)), samples, seed))
                return result("splitting " + size_tag(f, n), false, {{"chain", chains - 1}});
        }
    return result("splitting " + size_tag(f, n), chains > 0, {{"chains", chains}, {"exhaustive", samples == 0}});
}

// --- suites ---

using Task = std::function<CheckResult()>;

struct Plan {
    std::string prefix;
    std::vector<Task> tasks;
};

bool small(std::uint64_t size, std::uint64_t limit) { return size <= limit; }

Plan plan_for(const std::string& suite, const Grid& g)
{
    const Field& f = field_for(g.q);
    int n = g.n;
    int trials = g.trials;
    std::uint64_t seed = g.seed;
    Plan p{suite, {}};
    auto add = [&](const std::string& key, std::function<CheckResult(std::mt19937_64&)> fn) {
        p.tasks.push_back([key, fn, seed]() {
            auto rng = rng_for(seed, key);
            return fn(rng);
        });
    };
    std::uint64_t q = f.order();
    std::uint64_t heis_size = ipow_sat(q, 2 * n + 2);
    bool n1 = n == 1;
    if (suite == "witt") {
        add("witt.axioms", [&f](auto&) { return witt_axioms(f); });
        if (q == 2)
            add("witt.z4", [](auto&) { return witt_z4(); });
        add("witt.trace", [&f](auto&) { return witt_trace(f); });
    } else if (suite == "heisenberg") {
        int ax = small(heis_size, 64) ? 0 : trials;
        std::uint64_t enhanced = ipow_sat(q, n);
        for (int i = 1; i <= n; ++i)
            enhanced *= ipow_sat(q, i) + 1;
        int lag = small(enhanced * heis_size, 1 << 14) ? 0 : trials;
        add("heisenberg.axioms", [&f, n, ax](auto& r) { return heis_axioms(f, n, ax, r); });
        add("heisenberg.commutator", [&f, n](auto&) { return heis_commutator(f, n); });
        add("heisenberg.tau", [&f, n, lag](auto& r) { return tau_epsilon(f, n, lag, r); });
        add("heisenberg.model", [&f, n, lag](auto& r) { return model_dims(f, n, lag, r); });
        int com = lag == 0 ? 0 : std::min(trials, 4);
        // the commutant solve is (q^n)^2 unknowns in exact arithmetic
        if (ipow_sat(q, n) <= 8)
            add("heisenberg.commutant", [&f, n, com](auto& r) { return commutant(f, n, com, r); });
    } else if (suite == "qforms") {
        int ex = small(ipow_sat(q, 2 * n + n * (n - 1) / 2), 1 << 12) ? 0 : trials;
        add("qforms.norm", [&f, n, ex](auto& r) { return gauss_norm(f, n, ex, r); });
        add("qforms.strata", [&f, n, ex](auto& r) { return strata_vanishing(f, n, ex, r); });
        add("qforms.gamma4", [&f, n, ex](auto& r) { return gamma_fourth(f, n, ex, r); });
        add("qforms.disc", [&f, n, ex](auto& r) { return disc_law(f, n, ex, r); });
        add("qforms.det", [&f, n, trials](auto& r) { return det_invariance(f, std::max(n, 2), n <= 2 ? 0 : trials, r); });
        if (q == 2) {
            add("qforms.arf", [&f](auto&) { return arf_zero_counts(f, 4); });
            add("qforms.clifford", [&f](auto&) { return clifford(f, 4); });
            add("qforms.odd_covering", [&f](auto&) { return odd_covering_report(f); });
        }
    } else if (suite == "intertwine") {
        bool ex = q == 2 && n == 1;
        add("intertwine.compose", [&f, n, ex, trials](auto& r) { return composition(f, n, ex ? 0 : trials, r); });
        int fl = small(heis_size, 256) ? 0 : trials;
        add("intertwine.flat", [&f, n, fl](auto& r) { return flat_transverse(f, n, fl, r); });
        if (n1) {
            int cv = small(heis_size, 256) ? 0 : std::min(trials, 10);
            add("intertwine.convolve", [&f, cv, threads = g.threads](auto& r) { return convolution(f, threads, cv, r); });
        }
    } else if (suite == "maslov") {
        bool ex = q == 2 && n == 1;
        add("maslov.gram", [&f, n, trials](auto& r) { return maslov_gram(f, n, trials, r); });
        add("maslov.pi_u", [&f, n, ex, trials](auto& r) { return maslov_pi_u(f, n, ex ? 0 : trials, r); });
        add("maslov.dihedral", [&f, n, trials](auto& r) { return maslov_dihedral(f, n, trials, r); });
        add("maslov.chain", [&f, n, ex, trials](auto& r) { return maslov_chain(f, n, ex ? 0 : trials, r); });
        add("maslov.cocycle", [&f, n, ex, trials](auto& r) { return maslov_cocycle_check(f, n, ex ? 0 : trials, r); });
        add("maslov.new", [&f, n, ex, trials](auto& r) { return maslov_new(f, n, ex ? 0 : trials, r); });
        if (n1) {
            add("maslov.theta", [&f](auto&) { return theta_check(f); });
            add("maslov.n1", [&f](auto&) { return n1_check(f); });
        }
    } else if (suite == "padic") {
        add("padic.lemma", [&f, n](auto&) { return padic_lemma(f, n); });
        int rd = small(ipow_sat(q, 2 * n), 16) ? 0 : std::min(trials, 8);
        add("padic.reduce", [&f, n, rd](auto& r) { return padic_reduce(f, n, rd, r); });
        int sp = small(ipow_sat(q, 4 * n), 1 << 8) ? 0 : trials;
        add("padic.splitting", [&f, n, sp, seed](auto&) { return padic_split(f, n, sp, seed); });
    } else if (suite == "cocycle") {
        add("cocycle.values", [&f, n, trials](auto& r) { return metaplectic_pairs(f, n, trials, r); });
        add("cocycle.identity", [&f, n, trials](auto& r) { return metaplectic_triples(f, n, trials, r); });
        add("cocycle.phases", [&f, n, trials](auto& r) { return phase_report(f, n, trials, r); });
    } else {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    return p;
}

std::vector<CheckResult> run_tasks(const std::vector<Task>& tasks, int threads)
{
    std::vector<CheckResult> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                out[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int w = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < w; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const SizeGuardError&) {
                throw;
            } catch (const std::exception& e) {
                out[i] = result("error", false, {{"exception", e.what()}});
            }
        }
    return out;
}

json grid_json(const Grid& g)
{
    return {{"q", g.q}, {"n", g.n}, {"seed", g.seed}, {"trials", g.trials}};
}

} // namespace

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::reported:
        return "reported";
    }
    return "fail";
}

bool VerifyReport::ok() const
{
    for (const auto& c : checks)
        if (c.status == Status::fail)
            return false;
    return true;
}

json VerifyReport::to_json() const
{
    json cs = json::array();
    for (const auto& c : checks)
        cs.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return {{"schema", "weil2/1"}, {"suite", suite}, {"grid", grid_json(grid)}, {"ok", ok()}, {"checks", cs}};
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"witt",   "heisenberg", "intertwine", "maslov",
                                                "qforms", "padic",      "cocycle",    "all"};
    return names;
}

VerifyReport run_suite(const std::string& name, const Grid& grid)
{
    std::vector<std::string> suites;
    if (name == "all")
        suites = {"witt", "heisenberg", "qforms", "intertwine", "maslov", "padic", "cocycle"};
    else
        suites = {name};
    std::vector<Task> tasks;
    for (const auto& s : suites) {
        Plan p = plan_for(s, grid);
        tasks.insert(tasks.end(), p.tasks.begin(), p.tasks.end());
    }
    VerifyReport rep{name, grid, run_tasks(tasks, grid.threads)};
    // names carry the suite so "all" stays readable
    std::size_t i = 0;
    for (const auto& s : suites) {
        std::size_t count = plan_for(s, grid).tasks.size();
        for (std::size_t k = 0; k < count; ++k, ++i)
            rep.checks[i].name = s + ": " + rep.checks[i].name;
    }
    return rep;
}

// --- tables ---

const std::vector<std::string>& table_names()
{
    static const std::vector<std::string> names{"gauss-sums", "maslov-gram", "cocycle-phases", "lagrangian-counts"};
    return names;
}

json emit_table(const std::string& kind, const Grid& grid)
{
    const Field& f = field_for(grid.q);
    int n = grid.n;
    json t = {{"schema", "weil2/1"}, {"table", kind}, {"grid", grid_json(grid)}};
    json rows = json::array();
    if (kind == "gauss-sums") {
        t["columns"] = {"B", "gauss", "disc", "stratum", "nondegenerate"};
        if (n > 0)
            for (const auto& q : enumerate_qforms(f, n)) {
                auto d = discriminant(q);
                rows.push_back({mj(q.matrix()), cj(gauss_sum(q, grid.threads)), d ? json(*d) : json(nullptr),
                                stratum(q).i, is_nondegenerate(q)});
            }
    } else if (kind == "maslov-gram") {
        t["columns"] = {"tuple", "structure", "gram", "gauss"};
        auto rng = rng_for(grid.seed, "table.maslov-gram");
        if (n > 0) {
            SympSpace v(f, n);
            for (int s = 0; s < grid.trials; ++s) {
                auto tuple = random_tuple(v, 3, rng);
                MaslovKernel k(tuple);
                auto st = k.module().structure();
                rows.push_back({tuple_json(tuple), json::array({st.first, st.second}), mj(*k.module().gram()),
                                k.is_free() ? cj(maslov_gauss(k, grid.threads)) : json(nullptr)});
            }
        }
    } else if (kind == "cocycle-phases") {
        t["columns"] = {"g", "h", "num", "den", "norm_power", "mu8"};
        auto rng = rng_for(grid.seed, "table.cocycle-phases");
        if (n > 0 && grid.trials > 0) {
            Heis h(f, n);
            auto els = asp_pool(h, rng);
            Metaplectic mp(EnhLagrangian::epsilon(h, Lagrangian::standard(f, n)));
            for (int s = 0; s < grid.trials; ++s) {
                std::size_t i = rng() % els.size(), j = rng() % els.size();
                CycRatio c = mp.cocycle(els[i], els[j]);
                int k = 0;
                bool pw = norm_is_power(c, h.q(), &k);
                rows.push_back({i, j, cj(c.num), cj(c.den), pw ? json(k) : json(nullptr), ratio_mu8_index(c)});
            }
        }
    } else if (kind == "lagrangian-counts") {
        t["columns"] = {"n", "k_lagrangians", "k_formula", "lagrangians", "formula"};
        for (int m = 1; m <= n; ++m) {
            std::uint64_t kf = 1;
            for (int i = 1; i <= m; ++i)
                kf *= ipow_sat(f.order(), i) + 1;
            std::uint64_t rf = kf * ipow_sat(f.order(), m * (m + 1) / 2);
            rows.push_back({m, enumerate_k_lagrangians(Heis(f, m)).size(), kf,
                            enumerate_lagrangians(SympSpace(f, m)).size(), rf});
        }
    } else {
        throw std::invalid_argument("unknown table: " + kind);
    }
    t["rows"] = rows;
    return t;
}

// --- acceptance ---

std::vector<Criterion> acceptance_criteria()
{
    const Field& f2 = Field::get(1);
    const Field& f4 = Field::get(2);
    auto seeded = [](const std::string& key) { return rng_for(2024, key); };
    std::vector<Criterion> c;

    c.push_back({1, "Witt ring axioms, Z/4 for m=1", 1.0, [&](int) {
                     return combine("witt", {witt_axioms(f2), witt_axioms(f4), witt_z4()});
                 }});
    c.push_back({2, "Heisenberg axioms, commutator, tau of epsilon", 5.0, [&](int) {
                     auto r = seeded("c2");
                     return combine("heisenberg", {heis_axioms(f2, 1, 0, r), heis_commutator(f2, 1),
                                                   tau_epsilon(f2, 1, 0, r), tau_epsilon(f2, 2, 100, r)});
                 }});
    c.push_back({3, "model dimension and commutant", 30.0, [&](int) {
                     auto r = seeded("c3");
                     return combine("model", {model_dims(f2, 1, 0, r), commutant(f2, 1, 0, r), commutant(f2, 2, 0, r)});
                 }});
    c.push_back({4, "intertwiner composition and flat operators", 120.0, [&](int) {
                     auto r = seeded("c4");
                     return combine("intertwiner", {composition(f2, 1, 0, r), composition(f4, 1, 500, r),
                                                    composition(f2, 2, 500, r), flat_transverse(f2, 1, 0, r),
                                                    flat_transverse(f4, 1, 0, r)});
                 }});
    c.push_back({5, "convolution of f0 functions", 60.0, [&](int threads) {
                     auto r = seeded("c5");
                     return combine("convolution", {convolution(f2, threads, 0, r)});
                 }});
    c.push_back({6, "Gauss sums", 120.0, [&](int) {
                     auto r = seeded("c6");
                     return combine("gauss", {gauss_norm(f2, 1, 0, r), gauss_norm(f2, 2, 0, r),
                                              strata_vanishing(f2, 1, 0, r), strata_vanishing(f2, 2, 0, r),
                                              gamma_fourth(f2, 1, 0, r), gamma_fourth(f2, 2, 0, r),
                                              gamma_fourth(f4, 1, 100, r), disc_law(f2, 1, 0, r), disc_law(f2, 2, 0, r),
                                              disc_law(f4, 1, 0, r), det_invariance(f2, 2, 0, r),
                                              det_invariance(f4, 2, 0, r), det_invariance(f2, 3, 300, r),
                                              det_invariance(f4, 3, 300, r)});
                 }});
    c.push_back({7, "Arf invariant and Clifford center", 60.0, [&](int) {
                     return combine("arf", {arf_zero_counts(f2, 4), clifford(f2, 4)});
                 }});
    c.push_back({8, "Maslov isometries and cocycle", 300.0, [&](int) {
                     auto r = seeded("c8");
                     return combine(
                         "maslov",
                         {maslov_gram(f2, 1, 200, r), maslov_gram(f4, 1, 200, r), maslov_gram(f2, 2, 200, r),
                          maslov_pi_u(f2, 1, 0, r), maslov_pi_u(f4, 1, 500, r), maslov_pi_u(f2, 2, 500, r),
                          maslov_pi_u(f4, 2, 500, r), maslov_dihedral(f2, 1, 200, r), maslov_dihedral(f4, 1, 200, r),
                          maslov_dihedral(f2, 2, 200, r), maslov_chain(f2, 1, 0, r), maslov_chain(f4, 1, 100, r),
                          maslov_chain(f2, 2, 100, r), maslov_cocycle_check(f2, 1, 0, r),
                          maslov_cocycle_check(f4, 1, 300, r), maslov_cocycle_check(f2, 2, 300, r),
                          maslov_new(f2, 1, 0, r)});
                 }});
    c.push_back({9, "theta descent", 60.0, [&](int) { return combine("theta", {theta_check(f2)}); }});
    c.push_back({10, "n = 1 suite", 10.0, [&](int) { return combine("n1", {n1_check(f2), n1_check(f4)}); }});
    c.push_back({11, "fixed spaces and the reduction intertwiner", 60.0, [&](int) {
                     auto r = seeded("c11");
                     return combine("padic", {padic_lemma(f2, 1), padic_lemma(f2, 2), padic_reduce(f2, 1, 0, r),
                                              padic_reduce(f2, 2, 0, r)});
                 }});
    c.push_back({12, "metaplectic cocycle", 120.0, [&](int) {
                     auto r = seeded("c12");
                     return combine("metaplectic", {metaplectic_pairs(f2, 1, 200, r), metaplectic_triples(f2, 1, 200, r),
                                                    phase_report(f2, 1, 200, r)});
                 }});
    c.push_back({13, "determinism across thread counts", 120.0, [&](int) {
                     bool ok = true;
                     json detail = json::object();
                     for (const auto& [suite, q, n] : {std::tuple{"all", 2, 1}, std::tuple{"maslov", 2, 2}}) {
                         Grid g{q, n, 7, 20, 1};
                         std::string one = run_suite(suite, g).to_json().dump();
                         g.threads = 4;
                         std::string four = run_suite(suite, g).to_json().dump();
                         g.threads = 3;
                         std::string three = run_suite(suite, g).to_json().dump();
                         bool same = one == four && one == three;
                         detail[std::string(suite) + " q" + std::to_string(q) + "n" + std::to_string(n)] =
                             {{"bytes", one.size()}, {"identical", same}};
                         ok = ok && same;
                     }
                     return result("determinism", ok, detail);
                 }});
    return c;
}

} // namespace weil2
