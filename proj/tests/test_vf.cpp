#include <catch2/catch_amalgamated.hpp>

#include <adelab/modular.hpp>
#include <adelab/vectorfield.hpp>

#include <random>

using namespace adelab;

namespace {

SparsePoly<Zm> pvar(int nv, int i, Mod m) { return SparsePoly<Zm>::variable(nv, i, Zm{1, m}); }

SparsePoly<Zm> rnd_ppoly(std::mt19937& g, int nv, int maxdeg, Mod m) {
    std::uniform_int_distribution<int> dc(0, static_cast<int>(m.q) - 1);
    std::uniform_int_distribution<int> de(0, maxdeg);
    SparsePoly<Zm> out(nv);
    std::vector<Term<Zm>> raw;
    for (int t = 0; t < 6; ++t) {
        Exps e{};
        int left = maxdeg;
        for (int i = 0; i < nv; ++i) {
            int d = de(g) % (left + 1);
            e[i] = static_cast<std::uint16_t>(d);
            left -= d;
        }
        raw.push_back({e, Zm{static_cast<std::uint64_t>(dc(g)), m}});
    }
    return SparsePoly<Zm>::collect(nv, std::move(raw));
}

// p-fold application of v as an operator
SparsePoly<Zm> p_fold(const PDerivation& v, SparsePoly<Zm> f, long p) {
    for (long i = 0; i < p; ++i) f = apply_derivation(v, f);
    return f;
}

// raw weight p-1 / p+1 polynomials with the series generators themselves as
// coordinates, lifted into (t1, t2, t3)
SparsePoly<Rat> raw_lift(long w) {
    int n = static_cast<int>((w + 13) / 12) + 5;
    auto f = eisenstein_q(static_cast<unsigned long>(w), n - 1);
    return lift_t2t3(isobaric_decompose(f, w, n - 1));
}

} // namespace

TEST_CASE("catalog fields match their displays") {
    auto e = catalog("ramanujan-e");
    REQUIRE(e.nv() == 3);
    auto t1 = SparsePoly<Rat>::variable(3, 0, Rat(1));
    auto t2 = SparsePoly<Rat>::variable(3, 1, Rat(1));
    auto t3 = SparsePoly<Rat>::variable(3, 2, Rat(1));
    CHECK(e.comp[0] == (t1 * t1 - t2) * make_rat(1, 12));
    CHECK(e.comp[1] == (t1 * t2 - t3) * make_rat(1, 3));
    CHECK(e.comp[2] == (t1 * t3 - t2 * t2) * make_rat(1, 2));

    auto a = catalog("ramanujan-a");
    CHECK(a.comp[0] == t1 * t1 - t2 * make_rat(1, 12));
    CHECK(a.comp[2] == (t1 * t3) * Rat(6) - (t2 * t2) * make_rat(1, 3));

    auto lor = catalog("lorenz", {Rat(10), Rat(28), make_rat(8, 3)});
    CHECK(lor.comp[0] == (t2 - t1) * Rat(10)); // same indices, different names
    CHECK(lor.comp[1] == t1 * Rat(28) - t1 * t3 - t2);
    CHECK(lor.comp[2] == t1 * t2 - t3 * make_rat(8, 3));
    CHECK(lor.vars == std::vector<std::string>{"x", "y", "z"});

    auto lc = catalog("limitcycle");
    auto x = SparsePoly<Rat>::variable(2, 0, Rat(1));
    auto y = SparsePoly<Rat>::variable(2, 1, Rat(1));
    CHECK(lc.comp[0] == y * Rat(2) + (x * x) * make_rat(1, 2));
    CHECK(lc.comp[1] == (x * x) * Rat(3) - SparsePoly<Rat>::constant(2, Rat(3)) + y * make_rat(9, 10));

    CHECK(catalog("modular4").nv() == 4);
    CHECK_THROWS_AS(catalog("ramanujan"), UnknownName);
    CHECK_THROWS_AS(catalog("lorenz", {Rat(1)}), InvalidArgument);
}

TEST_CASE("frobenius powers of simple fields") {
    Mod m = make_mod(5, 1);
    // d/dx: the p-th power kills everything
    PDerivation d{{"x"}, {SparsePoly<Zm>::constant(1, Zm{1, m})}};
    auto dp = frobenius_power(d, 5);
    CHECK(dp.comp[0].zero());
    // the Euler field is its own p-th power
    PDerivation eu{{"x", "y"}, {pvar(2, 0, m), pvar(2, 1, m)}};
    auto eup = frobenius_power(eu, 5);
    CHECK(eup.comp[0] == eu.comp[0]);
    CHECK(eup.comp[1] == eu.comp[1]);
}

TEST_CASE("p-fold composition is a derivation and matches the component form") {
    for (long p : {5L, 7L, 11L}) {
        Mod m = make_mod(p, 1);
        std::mt19937 g(static_cast<unsigned>(9000 + p));
        PDerivation v{{"x", "y"}, {rnd_ppoly(g, 2, 2, m), rnd_ppoly(g, 2, 2, m)}};
        auto w = frobenius_power(v, p);
        for (int trial = 0; trial < 3; ++trial) {
            auto f = rnd_ppoly(g, 2, 3, m);
            auto h = rnd_ppoly(g, 2, 3, m);
            auto lhs = p_fold(v, f * h, p);
            auto rhs = p_fold(v, f, p) * h + f * p_fold(v, h, p);
            CHECK(lhs == rhs);
            CHECK(p_fold(v, f, p) == apply_derivation(w, f));
        }
    }
}

TEST_CASE("frobenius power is additive on commuting pieces") {
    long p = 5;
    Mod m = make_mod(p, 1);
    std::mt19937 g(77);
    // v1 only involves and moves (x1, x2); v2 only (x3, x4)
    auto confine = [&](SparsePoly<Zm> f, int lo) {
        SparsePoly<Zm> out(4);
        for (auto& t : f.terms) {
            Exps e{};
            e[lo] = t.e[0];
            e[lo + 1] = t.e[1];
            out.terms.push_back({e, t.c});
        }
        out.sortin();
        return out;
    };
    PDerivation v1{{"x1", "x2", "x3", "x4"},
                   {confine(rnd_ppoly(g, 2, 2, m), 0), confine(rnd_ppoly(g, 2, 2, m), 0),
                    SparsePoly<Zm>(4), SparsePoly<Zm>(4)}};
    PDerivation v2{{"x1", "x2", "x3", "x4"},
                   {SparsePoly<Zm>(4), SparsePoly<Zm>(4), confine(rnd_ppoly(g, 2, 2, m), 2),
                    confine(rnd_ppoly(g, 2, 2, m), 2)}};
    // commutation is by construction: disjoint variables
    auto s = frobenius_power(v1 + v2, p);
    auto s1 = frobenius_power(v1, p);
    auto s2 = frobenius_power(v2, p);
    for (int i = 0; i < 4; ++i) CHECK(s.comp[i] == (s1 + s2).comp[i]);
}

TEST_CASE("frobenius power preserves weighted homogeneity") {
    std::vector<long> wts{2, 4, 6};
    for (long p : {5L, 7L}) {
        for (auto name : {"ramanujan-a", "ramanujan-e"}) {
            auto w = frobenius_power(reduce_derivation(catalog(name), p), p);
            for (int i = 0; i < 3; ++i) {
                if (w.comp[i].zero()) continue;
                auto d = w.comp[i].homogeneous_weight(wts);
                REQUIRE(d.has_value());
                CHECK(*d == wts[static_cast<std::size_t>(i)] + 2 * p);
            }
        }
    }
}

TEST_CASE("collinearity classification") {
    auto rep = is_pclosed(catalog("ramanujan-e"), 7);
    CHECK(rep.cls == Collin::NotCollinear);
    CHECK(rep.has_witness());
    CHECK_FALSE(rep.witness.zero());

    CHECK(is_pclosed(catalog("limitcycle"), 3).cls == Collin::Collinear);
    CHECK(is_pclosed(catalog("lorenz", {Rat(10), Rat(28), make_rat(8, 3)}), 3).cls ==
          Collin::RingPrime);

    // a field proportional to its own p-th power
    QDerivation scaled{{"x", "y"},
                       {SparsePoly<Rat>::variable(2, 0, Rat(2)),
                        SparsePoly<Rat>::variable(2, 1, Rat(2))}};
    for (long p : {5L, 7L}) CHECK(is_pclosed(scaled, p).cls == Collin::Collinear);

    // pointwise mode: collinear at points where the witness minor vanishes
    auto at_point = is_pclosed(catalog("ramanujan-e"), 5, std::vector<Rat>{Rat(0), Rat(0), Rat(0)});
    CHECK(at_point.cls == Collin::Collinear);
}

TEST_CASE("scans over the catalog") {
    auto re = pclosed_scan(catalog("ramanujan-e"), 50);
    auto ps = primes_upto(50);
    REQUIRE(re.size() == ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(re[i].p == ps[i]);
        if (ps[i] == 2 || ps[i] == 3)
            CHECK(re[i].cls == Collin::RingPrime);
        else
            CHECK(re[i].cls == Collin::NotCollinear);
    }

    auto m4 = pclosed_scan(catalog("modular4"), 20);
    for (auto& r : m4) {
        if (r.p == 2 || r.p == 3)
            CHECK(r.cls == Collin::RingPrime);
        else
            CHECK(r.cls == Collin::NotCollinear);
    }

    auto lc = pclosed_scan(catalog("limitcycle"), 100);
    for (auto& r : lc) {
        if (r.p == 2 || r.p == 5)
            CHECK(r.cls == Collin::RingPrime);
        else if (r.p == 3)
            CHECK(r.cls == Collin::Collinear);
        else
            CHECK(r.cls == Collin::NotCollinear);
    }

    auto lo = pclosed_scan(catalog("lorenz", {Rat(10), Rat(28), make_rat(8, 3)}), 30);
    for (auto& r : lo) {
        if (r.p == 3)
            CHECK(r.cls == Collin::RingPrime);
        else if (r.p != 2 && r.p != 5)
            CHECK(r.cls == Collin::NotCollinear);
    }
}

TEST_CASE("first integrals of the Ramanujan field") {
    for (long p : {5L, 7L}) {
        auto araw = raw_lift(p - 1);
        auto braw = raw_lift(p + 1);
        auto t1 = SparsePoly<Rat>::variable(3, 0, Rat(1));
        auto f = braw - t1 * araw;
        Mod m = make_mod(p, 1);
        auto fp = f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
        auto v = reduce_derivation(catalog("ramanujan-e"), p);
        CHECK(first_integral_check(v, fp));
    }
    Mod m5 = make_mod(5, 1);
    auto v5 = reduce_derivation(catalog("ramanujan-e"), 5);
    CHECK_FALSE(first_integral_check(v5, pvar(3, 0, m5)));
}

TEST_CASE("membership in the two-generator ideal by elimination and division") {
    long p = 5;
    Mod m = make_mod(p, 1);
    auto ab = ab_polynomials(p);
    auto red = [&](const SparsePoly<Rat>& f) {
        return f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
    };
    auto a3 = red(lift_t2t3(ab.a));
    auto b3 = red(lift_t2t3(ab.b));
    Zm one{1, m};
    auto t1 = pvar(3, 0, m), t2 = pvar(3, 1, m), t3 = pvar(3, 2, m);
    auto gen1 = a3 - SparsePoly<Zm>::constant(3, one);          // A - 1
    auto gen2 = b3 + t1 * scalar_like(12, one);                 // B + 12 t1
    auto elim_rep = b3 * (-zm_inv(scalar_like(12, one)));       // t1 -> -B/12
    std::vector<std::pair<int, SparsePoly<Zm>>> elim{{0, elim_rep}};

    auto member = gen1 * t2 * t2 * t2 + gen2 * t3;
    auto r1 = reduce_by_principal(member, elim, gen1);
    CHECK(r1.divisible);
    CHECK(r1.remainder.zero());

    auto v = reduce_derivation(catalog("ramanujan-a"), p);
    auto w = frobenius_power(v, p);
    for (int i = 0; i < 3; ++i) {
        auto r = reduce_by_principal(w.comp[i] - v.comp[i], elim, gen1);
        CHECK(r.divisible);
    }

    auto r3 = reduce_by_principal(t2, elim, gen1);
    CHECK_FALSE(r3.divisible);
    CHECK_FALSE(r3.remainder.zero());
}

TEST_CASE("closed form of the Frobenius power of the weight field") {
    CHECK(bianchini_check(5));
    CHECK(bianchini_check(7));
    CHECK(bianchini_check(11));
    CHECK_THROWS_AS(bianchini_check(3), InvalidArgument);
}

TEST_CASE("one-dimensional straightening") {
    Mod m5 = make_mod(5, 1);
    Zm one{1, m5};
    QSeries<Zm> a = qseries_zero(9, Zm{0, m5});
    a.at(1) = one;
    auto f = linearize_1d(a, one, 8);
    CHECK(is_zero(f.at(0)));
    CHECK(f.at(1) == one);
    for (int i = 2; i < f.order(); ++i) CHECK(is_zero(f.at(i)));

    QSeries<Zm> a2 = qseries_zero(9, Zm{0, m5});
    a2.at(1) = one;
    a2.at(2) = one;
    auto f2 = linearize_1d(a2, one, 8);
    CHECK(f2.at(1) == one);
    // defining identity, re-checked here: v(f) = f
    CHECK(is_zero(apply_1d(truncate(a2, 9), f2) - f2));

    CHECK_THROWS_AS(linearize_1d(a2, Zm{0, m5}, 8), InvalidArgument);

    Mod m2 = make_mod(2, 1);
    QSeries<Zm> bad = qseries_zero(6, Zm{0, m2});
    bad.at(1) = Zm{1, m2};
    bad.at(3) = Zm{1, m2};
    CHECK_THROWS_AS(linearize_1d(bad, Zm{1, m2}, 5), NotIdempotent);
}

TEST_CASE("multivariable straightening") {
    long p = 5;
    Mod m = make_mod(p, 1);
    Zm one{1, m}, zero{0, m};

    PDerivation eu{{"x", "y"}, {pvar(2, 0, m), pvar(2, 1, m)}};
    Mat<Zm> id(2, 2, zero);
    id.at(0, 0) = one;
    id.at(1, 1) = one;
    auto f = linearize_nd(eu, id, 6);
    CHECK(f[0] == pvar(2, 0, m));
    CHECK(f[1] == pvar(2, 1, m));

    Mat<Zm> bad = id;
    bad.at(1, 1) = zero;
    CHECK_THROWS_AS(linearize_nd(eu, bad, 6), BadLinearPart);

    // conjugate of the diagonal field by (x, y) -> (x + y^2, y)
    Mat<Zm> d(2, 2, zero);
    d.at(0, 0) = one;
    d.at(1, 1) = Zm{static_cast<std::uint64_t>(p - 1), m};
    auto x = pvar(2, 0, m), y = pvar(2, 1, m);
    PDerivation v{{"x", "y"}, {x + (y * y) * scalar_like(3, one), -y}};
    auto g = linearize_nd(v, d, 8);
    for (int i = 0; i < 2; ++i) {
        auto lhs = drop_above(apply_derivation(v, g[static_cast<std::size_t>(i)]), 8);
        SparsePoly<Zm> rhs(2);
        for (int j = 0; j < 2; ++j) rhs = rhs + g[static_cast<std::size_t>(j)] * d.at(i, j);
        CHECK(lhs == drop_above(rhs, 8));
    }
    // the known straightening (x + y^2, y) also works; ours must agree on the
    // linear part
    CHECK(drop_above(g[0], 1) == x);
    CHECK(drop_above(g[1], 1) == y);
}
