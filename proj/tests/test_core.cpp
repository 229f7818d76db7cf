#include <catch2/catch_amalgamated.hpp>

#include <adelab/arith.hpp>
#include <adelab/poly.hpp>
#include <adelab/series.hpp>
#include <adelab/zmod.hpp>

#include <random>

using namespace adelab;

namespace {

Rat rnd_rat(std::mt19937& g, int nmax = 20, int dmax = 12) {
    std::uniform_int_distribution<int> dn(-nmax, nmax), dd(1, dmax);
    return make_rat(Int(dn(g)), Int(dd(g)));
}

SparsePoly<Rat> rnd_poly(std::mt19937& g, int nv, int maxdeg, int nterms) {
    std::uniform_int_distribution<int> de(0, maxdeg);
    std::vector<Term<Rat>> ts;
    for (int i = 0; i < nterms; ++i) {
        Exps e{};
        for (int v = 0; v < nv; ++v) e[v] = static_cast<std::uint16_t>(de(g));
        ts.push_back({e, rnd_rat(g)});
    }
    return SparsePoly<Rat>::collect(nv, std::move(ts));
}

SparsePoly<Zm> rnd_poly_mod(std::mt19937& g, int nv, int maxdeg, int nterms, const Mod& m) {
    std::uniform_int_distribution<int> de(0, maxdeg);
    std::uniform_int_distribution<long> dc(0, static_cast<long>(m.q) - 1);
    std::vector<Term<Zm>> ts;
    for (int i = 0; i < nterms; ++i) {
        Exps e{};
        for (int v = 0; v < nv; ++v) e[v] = static_cast<std::uint16_t>(de(g));
        ts.push_back({e, Zm{static_cast<std::uint64_t>(dc(g)), m}});
    }
    return SparsePoly<Zm>::collect(nv, std::move(ts));
}

} // namespace

TEST_CASE("bernoulli numbers from the defining recursion") {
    CHECK(bernoulli(0) == Rat(1));
    CHECK(bernoulli(1) == make_rat(-1, 2));
    CHECK(bernoulli(2) == make_rat(1, 6));
    for (unsigned long k = 3; k <= 19; k += 2) CHECK(bernoulli(k) == Rat(0));
    CHECK(bernoulli(12) == make_rat(-691, 2730));
    // second route for the denominator: product of primes p with (p-1) | 12
    Int vsc_den = 1;
    for (long p : primes_upto(13))
        if (12 % (p - 1) == 0) vsc_den *= p;
    CHECK(den(bernoulli(12)) == vsc_den);
}

TEST_CASE("von Staudt-Clausen integrality for even k up to 60") {
    for (unsigned long k = 2; k <= 60; k += 2) {
        Rat s = bernoulli(k);
        for (long p : primes_upto(static_cast<long>(k) + 1))
            if (k % static_cast<unsigned long>(p - 1) == 0) s += make_rat(1, p);
        CHECK(den(s) == 1);
    }
}

TEST_CASE("p-adic valuation") {
    CHECK(padic_valuation(Rat(factorial(25)), Int(5)) == PVal::fin(6));
    CHECK(padic_valuation(make_rat(1, 12), Int(3)) == PVal::fin(-1));
    CHECK(padic_valuation(Rat(0), Int(7)) == PVal::inf());
    CHECK_THROWS_AS(padic_valuation(Rat(1), Int(6)), InvalidArgument);
    CHECK(factorial_valuation(25, 5) == 6);
}

TEST_CASE("reduction into Z/p^k") {
    CHECK(reduce_mod(make_rat(7, 4), 5, 1).v == 3);
    CHECK_THROWS_AS(reduce_mod(make_rat(1, 12), 2, 1), DenominatorNotUnit);

    // brute-force oracle: the unique x in [0,25) with 216*x = -1 mod 25
    std::uint64_t expect = 0;
    int hits = 0;
    for (std::uint64_t x = 0; x < 25; ++x)
        if ((216 * x) % 25 == 24) {
            expect = x;
            ++hits;
        }
    REQUIRE(hits == 1);
    CHECK(expect == 14);
    CHECK(reduce_mod(make_rat(-1, 216), 5, 2).v == expect);
}

TEST_CASE("reduce_mod is a ring morphism on p-unit denominators") {
    std::mt19937 g(20240817);
    for (auto [p, k] : std::vector<std::pair<long, std::uint32_t>>{{5, 1}, {5, 6}, {7, 2}}) {
        Mod m = make_mod(static_cast<std::uint64_t>(p), k);
        int done = 0;
        while (done < 50) {
            Rat x = rnd_rat(g, 40, 30), y = rnd_rat(g, 40, 30);
            if (den(x) % p == 0 || den(y) % p == 0) continue;
            ++done;
            CHECK(reduce_mod(x * y, m) == reduce_mod(x, m) * reduce_mod(y, m));
            CHECK(reduce_mod(x + y, m) == reduce_mod(x, m) + reduce_mod(y, m));
        }
    }
}

TEST_CASE("rising factorial") {
    CHECK(pochhammer_rising(make_rat(1, 2), 0) == Rat(1));
    CHECK(pochhammer_rising(make_rat(1, 2), 2) == make_rat(3, 4));
    CHECK(pochhammer_rising(make_rat(1, 4), 1) == make_rat(1, 4));
}

TEST_CASE("integer/fractional bracket decomposition") {
    auto b1 = fractional_bracket(make_rat(1, 2));
    CHECK(b1.integer_part == 0);
    CHECK(b1.fractional_part == make_rat(1, 2));
    CHECK(b1.bracket == Rat(1));

    auto b2 = fractional_bracket(make_rat(5, 4));
    CHECK(b2.integer_part == 1);
    CHECK(b2.fractional_part == make_rat(1, 4));
    CHECK(b2.bracket == make_rat(1, 4));

    auto b3 = fractional_bracket(make_rat(9, 4));
    CHECK(b3.integer_part == 2);
    CHECK(b3.fractional_part == make_rat(1, 4));
    CHECK(b3.bracket == make_rat(5, 16));
}

TEST_CASE("bracket equals rising factorial of the fractional part, randomized") {
    std::mt19937 g(71);
    int done = 0;
    while (done < 200) {
        Rat r = rnd_rat(g, 60, 16);
        if (r <= 0 || den(r) == 1) continue;
        ++done;
        auto b = fractional_bracket(r);
        // descending product, written out independently of the library loop
        Rat prod(1);
        for (Int i = b.integer_part; i >= 1; --i) prod *= r - Rat(i);
        CHECK(b.bracket == prod);
        CHECK(b.bracket == pochhammer_rising(b.fractional_part, b.integer_part.get_ui()));
    }
}

TEST_CASE("single-divisor polynomial division") {
    auto x = SparsePoly<Rat>::variable(1, 0, Rat(1));
    auto one = SparsePoly<Rat>::constant(1, Rat(1));
    auto f = x * x - one;
    auto gpol = x - one;
    auto dv = poly_divide_exact(f, gpol);
    REQUIRE(dv.exact);
    CHECK(dv.quotient == x + one);

    Mod m2 = make_mod(2, 1);
    Zm o2{1, m2};
    auto xm = SparsePoly<Zm>::variable(1, 0, o2);
    auto onem = SparsePoly<Zm>::constant(1, o2);
    auto f2 = xm * xm + onem;
    auto g2 = xm - onem;
    auto dv2 = poly_divide_exact(f2, g2);
    REQUIRE(dv2.exact);
    CHECK(dv2.quotient == xm + onem);

    auto t2 = SparsePoly<Rat>::variable(2, 0, Rat(1));
    auto t3 = SparsePoly<Rat>::variable(2, 1, Rat(1));
    auto f3 = poly_pow(t2, 3) - poly_pow(t3, 2);
    auto g3 = t2 - SparsePoly<Rat>::constant(2, Rat(1));
    auto dv3 = poly_divide_exact(f3, g3);
    CHECK_FALSE(dv3.exact);
    CHECK_FALSE(dv3.remainder.zero());
    CHECK_THROWS_AS(poly_divide_exact(f3, SparsePoly<Rat>(2)), DivisionByZeroPoly);
}

TEST_CASE("ring axioms and Leibniz rule on random polynomials") {
    std::mt19937 g(12345);
    for (int iter = 0; iter < 20; ++iter) {
        auto f = rnd_poly(g, 3, 3, 5);
        auto h = rnd_poly(g, 3, 3, 5);
        auto w = rnd_poly(g, 3, 3, 5);
        CHECK((f * h) * w == f * (h * w));
        CHECK(f * (h + w) == f * h + f * w);
        for (int v = 0; v < 3; ++v)
            CHECK(derivative(f * h, v) == derivative(f, v) * h + f * derivative(h, v));
    }
}

TEST_CASE("division recovers a random factor over Q and F_p") {
    std::mt19937 g(987);
    for (int iter = 0; iter < 10; ++iter) {
        auto f = rnd_poly(g, 2, 3, 4);
        auto h = rnd_poly(g, 2, 3, 4);
        if (h.zero()) continue;
        auto dv = poly_divide_exact(f * h, h);
        REQUIRE(dv.exact);
        CHECK(dv.quotient == f);
    }
    Mod m = make_mod(7, 1);
    for (int iter = 0; iter < 10; ++iter) {
        auto f = rnd_poly_mod(g, 2, 3, 4, m);
        auto h = rnd_poly_mod(g, 2, 3, 4, m);
        if (h.zero()) continue;
        auto dv = poly_divide_exact(f * h, h);
        REQUIRE(dv.exact);
        CHECK(dv.quotient == f);
    }
}

TEST_CASE("residue ring inverse and powers in Z/5^6") {
    Mod m = make_mod(5, 6);
    std::mt19937 g(555);
    std::uniform_int_distribution<long> dc(1, static_cast<long>(m.q) - 1);
    int done = 0;
    while (done < 100) {
        std::uint64_t v = static_cast<std::uint64_t>(dc(g));
        if (v % 5 == 0) {
            CHECK_THROWS_AS(zm_inv(Zm{v, m}), DenominatorNotUnit);
            continue;
        }
        ++done;
        Zm a{v, m};
        CHECK((a * zm_inv(a)).v == 1);
    }
    Zm two{2, m};
    CHECK(zm_pow(two, 10).v == 1024);
}

TEST_CASE("truncated series multiplication agrees with exact products") {
    std::mt19937 g(2024);
    for (int iter = 0; iter < 20; ++iter) {
        auto f = rnd_poly(g, 1, 4, 4);
        auto h = rnd_poly(g, 1, 4, 4);
        int T = 9; // deg f + deg h <= 8 < T, so no information is lost
        auto fs = poly_to_series(f, T, Rat(0));
        auto hs = poly_to_series(h, T, Rat(0));
        auto prod = fs * hs;
        auto exact = f * h;
        for (int i = 0; i < prod.order(); ++i)
            CHECK(prod.at(i) == [&] {
                Exps e{};
                e[0] = static_cast<std::uint16_t>(i);
                return exact.coeff_at(e, Rat(0));
            }());
    }
    // multivariate: truncation keeps exactly the degree <= T slice
    for (int iter = 0; iter < 10; ++iter) {
        auto f = rnd_poly(g, 2, 2, 4);
        auto h = rnd_poly(g, 2, 2, 4);
        auto exact = f * h;
        auto ms = mseries(f, 10) * mseries(h, 10);
        CHECK(ms.poly == exact); // total degree <= 4 < 10
        auto cut = mseries(f, 2) * mseries(h, 2);
        CHECK(cut.poly == drop_above(exact, 2));
    }
}

TEST_CASE("series inverse and valuation-shift division") {
    // 1/(1-q) is the geometric series
    auto one_minus_q = qseries_zero(8, Rat(0));
    one_minus_q.c[0] = Rat(1);
    one_minus_q.c[1] = Rat(-1);
    auto geo = series_inverse(one_minus_q);
    for (int i = 0; i < 8; ++i) CHECK(geo.at(i) == Rat(1));

    auto f = qseries_zero(6, Rat(0));
    f.c[2] = Rat(1);
    f.c[3] = Rat(1);
    auto q = qseries_zero(6, Rat(0));
    q.c[1] = Rat(1);
    auto quot = series_divide(f, q);
    REQUIRE(quot.order() == 5);
    CHECK(quot.at(1) == Rat(1));
    CHECK(quot.at(2) == Rat(1));
    CHECK(quot.at(0) == Rat(0));
    CHECK(quot.at(3) == Rat(0));

    auto bad = qseries_zero(4, Rat(0));
    CHECK_THROWS_AS(series_inverse(bad), DivisionByZeroPoly);
}

TEST_CASE("divisor power sums and factorization utilities") {
    CHECK(sigma_power(6, 1) == 12);
    CHECK(sigma_power(2, 3) == 9);
    CHECK(sigma_power(1, 11) == 1);

    auto f = factor(Int(2730));
    REQUIRE(f.size() == 5);
    CHECK(f[Int(2)] == 1);
    CHECK(f[Int(13)] == 1);
    CHECK(factor(Int(1)).empty());
    auto semi = factor(Int(101) * Int(103));
    REQUIRE(semi.size() == 2);
    CHECK(semi[Int(101)] == 1);
    CHECK(semi[Int(103)] == 1);
}

TEST_CASE("canonical polynomial text form") {
    auto t2 = SparsePoly<Rat>::variable(2, 0, Rat(1));
    auto t3 = SparsePoly<Rat>::variable(2, 1, Rat(1));
    auto p = poly_pow(t2, 3) * make_rat(-1, 2) + t3 * Rat(7) + SparsePoly<Rat>::constant(2, Rat(1));
    CHECK(poly_str(p, {"t2", "t3"}) == "-1/2*t2^3 + 7*t3 + 1");
}
