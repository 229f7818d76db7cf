#include <catch2/catch_amalgamated.hpp>

#include <adelab/ode.hpp>

#include <random>

using namespace adelab;

namespace {

std::vector<Int> int_list(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

ZPoly zvar() { return ZPoly::variable(1, 0, Rat(1)); }

// 2x2 matrix-of-series helpers for the independent iterate route
using SMat = std::vector<std::vector<QSeries<Rat>>>;

SMat smat_mul(const SMat& x, const SMat& y) {
    SMat z(2, std::vector<QSeries<Rat>>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    return z;
}

SMat smat_deriv(const SMat& x) {
    SMat z(2, std::vector<QSeries<Rat>>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z[i][j] = derivative(x[i][j]);
    return z;
}

SMat smat_add(const SMat& x, const SMat& y) {
    SMat z(2, std::vector<QSeries<Rat>>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z[i][j] = x[i][j] + y[i][j];
    return z;
}

} // namespace

TEST_CASE("companion systems") {
    auto sys = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    CHECK(sys.rank == 2);
    // Delta = 4z^3 - 1
    CHECK(sys.delta == zpoly_from({Rat(-1), Rat(0), Rat(0), Rat(4)}));
    // last row carries (-c0, -c1) = (n(n+1) z + B, -P'/2)
    CHECK(sys.b1.at(1, 0) == zpoly_from({Rat(0), make_rat(7, 36)}));
    CHECK(sys.b1.at(1, 1) == zpoly_from({Rat(0), Rat(0), Rat(-6)}));
    CHECK(sys.b1.at(0, 1) == sys.delta);
    CHECK(sys.b1.at(0, 0).zero());

    auto hyp = hypergeometric(make_rat(1, 2), make_rat(1, 2), Rat(1));
    CHECK(hyp.delta == zpoly_from({Rat(0), Rat(1), Rat(-1)}));
    CHECK(hyp.b1.at(1, 0) == ZPoly::constant(1, make_rat(1, 4)));

    auto triv = from_scalar({ZPoly::constant(1, Rat(-1)), ZPoly::constant(1, Rat(1))});
    CHECK(triv.rank == 1);
    CHECK(triv.b1.at(0, 0) == ZPoly::constant(1, Rat(1)));

    CHECK_THROWS_AS(from_scalar({zvar(), ZPoly(1)}), ZeroLeadingCoefficient);
}

TEST_CASE("ring primes of the catalog equations") {
    CHECK(lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1)).ring_primes == int_list({2, 3}));
    CHECK(lame(make_rat(1, 4), Rat(0), Rat(0), Rat(1)).ring_primes == int_list({2}));
    CHECK(lame(Rat(2), Rat(21), Rat(327), Rat(1727)).ring_primes == int_list({2}));
    CHECK(lame(make_rat(12, 89), Rat(0), Rat(0), Rat(1)).ring_primes == int_list({2, 89}));
    CHECK(rank_one_quadratic(2).ring_primes == int_list({2}));
    CHECK(rank_one_quadratic(10).ring_primes == int_list({2, 5}));
}

TEST_CASE("smallest m with ord_p(m!) >= k") {
    CHECK(mpk(5, 1) == 5);
    CHECK(mpk(7, 2) == 14);
    CHECK(mpk(5, 6) == 25);
    for (long p : primes_upto(100)) {
        CHECK(mpk(p, 1) == p);
        CHECK(mpk(p, 2) == 2 * p);
        for (long k = 1; k <= 8; ++k) {
            long m = mpk(p, k);
            CHECK((p - 1) * k <= m);
            CHECK(m <= p * k);
            CHECK(factorial_valuation(m, p) >= k);
            CHECK(factorial_valuation(m - 1, p) < k);
        }
    }
}

TEST_CASE("curvature of the n=1/6 equation at p=5") {
    auto sys = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    CHECK(curvature_test(sys, 5, 1) == Curvature::Zero);
    CHECK(curvature_test(sys, 5, 6) == Curvature::NonZero);
    CHECK(curvature_test(sys, 2, 1) == Curvature::RingPrime);
}

TEST_CASE("curvature vanishing is downward monotone in k where tested") {
    auto sys = lame(make_rat(7, 4), Rat(0), Rat(0), Rat(1));
    for (long p : {5L, 11L}) {
        bool zero_above = curvature_test(sys, p, 3) == Curvature::Zero;
        if (zero_above) {
            CHECK(curvature_test(sys, p, 2) == Curvature::Zero);
            CHECK(curvature_test(sys, p, 1) == Curvature::Zero);
        }
    }
}

TEST_CASE("bad prime scan with and without early exit") {
    auto sys = lame(make_rat(1, 4), Rat(0), Rat(0), Rat(1));
    auto rep = bad_prime_scan(sys, 100, 1);
    CHECK_FALSE(rep.truncated);
    CHECK(bad_primes_of(rep) == std::vector<long>{3});
    REQUIRE(rep.primes.size() == rep.cls.size());
    CHECK(rep.primes.front() == 2);
    CHECK(rep.cls.front() == PrimeClass::RingPrime);

    auto hyp = hypergeometric(make_rat(1, 2), make_rat(1, 2), Rat(1));
    auto cut = bad_prime_scan(hyp, 200, 1, 3);
    CHECK(cut.truncated);
    CHECK(cut.primes.size() < primes_upto(200).size());
    // truncated reports must not feed densities; the full scan is the oracle
    auto full = bad_prime_scan(hyp, 100, 1);
    std::vector<long> expect_bad;
    for (long p : primes_upto(100))
        if (p > 2) expect_bad.push_back(p);
    CHECK(bad_primes_of(full) == expect_bad);
}

TEST_CASE("curvature density endpoints") {
    // y' = 0 has every iterate zero: density 1
    auto allgood = from_scalar({ZPoly(1), ZPoly::constant(1, Rat(1))});
    CHECK(curvature_density(allgood, 50) == Rat(1));
    // y' = y has A_m = 1: density 0
    auto allbad = from_scalar({ZPoly::constant(1, Rat(-1)), ZPoly::constant(1, Rat(1))});
    CHECK(curvature_density(allbad, 50) == Rat(0));
    // nothing classifiable
    auto sys = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    CHECK_THROWS_AS(curvature_density(sys, 3), EmptyScan);
}

TEST_CASE("rank-one quadratic system against the residue oracle") {
    auto sys = rank_one_quadratic(2);
    CHECK(curvature_test(sys, 7, 1) == Curvature::Zero);
    CHECK(curvature_test(sys, 5, 1) == Curvature::NonZero);
    CHECK(curvature_test(sys, 2, 1) == Curvature::RingPrime);
    for (long p : primes_upto(500)) {
        if (p == 2) continue;
        auto c = curvature_test(sys, p, 1);
        bool square = legendre_symbol(Int(2), p) == 1;
        CHECK(c == (square ? Curvature::Zero : Curvature::NonZero));
    }
}

TEST_CASE("local power series solutions") {
    auto triv = from_scalar({ZPoly::constant(1, Rat(-1)), ZPoly::constant(1, Rat(1))});
    auto sol = dsolve_formal(triv, Rat(0), {Rat(1)}, 5);
    REQUIRE(sol.size() == 1);
    for (int i = 0; i <= 5; ++i)
        CHECK(sol[0].at(i) == Rat(1) / Rat(factorial(static_cast<unsigned long>(i))));

    auto sys = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    auto ls = dsolve_formal(sys, Rat(0), {Rat(1), Rat(0)}, 12);
    for (auto& comp : dsolve_residual(sys, Rat(0), ls)) CHECK(is_zero(comp));
    // second state component is the derivative of the first
    auto d0 = derivative(ls[0]);
    for (int i = 0; i < d0.order(); ++i) CHECK(d0.at(i) == ls[1].at(i));
    auto report = p_integrality_report(ls[0], int_list({2, 3, 7}));
    CHECK(report[Int(7)] == PVal::fin(0));
    CHECK(report[Int(2)] < PVal::fin(0));

    auto hyp = hypergeometric(make_rat(1, 2), make_rat(1, 2), Rat(1));
    CHECK_THROWS_AS(dsolve_formal(hyp, Rat(0), {Rat(1), Rat(0)}, 4), SingularPoint);

    QSeries<Rat> zero_series = qseries_zero(5, Rat(0));
    auto zr = p_integrality_report(zero_series, int_list({5}));
    CHECK(zr[Int(5)] == PVal::inf());

    QSeries<Rat> expser = qseries_zero(11, Rat(0));
    for (int i = 0; i <= 10; ++i)
        expser.c[static_cast<std::size_t>(i)] = Rat(1) / Rat(factorial(static_cast<unsigned long>(i)));
    auto er = p_integrality_report(expser, int_list({5}));
    CHECK(er[Int(5)] == PVal::fin(-2));
}

TEST_CASE("cleared recursion equals direct iteration on random systems") {
    std::mt19937 g(424242);
    std::uniform_int_distribution<int> dc(-4, 4);
    auto rnd_zpoly = [&](int maxdeg) {
        std::vector<Rat> cs;
        for (int i = 0; i <= maxdeg; ++i) cs.push_back(make_rat(dc(g), 1 + std::abs(dc(g))));
        return zpoly_from(cs);
    };
    int done = 0;
    while (done < 6) {
        ZPoly delta = rnd_zpoly(2);
        if (delta.zero()) continue;
        // need Delta(0) != 0 for the series route at z0 = 0
        Exps e0{};
        if (is_zero(delta.coeff_at(e0, Rat(0)))) continue;
        ++done;
        Mat<ZPoly> b1(2, 2, ZPoly(1));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b1.at(i, j) = rnd_zpoly(2);

        const long M = 5;
        const int N = 3 * static_cast<int>(M) + 8;
        auto dser = shift_expand(delta, Rat(0), N);
        auto dinv = series_inverse(dser);
        SMat A(2, std::vector<QSeries<Rat>>(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) A[i][j] = shift_expand(b1.at(i, j), Rat(0), N) * dinv;
        SMat Am = A;
        for (long m = 2; m <= M; ++m) Am = smat_add(smat_deriv(Am), smat_mul(Am, A));

        auto Bm = cleared_iterate(delta, b1, M, Rat(1));
        // Delta^M * A_M must match the cleared iterate as a series
        QSeries<Rat> dpow = dser;
        for (long i = 1; i < M; ++i) dpow = dpow * dser;
        int cmp = N - static_cast<int>(M) - 1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                auto lhs = truncate(dpow * Am[i][j], cmp);
                auto rhs = truncate(shift_expand(Bm.at(i, j), Rat(0), N), cmp);
                CHECK(is_zero(lhs - rhs));
            }
    }
}

TEST_CASE("truncated Frobenius splitting identity") {
    auto sys16 = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    CHECK(frobenius_U_check(sys16, 5, Rat(1)));
    auto sys14 = lame(make_rat(1, 4), Rat(0), Rat(0), Rat(1));
    CHECK(frobenius_U_check(sys14, 5, Rat(1)));
    CHECK_THROWS_AS(frobenius_U_check(sys14, 3, Rat(1)), PreconditionFailed);
    // Delta(z0) = 0 mod p must be rejected: 4*2^3 - 1 = 31 = 0 mod 31
    auto sysz = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    if (curvature_test(sysz, 31, 1) == Curvature::Zero)
        CHECK_THROWS_AS(frobenius_U_check(sysz, 31, Rat(2)), PreconditionFailed);
}

TEST_CASE("pullback recognition for operator substitution z -> z^s") {
    Rat n = make_rat(5, 7);
    Rat nn = n * (n + 1);
    auto target1 = lame(n, Rat(0), Rat(0), Rat(1));
    std::vector<ZPoly> source1 = {ZPoly::constant(1, -nn), zpoly_from({Rat(-6), Rat(42)}),
                                  zpoly_from({Rat(0), Rat(-9), Rat(36)})};
    CHECK(pullback_check(target1, source1, 3));
    CHECK_FALSE(pullback_check(target1, source1, 2));

    auto target2 = lame(n, Rat(0), Rat(1), Rat(0));
    std::vector<ZPoly> source2 = {ZPoly::constant(1, -nn), zpoly_from({Rat(-3), Rat(20)}),
                                  zpoly_from({Rat(0), Rat(-4), Rat(16)})};
    CHECK(pullback_check(target2, source2, 2));
    CHECK_FALSE(pullback_check(target2, source2, 3));
}
