// Acceptance gate: runs the fifteen numbered end-to-end checks and prints
// one PASS/FAIL line each.  --criterion N runs a single one.  Exit code 0
// only when everything that ran passed.
#include <adelab/algfun.hpp>
#include <adelab/elliptic.hpp>
#include <adelab/hodge.hpp>
#include <adelab/modular.hpp>
#include <adelab/ode.hpp>
#include <adelab/vectorfield.hpp>

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <set>

using namespace adelab;

namespace {

int g_failures = 0;

template <class F>
void run(int id, int only, const std::string& what, F body) {
    if (only != 0 && only != id) return;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what
              << "  [" << secs << "s]\n";
    if (!err.empty()) std::cout << "     error: " << err << "\n";
    if (!ok) ++g_failures;
    std::cout.flush();
}

std::vector<long> classified_bad(const PrimeScanReport& rep) { return bad_primes_of(rep); }

bool expect_eq(const std::vector<long>& got, const std::vector<long>& want,
               const std::string& label) {
    if (got == want) return true;
    std::cout << "     " << label << ": got {";
    for (auto p : got) std::cout << p << " ";
    std::cout << "} want {";
    for (auto p : want) std::cout << p << " ";
    std::cout << "}\n";
    return false;
}

// ---- helpers mirrored from the unit suites (kept independent on purpose) ----

SparsePoly<Zm> pvar(int nv, int i, Mod m) {
    return SparsePoly<Zm>::variable(nv, i, Zm{1, m});
}

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

SparsePoly<Zm> p_fold(const PDerivation& v, SparsePoly<Zm> f, long p) {
    for (long i = 0; i < p; ++i) f = apply_derivation(v, f);
    return f;
}

SparsePoly<Rat> raw_lift(long w) {
    int n = static_cast<int>((w + 13) / 12) + 5;
    auto f = eisenstein_q(static_cast<unsigned long>(w), n - 1);
    return lift_t2t3(isobaric_decompose(f, w, n - 1));
}

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

std::vector<std::vector<long>> all_quartic_monomials() {
    std::vector<std::vector<long>> out;
    for (long a = 0; a <= 4; ++a)
        for (long b = 0; b + a <= 4; ++b)
            for (long c = 0; c + b + a <= 4; ++c)
                out.push_back({a, b, c, 4 - a - b - c});
    return out;
}

std::vector<std::vector<long>> pick(const std::vector<std::vector<long>>& pool,
                                    std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[rng() % i]);
    std::vector<std::vector<long>> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[idx[i]]);
    return out;
}

// ---- the fifteen checks ----

bool c1_lame_16() {
    auto sys = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    return curvature_test(sys, 5, 1) == Curvature::Zero &&
           curvature_test(sys, 5, 6) == Curvature::NonZero;
}

bool c2_nine_tuples() {
    struct Row {
        const char* n;
        const char* B;
        long g2num, g2den, g3num, g3den;
        std::vector<long> bad;
    };
    // expected lists are compared with each system's ring primes removed,
    // since those are never classified
    const std::vector<Row> rows = {
        {"1/4", "0", 0, 1, 1, 1, {3}},
        {"3/4", "3/8", -168, 1, 622, 1, {5}},
        {"1/6", "0", 1, 1, 0, 1, {}},
        {"5/6", "0", 1, 1, 0, 1, {5}},
        {"1/6", "1/6", 60, 1, 90, 1, {5}},
        {"1/10", "0", 0, 1, 1, 1, {3}},
        {"3/10", "3/100", 3, 1, 5, 4, {2}},
        {"7/10", "0", 0, 1, 1, 1, {3, 7}},
        {"7/4", "0", 0, 1, 1, 1, {3, 7}},
    };
    auto parse = [](const char* s) {
        mpq_class r;
        mpq_set_str(r.get_mpq_t(), s, 10);
        r.canonicalize();
        return Rat(r);
    };
    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& r = rows[i];
        auto sys = lame(parse(r.n), parse(r.B), make_rat(r.g2num, r.g2den),
                        make_rat(r.g3num, r.g3den));
        auto rep = bad_prime_scan(sys, 100, 1);
        std::vector<long> want;
        for (long p : r.bad)
            if (!is_ring_prime(sys, Int(p))) want.push_back(p);
        ok &= expect_eq(classified_bad(rep), want,
                        std::string("tuple ") + std::to_string(i + 1) + " (n=" + r.n + ")");
    }
    return ok;
}

bool c3_late_bad_primes() {
    auto r1 = bad_prime_scan(lame(make_rat(12, 89), Rat(0), Rat(0), Rat(1)), 150, 1);
    auto r2 = bad_prime_scan(lame(make_rat(5, 87), Rat(0), Rat(0), Rat(1)), 150, 1);
    bool ok = expect_eq(classified_bad(r1), {83, 107, 113, 127, 149}, "n=12/89");
    ok &= expect_eq(classified_bad(r2), {17, 97, 107, 109, 113, 127, 131, 137}, "n=5/87");
    return ok;
}

bool c4_lame_74_deep() {
    auto sys = lame(make_rat(7, 4), Rat(0), Rat(0), Rat(1));
    bool ok = true;
    for (long p : primes_upto(23)) {
        if (p == 2 || p == 3 || p == 7) continue;
        for (std::uint32_t k = 1; k <= 6; ++k) {
            if (curvature_test(sys, p, k) != Curvature::Zero) {
                std::cout << "     nonzero at p=" << p << " k=" << k << "\n";
                ok = false;
            }
        }
    }
    return ok;
}

bool c5_hypergeometric_half() {
    auto sys = hypergeometric(make_rat(1, 2), make_rat(1, 2), Rat(1));
    bool ok = true;
    for (long p : primes_upto(100)) {
        if (p <= 2) continue;
        if (curvature_test(sys, p, 1) != Curvature::NonZero) {
            std::cout << "     unexpected vanishing at p=" << p << "\n";
            ok = false;
        }
    }
    return ok;
}

bool c6_sqrt2_density() {
    auto sys = rank_one_quadratic(2);
    auto rep = bad_prime_scan(sys, 10000, 1);
    long good = 0, bad = 0;
    bool ok = true;
    for (std::size_t i = 0; i < rep.primes.size(); ++i) {
        if (rep.cls[i] == PrimeClass::RingPrime) continue;
        bool is_good = rep.cls[i] == PrimeClass::Good;
        (is_good ? good : bad) += 1;
        bool square = legendre_symbol(Int(2), rep.primes[i]) == 1;
        if (is_good != square) {
            std::cout << "     classification disagrees with the residue symbol at p="
                      << rep.primes[i] << "\n";
            ok = false;
        }
    }
    double density = static_cast<double>(good) / static_cast<double>(good + bad);
    std::cout << "     density " << density << " over " << (good + bad) << " primes\n";
    return ok && density > 0.48 && density < 0.52;
}

bool c7_mpk_grid() {
    for (long p : primes_upto(100)) {
        if (mpk(p, 1) != p || mpk(p, 2) != 2 * p) return false;
        for (std::uint32_t k = 1; k <= 8; ++k) {
            long m = mpk(p, k);
            if (m < (p - 1) * static_cast<long>(k) || m > p * static_cast<long>(k))
                return false;
        }
    }
    return true;
}

bool c8_frobenius_splitting() {
    auto l16 = lame(make_rat(1, 6), Rat(0), Rat(0), Rat(1));
    auto l14 = lame(make_rat(1, 4), Rat(0), Rat(0), Rat(1));
    auto l74 = lame(make_rat(7, 4), Rat(0), Rat(0), Rat(1));
    return frobenius_U_check(l16, 5, Rat(1)) && frobenius_U_check(l16, 13, Rat(1)) &&
           frobenius_U_check(l14, 5, Rat(1)) && frobenius_U_check(l74, 5, Rat(1));
}

bool c9_pullbacks() {
    Rat n = make_rat(5, 7);
    Rat nn = n * (n + 1);
    auto target1 = lame(n, Rat(0), Rat(0), Rat(1));
    std::vector<ZPoly> source1 = {ZPoly::constant(1, -nn), zpoly_from({Rat(-6), Rat(42)}),
                                  zpoly_from({Rat(0), Rat(-9), Rat(36)})};
    auto target2 = lame(n, Rat(0), Rat(1), Rat(0));
    std::vector<ZPoly> source2 = {ZPoly::constant(1, -nn), zpoly_from({Rat(-3), Rat(20)}),
                                  zpoly_from({Rat(0), Rat(-4), Rat(16)})};
    return pullback_check(target1, source1, 3) && pullback_check(target2, source2, 2);
}

bool c10_field_scans() {
    bool ok = true;
    auto check_all_open = [&](const char* name, const std::vector<Rat>& params, long pmax) {
        auto reps = pclosed_scan(catalog(name, params), pmax, std::nullopt);
        for (auto& r : reps) {
            if (r.cls == Collin::Collinear) {
                std::cout << "     " << name << ": unexpectedly closed at p=" << r.p << "\n";
                ok = false;
            }
        }
    };
    check_all_open("ramanujan-e", {}, 50);
    check_all_open("modular4", {}, 50);
    check_all_open("lorenz", {Rat(10), Rat(28), make_rat(8, 3)}, 60);
    auto reps = pclosed_scan(catalog("limitcycle"), 100, std::nullopt);
    std::vector<long> closed;
    for (auto& r : reps)
        if (r.cls == Collin::Collinear) closed.push_back(r.p);
    ok &= expect_eq(closed, {3}, "limitcycle closed set");
    return ok;
}

bool c11_weight_field_algebra() {
    bool ok = true;
    for (long p : {5L, 7L, 11L}) ok &= bianchini_check(p);

    for (long p : {5L, 7L, 11L, 13L}) {
        auto t1 = SparsePoly<Rat>::variable(3, 0, Rat(1));
        auto f = raw_lift(p + 1) - t1 * raw_lift(p - 1);
        Mod m = make_mod(p, 1);
        auto fp = f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
        if (!first_integral_check(reduce_derivation(catalog("ramanujan-e"), p), fp)) {
            std::cout << "     first integral fails at p=" << p << "\n";
            ok = false;
        }
    }

    for (long p : {5L, 7L}) {
        Mod m = make_mod(p, 1);
        auto ab = ab_polynomials(p);
        auto red = [&](const SparsePoly<Rat>& f) {
            return f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
        };
        auto a3 = red(lift_t2t3(ab.a));
        auto b3 = red(lift_t2t3(ab.b));
        Zm one{1, m};
        auto t1 = pvar(3, 0, m);
        auto gen1 = a3 - SparsePoly<Zm>::constant(3, one);
        auto elim_rep = b3 * (-zm_inv(scalar_like(12, one)));
        std::vector<std::pair<int, SparsePoly<Zm>>> elim{{0, elim_rep}};
        auto v = reduce_derivation(catalog("ramanujan-a"), p);
        auto w = frobenius_power(v, p);
        for (int i = 0; i < 3; ++i) {
            auto r = reduce_by_principal(w.comp[i] - v.comp[i], elim, gen1);
            if (!r.divisible) {
                std::cout << "     membership fails at p=" << p << " i=" << i + 1 << "\n";
                ok = false;
            }
        }
    }
    return ok;
}

bool c12_modular_suite() {
    bool ok = true;
    const std::vector<std::pair<unsigned long, long>> spots = {
        {12, 691}, {16, 3617}, {18, 43867}};
    for (unsigned long two_k = 4; two_k <= 24; two_k += 2) {
        Int got = numerator_multiplier(two_k);
        Int want = abs(num(bernoulli(two_k) / Rat(static_cast<long>(two_k))));
        if (got != want) {
            std::cout << "     multiplier mismatch at weight " << two_k << "\n";
            ok = false;
        }
    }
    for (auto& [two_k, val] : spots)
        if (numerator_multiplier(two_k) != Int(val)) ok = false;

    for (long p : primes_upto(97)) {
        if (p < 5) continue;
        if (!ep_congruence_check(p, 30)) {
            std::cout << "     expansion congruence fails at p=" << p << "\n";
            ok = false;
        }
    }

    ok &= ramanujan_solution_check(20);

    auto rep = ramanujan_recursion_solve(20, {Int(5), Int(7), Int(11), Int(13)});
    std::array<QSeries<Rat>, 3> expect{eisenstein_q(2, 20) * make_rat(-1, 12),
                                       eisenstein_q(4, 20) * make_rat(1, 12),
                                       eisenstein_q(6, 20) * make_rat(-1, 216)};
    for (int i = 0; i < 3; ++i)
        if (!is_zero(rep.t[static_cast<std::size_t>(i)] - expect[static_cast<std::size_t>(i)]))
            ok = false;
    for (auto& [p, v] : rep.integrality)
        if (v < PVal::fin(0)) {
            std::cout << "     coefficients not integral at p=" << p.get_str() << "\n";
            ok = false;
        }
    return ok;
}

bool c13_elliptic_suite() {
    bool ok = true;
    for (long p : primes_upto(97)) {
        if (p < 5) continue;
        if (!ab_congruence_check(p)) {
            std::cout << "     symbolic congruence fails at p=" << p << "\n";
            ok = false;
        }
    }

    auto ps = primes_upto(97);
    ps.erase(ps.begin(), ps.begin() + 2); // drop 2, 3
    std::mt19937 g(20260818);
    int done = 0;
    while (done < 100) {
        long p = ps[g() % ps.size()];
        long t2 = static_cast<long>(g() % static_cast<unsigned>(p));
        long t3 = static_cast<long>(g() % static_cast<unsigned>(p));
        WeierstrassCurve E{};
        try {
            E = make_curve(p, t2, t3);
        } catch (const SingularCurve&) {
            continue;
        }
        ++done;
        auto he = hasse_witt(E);
        auto hr = hasse_witt_recursion(E);
        long count = point_count(E);
        Mod m = make_mod(p, 1);
        if (!(he == hr) || !(he == reduce_mod(Rat(p + 1 - count), m))) {
            std::cout << "     trace mismatch at p=" << p << " (t2,t3)=(" << t2 << ","
                      << t3 << ")\n";
            ok = false;
        }
    }

    for (long p : {7L, 11L, 13L, 17L}) {
        int curves = 0;
        for (long t2 = 0; t2 <= 2 && curves < 3; ++t2)
            for (long t3 = 1; t3 <= 2 && curves < 3; ++t3) {
                WeierstrassCurve E{};
                try {
                    E = make_curve(p, t2, t3);
                } catch (const SingularCurve&) {
                    continue;
                }
                ++curves;
                if (!power_sum_check(E, (p - 1) / 2)) {
                    std::cout << "     power sums fail at p=" << p << " (" << t2 << ","
                              << t3 << ")\n";
                    ok = false;
                }
            }
    }

    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        auto r = exact_form_reduce((p + 1) / 2);
        Mod m = make_mod(p, 1);
        auto red = [&](const SparsePoly<Rat>& f) {
            return f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
        };
        auto ab = ab_polynomials(p);
        bool pint = true;
        for (auto* poly : {&r.a0, &r.a1})
            for (auto& t : poly->terms)
                if (padic_valuation(t.c, Int(p)) < PVal::fin(0)) pint = false;
        if (!pint || !(red(r.a1) == red(ab.a)) ||
            !(red(r.a0) == red(ab.b * make_rat(-1, 12)))) {
            std::cout << "     reduction congruence fails at p=" << p << "\n";
            ok = false;
        }
    }
    return ok;
}

bool c14_period_suite() {
    bool ok = codim_VZ(6, 3, 0) == 8 && codim_VZ(8, 3, 1) == 20;
    for (long k = 3; k <= 12; ++k)
        if (codim_VZ(2 * k, 3, k - 3) != cubic_codim_closed_form(k)) ok = false;

    auto rows = table_repro();
    const std::vector<long> dim_t{20, 56, 120, 220, 364}, minc{1, 4, 10, 20, 35},
        L{1, 4, 10, 20, 35}, M{1, 7, 19, 38, 65};
    if (rows.size() != 5) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim_t != dim_t[i] || rows[i].min_codim != minc[i] ||
            rows[i].L != L[i] || rows[i].M != M[i]) {
            std::cout << "     table row n=" << rows[i].n << " off\n";
            ok = false;
        }
    }

    auto pool = all_quartic_monomials();
    ok &= quartic_specialization_check(make_index_set(2, 4, {{1, 1, 1, 1}}), 3);
    ok &= quartic_specialization_check(make_index_set(2, 4, pick(pool, 4, 13579)), 2);
    ok &= quartic_specialization_check(make_index_set(2, 4, pick(pool, 10, 97531)), 2);

    auto s = period_series(2, 4, {0, 0, 0, 0}, make_index_set(2, 4, {{1, 1, 1, 1}}), 1);
    ok &= s.terms.size() == 1 && s.terms[0].a == std::vector<long>{1} &&
          s.terms[0].coeff == Rat(1);

    std::vector<Rat> t3{make_rat(1, 100), Rat(0), Rat(0)};
    std::vector<Rat> t4{make_rat(1, 100), make_rat(1, 200), make_rat(1, 300),
                        make_rat(1, 400)};
    ok &= balegh_numeric_check(3, 0, 0, 1, 6, t3) < 1e-8;
    ok &= balegh_numeric_check(3, 1, 1, 2, 6, t3) < 1e-8;
    ok &= balegh_numeric_check(4, 1, 0, 1, 6, t4) < 1e-8;
    return ok;
}

bool c15_property_suites() {
    bool ok = true;

    // p-fold application of a field obeys the Leibniz rule and matches the
    // component form
    for (long p : {5L, 7L}) {
        Mod m = make_mod(p, 1);
        std::mt19937 g(static_cast<unsigned>(9000 + p));
        PDerivation v{{"x", "y"}, {rnd_ppoly(g, 2, 2, m), rnd_ppoly(g, 2, 2, m)}};
        auto w = frobenius_power(v, p);
        for (int trial = 0; trial < 3; ++trial) {
            auto f = rnd_ppoly(g, 2, 3, m);
            auto h = rnd_ppoly(g, 2, 3, m);
            auto lhs = p_fold(v, f * h, p);
            auto rhs = p_fold(v, f, p) * h + f * p_fold(v, h, p);
            if (!(lhs == rhs) || !(p_fold(v, f, p) == apply_derivation(w, f))) {
                std::cout << "     derivation law fails at p=" << p << "\n";
                ok = false;
            }
        }
    }

    // residue reduction is a ring morphism on unit denominators
    {
        std::mt19937 g(1234);
        std::uniform_int_distribution<long> dn(-50, 50), dd(1, 50);
        for (auto [p, k] : std::vector<std::pair<long, int>>{{5, 1}, {5, 6}, {7, 2}}) {
            Mod m = make_mod(p, k);
            int done = 0;
            while (done < 40) {
                Rat x = make_rat(dn(g), dd(g)), y = make_rat(dn(g), dd(g));
                if (den(x) % p == 0 || den(y) % p == 0) continue;
                ++done;
                if (!(reduce_mod(Rat(x * y), m) == reduce_mod(x, m) * reduce_mod(y, m)) ||
                    !(reduce_mod(Rat(x + y), m) == reduce_mod(x, m) + reduce_mod(y, m))) {
                    std::cout << "     morphism law fails at (" << p << "," << k << ")\n";
                    ok = false;
                }
            }
        }
    }

    // the cleared polynomial recursion equals direct series iteration
    {
        std::mt19937 g(424242);
        std::uniform_int_distribution<int> dc(-4, 4);
        auto rnd_zpoly = [&](int maxdeg) {
            std::vector<Rat> cs;
            for (int i = 0; i <= maxdeg; ++i)
                cs.push_back(make_rat(dc(g), 1 + std::abs(dc(g))));
            return zpoly_from(cs);
        };
        int done = 0;
        while (done < 6) {
            ZPoly delta = rnd_zpoly(2);
            if (delta.zero()) continue;
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
                for (int j = 0; j < 2; ++j)
                    A[i][j] = shift_expand(b1.at(i, j), Rat(0), N) * dinv;
            SMat Am = A;
            for (long mm = 2; mm <= M; ++mm) Am = smat_add(smat_deriv(Am), smat_mul(Am, A));
            auto Bm = cleared_iterate(delta, b1, M, Rat(1));
            QSeries<Rat> dpow = dser;
            for (long i = 1; i < M; ++i) dpow = dpow * dser;
            int cmp = N - static_cast<int>(M) - 1;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    auto lhs = truncate(dpow * Am[i][j], cmp);
                    auto rhs = truncate(shift_expand(Bm.at(i, j), Rat(0), N), cmp);
                    if (!is_zero(lhs - rhs)) {
                        std::cout << "     recursion equivalence fails on sample " << done
                                  << "\n";
                        ok = false;
                    }
                }
        }
    }

    // denominators of an algebraic Taylor expansion are controlled by odd
    // powers of the branch discriminant
    {
        SparsePoly<Rat> P1(2); // y^2 - z - 1
        {
            Exps e{};
            e[1] = 2;
            P1 = SparsePoly<Rat>::monomial(2, e, Rat(1));
            Exps ez{};
            ez[0] = 1;
            P1 = P1 - SparsePoly<Rat>::monomial(2, ez, Rat(1)) -
                 SparsePoly<Rat>::constant(2, Rat(1));
        }
        SparsePoly<Rat> P2(2); // y^3 - z - 1
        {
            Exps e{};
            e[1] = 3;
            P2 = SparsePoly<Rat>::monomial(2, e, Rat(1));
            Exps ez{};
            ez[0] = 1;
            P2 = P2 - SparsePoly<Rat>::monomial(2, ez, Rat(1)) -
                 SparsePoly<Rat>::constant(2, Rat(1));
        }
        for (auto& [P, label] : std::vector<std::pair<SparsePoly<Rat>, const char*>>{
                 {P1, "square root"}, {P2, "cube root"}}) {
            auto cert = taylor_algebraic(P, 0, 1, 12);
            for (std::size_t nn = 1; nn < cert.coeff.size(); ++nn) {
                long bound = cert.bound[nn];
                if (bound > 2 * static_cast<long>(nn) - 1) {
                    std::cout << "     " << label << ": clearing exponent too large at "
                              << nn << "\n";
                    ok = false;
                }
                Rat cleared = cert.coeff[nn];
                for (long e = 0; e < bound; ++e) cleared = Rat(cleared * cert.delta);
                if (den(cleared) != 1) {
                    std::cout << "     " << label << ": claimed clearing fails at " << nn
                              << "\n";
                    ok = false;
                }
            }
        }
    }

    // straightening output satisfies its defining identity
    for (long p : {5L, 7L}) {
        Mod m = make_mod(p, 1);
        Zm one{1, m}, zero{0, m};
        std::mt19937 g(static_cast<unsigned>(555 + p));
        Mat<Zm> d(2, 2, zero);
        d.at(0, 0) = one;
        d.at(1, 1) = Zm{static_cast<std::uint64_t>(p - 1), m};
        auto x = pvar(2, 0, m), y = pvar(2, 1, m);
        for (int trial = 0; trial < 2; ++trial) {
            long c = 1 + static_cast<long>(g() % static_cast<unsigned>(p - 1));
            PDerivation v{{"x", "y"}, {x + (y * y) * scalar_like(c, one), -y}};
            auto f = linearize_nd(v, d, 8);
            for (std::size_t i = 0; i < 2; ++i) {
                auto lhs = drop_above(apply_derivation(v, f[i]), 8);
                SparsePoly<Zm> rhs(2);
                for (std::size_t j = 0; j < 2; ++j)
                    rhs = rhs + f[j] * d.at(static_cast<int>(i), static_cast<int>(j));
                if (!(lhs == drop_above(rhs, 8))) {
                    std::cout << "     straightening identity fails at p=" << p << "\n";
                    ok = false;
                }
            }
        }
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }

    run(1, only, "Lame (1/6,0,0,1) curvature vanishes at (p,k)=(5,1), not at (5,6)", c1_lame_16);
    run(2, only, "bad primes of the nine algebraic Lame tuples up to 100", c2_nine_tuples);
    run(3, only, "late first bad primes of n=12/89 and n=5/87 up to 150", c3_late_bad_primes);
    run(4, only, "Lame (7/4,0,0,1) deep curvature vanishing, good p<=23, k<=6", c4_lame_74_deep);
    run(5, only, "hypergeometric (1/2,1/2,1) nonvanishing curvature for 2<p<=100", c5_hypergeometric_half);
    run(6, only, "rank-one sqrt(2) system: residue-symbol match and density over p<=10000", c6_sqrt2_density);
    run(7, only, "iteration-depth grid: m_{p,1}=p, m_{p,2}=2p, factorial bounds k<=8", c7_mpk_grid);
    run(8, only, "truncated Frobenius splitting identity on four good pairs", c8_frobenius_splitting);
    run(9, only, "pullback recognition for z -> z^3 and z -> z^2 substitutions", c9_pullbacks);
    run(10, only, "vector-field closure scans (three open families, one closed at p=3)", c10_field_scans);
    run(11, only, "weight-field closed form, first integral, and ideal membership", c11_weight_field_algebra);
    run(12, only, "modular expansions: multipliers, congruences, recursion solution", c12_modular_suite);
    run(13, only, "elliptic invariants: traces two ways, power sums, reduction congruences", c13_elliptic_suite);
    run(14, only, "period series: codimension formulas, specialization, deformed roots", c14_period_suite);
    run(15, only, "randomized algebraic-law suites with fixed seeds", c15_property_suites);

    if (only == 0) {
        std::cout << (g_failures == 0 ? "all criteria passed"
                                      : std::to_string(g_failures) + " criteria failed")
                  << "\n";
        std::cout << "not run here: the five-digit curvature density over p <= 797 "
                     "(long-running mode: adelab pcurv density --ode lame "
                     "--params n=1/6,B=0,g2=0,g3=1 --pmax 797)\n";
    }
    return g_failures == 0 ? 0 : 1;
}
