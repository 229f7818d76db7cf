#pragma once

#include <adelab/arith.hpp>

#include <complex>
#include <map>
#include <vector>

namespace adelab {

struct DeformationIndexSet {
    long n = 0, d = 0;
    std::vector<std::vector<long>> alphas; // exponent vectors, each of length n+2
};

inline DeformationIndexSet make_index_set(long n, long d,
                                          std::vector<std::vector<long>> alphas) {
    if (n < 2 || n % 2 != 0)
        throw InvalidArgument("make_index_set: n must be even and >= 2");
    if (d < 2) throw InvalidArgument("make_index_set: d must be >= 2");
    for (auto& a : alphas) {
        if (static_cast<long>(a.size()) != n + 2)
            throw InvalidArgument("make_index_set: exponent vector length is not n+2");
        long s = 0;
        for (long e : a) {
            if (e < 0) throw InvalidArgument("make_index_set: negative exponent");
            s += e;
        }
        if (s != d)
            throw InvalidArgument("make_index_set: exponent vector degree is not d");
    }
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = i + 1; j < alphas.size(); ++j)
            if (alphas[i] == alphas[j])
                throw InvalidArgument("make_index_set: duplicate exponent vector");
    return {n, d, std::move(alphas)};
}

struct PeriodTerm {
    std::vector<long> a; // multiplicity per index-set entry
    Rat coeff;
};

struct PeriodSeries {
    DeformationIndexSet idx;
    std::vector<long> beta;
    long k = 0;
    int trunc = 0;
    std::vector<PeriodTerm> terms; // lexicographic in a
};

namespace detail {

// Visit every a with sum <= budget, lexicographically, ascending per slot.
template <class F>
void visit_compositions(std::vector<long>& a, std::size_t pos, long budget, F&& f) {
    if (pos == a.size()) {
        f(a);
        return;
    }
    for (long v = 0; v <= budget; ++v) {
        a[pos] = v;
        visit_compositions(a, pos + 1, budget - v, f);
    }
    a[pos] = 0;
}

} // namespace detail

inline PeriodSeries period_series(long n, long d, const std::vector<long>& beta,
                                  const DeformationIndexSet& I, int trunc) {
    if (I.n != n || I.d != d)
        throw InvalidArgument("period_series: index set belongs to different (n, d)");
    if (static_cast<long>(beta.size()) != n + 2)
        throw InvalidArgument("period_series: beta length is not n+2");
    if (trunc < 0) throw InvalidArgument("period_series: trunc must be >= 0");
    long bsum = 0;
    for (long b : beta) {
        if (b < 0 || b > d - 2)
            throw BetaOutOfRange("period_series: entries must lie in [0, d-2]");
        bsum += b + 1;
    }
    if (bsum % d != 0)
        throw NotIntegralK("period_series: sum (beta_i + 1)/d is not an integer");

    PeriodSeries out{I, beta, bsum / d, trunc, {}};
    std::vector<long> a(I.alphas.size(), 0);
    detail::visit_compositions(a, 0, trunc, [&](const std::vector<long>& av) {
        std::vector<long> bc = beta; // beta + a*
        for (std::size_t j = 0; j < av.size(); ++j)
            for (long i = 0; i < n + 2; ++i)
                bc[static_cast<std::size_t>(i)] +=
                    av[j] * I.alphas[j][static_cast<std::size_t>(i)];
        for (long b : bc)
            if ((b + 1) % d == 0) return;
        std::vector<Rat> x;
        for (long b : bc) x.push_back(make_rat(b + 1, d));
        for (long e = 0; e <= n / 2; ++e) {
            Rat f0 = x[static_cast<std::size_t>(2 * e)] -
                     Rat(floor_int(x[static_cast<std::size_t>(2 * e)]));
            Rat f1 = x[static_cast<std::size_t>(2 * e + 1)] -
                     Rat(floor_int(x[static_cast<std::size_t>(2 * e + 1)]));
            if (Rat(f0 + f1) != 1) return;
        }
        Rat D(1);
        for (auto& xi : x) {
            Int ip = floor_int(xi);
            D = Rat(D * pochhammer_rising(Rat(xi - Rat(ip)), ip.get_ui()));
        }
        Int E(0);
        for (long e = 0; e <= n / 2; ++e)
            E += floor_int(x[static_cast<std::size_t>(2 * e)]);
        Rat afac(1);
        for (long m : av) afac = Rat(afac * Rat(factorial(static_cast<unsigned long>(m))));
        Rat coeff = Rat(D / afac);
        if (E % 2 != 0) coeff = Rat(-coeff);
        if (coeff != 0) out.terms.push_back({av, coeff});
    });
    return out;
}

// The same series encoded from the quartic-surface display: beta_i := (a*_i + 1)/4
// kept when no beta_i is an integer while beta_0 + beta_1 and beta_2 + beta_3 are.
inline bool quartic_specialization_check(const DeformationIndexSet& I, int trunc) {
    if (I.n != 2 || I.d != 4)
        throw InvalidArgument("quartic_specialization_check: needs n = 2, d = 4");
    auto general = period_series(2, 4, {0, 0, 0, 0}, I, trunc);

    std::vector<PeriodTerm> direct;
    std::vector<long> a(I.alphas.size(), 0);
    detail::visit_compositions(a, 0, trunc, [&](const std::vector<long>& av) {
        std::vector<Rat> b;
        for (long i = 0; i < 4; ++i) {
            long s = 1;
            for (std::size_t j = 0; j < av.size(); ++j)
                s += av[j] * I.alphas[j][static_cast<std::size_t>(i)];
            b.push_back(make_rat(s, 4));
        }
        for (auto& bi : b)
            if (den(bi) == 1) return;
        if (den(Rat(b[0] + b[1])) != 1 || den(Rat(b[2] + b[3])) != 1) return;
        Rat prod(1);
        for (auto& bi : b) prod = Rat(prod * fractional_bracket(bi).bracket);
        Rat afac(1);
        for (long m : av) afac = Rat(afac * Rat(factorial(static_cast<unsigned long>(m))));
        Rat coeff = Rat(prod / afac);
        Int sign = floor_int(b[0]) + floor_int(b[2]);
        if (sign % 2 != 0) coeff = Rat(-coeff);
        direct.push_back({av, coeff});
    });

    if (general.terms.size() != direct.size()) return false;
    for (std::size_t i = 0; i < direct.size(); ++i)
        if (general.terms[i].a != direct[i].a ||
            general.terms[i].coeff != direct[i].coeff)
            return false;
    return true;
}

// Per total degree: factorization of the LCM of coefficient denominators.
inline std::map<long, std::map<Int, long>>
denominator_report(const PeriodSeries& s) {
    std::map<long, Int> lcm;
    for (auto& t : s.terms) {
        long deg = 0;
        for (long m : t.a) deg += m;
        auto it = lcm.find(deg);
        if (it == lcm.end())
            lcm.emplace(deg, den(t.coeff));
        else
            mpz_lcm(it->second.get_mpz_t(), it->second.get_mpz_t(),
                    den(t.coeff).get_mpz_t());
    }
    std::map<long, std::map<Int, long>> out;
    for (auto& [deg, l] : lcm) {
        std::map<Int, long> f;
        factor_into(l, f);
        out.emplace(deg, std::move(f));
    }
    return out;
}

// Alternating inclusion-exclusion over subsets of the degree sequence.
inline long codim_C(long n, long d, const std::vector<long>& aseq) {
    if (n < 1 || d < 1) throw InvalidArgument("codim_C: n, d must be positive");
    for (long v : aseq)
        if (v <= 0) throw InvalidArgument("codim_C: entries must be positive");
    Int total = binomial(Int(n + 1 + d), static_cast<unsigned long>(n + 1));
    // A subset with element-sum <= d has at most d members, so walk
    // combinations of bounded size instead of the full power set.
    auto rec = [&](auto&& self, std::size_t start, long sum, int size) -> void {
        for (std::size_t i = start; i < aseq.size(); ++i) {
            long s = sum + aseq[i];
            if (s > d) continue;
            Int term =
                binomial(Int(n + 1 + d - s), static_cast<unsigned long>(n + 1));
            total += ((size + 1) % 2 == 0) ? term : -term;
            self(self, i + 1, s, size + 1);
        }
    };
    rec(rec, 0, 0, 0);
    return total.get_si();
}

inline long codim_VZ(long n, long d, long m) {
    if (n < 2 || n % 2 != 0)
        throw InvalidArgument("codim_VZ: n must be even and >= 2");
    if (m < -1 || m > n / 2 - 1)
        throw InvalidArgument("codim_VZ: need -1 <= m <= n/2 - 1");
    std::vector<long> first(static_cast<std::size_t>(n / 2 + 1), 1);
    first.insert(first.end(), static_cast<std::size_t>(n / 2 + 1), d - 1);
    std::vector<long> second(static_cast<std::size_t>(n - m + 1), 1);
    second.insert(second.end(), static_cast<std::size_t>(m + 1), d - 1);
    return 2 * codim_C(n, d, first) - codim_C(n, d, second);
}

// codim_VZ(2k, 3, k-3) in closed form.
inline long cubic_codim_closed_form(long k) {
    Rat v = Rat(make_rat(1, 6) * Rat(Rat(k) * Rat(k) * Rat(k)) +
                make_rat(3, 2) * Rat(Rat(k) * Rat(k)) - make_rat(14, 3) * Rat(k) +
                Rat(4));
    if (den(v) != 1)
        throw CertificateViolation("cubic_codim_closed_form: non-integral value");
    return num(v).get_si();
}

struct HodgeTableRow {
    long n;
    long dim_t;
    long min_codim;
    long L;
    long M;
};

inline std::vector<HodgeTableRow> table_repro() {
    std::vector<HodgeTableRow> rows;
    for (long n : {4L, 6L, 8L, 10L, 12L}) {
        long dimt = binomial(Int(n + 2), 3).get_si();
        long minc = binomial(Int(n / 2 + 1), 3).get_si();
        std::vector<long> lin(static_cast<std::size_t>(n / 2 + 1), 1);
        lin.insert(lin.end(), static_cast<std::size_t>(n / 2 + 1), 2);
        long L = codim_C(n, 3, lin);
        long M = codim_VZ(n, 3, n / 2 - 3) - 1;
        rows.push_back({n, dimt, minc, L, M});
    }
    return rows;
}

// One-variable deformed-root period identity, checked in floating point:
// the series side against Newton-refined roots of x^d + 1 + sum t_i x^(d-i).
inline double balegh_numeric_check(long d, long beta, int k1, int k2, int trunc,
                                   const std::vector<Rat>& t) {
    if (d < 2) throw InvalidArgument("balegh_numeric_check: d must be >= 2");
    if (beta < 0 || beta > d - 2)
        throw BetaOutOfRange("balegh_numeric_check: 0 <= beta <= d-2 required");
    if (static_cast<long>(t.size()) != d)
        throw InvalidArgument("balegh_numeric_check: t must have d entries");
    if (k1 == k2)
        throw InvalidArgument("balegh_numeric_check: the two branches must differ");
    using C = std::complex<double>;
    const double pi = 3.14159265358979323846;
    auto zeta = [&](int k) {
        double th = pi * (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(d);
        return C(std::cos(th), std::sin(th));
    };
    auto cpow = [](C b, long e) {
        C r(1.0);
        for (long i = 0; i < e; ++i) r *= b;
        return r;
    };
    C z1 = zeta(k1), z2 = zeta(k2);

    C series(0.0);
    std::vector<long> a(static_cast<std::size_t>(d), 0);
    detail::visit_compositions(a, 0, trunc, [&](const std::vector<long>& av) {
        long s1 = 0; // sum i * a_i
        for (long i = 1; i <= d; ++i) s1 += i * av[static_cast<std::size_t>(i - 1)];
        if (((beta + 1 - s1) % d + d) % d == 0) return;
        long s2 = 0; // sum j * a_{d-j}
        for (long j = 1; j <= d - 1; ++j)
            s2 += j * av[static_cast<std::size_t>(d - j - 1)];
        Rat arg1 = make_rat(d - 1 - beta + s1, d);
        Rat arg2 = make_rat(beta + 1 + s2, d);
        Rat D = Rat(fractional_bracket(arg1).bracket *
                    fractional_bracket(arg2).bracket);
        Rat afac(1);
        for (long m : av)
            afac = Rat(afac * Rat(factorial(static_cast<unsigned long>(m))));
        long rbar = (beta + 1 + s2) % d;
        C p = (-1.0 / static_cast<double>(d)) * (cpow(z2, rbar) - cpow(z1, rbar));
        // The deformation parameters enter the series with alternating sign:
        // the identity holds with (-t_i) in the monomial, checked against
        // implicit differentiation of the root at low order.
        double tmon = 1.0;
        for (std::size_t i = 0; i < av.size(); ++i)
            for (long j = 0; j < av[i]; ++j) tmon *= -t[i].get_d();
        series += Rat(D / afac).get_d() * p * tmon;
    });

    auto feval = [&](C x) {
        C r = cpow(x, d) + 1.0;
        for (long i = 1; i <= d; ++i) r += t[static_cast<std::size_t>(i - 1)].get_d() * cpow(x, d - i);
        return r;
    };
    auto fprime = [&](C x) {
        C r = static_cast<double>(d) * cpow(x, d - 1);
        for (long i = 1; i <= d - 1; ++i)
            r += t[static_cast<std::size_t>(i - 1)].get_d() *
                 static_cast<double>(d - i) * cpow(x, d - i - 1);
        return r;
    };
    auto refine = [&](C x0) {
        C x = x0;
        for (int it = 0; it < 100; ++it) {
            C fx = feval(x);
            if (std::abs(fx) < 1e-14) return x;
            x = x - fx / fprime(x);
        }
        if (std::abs(feval(x)) < 1e-14) return x;
        throw NewtonDivergence("balegh_numeric_check: root refinement stalled");
    };
    C x1 = refine(z1), x2 = refine(z2);
    C lhs = cpow(x2, beta) / fprime(x2) - cpow(x1, beta) / fprime(x1);
    return std::abs(lhs - series);
}

} // namespace adelab
