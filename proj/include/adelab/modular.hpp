#pragma once

// Eisenstein q-expansions, the representation of a modular form as an
// isobaric polynomial in the weight-4 and weight-6 generators, the weight
// p-1 / p+1 polynomial pair in (t2, t3), Eisenstein congruences, and the
// q-series solution of the Ramanujan system together with its coefficient
// recursion.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "series.hpp"

namespace adelab {

// E_{2k} = 1 - (4k/B_{2k}) sum_{n>=1} sigma_{2k-1}(n) q^n, through q^order
inline QSeries<Rat> eisenstein_q(unsigned long two_k, int order) {
    if (two_k < 2 || two_k % 2 != 0)
        throw InvalidArgument("eisenstein_q: weight must be even and >= 2");
    QSeries<Rat> s = qseries_zero(order + 1, Rat(0));
    s.at(0) = 1;
    Rat scale = Rat(2 * static_cast<long>(two_k)) / bernoulli(two_k);
    for (int n = 1; n <= order; ++n)
        s.at(n) = -scale * Rat(sigma_power(static_cast<unsigned long>(n), two_k - 1));
    return s;
}

// q d/dq acting on a truncated expansion
inline QSeries<Rat> theta_q(const QSeries<Rat>& s) {
    QSeries<Rat> o = s;
    for (int i = 0; i < o.order(); ++i) o.at(i) = o.at(i) * Rat(i);
    return o;
}

// (Q^3 - R^2)/1728 where Q, R are the weight-4 and weight-6 generators
inline SparsePoly<Rat> discriminant_poly() {
    auto q = SparsePoly<Rat>::variable(2, 0, Rat(1));
    auto r = SparsePoly<Rat>::variable(2, 1, Rat(1));
    return (poly_pow(q, 3) - poly_pow(r, 2)) * make_rat(1, 1728);
}

// Writes f (a weight-w form given as a q-expansion) as a polynomial in the
// two generators.  Each round strips the constant term with Q^a R^b, where
// b = 1 exactly when w = 2 mod 4, then divides the rest by the discriminant
// series, dropping the weight by 12 and spending one coefficient of
// precision.  The result is certified by re-expansion through q^guard.
inline SparsePoly<Rat> isobaric_decompose(const QSeries<Rat>& f, long weight, int guard) {
    if (weight < 4 || weight % 2 != 0)
        throw InvalidArgument("isobaric_decompose: weight must be even and >= 4");
    if (guard < 0 || guard + 1 > f.order())
        throw InsufficientPrecision("isobaric_decompose: guard order exceeds the given expansion");
    int n0 = f.order();
    auto e4 = eisenstein_q(4, n0 - 1);
    auto e6 = eisenstein_q(6, n0 - 1);
    auto dser = (e4 * e4 * e4 - e6 * e6) * make_rat(1, 1728);
    auto dpoly = discriminant_poly();

    SparsePoly<Rat> out(2);
    QSeries<Rat> cur = f;
    long w = weight;
    unsigned long j = 0;
    while (!is_zero(cur)) {
        if (cur.order() < 1)
            throw InsufficientPrecision("isobaric_decompose: expansion too short to continue");
        long b = (w % 4 == 2) ? 1 : 0;
        long a = (w - 6 * b) / 4;
        if (w < 0 || a < 0)
            throw InsufficientPrecision("isobaric_decompose: cannot certify the given weight");
        Rat c0 = cur.at(0);
        if (!is_zero(c0)) {
            auto piece = poly_pow(SparsePoly<Rat>::variable(2, 0, Rat(1)), static_cast<unsigned long>(a)) *
                         poly_pow(SparsePoly<Rat>::variable(2, 1, Rat(1)), static_cast<unsigned long>(b));
            out = out + (piece * poly_pow(dpoly, j)) * c0;
            auto prod = qseries_const(cur.order(), Rat(1), Rat(0));
            for (long i = 0; i < a; ++i) prod = prod * truncate(e4, cur.order());
            for (long i = 0; i < b; ++i) prod = prod * truncate(e6, cur.order());
            cur = cur - prod * c0;
        }
        if (is_zero(cur)) break;
        cur = series_divide(cur, truncate(dser, cur.order()));
        w -= 12;
        j += 1;
    }

    auto back = eval_poly_series(out, {e4, e6}, guard + 1, Rat(0));
    for (int i = 0; i <= guard; ++i)
        if (!(back.at(i) == f.at(i)))
            throw InsufficientPrecision("isobaric_decompose: re-expansion does not match the input");
    return out;
}

// Q -> qs * first variable, R -> rs * second variable
inline SparsePoly<Rat> scale_generators(const SparsePoly<Rat>& p, const Rat& qs, const Rat& rs) {
    SparsePoly<Rat> out(2);
    for (auto& t : p.terms) {
        Rat c = t.c;
        for (int i = 0; i < t.e[0]; ++i) c = c * qs;
        for (int i = 0; i < t.e[1]; ++i) c = c * rs;
        if (!is_zero(c)) out.terms.push_back({t.e, c});
    }
    out.sortin();
    return out;
}

struct ABPair {
    SparsePoly<Rat> a; // weight p-1, variables (t2, t3)
    SparsePoly<Rat> b; // weight p+1
};

// The pair with E_{p-1} = A(E4/12, -E6/216) and E_{p+1} = B(E4/12, -E6/216),
// obtained from the isobaric forms by Q -> 12 t2, R -> -216 t3.
inline ABPair ab_polynomials(long p) {
    if (p < 5 || !is_prime(Int(p)))
        throw InvalidArgument("ab_polynomials: need a prime >= 5");
    int n = static_cast<int>((p + 1) / 12) + 6;
    auto ea = eisenstein_q(static_cast<unsigned long>(p - 1), n - 1);
    auto eb = eisenstein_q(static_cast<unsigned long>(p + 1), n - 1);
    auto araw = isobaric_decompose(ea, p - 1, n - 1);
    auto braw = isobaric_decompose(eb, p + 1, n - 1);
    return ABPair{scale_generators(araw, Rat(12), Rat(-216)),
                  scale_generators(braw, Rat(12), Rat(-216))};
}

// E_{p-1} = 1 and E_{p+1} = E_2 coefficientwise mod p, through q^order
inline bool ep_congruence_check(long p, int order) {
    if (p < 5 || !is_prime(Int(p)))
        throw InvalidArgument("ep_congruence_check: need a prime >= 5");
    auto em = eisenstein_q(static_cast<unsigned long>(p - 1), order);
    auto ep = eisenstein_q(static_cast<unsigned long>(p + 1), order);
    auto e2 = eisenstein_q(2, order);
    Int pp(p);
    for (int i = 0; i <= order; ++i) {
        Rat d1 = em.at(i) - (i == 0 ? Rat(1) : Rat(0));
        Rat d2 = ep.at(i) - e2.at(i);
        if (padic_valuation(d1, pp) < PVal::fin(1)) return false;
        if (padic_valuation(d2, pp) < PVal::fin(1)) return false;
    }
    return true;
}

// lcm of the coefficient denominators appearing in the isobaric form of
// E_{2k}; checked against |numerator(B_{2k}/2k)|
inline Int numerator_multiplier(unsigned long two_k) {
    if (two_k < 4 || two_k % 2 != 0)
        throw InvalidArgument("numerator_multiplier: weight must be even and >= 4");
    int n = static_cast<int>(two_k / 12) + 6;
    auto f = eisenstein_q(two_k, n - 1);
    auto poly = isobaric_decompose(f, static_cast<long>(two_k), n - 1);
    Int l(1);
    for (auto& t : poly.terms) l = lcm(l, den(t.c));
    Int expect = abs(num(bernoulli(two_k) / Rat(static_cast<long>(two_k))));
    if (l != expect)
        throw CertificateViolation("numerator_multiplier: denominator lcm disagrees with the Bernoulli numerator");
    return l;
}

// right-hand sides t1^2 - t2/12, 4 t1 t2 - 6 t3, 6 t1 t3 - t2^2/3 evaluated
// on a series triple
inline std::array<QSeries<Rat>, 3> ramanujan_rhs(const std::array<QSeries<Rat>, 3>& t) {
    return {t[0] * t[0] - t[1] * make_rat(1, 12),
            (t[0] * t[1]) * Rat(4) - t[2] * Rat(6),
            (t[0] * t[2]) * Rat(6) - (t[1] * t[1]) * make_rat(1, 3)};
}

// -q d/dq of (-E2/12, E4/12, -E6/216) matches the system right-hand side
inline bool ramanujan_solution_check(int order) {
    if (order < 2) throw InvalidArgument("ramanujan_solution_check: order must be >= 2");
    std::array<QSeries<Rat>, 3> t{eisenstein_q(2, order) * make_rat(-1, 12),
                                  eisenstein_q(4, order) * make_rat(1, 12),
                                  eisenstein_q(6, order) * make_rat(-1, 216)};
    auto rhs = ramanujan_rhs(t);
    for (int i = 0; i < 3; ++i) {
        auto lhs = theta_q(t[i]) * Rat(-1);
        if (!is_zero(truncate(lhs, order + 1) - truncate(rhs[i], order + 1))) return false;
    }
    return true;
}

// 3x3 rational solve; nullopt when singular
inline std::optional<std::array<Rat, 3>> solve3(std::array<std::array<Rat, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int r = col; r < 3; ++r)
            if (!is_zero(m[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col || is_zero(m[r][col])) continue;
            Rat f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return std::array<Rat, 3>{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

struct RamanujanRecursion {
    std::array<QSeries<Rat>, 3> t;
    std::map<Int, PVal> integrality;
};

// Solves the coefficient recursion of the system directly.  At q^1 the
// linear system is rank-deficient; the scale is fixed by the coefficient 2
// in the first component, and the remaining rows must agree.  Every later
// step has to be uniquely solvable.
inline RamanujanRecursion ramanujan_recursion_solve(int order,
                                                    const std::vector<Int>& primes = {}) {
    if (order < 1) throw InvalidArgument("ramanujan_recursion_solve: order must be >= 1");
    RamanujanRecursion res;
    for (auto& s : res.t) s = qseries_zero(order + 1, Rat(0));
    res.t[0].at(0) = make_rat(-1, 12);
    res.t[1].at(0) = make_rat(1, 12);
    res.t[2].at(0) = make_rat(-1, 216);

    // Jacobian of the right-hand side at the constant solution point
    const std::array<std::array<Rat, 3>, 3> jac{{
        {make_rat(-1, 6), make_rat(-1, 12), Rat(0)},
        {make_rat(1, 3), make_rat(-1, 3), Rat(-6)},
        {make_rat(-1, 36), make_rat(-1, 18), make_rat(-1, 2)},
    }};

    for (int n = 1; n <= order; ++n) {
        std::array<QSeries<Rat>, 3> tc{truncate(res.t[0], n + 1), truncate(res.t[1], n + 1),
                                       truncate(res.t[2], n + 1)};
        auto low = ramanujan_rhs(tc);
        std::array<Rat, 3> rhs{-low[0].at(n), -low[1].at(n), -low[2].at(n)};
        if (n == 1) {
            for (auto& r : rhs)
                if (!is_zero(r))
                    throw CertificateViolation("ramanujan recursion: the constant point is not stationary");
            // fix t_{1,1} = 2 and solve two of the rows for the rest
            Rat x0(2);
            std::array<std::array<Rat, 3>, 3> m = jac;
            for (int i = 0; i < 3; ++i) m[i][i] = m[i][i] + Rat(n);
            // rows 0 and 2 are independent in (x1, x2)
            Rat det = m[0][1] * m[2][2] - m[0][2] * m[2][1];
            if (is_zero(det))
                throw CertificateViolation("ramanujan recursion: unexpected degeneracy at the seeded step");
            Rat b0 = -x0 * m[0][0];
            Rat b2 = -x0 * m[2][0];
            Rat x1 = (b0 * m[2][2] - m[0][2] * b2) / det;
            Rat x2 = (m[0][1] * b2 - b0 * m[2][1]) / det;
            if (!is_zero(m[1][0] * x0 + m[1][1] * x1 + m[1][2] * x2))
                throw CertificateViolation("ramanujan recursion: seeded solution violates the middle row");
            res.t[0].at(1) = x0;
            res.t[1].at(1) = x1;
            res.t[2].at(1) = x2;
        } else {
            std::array<std::array<Rat, 4>, 3> m{};
            for (int i = 0; i < 3; ++i) {
                for (int c = 0; c < 3; ++c) m[i][c] = jac[i][c];
                m[i][i] = m[i][i] + Rat(n);
                m[i][3] = rhs[i];
            }
            auto x = solve3(m);
            if (!x) throw SingularStep("ramanujan recursion: singular system at order " + std::to_string(n));
            for (int i = 0; i < 3; ++i) res.t[i].at(n) = (*x)[i];
        }
    }

    for (auto& p : primes) {
        PVal best = PVal::inf();
        for (auto& s : res.t) {
            auto rep = p_integrality_report(s, {p});
            if (rep[p] < best) best = rep[p];
        }
        res.integrality[p] = best;
    }
    return res;
}

} // namespace adelab
