#pragma once

#include <adelab/modular.hpp>
#include <adelab/poly.hpp>

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

namespace adelab {

// Curves y^2 = 4x^3 - t2*x - t3 over a prime field, p >= 5.
struct WeierstrassCurve {
    Mod m;
    Zm t2, t3;

    long p() const { return static_cast<long>(m.p); }
};

inline WeierstrassCurve make_curve(long p, long t2, long t3) {
    if (p == 2 || p == 3)
        throw BadCharacteristic("curve arithmetic needs p >= 5");
    if (p < 5 || !is_prime(Int(p)))
        throw InvalidArgument("make_curve: modulus must be a prime >= 5");
    Mod m = make_mod(static_cast<std::uint64_t>(p), 1);
    Zm one{1, m};
    WeierstrassCurve E{m, scalar_like(t2, one), scalar_like(t3, one)};
    Zm disc = scalar_like(27, one) * E.t3 * E.t3 - E.t2 * E.t2 * E.t2;
    if (disc.v == 0) throw SingularCurve("27*t3^2 = t2^3");
    return E;
}

inline SparsePoly<Zm> curve_cubic(const WeierstrassCurve& E) {
    Zm one{1, E.m};
    auto x = SparsePoly<Zm>::variable(1, 0, one);
    return x * x * x * scalar_like(4, one) - x * E.t2 -
           SparsePoly<Zm>::constant(1, E.t3);
}

// Coefficients c_0 .. c_{3(p-1)/2} of (4x^3 - t2*x - t3)^{(p-1)/2}.
inline std::vector<Zm> half_power_coeffs(const WeierstrassCurve& E) {
    long p = E.p();
    auto f = poly_pow(curve_cubic(E), static_cast<unsigned long>((p - 1) / 2));
    std::vector<Zm> c(static_cast<std::size_t>(3 * (p - 1) / 2 + 1), Zm{0, E.m});
    for (auto& t : f.terms) c[t.e[0]] = t.c;
    return c;
}

// Same expansion with t2, t3 left symbolic: entry i is a polynomial in (t2, t3).
inline std::vector<SparsePoly<Zm>> half_power_coeffs_symbolic(long p) {
    if (p == 2 || p == 3)
        throw BadCharacteristic("curve arithmetic needs p >= 5");
    if (p < 5 || !is_prime(Int(p)))
        throw InvalidArgument("half_power_coeffs_symbolic: prime >= 5 required");
    Mod m = make_mod(static_cast<std::uint64_t>(p), 1);
    Zm one{1, m};
    auto x = SparsePoly<Zm>::variable(3, 0, one);
    auto t2 = SparsePoly<Zm>::variable(3, 1, one);
    auto t3 = SparsePoly<Zm>::variable(3, 2, one);
    auto f = poly_pow(x * x * x * scalar_like(4, one) - t2 * x - t3,
                      static_cast<unsigned long>((p - 1) / 2));
    std::vector<SparsePoly<Zm>> c(static_cast<std::size_t>(3 * (p - 1) / 2 + 1),
                                  SparsePoly<Zm>(2));
    for (auto& t : f.terms) {
        Term<Zm> s;
        s.c = t.c;
        s.e[0] = t.e[1];
        s.e[1] = t.e[2];
        c[t.e[0]].terms.push_back(s);
    }
    for (auto& ci : c) ci.sortin();
    return c;
}

namespace detail {

// One double step of V |-> P V'' + (1/2) P' V' applied (p-1)/2 times to V = x.
template <class Cubic>
Cubic hw_recursion_value(const Cubic& P, long p, int xvar) {
    auto Pp = derivative(P, xvar);
    auto inv2 = zm_inv(scalar_like(2, P.leading_term().c));
    Cubic V = Cubic::variable(P.nv, xvar, Zm{1, P.leading_term().c.m});
    for (long s = 0; s < (p - 1) / 2; ++s)
        V = P * derivative(derivative(V, xvar), xvar) +
            Pp * derivative(V, xvar) * inv2;
    return V.coeff_in_var(xvar, 1);
}

} // namespace detail

inline Zm hasse_witt_recursion(const WeierstrassCurve& E) {
    auto r = detail::hw_recursion_value(curve_cubic(E), E.p(), 0);
    Exps e{};
    return r.coeff_at(e, Zm{0, E.m});
}

inline SparsePoly<Zm> hasse_witt_recursion_symbolic(long p) {
    if (p == 2 || p == 3)
        throw BadCharacteristic("curve arithmetic needs p >= 5");
    if (p < 5 || !is_prime(Int(p)))
        throw InvalidArgument("hasse_witt_recursion_symbolic: prime >= 5 required");
    Mod m = make_mod(static_cast<std::uint64_t>(p), 1);
    Zm one{1, m};
    auto x = SparsePoly<Zm>::variable(3, 0, one);
    auto t2 = SparsePoly<Zm>::variable(3, 1, one);
    auto t3 = SparsePoly<Zm>::variable(3, 2, one);
    auto r = detail::hw_recursion_value(
        x * x * x * scalar_like(4, one) - t2 * x - t3, p, 0);
    SparsePoly<Zm> out(2);
    for (auto& t : r.terms) {
        Term<Zm> s;
        s.c = t.c;
        s.e[0] = t.e[1];
        s.e[1] = t.e[2];
        out.terms.push_back(s);
    }
    out.sortin();
    return out;
}

inline Zm hasse_witt(const WeierstrassCurve& E) {
    return half_power_coeffs(E)[static_cast<std::size_t>(E.p() - 1)];
}

// Euler-criterion quadratic character: 0 on 0, otherwise +-1.
inline int chi_euler(const Zm& a) {
    if (a.v == 0) return 0;
    return zm_pow(a, (a.m.p - 1) / 2).v == 1 ? 1 : -1;
}

inline long point_count(const WeierstrassCurve& E) {
    Zm one{1, E.m};
    Zm disc = scalar_like(27, one) * E.t3 * E.t3 - E.t2 * E.t2 * E.t2;
    if (disc.v == 0) throw SingularCurve("27*t3^2 = t2^3");
    auto P = curve_cubic(E);
    long p = E.p(), n = 1;
    for (long x = 0; x < p; ++x) {
        std::vector<Zm> xs{scalar_like(x, one)};
        n += 1 + chi_euler(eval_poly(P, xs, Zm{0, E.m}));
    }
    return n;
}

// Sum_{P != O} x(P)^{j-1} = -c_{p-j} for every j with j-1 < (p-1)/2, j <= jmax.
inline bool power_sum_check(const WeierstrassCurve& E, long jmax) {
    if (jmax < 1) throw InvalidArgument("power_sum_check: jmax >= 1 required");
    auto c = half_power_coeffs(E);
    auto P = curve_cubic(E);
    long p = E.p();
    Zm one{1, E.m}, zero{0, E.m};
    bool ok = true;
    for (long j = 1; j <= std::min(jmax, (p - 1) / 2); ++j) {
        Zm s = zero;
        for (long x = 0; x < p; ++x) {
            Zm xv = scalar_like(x, one);
            std::vector<Zm> xs{xv};
            int mult = 1 + chi_euler(eval_poly(P, xs, zero));
            if (mult == 0) continue;
            s = s + zm_pow(xv, static_cast<std::uint64_t>(j - 1)) *
                        scalar_like(mult, one);
        }
        ok = ok && (s + c[static_cast<std::size_t>(p - j)]).v == 0;
    }
    return ok;
}

// c_{p-1} = A(t2,t3) and c_{p-2} = (1/12) B(t2,t3) as identities in F_p[t2,t3].
inline bool ab_congruence_check(long p) {
    auto cs = half_power_coeffs_symbolic(p);
    auto ab = ab_polynomials(p);
    Mod m = make_mod(static_cast<std::uint64_t>(p), 1);
    auto red = [&](const SparsePoly<Rat>& f) {
        return f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
    };
    return cs[static_cast<std::size_t>(p - 1)] == red(ab.a) &&
           cs[static_cast<std::size_t>(p - 2)] == red(ab.b * make_rat(1, 12));
}

// Action on the basis (dx/y, x dx/y); the second row vanishes over the prime field.
inline std::array<std::array<Zm, 2>, 2> cartier_matrix(const WeierstrassCurve& E) {
    auto c = half_power_coeffs(E);
    long p = E.p();
    Zm z{0, E.m};
    return {{{c[static_cast<std::size_t>(p - 1)], c[static_cast<std::size_t>(p - 2)]},
             {z, z}}};
}

struct ExactFormReduction {
    SparsePoly<Rat> a0, a1; // polynomials in (t2, t3)
    SparsePoly<Rat> q;      // polynomial in (x, t2, t3)
};

// (2n-1) x^n dx/y = a0 dx/y + a1 x dx/y + d(y q), identically over Q(t2,t3).
inline ExactFormReduction exact_form_reduce(long n) {
    if (n < 2) throw InvalidArgument("exact_form_reduce: n >= 2 required");
    Rat one(1);
    auto x = SparsePoly<Rat>::variable(3, 0, one);
    auto t2 = SparsePoly<Rat>::variable(3, 1, one);
    auto t3 = SparsePoly<Rat>::variable(3, 2, one);
    auto rem = poly_pow(x, static_cast<unsigned long>(n));
    SparsePoly<Rat> q(3);
    for (long i = n; i >= 2; --i) {
        auto ci = rem.coeff_in_var(0, i);
        if (ci.zero()) continue;
        auto xi = poly_pow(x, static_cast<unsigned long>(i));
        auto xi2 = poly_pow(x, static_cast<unsigned long>(i - 2));
        Rat d = Rat(1) / Rat(4 * i - 2);
        rem = rem - ci * xi + ci * t2 * xi2 * Rat((Rat(i) - make_rat(3, 2)) * d);
        if (i > 2)
            rem = rem + ci * t3 * poly_pow(x, static_cast<unsigned long>(i - 3)) *
                            Rat(Rat(i - 2) * d);
        q = q + ci * xi2 * d;
    }
    Rat s(2 * n - 1);
    auto a0_full = rem.coeff_in_var(0, 0) * s;
    auto a1_full = rem.coeff_in_var(0, 1) * s;
    q = q * s;

    auto P = x * x * x * Rat(4) - t2 * x - t3;
    auto lhs = poly_pow(x, static_cast<unsigned long>(n)) * s;
    auto rhs = a0_full + a1_full * x +
               derivative(P, 0) * q * make_rat(1, 2) + P * derivative(q, 0);
    if (!(lhs == rhs))
        throw CertificateViolation("exact_form_reduce: reduction does not differentiate back");

    auto drop = [](const SparsePoly<Rat>& f) {
        SparsePoly<Rat> out(2);
        for (auto& t : f.terms) {
            Term<Rat> u;
            u.c = t.c;
            u.e[0] = t.e[1];
            u.e[1] = t.e[2];
            out.terms.push_back(u);
        }
        out.sortin();
        return out;
    };
    return {drop(a0_full), drop(a1_full), q};
}

// v = y d/dx + (1/2) P'(x) d/dy on F_p[x,y]/(y^2 - P): the p-th iterate acts as
// multiplication by the Hasse-Witt invariant on v(x) and v(y).
inline bool hw_field_identity_check(const WeierstrassCurve& E) {
    auto P = curve_cubic(E);
    auto Pp = derivative(P, 0);
    Zm one{1, E.m};
    Zm inv2 = zm_inv(scalar_like(2, one));
    using Elt = std::pair<SparsePoly<Zm>, SparsePoly<Zm>>; // a(x) + b(x) y
    auto step = [&](const Elt& g) {
        return Elt{derivative(g.second, 0) * P + Pp * g.second * inv2,
                   derivative(g.first, 0)};
    };
    long p = E.p();
    Elt cx{SparsePoly<Zm>::variable(1, 0, one), SparsePoly<Zm>(1)};
    Elt cy{SparsePoly<Zm>(1), SparsePoly<Zm>::constant(1, one)};
    for (long i = 0; i < p; ++i) {
        cx = step(cx);
        cy = step(cy);
    }
    Zm hw = hasse_witt(E);
    bool okx = cx.first.zero() &&
               cx.second == SparsePoly<Zm>::constant(1, hw);
    bool oky = cy.second.zero() && cy.first == Pp * (inv2 * hw);
    return okx && oky;
}

} // namespace adelab
