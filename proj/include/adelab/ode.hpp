#pragma once

// Linear ODE systems dy/dz = A y over Q(z), stored denominator-cleared as
// (Delta, B1 = Delta*A).  Iterates, curvature tests mod p^k, prime scans,
// local formal solutions, the truncated Frobenius splitting check, and
// operator pullbacks.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "arith.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "pool.hpp"
#include "series.hpp"
#include "zmod.hpp"

namespace adelab {

using ZPoly = SparsePoly<Rat>;
using ZpPoly = SparsePoly<Zm>;

inline ZPoly zpoly_from(const std::vector<Rat>& ascending) {
    std::vector<Term<Rat>> ts;
    for (std::size_t i = 0; i < ascending.size(); ++i)
        if (!is_zero(ascending[i])) {
            Exps e{};
            e[0] = static_cast<std::uint16_t>(i);
            ts.push_back({e, ascending[i]});
        }
    return ZPoly::collect(1, std::move(ts));
}

struct OdeSystem {
    int rank = 0;
    ZPoly delta{1};
    Mat<ZPoly> b1;
    std::optional<long> quad_d;      // rank-one y' = (sqrt(d)/z) y
    std::vector<Int> ring_primes;    // sorted
    bool degenerate_warning = false; // vanishing cubic discriminant etc.
};

inline Rat leading_coeff(const ZPoly& p) {
    if (p.zero()) throw ZeroLeadingCoefficient();
    return p.leading_term().c;
}

// Primes that block reduction: divisors of any coefficient denominator, or
// of the numerator of Delta's leading coefficient (Delta must stay a
// non-zero-divisor mod p^k).
inline std::vector<Int> compute_ring_primes(const ZPoly& delta, const Mat<ZPoly>& b1) {
    Int acc = 1;
    for (auto& t : delta.terms) acc = lcm(acc, den(t.c));
    for (auto& entry : b1.a)
        for (auto& t : entry.terms) acc = lcm(acc, den(t.c));
    Int lead = abs(num(leading_coeff(delta)));
    std::set<Int> ps;
    for (auto& [p, e] : factor(acc * lead)) ps.insert(p);
    return std::vector<Int>(ps.begin(), ps.end());
}

inline bool is_ring_prime(const OdeSystem& sys, const Int& p) {
    return std::binary_search(sys.ring_primes.begin(), sys.ring_primes.end(), p);
}

// companion system of c_r y^(r) + ... + c_1 y' + c_0 y = 0,
// state vector (y, y', ..., y^(r-1))
inline OdeSystem from_scalar(const std::vector<ZPoly>& c) {
    if (c.size() < 2) throw InvalidArgument("from_scalar: need order >= 1");
    int r = static_cast<int>(c.size()) - 1;
    if (c.back().zero()) throw ZeroLeadingCoefficient();
    OdeSystem sys;
    sys.rank = r;
    sys.delta = c.back();
    sys.b1 = Mat<ZPoly>(r, r, ZPoly(1));
    for (int i = 0; i + 1 < r; ++i) sys.b1.at(i, i + 1) = sys.delta;
    for (int j = 0; j < r; ++j) sys.b1.at(r - 1, j) = -c[static_cast<std::size_t>(j)];
    sys.ring_primes = compute_ring_primes(sys.delta, sys.b1);
    return sys;
}

inline OdeSystem lame(const Rat& n, const Rat& B, const Rat& g2, const Rat& g3) {
    ZPoly P = zpoly_from({-g3, -g2, Rat(0), Rat(4)});
    ZPoly Phalf = zpoly_from({-g2 / 2, Rat(0), Rat(6)});
    ZPoly c0 = zpoly_from({-B, -(n * (n + 1))});
    OdeSystem sys = from_scalar({c0, Phalf, P});
    if (is_zero(Rat(27) * g3 * g3 - g2 * g2 * g2)) sys.degenerate_warning = true;
    return sys;
}

inline OdeSystem hypergeometric(const Rat& a, const Rat& b, const Rat& c) {
    ZPoly c0 = ZPoly::constant(1, -(a * b));
    ZPoly c1 = zpoly_from({c, -(a + b + 1)});
    ZPoly c2 = zpoly_from({Rat(0), Rat(1), Rat(-1)});
    return from_scalar({c0, c1, c2});
}

inline OdeSystem rank_one_quadratic(long d) {
    OdeSystem sys;
    sys.rank = 1;
    sys.delta = ZPoly::variable(1, 0, Rat(1));
    sys.b1 = Mat<ZPoly>(1, 1, ZPoly(1));
    sys.quad_d = d;
    std::set<Int> ps{Int(2)};
    for (auto& [p, e] : factor(Int(d < 0 ? -d : d))) ps.insert(p);
    sys.ring_primes.assign(ps.begin(), ps.end());
    return sys;
}

enum class Curvature { RingPrime, Zero, NonZero };

inline ZpPoly reduce_poly(const ZPoly& f, const Mod& m) {
    return f.map_coeffs([&](const Rat& c) { return reduce_mod(c, m); });
}

inline Mat<ZpPoly> reduce_matrix(const Mat<ZPoly>& x, const Mod& m) {
    return map_entries(x, [&](const ZPoly& f) { return reduce_poly(f, m); });
}

// one step of B_{m+1} = Delta*B_m' - m*Delta'*B_m + B_m*B_1
template <class K>
Mat<SparsePoly<K>> cleared_step(const Mat<SparsePoly<K>>& B, long mstep,
                                const SparsePoly<K>& dp, const SparsePoly<K>& dprime,
                                const Mat<SparsePoly<K>>& b1p, const K& one) {
    auto dB = map_entries(B, [](const SparsePoly<K>& f) { return derivative(f, 0); });
    K mres = scalar_like(mstep, one);
    auto t1 = scale(dB, dp);
    auto t2 = scale(B, dprime * mres);
    return t1 - t2 + B * b1p;
}

template <class K>
Mat<SparsePoly<K>> cleared_iterate(const SparsePoly<K>& dp, const Mat<SparsePoly<K>>& b1p,
                                   long m, const K& one) {
    if (m < 1) throw InvalidArgument("cleared_iterate: m >= 1");
    SparsePoly<K> dprime = derivative(dp, 0);
    Mat<SparsePoly<K>> B = b1p;
    for (long j = 1; j < m; ++j) B = cleared_step(B, j, dp, dprime, b1p, one);
    return B;
}

// arithmetic in (Z/p^k)[sqrt(d)]
struct QuadElt {
    Zm u, v;
};

inline QuadElt quad_mul(const QuadElt& x, const QuadElt& y, const Zm& dres) {
    return {x.u * y.u + dres * (x.v * y.v), x.u * y.v + x.v * y.u};
}

// falling factorial a(a-1)...(a-m+1), a = sqrt(d), in Z[sqrt(d)]/p^k
inline QuadElt quad_falling(long d, const Mod& mod, long m) {
    Zm dres = reduce_mod(Rat(d), mod);
    Zm one{1 % mod.q, mod};
    QuadElt acc{one, Zm{0, mod}};
    for (long j = 0; j < m; ++j) {
        QuadElt f{-scalar_like(j, one), one};
        acc = quad_mul(acc, f, dres);
    }
    return acc;
}

inline Curvature curvature_test(const OdeSystem& sys, long p, std::uint32_t k) {
    if (is_ring_prime(sys, Int(p))) return Curvature::RingPrime;
    Mod mod = make_mod(static_cast<std::uint64_t>(p), k);
    long m = mpk(p, k);
    if (sys.quad_d) {
        QuadElt ff = quad_falling(*sys.quad_d, mod, m);
        return (is_zero(ff.u) && is_zero(ff.v)) ? Curvature::Zero : Curvature::NonZero;
    }
    Zm one{1 % mod.q, mod};
    ZpPoly dp = reduce_poly(sys.delta, mod);
    Mat<ZpPoly> b1p = reduce_matrix(sys.b1, mod);
    Mat<ZpPoly> Bm = cleared_iterate(dp, b1p, m, one);
    return is_zero(Bm) ? Curvature::Zero : Curvature::NonZero;
}

inline int legendre_symbol(const Int& a, long p) {
    Int r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    Mod mod = make_mod(static_cast<std::uint64_t>(p), 1);
    Zm e = zm_pow(Zm{r.get_ui(), mod}, static_cast<std::uint64_t>((p - 1) / 2));
    return e.v == 1 ? 1 : -1;
}

enum class PrimeClass { RingPrime, Good, Bad };

struct PrimeScanReport {
    std::vector<long> primes;
    std::vector<PrimeClass> cls;
    std::vector<long> m_used;
    std::uint32_t k = 1;
    bool truncated = false;
    long scanned_upto = 0;
};

struct ScanEntry {
    long p;
    PrimeClass cls;
    long m;
};

inline ScanEntry classify_prime(const OdeSystem& sys, long p, std::uint32_t k) {
    if (is_ring_prime(sys, Int(p))) return {p, PrimeClass::RingPrime, 0};
    Curvature c = curvature_test(sys, p, k);
    return {p, c == Curvature::Zero ? PrimeClass::Good : PrimeClass::Bad, mpk(p, k)};
}

inline PrimeScanReport bad_prime_scan(const OdeSystem& sys, long pmax, std::uint32_t k,
                                      std::optional<long> maxbad = std::nullopt) {
    if (pmax < 2) throw InvalidArgument("bad_prime_scan: pmax >= 2");
    PrimeScanReport rep;
    rep.k = k;
    rep.scanned_upto = pmax;
    std::vector<long> ps = primes_upto(pmax);
    const std::size_t block = 16;
    long bad_count = 0;
    for (std::size_t start = 0; start < ps.size(); start += block) {
        std::size_t stop = std::min(ps.size(), start + block);
        std::vector<long> chunk(ps.begin() + start, ps.begin() + stop);
        auto results = parallel_map_ordered(
            chunk, [&](long p) { return classify_prime(sys, p, k); });
        for (auto& r : results) {
            rep.primes.push_back(r.p);
            rep.cls.push_back(r.cls);
            rep.m_used.push_back(r.m);
            if (r.cls == PrimeClass::Bad) ++bad_count;
        }
        if (maxbad && bad_count > *maxbad) {
            rep.truncated = true;
            break;
        }
    }
    return rep;
}

inline std::vector<long> bad_primes_of(const PrimeScanReport& rep) {
    std::vector<long> out;
    for (std::size_t i = 0; i < rep.primes.size(); ++i)
        if (rep.cls[i] == PrimeClass::Bad) out.push_back(rep.primes[i]);
    return out;
}

inline Rat curvature_density(const OdeSystem& sys, long pmax) {
    PrimeScanReport rep = bad_prime_scan(sys, pmax, 1);
    long good = 0, bad = 0;
    for (auto c : rep.cls) {
        if (c == PrimeClass::Good) ++good;
        if (c == PrimeClass::Bad) ++bad;
    }
    if (good + bad == 0) throw EmptyScan();
    return Rat(good) / Rat(good + bad);
}

// Taylor coefficients of f(z0 + u) as a series in u
inline QSeries<Rat> shift_expand(const ZPoly& f, const Rat& z0, int order) {
    QSeries<Rat> s = qseries_zero(order, Rat(0));
    for (auto& t : f.terms) {
        long e = t.e[0];
        for (long i = 0; i < order && i <= e; ++i) {
            Rat coeff = Rat(binomial(Int(e), static_cast<unsigned long>(i)));
            Rat zp(1);
            for (long j = 0; j < e - i; ++j) zp *= z0;
            s.c[static_cast<std::size_t>(i)] += t.c * coeff * zp;
        }
    }
    return s;
}

// local power-series solution with y(z0) = y0
inline std::vector<QSeries<Rat>> dsolve_formal(const OdeSystem& sys, const Rat& z0,
                                               const std::vector<Rat>& y0, int order) {
    if (sys.quad_d) throw InvalidArgument("dsolve_formal: quadratic-ring systems unsupported");
    if (static_cast<int>(y0.size()) != sys.rank)
        throw InvalidArgument("dsolve_formal: initial vector size");
    int n = order + 1;
    QSeries<Rat> dser = shift_expand(sys.delta, z0, n);
    if (is_zero(dser.c[0])) throw SingularPoint();
    QSeries<Rat> dinv = series_inverse(dser);
    // A(z0+u) entrywise
    std::vector<std::vector<QSeries<Rat>>> A(static_cast<std::size_t>(sys.rank));
    for (int i = 0; i < sys.rank; ++i) {
        A[i].reserve(static_cast<std::size_t>(sys.rank));
        for (int j = 0; j < sys.rank; ++j)
            A[i].push_back(shift_expand(sys.b1.at(i, j), z0, n) * dinv);
    }
    std::vector<std::vector<Rat>> y;
    y.push_back(y0);
    for (int deg = 1; deg < n; ++deg) {
        std::vector<Rat> next(static_cast<std::size_t>(sys.rank), Rat(0));
        for (int i = 0; i <= deg - 1; ++i) {
            // A_i * y_{deg-1-i}
            auto& yj = y[static_cast<std::size_t>(deg - 1 - i)];
            for (int r = 0; r < sys.rank; ++r)
                for (int cidx = 0; cidx < sys.rank; ++cidx)
                    next[static_cast<std::size_t>(r)] += A[r][cidx].at(i) * yj[static_cast<std::size_t>(cidx)];
        }
        for (auto& v : next) v /= deg;
        y.push_back(next);
    }
    std::vector<QSeries<Rat>> out;
    for (int r = 0; r < sys.rank; ++r) {
        QSeries<Rat> s = qseries_zero(n, Rat(0));
        for (int deg = 0; deg < n; ++deg) s.c[static_cast<std::size_t>(deg)] = y[static_cast<std::size_t>(deg)][static_cast<std::size_t>(r)];
        out.push_back(s);
    }
    return out;
}

// residual Delta*y' - B1*y of a candidate local solution, per component
inline std::vector<QSeries<Rat>> dsolve_residual(const OdeSystem& sys, const Rat& z0,
                                                 const std::vector<QSeries<Rat>>& y) {
    int n = y.empty() ? 0 : y[0].order() - 1;
    QSeries<Rat> dser = shift_expand(sys.delta, z0, n);
    std::vector<QSeries<Rat>> res;
    for (int r = 0; r < sys.rank; ++r) {
        QSeries<Rat> acc = dser * derivative(y[static_cast<std::size_t>(r)]);
        for (int j = 0; j < sys.rank; ++j)
            acc = acc - shift_expand(sys.b1.at(r, j), z0, n) * truncate(y[static_cast<std::size_t>(j)], n);
        res.push_back(acc);
    }
    return res;
}

inline ZpPoly zp_monomial_pow(const ZpPoly& base, unsigned long e, const Zm& one) {
    if (e == 0) return ZpPoly::constant(1, one);
    return poly_pow(base, e);
}

// Truncated Frobenius splitting: with U = sum_{m<p} (-1)^m (z-z0)^m A_m / m!,
// the cleared form of U' = -U A is  Delta*U~' + Delta'*U~ + U~*B1 = 0 mod p.
inline bool frobenius_U_check(const OdeSystem& sys, long p, const Rat& z0) {
    if (curvature_test(sys, p, 1) != Curvature::Zero)
        throw PreconditionFailed("frobenius_U_check: p-curvature must vanish");
    Mod mod = make_mod(static_cast<std::uint64_t>(p), 1);
    Zm one{1 % mod.q, mod};
    ZpPoly dp = reduce_poly(sys.delta, mod);
    Zm dz0 = eval_poly(dp, {reduce_mod(z0, mod)}, Zm{0, mod});
    if (is_zero(dz0)) throw PreconditionFailed("frobenius_U_check: Delta(z0) = 0 mod p");
    Mat<ZpPoly> b1p = reduce_matrix(sys.b1, mod);
    ZpPoly zshift = ZpPoly::variable(1, 0, one) - ZpPoly::constant(1, reduce_mod(z0, mod));

    Mat<ZpPoly> ident(sys.rank, sys.rank, ZpPoly(1));
    for (int i = 0; i < sys.rank; ++i) ident.at(i, i) = ZpPoly::constant(1, one);

    Mat<ZpPoly> U(sys.rank, sys.rank, ZpPoly(1));
    Mat<ZpPoly> B = ident;
    Zm factinv = one;
    Zm sign = one;
    ZpPoly dprime = derivative(dp, 0);
    for (long m = 0; m < p; ++m) {
        if (m > 0) {
            B = (m == 1) ? b1p : cleared_step(B, m - 1, dp, dprime, b1p, one);
            factinv = factinv / scalar_like(m, one);
            sign = -sign;
        }
        ZpPoly frontpoly = zp_monomial_pow(zshift, static_cast<unsigned long>(m), one) *
                           zp_monomial_pow(dp, static_cast<unsigned long>(p - 1 - m), one);
        U = U + scale(scale(B, frontpoly), sign * factinv);
    }
    Mat<ZpPoly> dU = map_entries(U, [](const ZpPoly& f) { return derivative(f, 0); });
    Mat<ZpPoly> lhs = scale(dU, dp) + scale(U, dprime) + U * b1p;
    return is_zero(lhs);
}

// scalar operator coefficients c_0..c_r back out of a companion system
inline std::vector<ZPoly> scalar_coeffs(const OdeSystem& sys) {
    std::vector<ZPoly> c;
    for (int j = 0; j < sys.rank; ++j) c.push_back(-sys.b1.at(sys.rank - 1, j));
    c.push_back(sys.delta);
    return c;
}

inline ZPoly stretch_var(const ZPoly& f, long s) {
    ZPoly out(1);
    out.terms = f.terms;
    for (auto& t : out.terms) t.e[0] = static_cast<std::uint16_t>(t.e[0] * s);
    out.sortin();
    return out;
}

// does substituting w = z^s into the source operator, acting on u(z^s),
// reproduce the target operator up to a monomial factor?
inline bool pullback_check(const std::vector<ZPoly>& target,
                           const std::vector<ZPoly>& source, long s) {
    if (target.size() != 3 || source.size() != 3)
        throw InvalidArgument("pullback_check: order-2 operators required");
    if (target[2].zero() || source[2].zero()) throw ZeroLeadingCoefficient();
    if (s < 1) throw InvalidArgument("pullback_check: s >= 1");
    const ZPoly& a0 = target[0];
    const ZPoly& a1 = target[1];
    const ZPoly& a2 = target[2];
    ZPoly s0 = stretch_var(source[0], s);
    ZPoly s1 = stretch_var(source[1], s);
    ZPoly s2 = stretch_var(source[2], s);
    if (s0.zero()) return false;
    auto mu_div = poly_divide(a0, s0);
    if (!mu_div.exact || mu_div.quotient.terms.size() != 1) return false;
    ZPoly mu = mu_div.quotient;

    Exps e2{};
    e2[0] = static_cast<std::uint16_t>(2 * s - 2);
    ZPoly lhs2 = a2 * ZPoly::monomial(1, e2, Rat(s * s));
    if (!(lhs2 == mu * s2)) return false;

    ZPoly lhs1(1);
    if (s > 1) {
        Exps e1a{};
        e1a[0] = static_cast<std::uint16_t>(s - 2);
        lhs1 = a2 * ZPoly::monomial(1, e1a, Rat(s * (s - 1)));
    }
    Exps e1b{};
    e1b[0] = static_cast<std::uint16_t>(s - 1);
    lhs1 = lhs1 + a1 * ZPoly::monomial(1, e1b, Rat(s));
    return lhs1 == mu * s1;
}

inline bool pullback_check(const OdeSystem& target, const std::vector<ZPoly>& source, long s) {
    if (target.rank != 2) throw InvalidArgument("pullback_check: order-2 operators required");
    return pullback_check(scalar_coeffs(target), source, s);
}

} // namespace adelab
