#pragma once

// Polynomial derivations over Q and over prime fields: Frobenius powers,
// collinearity scans, first integrals, principal-ideal reduction, the
// closed-form identity for the Frobenius power of the Ramanujan field, and
// Poincare linearization in characteristic p.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "modular.hpp"
#include "poly.hpp"
#include "pool.hpp"
#include "series.hpp"
#include "zmod.hpp"

namespace adelab {

template <class K>
struct Derivation {
    std::vector<std::string> vars;
    std::vector<SparsePoly<K>> comp;

    int nv() const { return static_cast<int>(comp.size()); }
};

using QDerivation = Derivation<Rat>;
using PDerivation = Derivation<Zm>;

template <class K>
SparsePoly<K> apply_derivation(const Derivation<K>& v, const SparsePoly<K>& f) {
    SparsePoly<K> out(f.nv);
    for (int i = 0; i < v.nv(); ++i) out = out + v.comp[i] * derivative(f, i);
    return out;
}

template <class K>
Derivation<K> operator+(const Derivation<K>& a, const Derivation<K>& b) {
    if (a.nv() != b.nv()) throw InvalidArgument("derivation add: component counts differ");
    Derivation<K> out;
    out.vars = a.vars;
    for (int i = 0; i < a.nv(); ++i) out.comp.push_back(a.comp[i] + b.comp[i]);
    return out;
}

inline QDerivation catalog(const std::string& name, const std::vector<Rat>& params = {}) {
    auto var = [](int nv, int i) { return SparsePoly<Rat>::variable(nv, i, Rat(1)); };
    if (name == "ramanujan-a") {
        auto t1 = var(3, 0), t2 = var(3, 1), t3 = var(3, 2);
        return {{"t1", "t2", "t3"},
                {t1 * t1 - t2 * make_rat(1, 12), (t1 * t2) * Rat(4) - t3 * Rat(6),
                 (t1 * t3) * Rat(6) - (t2 * t2) * make_rat(1, 3)}};
    }
    if (name == "ramanujan-e") {
        auto t1 = var(3, 0), t2 = var(3, 1), t3 = var(3, 2);
        return {{"t1", "t2", "t3"},
                {(t1 * t1 - t2) * make_rat(1, 12), (t1 * t2 - t3) * make_rat(1, 3),
                 (t1 * t3 - t2 * t2) * make_rat(1, 2)}};
    }
    if (name == "lorenz") {
        if (params.size() != 3) throw InvalidArgument("lorenz takes parameters (sigma, rho, beta)");
        const Rat &sg = params[0], &rho = params[1], &beta = params[2];
        auto x = var(3, 0), y = var(3, 1), z = var(3, 2);
        return {{"x", "y", "z"}, {(y - x) * sg, x * rho - x * z - y, x * y - z * beta}};
    }
    if (name == "modular4") {
        auto x2 = var(4, 0), x3 = var(4, 1), y2 = var(4, 2), y3 = var(4, 3);
        auto c16 = make_rat(1, 6);
        auto c13 = make_rat(1, 3);
        auto c14 = make_rat(1, 4);
        return {{"x2", "x3", "y2", "y3"},
                {x2 * Rat(2) - x3 * Rat(6) + ((x2 - y2) * x2) * c16,
                 x3 * Rat(3) - (x2 * x2) * c13 + ((x2 - y2) * x3) * c14,
                 -(y2 * Rat(2) - y3 * Rat(6) + ((y2 - x2) * y2) * c16),
                 -(y3 * Rat(3) - (y2 * y2) * c13 + ((y2 - x2) * y3) * c14)}};
    }
    if (name == "limitcycle") {
        auto x = var(2, 0), y = var(2, 1);
        return {{"x", "y"},
                {y * Rat(2) + (x * x) * make_rat(1, 2),
                 (x * x) * Rat(3) - SparsePoly<Rat>::constant(2, Rat(3)) + y * make_rat(9, 10)}};
    }
    throw UnknownName("catalog: " + name);
}

inline bool denominator_divisible(const SparsePoly<Rat>& f, long p) {
    for (auto& t : f.terms)
        if (den(t.c) % p == 0) return true;
    return false;
}

inline bool ring_prime_for(const QDerivation& v, long p) {
    for (auto& c : v.comp)
        if (denominator_divisible(c, p)) return true;
    return false;
}

inline PDerivation reduce_derivation(const QDerivation& v, long p) {
    Mod m = make_mod(p, 1);
    PDerivation out;
    out.vars = v.vars;
    for (auto& c : v.comp)
        out.comp.push_back(c.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); }));
    return out;
}

// (v^p)(x_i) by p successive applications of v
inline PDerivation frobenius_power(const PDerivation& v, long p) {
    for (auto& c : v.comp)
        for (auto& t : c.terms)
            if (t.c.m.q != static_cast<std::uint64_t>(p) || t.c.m.k != 1)
                throw InvalidArgument("frobenius_power: components are not over the named prime field");
    PDerivation out;
    out.vars = v.vars;
    for (int i = 0; i < v.nv(); ++i) {
        SparsePoly<Zm> f = v.comp[i];
        for (long it = 1; it < p; ++it) f = apply_derivation(v, f);
        out.comp.push_back(f);
    }
    return out;
}

enum class Collin { RingPrime, Collinear, NotCollinear };

struct CollinearityReport {
    long p = 0;
    Collin cls = Collin::RingPrime;
    int wi = -1, wj = -1;
    SparsePoly<Zm> witness;

    bool has_witness() const { return cls == Collin::NotCollinear; }
};

// Collinearity of v and v^p mod p, tested on all coordinate-pair minors of
// the 2 x n component matrix, either identically or at a given point.
inline CollinearityReport is_pclosed(const QDerivation& v, long p,
                                     const std::optional<std::vector<Rat>>& point = std::nullopt) {
    CollinearityReport rep;
    rep.p = p;
    if (ring_prime_for(v, p)) {
        rep.cls = Collin::RingPrime;
        return rep;
    }
    Mod m = make_mod(p, 1);
    auto vr = reduce_derivation(v, p);
    auto wr = frobenius_power(vr, p);
    int n = vr.nv();
    if (point) {
        if (static_cast<int>(point->size()) != n)
            throw InvalidArgument("is_pclosed: point dimension mismatch");
        std::vector<Zm> xs;
        for (auto& c : *point) xs.push_back(reduce_mod(c, m));
        std::vector<Zm> a, b;
        for (int i = 0; i < n; ++i) {
            a.push_back(eval_poly(vr.comp[i], xs, Zm{0, m}));
            b.push_back(eval_poly(wr.comp[i], xs, Zm{0, m}));
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Zm d = a[i] * b[j] - a[j] * b[i];
                if (!is_zero(d)) {
                    rep.cls = Collin::NotCollinear;
                    rep.wi = i;
                    rep.wj = j;
                    rep.witness = SparsePoly<Zm>::constant(n, d);
                    return rep;
                }
            }
        rep.cls = Collin::Collinear;
        return rep;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto minor = vr.comp[i] * wr.comp[j] - vr.comp[j] * wr.comp[i];
            if (!is_zero(minor)) {
                rep.cls = Collin::NotCollinear;
                rep.wi = i;
                rep.wj = j;
                rep.witness = minor;
                return rep;
            }
        }
    rep.cls = Collin::Collinear;
    return rep;
}

inline std::vector<CollinearityReport> pclosed_scan(
    const QDerivation& v, long pmax,
    const std::optional<std::vector<Rat>>& point = std::nullopt) {
    if (pmax < 2) throw InvalidArgument("pclosed_scan: pmax must be at least 2");
    auto ps = primes_upto(pmax);
    return parallel_map_ordered(ps, [&](long p) { return is_pclosed(v, p, point); });
}

template <class K>
bool first_integral_check(const Derivation<K>& v, const SparsePoly<K>& f) {
    if (f.nv != v.nv()) throw InvalidArgument("first_integral_check: variable counts differ");
    return is_zero(apply_derivation(v, f));
}

template <class K>
struct PrincipalReduction {
    bool divisible = false;
    SparsePoly<K> quotient;
    SparsePoly<K> remainder;
};

// Substitute away the listed variables, then divide by g; an exact division
// certifies membership in the ideal generated by g and the elimination
// relations x_i - replacement_i.
template <class K>
PrincipalReduction<K> reduce_by_principal(const SparsePoly<K>& f,
                                          const std::vector<std::pair<int, SparsePoly<K>>>& elim,
                                          const SparsePoly<K>& g) {
    SparsePoly<K> cur = f;
    for (auto& [i, rep] : elim) {
        if (rep.degree_in(i) > 0)
            throw InvalidArgument("reduce_by_principal: replacement mentions the eliminated variable");
        cur = substitute(cur, i, rep);
    }
    auto d = poly_divide_exact(cur, g);
    return {d.exact, d.quotient, d.remainder};
}

// embed a polynomial in (t2, t3) into (t1, t2, t3)
inline SparsePoly<Rat> lift_t2t3(const SparsePoly<Rat>& f) {
    SparsePoly<Rat> out(3);
    for (auto& t : f.terms) {
        Exps e{};
        e[1] = t.e[0];
        e[2] = t.e[1];
        out.terms.push_back({e, t.c});
    }
    out.sortin();
    return out;
}

// v^p = A^2 v - (B/12 + t1 A)^2 d/dt1 + A (B/12 + t1 A) h for the weight
// field h = 2t1 d/dt1 + 4t2 d/dt2 + 6t3 d/dt3, componentwise over F_p
inline bool bianchini_check(long p) {
    if (p == 2 || p == 3 || !is_prime(Int(p)))
        throw InvalidArgument("bianchini_check: need a prime different from 2 and 3");
    auto ab = ab_polynomials(p);
    Mod m = make_mod(p, 1);
    auto red = [&](const SparsePoly<Rat>& f) {
        return f.map_coeffs([&](const Rat& x) { return reduce_mod(x, m); });
    };
    auto v = reduce_derivation(catalog("ramanujan-a"), p);
    auto vp = frobenius_power(v, p);
    auto a = red(lift_t2t3(ab.a));
    auto b = red(lift_t2t3(ab.b));
    Zm one{1, m};
    auto t1 = SparsePoly<Zm>::variable(3, 0, one);
    auto t2 = SparsePoly<Zm>::variable(3, 1, one);
    auto t3 = SparsePoly<Zm>::variable(3, 2, one);
    auto f = b * reduce_mod(make_rat(1, 12), m) + t1 * a;
    std::vector<SparsePoly<Zm>> h = {t1 * scalar_like(2, one), t2 * scalar_like(4, one),
                                     t3 * scalar_like(6, one)};
    for (int i = 0; i < 3; ++i) {
        auto rhs = a * a * v.comp[i] - a * f * h[i];
        if (i == 0) rhs = rhs + f * f;
        if (!(vp.comp[i] == rhs)) return false;
    }
    return true;
}

// a(q) d/dq acting on a truncated expansion; sound as long as a(0) = 0
inline QSeries<Zm> apply_1d(const QSeries<Zm>& a, const QSeries<Zm>& f) {
    int n = std::min(a.order(), f.order());
    if (n > 0 && !is_zero(a.c[0]))
        throw InvalidArgument("apply_1d: coefficient must vanish at the origin");
    auto fp = derivative(truncate(f, n));
    fp.c.resize(static_cast<std::size_t>(n), zero_like(a.c[0]));
    return truncate(a, n) * fp;
}

// Straightening coordinate for v = a(q) d/dq with a = lambda q + ..., built
// as -sum_{i=1}^{p-1} (lambda^{-1} v)^i q; valid exactly when v^p = v.
inline QSeries<Zm> linearize_1d(const QSeries<Zm>& a, const Zm& lambda, int order) {
    if (is_zero(lambda)) throw InvalidArgument("linearize_1d: lambda must be nonzero");
    if (lambda.m.k != 1) throw InvalidArgument("linearize_1d: works over a prime field");
    long p = static_cast<long>(lambda.m.q);
    int n = order + 1;
    QSeries<Zm> aa = truncate(a, n);
    if (aa.order() < 2 || !is_zero(aa.at(0)) || !(aa.at(1) == lambda))
        throw InvalidArgument("linearize_1d: expansion must start at lambda q");
    aa.c.resize(static_cast<std::size_t>(n), zero_like(lambda));

    QSeries<Zm> vk = aa;
    for (long i = 1; i < p; ++i) vk = apply_1d(aa, vk);
    if (!is_zero(vk - aa))
        throw NotIdempotent("linearize_1d: the field is not fixed by its Frobenius power");

    Zm linv = zm_inv(lambda);
    QSeries<Zm> q = qseries_zero(n, zero_like(lambda));
    q.at(1) = Zm{1, lambda.m};
    QSeries<Zm> cur = q, f = qseries_zero(n, zero_like(lambda));
    for (long i = 1; i <= p - 1; ++i) {
        cur = apply_1d(aa, cur) * linv;
        f = f - cur;
    }
    if (!is_zero(apply_1d(aa, f) - f * lambda))
        throw CertificateViolation("linearize_1d: output fails its defining identity");
    if (!is_zero(f.at(0)) || !(f.at(1) == Zm{1, lambda.m}))
        throw CertificateViolation("linearize_1d: output is not tangent to the identity");
    return f;
}

// Straightening change of coordinates for v with linear part A x, A^{p-1} = I:
// f = -(v^{p-1} x + A v^{p-2} x + ... + A^{p-2} v x), total degree capped.
inline std::vector<SparsePoly<Zm>> linearize_nd(const PDerivation& v, const Mat<Zm>& a,
                                                long order) {
    int n = v.nv();
    if (a.rows != n || a.cols != n) throw InvalidArgument("linearize_nd: matrix shape mismatch");
    Mod m{};
    bool have = false;
    for (int i = 0; i < n && !have; ++i)
        for (int j = 0; j < n && !have; ++j) {
            m = a.at(i, j).m;
            have = true;
        }
    if (!have || m.k != 1) throw InvalidArgument("linearize_nd: works over a prime field");
    long p = static_cast<long>(m.q);
    Zm one{1, m}, zero{0, m};

    Mat<Zm> id(n, n, zero);
    for (int i = 0; i < n; ++i) id.at(i, i) = one;
    Mat<Zm> acc = id;
    for (long i = 0; i < p - 1; ++i) acc = acc * a;
    if (!(acc == id)) throw BadLinearPart("linearize_nd: matrix power p-1 is not the identity");

    for (int i = 0; i < n; ++i) {
        auto lin = drop_above(v.comp[i], 1);
        SparsePoly<Zm> expect(n);
        for (int j = 0; j < n; ++j)
            expect = expect + SparsePoly<Zm>::variable(n, j, one) * a.at(i, j);
        if (!(lin == expect))
            throw InvalidArgument("linearize_nd: linear part of the field differs from the matrix");
    }

    // v^j applied to the coordinate vector, degree-capped
    std::vector<std::vector<SparsePoly<Zm>>> vjx;
    vjx.push_back(v.comp);
    for (auto& c : vjx[0]) c = drop_above(c, order);
    for (long j = 2; j <= p; ++j) {
        std::vector<SparsePoly<Zm>> next;
        for (auto& c : vjx.back()) next.push_back(drop_above(apply_derivation(v, c), order));
        vjx.push_back(std::move(next));
    }
    for (int i = 0; i < n; ++i)
        if (!(vjx[static_cast<std::size_t>(p - 1)][i] == vjx[0][i]))
            throw NotIdempotent("linearize_nd: the field is not fixed by its Frobenius power");

    std::vector<SparsePoly<Zm>> f(static_cast<std::size_t>(n), SparsePoly<Zm>(n));
    Mat<Zm> apow = id;
    for (long s = 0; s <= p - 2; ++s) {
        auto& u = vjx[static_cast<std::size_t>(p - 2 - s)]; // v^{p-1-s} x
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f[i] = f[i] - u[j] * apow.at(i, j);
        apow = apow * a;
    }

    for (int i = 0; i < n; ++i) {
        auto lhs = drop_above(apply_derivation(v, f[i]), order);
        SparsePoly<Zm> rhs(n);
        for (int j = 0; j < n; ++j) rhs = rhs + f[j] * a.at(i, j);
        if (!(lhs == drop_above(rhs, order)))
            throw CertificateViolation("linearize_nd: output fails its defining identity");
        if (!(drop_above(f[i], 1) == SparsePoly<Zm>::variable(n, i, one)))
            throw CertificateViolation("linearize_nd: linear part of the output is not the identity");
    }
    return f;
}

} // namespace adelab
