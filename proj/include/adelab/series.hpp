#pragma once

// Truncated power series: dense in one variable (q-expansions, local ODE
// solutions) and total-degree-truncated sparse form in several variables.

#include <map>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "poly.hpp"

namespace adelab {

inline Rat inv_of(const Rat& x) {
    if (is_zero(x)) throw InvalidArgument("inverse of zero");
    return Rat(1) / x;
}
inline Zm inv_of(const Zm& x) { return zm_inv(x); }

// Coefficients c[0..n-1] of a series known modulo q^n.
template <class K>
struct QSeries {
    std::vector<K> c;

    int order() const { return static_cast<int>(c.size()); }
    const K& at(int i) const { return c[static_cast<std::size_t>(i)]; }
    K& at(int i) { return c[static_cast<std::size_t>(i)]; }
};

template <class K>
QSeries<K> qseries_zero(int order, const K& zero) {
    QSeries<K> s;
    s.c.assign(static_cast<std::size_t>(order), zero);
    return s;
}

template <class K>
QSeries<K> qseries_const(int order, const K& value, const K& zero) {
    auto s = qseries_zero(order, zero);
    if (order > 0) s.c[0] = value;
    return s;
}

template <class K>
QSeries<K> truncate(const QSeries<K>& a, int n) {
    QSeries<K> s = a;
    if (s.order() > n) s.c.resize(static_cast<std::size_t>(n));
    return s;
}

template <class K>
QSeries<K> operator+(const QSeries<K>& a, const QSeries<K>& b) {
    int n = std::min(a.order(), b.order());
    QSeries<K> s = truncate(a, n);
    for (int i = 0; i < n; ++i) s.c[i] = s.c[i] + b.c[i];
    return s;
}

template <class K>
QSeries<K> operator-(const QSeries<K>& a) {
    QSeries<K> s = a;
    for (auto& x : s.c) x = -x;
    return s;
}

template <class K>
QSeries<K> operator-(const QSeries<K>& a, const QSeries<K>& b) {
    return a + (-b);
}

template <class K>
QSeries<K> operator*(const QSeries<K>& a, const QSeries<K>& b) {
    int n = std::min(a.order(), b.order());
    if (n <= 0) return QSeries<K>{};
    QSeries<K> s = qseries_zero(n, zero_like(a.c[0]));
    for (int i = 0; i < n; ++i) {
        if (is_zero(a.c[i])) continue;
        for (int j = 0; i + j < n; ++j) s.c[i + j] = s.c[i + j] + a.c[i] * b.c[j];
    }
    return s;
}

template <class K>
QSeries<K> operator*(const QSeries<K>& a, const K& x) {
    QSeries<K> s = a;
    for (auto& v : s.c) v = v * x;
    return s;
}

template <class K>
bool is_zero(const QSeries<K>& a) {
    for (auto& v : a.c)
        if (!is_zero(v)) return false;
    return true;
}

template <class K>
QSeries<K> derivative(const QSeries<K>& a) {
    int n = a.order();
    if (n <= 1) return QSeries<K>{};
    QSeries<K> s;
    s.c.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) s.c.push_back(a.c[i] * scalar_like(i, a.c[i]));
    return s;
}

// multiply by q^m, preserving the truncation order
template <class K>
QSeries<K> shift_up(const QSeries<K>& a, int m, const K& zero) {
    QSeries<K> s = qseries_zero(a.order(), zero);
    for (int i = 0; i + m < a.order(); ++i) s.c[i + m] = a.c[i];
    return s;
}

template <class K>
QSeries<K> series_inverse(const QSeries<K>& a) {
    if (a.order() == 0 || is_zero(a.c[0]))
        throw DivisionByZeroPoly("series inverse needs a unit constant term");
    int n = a.order();
    K g0 = inv_of(a.c[0]);
    QSeries<K> s = qseries_zero(n, zero_like(a.c[0]));
    s.c[0] = g0;
    for (int k = 1; k < n; ++k) {
        K acc = zero_like(a.c[0]);
        for (int j = 1; j <= k; ++j) acc = acc + a.c[j] * s.c[k - j];
        s.c[k] = -(g0 * acc);
    }
    return s;
}

// f/g allowing g to vanish at 0: strips the common q-valuation of g.
template <class K>
QSeries<K> series_divide(const QSeries<K>& f, const QSeries<K>& g) {
    int v = 0;
    while (v < g.order() && is_zero(g.c[v])) ++v;
    if (v == g.order()) throw DivisionByZeroPoly("series division by zero");
    for (int i = 0; i < v && i < f.order(); ++i)
        if (!is_zero(f.c[i]))
            throw InvalidArgument("series division: quotient not a power series");
    QSeries<K> fs, gs;
    for (int i = v; i < f.order(); ++i) fs.c.push_back(f.c[i]);
    for (int i = v; i < g.order(); ++i) gs.c.push_back(g.c[i]);
    int n = std::min(fs.order(), gs.order());
    return truncate(fs, n) * series_inverse(truncate(gs, n));
}

// univariate polynomial (in one of its variables = the only one) -> series at 0
template <class K>
QSeries<K> poly_to_series(const SparsePoly<K>& p, int order, const K& zero) {
    QSeries<K> s = qseries_zero(order, zero);
    for (auto& t : p.terms)
        if (t.e[0] < order) s.c[t.e[0]] = t.c;
    return s;
}

// evaluate a polynomial at series arguments, with per-variable power caching
template <class K>
QSeries<K> eval_poly_series(const SparsePoly<K>& p, const std::vector<QSeries<K>>& xs,
                            int order, const K& zero) {
    QSeries<K> acc = qseries_zero(order, zero);
    std::vector<std::vector<QSeries<K>>> pows(xs.size());
    auto power = [&](int i, int e) -> const QSeries<K>& {
        auto& cache = pows[static_cast<std::size_t>(i)];
        while (static_cast<int>(cache.size()) < e)
            cache.push_back(cache.empty() ? truncate(xs[i], order)
                                          : cache.back() * truncate(xs[i], order));
        return cache[static_cast<std::size_t>(e - 1)];
    };
    for (auto& t : p.terms) {
        QSeries<K> v = qseries_const(order, t.c, zero);
        for (int i = 0; i < p.nv; ++i)
            if (t.e[i] > 0) v = v * power(i, t.e[i]);
        acc = acc + v;
    }
    return acc;
}

inline std::map<Int, PVal> p_integrality_report(const QSeries<Rat>& s,
                                                const std::vector<Int>& primes) {
    std::map<Int, PVal> out;
    for (auto& p : primes) {
        PVal best = PVal::inf();
        for (auto& c : s.c) best = std::min(best, padic_valuation(c, p));
        out[p] = best;
    }
    return out;
}

// Multivariate series: a polynomial carrying its inclusive truncation degree.
// Terms of total degree > trunc are meaningless and always dropped.
template <class K>
struct MSeries {
    SparsePoly<K> poly;
    long trunc = 0;
};

template <class K>
SparsePoly<K> drop_above(const SparsePoly<K>& p, long deg) {
    SparsePoly<K> out(p.nv);
    for (auto& t : p.terms)
        if (exps_total(t.e) <= deg) out.terms.push_back(t);
    return out;
}

template <class K>
MSeries<K> mseries(const SparsePoly<K>& p, long trunc) {
    return MSeries<K>{drop_above(p, trunc), trunc};
}

template <class K>
MSeries<K> operator+(const MSeries<K>& a, const MSeries<K>& b) {
    long t = std::min(a.trunc, b.trunc);
    return mseries(a.poly + b.poly, t);
}

template <class K>
MSeries<K> operator-(const MSeries<K>& a, const MSeries<K>& b) {
    long t = std::min(a.trunc, b.trunc);
    return mseries(a.poly - b.poly, t);
}

template <class K>
MSeries<K> operator*(const MSeries<K>& a, const MSeries<K>& b) {
    long t = std::min(a.trunc, b.trunc);
    return mseries(a.poly * b.poly, t);
}

} // namespace adelab
