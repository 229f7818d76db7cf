#pragma once

// Sparse multivariate polynomials over an exact scalar ring.
// Canonical form: terms sorted descending in graded lex (total degree first,
// then earlier variables more significant), no zero coefficients, no
// duplicate exponent vectors.  Everything downstream (division, reports,
// golden files) relies on this one fixed order.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "zmod.hpp"

namespace adelab {

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline Rat scalar_like(long n, const Rat&) { return Rat(n); }
inline Zm scalar_like(long n, const Zm& ctx) {
    long r = n % static_cast<long>(ctx.m.q);
    if (r < 0) r += static_cast<long>(ctx.m.q);
    return Zm{static_cast<std::uint64_t>(r), ctx.m};
}

constexpr int kMaxVars = 12;
using Exps = std::array<std::uint16_t, kMaxVars>;

inline long exps_total(const Exps& e) {
    long t = 0;
    for (auto x : e) t += x;
    return t;
}

// true when a > b in graded lex
inline bool exps_after(const Exps& a, const Exps& b) {
    long ta = exps_total(a), tb = exps_total(b);
    if (ta != tb) return ta > tb;
    return a > b;
}

struct ExpsHash {
    std::size_t operator()(const Exps& e) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

template <class K>
struct Term {
    Exps e{};
    K c{};
};

template <class K>
class SparsePoly {
public:
    int nv = 1;
    std::vector<Term<K>> terms;

    SparsePoly() = default;
    explicit SparsePoly(int nvars) : nv(nvars) {
        if (nvars < 1 || nvars > kMaxVars)
            throw InvalidArgument("SparsePoly: variable count out of range");
    }

    static SparsePoly constant(int nv, const K& c) {
        SparsePoly p(nv);
        if (!is_zero(c)) p.terms.push_back({Exps{}, c});
        return p;
    }

    static SparsePoly monomial(int nv, const Exps& e, const K& c) {
        SparsePoly p(nv);
        if (!is_zero(c)) p.terms.push_back({e, c});
        return p;
    }

    static SparsePoly variable(int nv, int i, const K& one) {
        Exps e{};
        e[i] = 1;
        return monomial(nv, e, one);
    }

    bool zero() const { return terms.empty(); }

    long total_degree() const {
        long d = -1;
        for (auto& t : terms) d = std::max(d, exps_total(t.e));
        return d;
    }

    long degree_in(int i) const {
        long d = -1;
        for (auto& t : terms) d = std::max<long>(d, t.e[i]);
        return d;
    }

    const Term<K>& leading_term() const {
        if (terms.empty()) throw InvalidArgument("leading_term of zero");
        return terms.front();
    }

    // coefficient of x_i^e, as a polynomial in the remaining variables
    SparsePoly coeff_in_var(int i, long e) const {
        SparsePoly out(nv);
        for (auto& t : terms)
            if (t.e[i] == e) {
                Term<K> s = t;
                s.e[i] = 0;
                out.terms.push_back(s);
            }
        out.sortin();
        return out;
    }

    K coeff_at(const Exps& e, const K& zero) const {
        for (auto& t : terms)
            if (t.e == e) return t.c;
        return zero;
    }

    void sortin() {
        std::sort(terms.begin(), terms.end(),
                  [](const Term<K>& a, const Term<K>& b) { return exps_after(a.e, b.e); });
    }

    static SparsePoly collect(int nv, std::vector<Term<K>>&& raw) {
        std::sort(raw.begin(), raw.end(),
                  [](const Term<K>& a, const Term<K>& b) { return exps_after(a.e, b.e); });
        SparsePoly out(nv);
        for (auto& t : raw) {
            if (!out.terms.empty() && out.terms.back().e == t.e)
                out.terms.back().c = out.terms.back().c + t.c;
            else
                out.terms.push_back(t);
        }
        out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                       [](const Term<K>& t) { return is_zero(t.c); }),
                        out.terms.end());
        return out;
    }

    template <class F>
    auto map_coeffs(F f) const -> SparsePoly<decltype(f(std::declval<K>()))> {
        using K2 = decltype(f(std::declval<K>()));
        SparsePoly<K2> out(nv);
        for (auto& t : terms) {
            K2 c = f(t.c);
            if (!is_zero(c)) out.terms.push_back({t.e, c});
        }
        return out;
    }

    // weighted degree when weighted-homogeneous, nullopt otherwise
    std::optional<long> homogeneous_weight(const std::vector<long>& w) const {
        std::optional<long> deg;
        for (auto& t : terms) {
            long d = 0;
            for (int i = 0; i < nv; ++i) d += w[i] * t.e[i];
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
        return deg;
    }
};

template <class K>
bool is_zero(const SparsePoly<K>& p) {
    return p.terms.empty();
}

template <class K>
SparsePoly<K> zero_like(const SparsePoly<K>& p) {
    return SparsePoly<K>(p.nv);
}

template <class K>
bool operator==(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    if (a.nv != b.nv || a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (!(a.terms[i].e == b.terms[i].e) || !(a.terms[i].c == b.terms[i].c))
            return false;
    return true;
}

template <class K>
SparsePoly<K> operator+(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    if (a.nv != b.nv) throw InvalidArgument("poly add: variable counts differ");
    std::vector<Term<K>> raw;
    raw.reserve(a.terms.size() + b.terms.size());
    raw.insert(raw.end(), a.terms.begin(), a.terms.end());
    raw.insert(raw.end(), b.terms.begin(), b.terms.end());
    return SparsePoly<K>::collect(a.nv, std::move(raw));
}

template <class K>
SparsePoly<K> operator-(const SparsePoly<K>& a) {
    SparsePoly<K> out(a.nv);
    out.terms = a.terms;
    for (auto& t : out.terms) t.c = -t.c;
    return out;
}

template <class K>
SparsePoly<K> operator-(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    return a + (-b);
}

template <class K>
SparsePoly<K> operator*(const SparsePoly<K>& a, const SparsePoly<K>& b) {
    if (a.nv != b.nv) throw InvalidArgument("poly mul: variable counts differ");
    std::unordered_map<Exps, K, ExpsHash> acc;
    acc.reserve(a.terms.size() + b.terms.size());
    for (auto& ta : a.terms)
        for (auto& tb : b.terms) {
            Exps e;
            for (int i = 0; i < kMaxVars; ++i)
                e[i] = static_cast<std::uint16_t>(ta.e[i] + tb.e[i]);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(e, ta.c * tb.c);
            else
                it->second = it->second + ta.c * tb.c;
        }
    std::vector<Term<K>> raw;
    raw.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!is_zero(c)) raw.push_back({e, c});
    return SparsePoly<K>::collect(a.nv, std::move(raw));
}

template <class K>
SparsePoly<K> operator*(const SparsePoly<K>& a, const K& s) {
    SparsePoly<K> out(a.nv);
    if (is_zero(s)) return out;
    out.terms = a.terms;
    for (auto& t : out.terms) t.c = t.c * s;
    out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                   [](const Term<K>& t) { return is_zero(t.c); }),
                    out.terms.end());
    return out;
}

template <class K>
SparsePoly<K> derivative(const SparsePoly<K>& a, int i) {
    SparsePoly<K> out(a.nv);
    for (auto& t : a.terms) {
        if (t.e[i] == 0) continue;
        Term<K> s = t;
        s.c = t.c * scalar_like(t.e[i], t.c);
        s.e[i] = static_cast<std::uint16_t>(t.e[i] - 1);
        if (!is_zero(s.c)) out.terms.push_back(s);
    }
    out.sortin();
    return out;
}

template <class K>
SparsePoly<K> poly_pow(const SparsePoly<K>& a, unsigned long e) {
    if (e == 0) {
        if (a.zero()) throw InvalidArgument("poly_pow: zeroth power of zero");
        return SparsePoly<K>::constant(a.nv, scalar_like(1, a.terms.front().c));
    }
    SparsePoly<K> base = a;
    std::optional<SparsePoly<K>> acc;
    while (e) {
        if (e & 1) acc = acc ? *acc * base : base;
        e >>= 1;
        if (e) base = base * base;
    }
    return *acc;
}

template <class K>
K eval_poly(const SparsePoly<K>& a, const std::vector<K>& xs, const K& zero) {
    K acc = zero;
    for (auto& t : a.terms) {
        K v = t.c;
        for (int i = 0; i < a.nv; ++i)
            for (int j = 0; j < t.e[i]; ++j) v = v * xs[i];
        acc = acc + v;
    }
    return acc;
}

// substitute x_i := g
template <class K>
SparsePoly<K> substitute(const SparsePoly<K>& a, int i, const SparsePoly<K>& g) {
    if (a.nv != g.nv) throw InvalidArgument("substitute: variable counts differ");
    if (a.degree_in(i) <= 0) return a;
    std::vector<SparsePoly<K>> gpow;
    SparsePoly<K> out(a.nv);
    for (auto& t : a.terms) {
        long e = t.e[i];
        Term<K> base = t;
        base.e[i] = 0;
        SparsePoly<K> piece = SparsePoly<K>::monomial(a.nv, base.e, base.c);
        if (e > 0) {
            while (static_cast<long>(gpow.size()) < e)
                gpow.push_back(gpow.empty() ? g : gpow.back() * g);
            piece = piece * gpow[e - 1];
        }
        out = out + piece;
    }
    return out;
}

template <class K>
struct DivisionResult {
    SparsePoly<K> quotient;
    SparsePoly<K> remainder;
    bool exact = false;
};

// Single-divisor multivariate division in the fixed graded-lex order.
// One divisor is a Groebner basis of the principal ideal it generates, so
// exactness of the remainder is a genuine membership certificate.
template <class K>
DivisionResult<K> poly_divide(const SparsePoly<K>& f, const SparsePoly<K>& g) {
    if (g.zero()) throw DivisionByZeroPoly();
    DivisionResult<K> res{SparsePoly<K>(f.nv), SparsePoly<K>(f.nv), false};
    SparsePoly<K> cur = f;
    const Term<K>& lg = g.leading_term();
    std::vector<Term<K>> qterms, rterms;
    while (!cur.zero()) {
        const Term<K>& lt = cur.leading_term();
        bool divisible = true;
        for (int i = 0; i < cur.nv; ++i)
            if (lt.e[i] < lg.e[i]) {
                divisible = false;
                break;
            }
        if (divisible) {
            Term<K> q;
            for (int i = 0; i < kMaxVars; ++i)
                q.e[i] = static_cast<std::uint16_t>(lt.e[i] - lg.e[i]);
            q.c = lt.c / lg.c;
            qterms.push_back(q);
            cur = cur - SparsePoly<K>::monomial(f.nv, q.e, q.c) * g;
        } else {
            rterms.push_back(lt);
            cur.terms.erase(cur.terms.begin());
        }
    }
    res.quotient = SparsePoly<K>::collect(f.nv, std::move(qterms));
    res.remainder = SparsePoly<K>::collect(f.nv, std::move(rterms));
    res.exact = res.remainder.zero();
    return res;
}

template <class K>
DivisionResult<K> poly_divide_exact(const SparsePoly<K>& f, const SparsePoly<K>& g) {
    return poly_divide(f, g);
}

inline std::string coeff_str(const Rat& c) {
    std::string s = num(c).get_str();
    if (den(c) != 1) s += "/" + den(c).get_str();
    return s;
}

inline std::string coeff_str(const Zm& c) { return std::to_string(c.v); }

template <class K>
std::string poly_str(const SparsePoly<K>& p, const std::vector<std::string>& vars) {
    if (p.terms.empty()) return "0";
    std::string out;
    for (auto& t : p.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (int i = 0; i < p.nv; ++i) {
            if (t.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (t.e[i] > 1) mono += "^" + std::to_string(t.e[i]);
        }
        std::string c = coeff_str(t.c);
        if (mono.empty())
            out += c;
        else if (c == "1")
            out += mono;
        else
            out += c + "*" + mono;
    }
    return out;
}

} // namespace adelab
