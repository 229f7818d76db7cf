#pragma once

// Exact scalar arithmetic: big rationals, p-adic valuations, primes,
// Bernoulli numbers, rising factorials and the bracket <r>.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace adelab {

using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& x) { return x.get_num(); }
inline Int den(const Rat& x) { return x.get_den(); }
inline Rat zero_like(const Rat&) { return Rat(0); }

inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw InvalidArgument("make_rat: zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

inline std::vector<long> primes_upto(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> sieve(n + 1, true);
    for (long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long j = 2 * i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

// Valuation with +infinity for 0; infinite valuations compare above all
// finite ones so min-reports work without a special case.
struct PVal {
    bool infinite = false;
    long v = 0;

    static PVal inf() { return PVal{true, 0}; }
    static PVal fin(long v) { return PVal{false, v}; }
    bool operator==(const PVal& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
    bool operator<(const PVal& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return v < o.v;
    }
};

inline long int_valuation(Int n, const Int& p) {
    if (n == 0) throw InvalidArgument("valuation of 0");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline PVal padic_valuation(const Rat& x, const Int& p) {
    if (!is_prime(p)) throw InvalidArgument("padic_valuation: p not prime");
    if (x == 0) return PVal::inf();
    return PVal::fin(int_valuation(num(x), p) - int_valuation(den(x), p));
}

// ord_p(m!) by Legendre's formula.
inline long factorial_valuation(long m, long p) {
    long v = 0;
    for (long q = p; q <= m; q *= p) {
        v += m / q;
        if (q > m / p) break;
    }
    return v;
}

// Smallest m with ord_p(m!) >= k.  ord_p(m!) only jumps at multiples of p,
// so the answer is a multiple of p; start from the lower bound (p-1)k.
inline long mpk(long p, long k) {
    long m = ((p - 1) * k + p - 1) / p * p;
    while (factorial_valuation(m, p) < k) m += p;
    return m;
}

namespace detail {
inline std::mutex bernoulli_mutex;
inline std::vector<Rat> bernoulli_cache;
} // namespace detail

// B_k from sum_{j<=k} C(k+1,j) B_j = 0, B_0 = 1 (so B_1 = -1/2).
inline Rat bernoulli(unsigned long k) {
    std::lock_guard<std::mutex> lock(detail::bernoulli_mutex);
    auto& cache = detail::bernoulli_cache;
    if (cache.empty()) cache.push_back(Rat(1));
    while (cache.size() <= k) {
        unsigned long n = cache.size();
        Rat acc(0);
        for (unsigned long j = 0; j < n; ++j)
            acc += Rat(binomial(Int(n + 1), j)) * cache[j];
        cache.push_back(-acc / Rat(binomial(Int(n + 1), n)));
    }
    return cache[k];
}

inline Rat pochhammer_rising(const Rat& x, unsigned long m) {
    Rat r(1), f(x);
    for (unsigned long i = 0; i < m; ++i) {
        r *= f;
        f += 1;
    }
    return r;
}

inline Int floor_int(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
    return q;
}

struct FractionalBracket {
    Int integer_part;
    Rat fractional_part;
    Rat bracket;
};

// <r> = (r-1)(r-2)...({r}+1){r}, descending per the defining display;
// the rising-factorial identity <r> = ({r})_{[r]} is asserted on the way out.
inline FractionalBracket fractional_bracket(const Rat& r) {
    if (r <= 0) throw InvalidArgument("fractional_bracket: r must be positive");
    FractionalBracket out;
    out.integer_part = floor_int(r);
    out.fractional_part = r - Rat(out.integer_part);
    Rat prod(1);
    for (Int i = 1; i <= out.integer_part; ++i) prod *= r - Rat(i);
    out.bracket = prod;
    if (out.bracket != pochhammer_rising(out.fractional_part,
                                         out.integer_part.get_ui()))
        throw Error("fractional_bracket: rising-factorial identity failed");
    return out;
}

inline Int sigma_power(unsigned long n, unsigned long k) {
    Int s(0);
    for (unsigned long d = 1; d <= n; ++d)
        if (n % d == 0) s += int_pow(Int(d), k);
    return s;
}

// Prime factorization: trial division, then Pollard rho on what remains.
namespace detail {
inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return Int(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xADE1ABul);
    while (true) {
        Int x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1, d(1);
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}
} // namespace detail

inline void factor_into(Int n, std::map<Int, long>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (long p = 2; p < 100000 && Int(p) * p <= n; p == 2 ? p = 3 : p += 2) {
        while (n % p == 0) {
            ++out[Int(p)];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = detail::pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

inline std::map<Int, long> factor(const Int& n) {
    std::map<Int, long> out;
    factor_into(n, out);
    return out;
}

} // namespace adelab
