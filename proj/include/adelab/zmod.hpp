#pragma once

// Residue arithmetic in Z/p^k with the modulus carried by every value.
// Mixing moduli is a programming error, not a data error: it aborts.

#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "arith.hpp"
#include "errors.hpp"

namespace adelab {

struct Mod {
    std::uint64_t p = 0;
    std::uint32_t k = 0;
    std::uint64_t q = 0; // p^k

    bool operator==(const Mod& o) const { return q == o.q && p == o.p; }
};

inline Mod make_mod(std::uint64_t p, std::uint32_t k) {
    Mod m{p, k, 1};
    for (std::uint32_t i = 0; i < k; ++i) {
        if (m.q > (UINT64_MAX / 4) / p)
            throw InvalidArgument("make_mod: p^k overflows the residue word");
        m.q *= p;
    }
    return m;
}

struct Zm {
    std::uint64_t v = 0;
    Mod m;

    Zm() = default;
    Zm(std::uint64_t value, Mod mod) : v(value % mod.q), m(mod) {}
};

[[noreturn]] inline void modulus_fault() {
    std::fputs("adelab: mixed-modulus arithmetic\n", stderr);
    std::abort();
}

inline void check_same(const Zm& a, const Zm& b) {
    if (!(a.m == b.m)) modulus_fault();
}

inline Zm operator+(const Zm& a, const Zm& b) {
    check_same(a, b);
    std::uint64_t s = a.v + b.v;
    if (s >= a.m.q) s -= a.m.q;
    return Zm{s, a.m};
}

inline Zm operator-(const Zm& a, const Zm& b) {
    check_same(a, b);
    return Zm{a.v >= b.v ? a.v - b.v : a.m.q - (b.v - a.v), a.m};
}

inline Zm operator-(const Zm& a) {
    return Zm{a.v == 0 ? 0 : a.m.q - a.v, a.m};
}

inline Zm operator*(const Zm& a, const Zm& b) {
    check_same(a, b);
    return Zm{static_cast<std::uint64_t>(
                  (static_cast<unsigned __int128>(a.v) * b.v) % a.m.q),
              a.m};
}

inline bool operator==(const Zm& a, const Zm& b) {
    check_same(a, b);
    return a.v == b.v;
}

inline bool is_zero(const Zm& a) { return a.v == 0; }
inline Zm zero_like(const Zm& a) { return Zm{0, a.m}; }

inline Zm zm_pow(Zm b, std::uint64_t e) {
    Zm r{1 % b.m.q, b.m};
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// Inverse in Z/p^k: defined exactly when p does not divide v.
inline Zm zm_inv(const Zm& a) {
    if (a.v % a.m.p == 0) throw DenominatorNotUnit("no inverse: p divides value");
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(a.m.q),
                 nr = static_cast<std::int64_t>(a.v);
    while (nr != 0) {
        std::int64_t qu = r / nr;
        std::int64_t tmp = t - qu * nt;
        t = nt;
        nt = tmp;
        tmp = r - qu * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(a.m.q);
    return Zm{static_cast<std::uint64_t>(t), a.m};
}

inline Zm operator/(const Zm& a, const Zm& b) {
    check_same(a, b);
    return a * zm_inv(b);
}

inline std::uint64_t mod_reduce_int(const Int& n, std::uint64_t q) {
    Int r = n % Int((unsigned long)q);
    if (r < 0) r += Int((unsigned long)q);
    return r.get_ui();
}

// x = a/b with p not dividing b maps to a * b^{-1} in Z/p^k.
inline Zm reduce_mod(const Rat& x, const Mod& m) {
    std::uint64_t d = mod_reduce_int(den(x), m.q);
    if (d % m.p == 0) throw DenominatorNotUnit();
    return Zm{mod_reduce_int(num(x), m.q), m} * zm_inv(Zm{d, m});
}

inline Zm reduce_mod(const Rat& x, std::uint64_t p, std::uint32_t k) {
    return reduce_mod(x, make_mod(p, k));
}

} // namespace adelab
