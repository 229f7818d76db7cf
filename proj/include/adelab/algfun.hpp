#pragma once

#include <adelab/series.hpp>

#include <set>
#include <utility>
#include <vector>

namespace adelab {

namespace detail {

// Smallest e with delta^e * y integral; the caller knows a proven cap.
inline long clear_exponent(const Rat& y, const Rat& delta, long cap) {
    Rat v = y;
    long e = 0;
    while (den(v) != 1) {
        if (e >= cap)
            throw CertificateViolation(
                "denominator survives the certified power of the branch derivative");
        v = Rat(v * delta);
        ++e;
    }
    return e;
}

} // namespace detail

struct AlgebraicSeriesCertificate {
    SparsePoly<Rat> poly; // defining polynomial in (z, y)
    Rat z0, y0;
    Rat delta;              // dP/dy at the expansion point
    std::vector<Rat> coeff; // y_0 .. y_order
    std::vector<long> bound; // minimal e with delta^e * y_n integral
};

inline AlgebraicSeriesCertificate taylor_algebraic(const SparsePoly<Rat>& P,
                                                   long z0, long y0, int order) {
    if (P.nv != 2)
        throw InvalidArgument("taylor_algebraic: polynomial must live in (z, y)");
    if (order < 0) throw InvalidArgument("taylor_algebraic: order must be >= 0");
    std::vector<Rat> pt{Rat(z0), Rat(y0)};
    if (!is_zero(eval_poly(P, pt, Rat(0))))
        throw NotOnCurve("taylor_algebraic: P(z0, y0) != 0");
    Rat delta = eval_poly(derivative(P, 1), pt, Rat(0));
    if (is_zero(delta))
        throw SingularBranch("taylor_algebraic: dP/dy vanishes at the point");

    auto zs = qseries_zero(order + 1, Rat(0));
    zs.at(0) = Rat(z0);
    if (order >= 1) zs.at(1) = Rat(1);
    auto S = qseries_zero(order + 1, Rat(0));
    S.at(0) = Rat(y0);
    for (int m = 0; m + 1 <= order; ++m) {
        auto val = eval_poly_series(P, {truncate(zs, m + 2), truncate(S, m + 2)},
                                    m + 2, Rat(0));
        S.at(m + 1) = Rat(-val.at(m + 1) / delta);
    }
    auto resid = eval_poly_series(P, {zs, S}, order + 1, Rat(0));
    for (int i = 0; i <= order; ++i)
        if (!is_zero(resid.at(i)))
            throw CertificateViolation("taylor_algebraic: residual does not vanish");

    AlgebraicSeriesCertificate cert{P, Rat(z0), Rat(y0), delta, S.c, {}};
    for (int n = 0; n <= order; ++n)
        cert.bound.push_back(
            detail::clear_exponent(S.at(n), delta, n == 0 ? 0 : 2 * n - 1));
    return cert;
}

struct AlgebraicSeriesCertificateMulti {
    SparsePoly<Rat> poly; // in (z_1..z_a, y), y last
    std::vector<Rat> z0;
    Rat y0;
    Rat delta;
    SparsePoly<Rat> series; // expansion in the z variables (y slot unused)
    std::vector<std::pair<Exps, long>> bound;
};

inline AlgebraicSeriesCertificateMulti
taylor_algebraic_multi(const SparsePoly<Rat>& P, const std::vector<long>& z0,
                       long y0, int order) {
    int a = P.nv - 1;
    if (a < 1 || static_cast<int>(z0.size()) != a)
        throw InvalidArgument("taylor_algebraic_multi: point dimension mismatch");
    if (order < 0) throw InvalidArgument("taylor_algebraic_multi: order must be >= 0");
    std::vector<Rat> pt;
    for (long c : z0) pt.push_back(Rat(c));
    pt.push_back(Rat(y0));
    if (!is_zero(eval_poly(P, pt, Rat(0))))
        throw NotOnCurve("taylor_algebraic_multi: P(z0, y0) != 0");
    Rat delta = eval_poly(derivative(P, a), pt, Rat(0));
    if (is_zero(delta))
        throw SingularBranch("taylor_algebraic_multi: dP/dy vanishes at the point");

    auto Ps = P;
    for (int i = 0; i < a; ++i)
        if (z0[static_cast<std::size_t>(i)] != 0)
            Ps = substitute(Ps, i,
                            SparsePoly<Rat>::variable(P.nv, i, Rat(1)) +
                                SparsePoly<Rat>::constant(
                                    P.nv, Rat(z0[static_cast<std::size_t>(i)])));

    auto S = SparsePoly<Rat>::constant(P.nv, Rat(y0));
    for (int m = 0; m + 1 <= order; ++m) {
        auto val = drop_above(substitute(Ps, a, S), m + 1);
        SparsePoly<Rat> add(P.nv);
        for (auto& t : val.terms)
            if (exps_total(t.e) == m + 1)
                add = add + SparsePoly<Rat>::monomial(P.nv, t.e, Rat(-t.c / delta));
        S = S + add;
    }
    if (!drop_above(substitute(Ps, a, S), order).zero())
        throw CertificateViolation("taylor_algebraic_multi: residual does not vanish");

    AlgebraicSeriesCertificateMulti cert{P, pt, Rat(y0), delta, S, {}};
    cert.z0.pop_back();
    for (auto& t : S.terms) {
        long n = exps_total(t.e);
        cert.bound.push_back(
            {t.e, detail::clear_exponent(t.c, delta, n == 0 ? 0 : 2 * n - 1)});
    }
    return cert;
}

struct BinomRingReport {
    std::vector<Rat> values; // [a]_0 .. [a]_kmax
    std::vector<Int> denominators;
    std::vector<Int> support; // primes dividing at least one denominator
};

// [a]_k = a (a-1) ... (a-k+1) / k!
inline BinomRingReport binom_ring_denominators(const Rat& a, long kmax) {
    if (!(a > 0))
        throw InvalidArgument("binom_ring_denominators: positive rational required");
    if (kmax < 0)
        throw InvalidArgument("binom_ring_denominators: kmax must be >= 0");
    BinomRingReport rep;
    Rat cur(1);
    rep.values.push_back(cur);
    for (long k = 1; k <= kmax; ++k) {
        cur = Rat(cur * Rat(a - Rat(k - 1)) / Rat(k));
        rep.values.push_back(cur);
    }
    std::set<Int> primes;
    for (auto& v : rep.values) {
        Int d = den(v);
        rep.denominators.push_back(d);
        for (Int q(2); q * q <= d; q = (q == 2 ? Int(3) : Int(q + 2))) {
            if (mpz_divisible_p(d.get_mpz_t(), q.get_mpz_t())) {
                primes.insert(q);
                while (mpz_divisible_p(d.get_mpz_t(), q.get_mpz_t()))
                    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t());
            }
        }
        if (d > 1) primes.insert(d);
    }
    rep.support.assign(primes.begin(), primes.end());
    return rep;
}

} // namespace adelab
