#pragma once

// Independent exact oracles. Nothing here calls the library's norm, operator-norm or structure code.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Dense = std::vector<Vec>; // row-major

inline long valuation(const Q& x, unsigned long p) {
    mpz_class num = x.get_num(), den = x.get_den();
    long v = 0;
    while (num % p == 0) {
        num /= p;
        ++v;
    }
    while (den % p == 0) {
        den /= p;
        --v;
    }
    return v;
}

// a / b in canonical form; the two-argument mpq constructor does not reduce
inline Q frac(long a, long b) {
    Q q(a, b);
    q.canonicalize();
    return q;
}

template <class Dist, class Rng>
Q random_frac(Dist& d, Rng& rng) {
    long a = d(rng);
    return frac(a, d(rng));
}

inline Q qpow(Q base, long e) {
    Q out = 1;
    if (e < 0) {
        base = 1 / base;
        e = -e;
    }
    for (long i = 0; i < e; ++i) out *= base;
    return out;
}

// |x| for p = 0 (archimedean) or the p-adic absolute value p^-v(x)
inline Q absval(const Q& x, unsigned long p) {
    if (x == 0) return 0;
    if (p == 0) return abs(x);
    return qpow(Q(p), -valuation(x, p));
}

struct Space {
    Vec weights;
    bool sum = true; // ignored for p-adic: every flavor is the sup
    unsigned long p = 0;
};

inline Q norm(const Space& s, const Vec& v) {
    Q out = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Q t = s.weights[i] * absval(v[i], s.p);
        if (s.sum && s.p == 0)
            out += t;
        else if (t > out)
            out = t;
    }
    return out;
}

inline Vec apply(const Dense& m, const Vec& v) {
    Vec out(m.size(), Q(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// Maximum of ||Tx|| over the extreme points of the domain unit ball (archimedean),
// or of ||Tv|| / ||v|| over the nonzero grid {0..p-1}^d, which contains the basis (p-adic).
inline Q brute_opnorm(const Space& dom, const Space& cod, const Dense& m) {
    std::size_t d = dom.weights.size();
    Q best = 0;
    if (dom.p == 0 && dom.sum) {
        for (std::size_t j = 0; j < d; ++j) {
            Vec x(d, Q(0));
            x[j] = 1 / dom.weights[j];
            Q n = norm(cod, oracle::apply(m, x));
            if (n > best) best = n;
        }
        return best;
    }
    if (dom.p == 0) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
            Vec x(d);
            for (std::size_t j = 0; j < d; ++j) x[j] = ((mask >> j) & 1 ? Q(-1) : Q(1)) / dom.weights[j];
            Q n = norm(cod, oracle::apply(m, x));
            if (n > best) best = n;
        }
        return best;
    }
    std::vector<unsigned long> digits(d, 0);
    while (true) {
        std::size_t k = 0;
        while (k < d && ++digits[k] == dom.p) digits[k++] = 0;
        if (k == d) break;
        Vec v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = Q(static_cast<long>(digits[j]));
        Q r = norm(cod, oracle::apply(m, v)) / norm(dom, v);
        if (r > best) best = r;
    }
    return best;
}

// Group axioms straight from a multiplication table.
inline bool is_group_table(const std::vector<std::vector<std::size_t>>& t) {
    std::size_t n = t.size();
    std::size_t e = n;
    for (std::size_t a = 0; a < n && e == n; ++a) {
        bool ok = true;
        for (std::size_t b = 0; b < n; ++b) ok = ok && t[a][b] == b && t[b][a] == b;
        if (ok) e = a;
    }
    if (e == n) return false;
    for (std::size_t a = 0; a < n; ++a) {
        bool has_inv = false;
        for (std::size_t b = 0; b < n; ++b) has_inv = has_inv || t[a][b] == e;
        if (!has_inv) return false;
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
    }
    return true;
}

// sup over x ≡ y mod p^k of |f(x) - f(y)|_p on Z/p^depth
inline Q oscillation(const Vec& f, unsigned long p, std::size_t k) {
    std::size_t m = 1;
    for (std::size_t i = 0; i < k; ++i) m *= p;
    Q best = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
        for (std::size_t y = x % m; y < f.size(); y += m) {
            Q a = absval(f[x] - f[y], p);
            if (a > best) best = a;
        }
    return best;
}

} // namespace oracle
