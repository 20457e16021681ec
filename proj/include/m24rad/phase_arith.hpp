// Exact rational kernel: unit phases e(r), Dedekind sums, Jacobi symbols,
// divisor sums.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace m24rad {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

// r - floor(r), in [0, 1)
inline Rat frac_part(const Rat& r) {
    Rat f(mod_floor(r.get_num(), r.get_den()), r.get_den());
    f.canonicalize();
    return f;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline std::int64_t to_i64(const Int& z) {
    if (!mpz_fits_slong_p(z.get_mpz_t())) throw std::overflow_error("integer exceeds 64 bits");
    return z.get_si();
}

/// Root of unity e(r) = exp(2 pi i r), stored by its exponent reduced mod 1.
class PhaseExp {
public:
    PhaseExp() : r_(0) {}
    explicit PhaseExp(const Rat& r) : r_(frac_part(r)) {}
    PhaseExp(long num, long den) : r_(frac_part(make_rat(num, den))) {}

    const Rat& exponent() const { return r_; }
    bool is_one() const { return r_ == 0; }

    friend bool operator==(const PhaseExp& x, const PhaseExp& y) { return x.r_ == y.r_; }
    friend bool operator!=(const PhaseExp& x, const PhaseExp& y) { return !(x == y); }

    PhaseExp conj() const { return PhaseExp(-r_); }

private:
    Rat r_;
};

inline PhaseExp phase_mul(const PhaseExp& p, const PhaseExp& q) {
    return PhaseExp(p.exponent() + q.exponent());
}

inline PhaseExp phase_pow(const PhaseExp& p, long n) { return PhaseExp(p.exponent() * n); }

inline PhaseExp operator*(const PhaseExp& p, const PhaseExp& q) { return phase_mul(p, q); }

// ((x)) sawtooth: 0 on integers, x - floor(x) - 1/2 otherwise
inline Rat sawtooth(const Rat& x) {
    if (x.get_den() == 1) return Rat(0);
    return frac_part(x) - make_rat(1, 2);
}

/// s(d,c) by the defining sum over m = 1..c-1. O(c); kept as the reference.
inline Rat dedekind_sum_direct(const Int& d, const Int& c) {
    if (c <= 0) throw std::domain_error("dedekind_sum: c must be positive");
    Rat s(0);
    for (Int m = 1; m < c; ++m) s += make_rat(m, c) * sawtooth(make_rat(m * d, c));
    return s;
}

/// s(d,c) through reciprocity, O(log c). Requires gcd(d,c) = 1.
inline Rat dedekind_sum(const Int& d_in, const Int& c_in) {
    if (c_in <= 0) throw std::domain_error("dedekind_sum: c must be positive");
    Int c = c_in, d = mod_floor(d_in, c_in);
    Rat acc(0);
    int sign = 1;
    // s(d,c) = -1/4 + (d/c + c/d + 1/(cd))/12 - s(c mod d, d)
    while (d != 0) {
        Rat t = make_rat(-1, 4) + (make_rat(d, c) + make_rat(c, d) + make_rat(Int(1), c * d)) / 12;
        if (sign > 0) acc += t; else acc -= t;
        sign = -sign;
        Int r = c % d;
        c = d;
        d = r;
    }
    return acc;
}

struct DedekindLift {
    std::int64_t f;     // 12 c s(d, c)
    std::int64_t dinv;  // d^{-1} mod c in [0, c)
};

/// Integer kernel used by the Kloosterman loops: 12c*s(d,c) and the inverse
/// of d mod c from one Euclidean pass over d/c = [0; q1, ..., qt]:
///   12c s(d,c) = c (q1 - q2 + ... +- qt) + d + d^{-1} - c (3 if t odd else 1).
/// Requires 0 <= d < c; returns false when gcd(d, c) != 1.
inline bool dedekind_lift_try(std::int64_t d, std::int64_t c, DedekindLift& out) {
    if (c == 1) {
        out = {0, 0};
        return true;
    }
    std::int64_t x = c, y = d, t0 = 0, t1 = 1, alt = 0;
    bool odd = false;
    while (y != 0) {
        std::int64_t q = x / y, r = x - q * y;
        alt += odd ? -q : q;
        odd = !odd;
        std::int64_t t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
        x = y;
        y = r;
    }
    if (x != 1) return false;
    std::int64_t inv = t0 < 0 ? t0 + c : t0;
    __int128 f = static_cast<__int128>(c) * alt + d + inv - (odd ? 3 : 1) * static_cast<__int128>(c);
    out = {static_cast<std::int64_t>(f), inv};
    return true;
}

inline DedekindLift dedekind_lift(std::int64_t d, std::int64_t c) {
    if (c <= 0 || d < 0 || d >= c) throw std::domain_error("dedekind_lift: need 0 <= d < c");
    DedekindLift r;
    if (!dedekind_lift_try(d, c, r)) throw std::domain_error("dedekind_lift: gcd(d, c) != 1");
    return r;
}

/// Jacobi symbol (n/m), m odd and positive.
inline int jacobi_symbol(const Int& n, const Int& m) {
    if (m <= 0 || mpz_even_p(m.get_mpz_t())) throw std::domain_error("jacobi_symbol: m must be odd and positive");
    return mpz_jacobi(n.get_mpz_t(), m.get_mpz_t());
}

/// Kronecker extension of the Jacobi symbol to all integers m.
inline int kronecker_symbol(const Int& n, const Int& m) {
    return mpz_kronecker(n.get_mpz_t(), m.get_mpz_t());
}

inline long sigma_divisors(long k) {
    if (k <= 0) throw std::domain_error("sigma_divisors: k must be positive");
    long s = 0;
    for (long i = 1; i * i <= k; ++i) {
        if (k % i) continue;
        s += i;
        if (i != k / i) s += k / i;
    }
    return s;
}

inline std::int64_t euler_phi(std::int64_t c) {
    std::int64_t r = c;
    for (std::int64_t p = 2; p * p <= c; ++p) {
        if (c % p) continue;
        while (c % p == 0) c /= p;
        r -= r / p;
    }
    if (c > 1) r -= r / c;
    return r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> lo, hi;
    for (long i = 1; i * i <= n; ++i) {
        if (n % i) continue;
        lo.push_back(i);
        if (i != n / i) hi.push_back(n / i);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

}  // namespace m24rad
