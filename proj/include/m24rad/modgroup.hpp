// SL2(Z) / Gamma0(n) machinery: matrices, multiplier systems, double coset
// representatives, cusps and the Fricke involution.
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "m24rad/bigreal.hpp"
#include "m24rad/phase_arith.hpp"

namespace m24rad {

/// Integer matrix (a b; c d) of determinant 1.
class Mat2 {
public:
    Mat2() : a_(1), b_(0), c_(0), d_(1) {}
    Mat2(Int a, Int b, Int c, Int d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (a_ * d_ - b_ * c_ != 1) throw std::domain_error("Mat2: determinant is not 1");
    }
    Mat2(long a, long b, long c, long d) : Mat2(Int(a), Int(b), Int(c), Int(d)) {}

    static Mat2 T(long m = 1) { return Mat2(1, m, 0, 1); }
    static Mat2 S() { return Mat2(0, -1, 1, 0); }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }

    Mat2 operator-() const { return Mat2(-a_, -b_, -c_, -d_); }
    Mat2 inverse() const { return Mat2(d_, -b_, -c_, a_); }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                    x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }
    friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
        return os << "(" << m.a_ << "," << m.b_ << ";" << m.c_ << "," << m.d_ << ")";
    }

    template <class T>
    Cx<T> act(const Cx<T>& tau) const {
        return (tau * int_to<T>(a_) + Cx<T>(int_to<T>(b_))) / cfactor(tau);
    }
    // c tau + d
    template <class T>
    Cx<T> cfactor(const Cx<T>& tau) const {
        return tau * int_to<T>(c_) + Cx<T>(int_to<T>(d_));
    }

private:
    Int a_, b_, c_, d_;
};

/// jac(g, tau)^{w/2} = (c tau + d)^{-w}, principal branch.
template <class T>
inline Cx<T> jac_pow(const Mat2& g, const Cx<T>& tau, const T& w) {
    return cpow(g.cfactor(tau), -w);
}

/// Level n of Gamma0(n) together with the index h of the multiplier rho_{n|h}.
struct GroupCtx {
    long n = 1, h = 1;
    GroupCtx() = default;
    GroupCtx(long n_, long h_) : n(n_), h(h_) {
        if (n < 1 || h < 1 || n % h != 0 || 24 % h != 0)
            throw std::domain_error("GroupCtx: need n >= 1, h | n and h | 24");
    }
    friend bool operator==(const GroupCtx& x, const GroupCtx& y) { return x.n == y.n && x.h == y.h; }
};

inline bool in_gamma0(long n, const Mat2& g) { return g.c() % n == 0; }
inline bool in_gamma0(const GroupCtx& ctx, const Mat2& g) { return in_gamma0(ctx.n, g); }

/// Dedekind eta multiplier: eps(g) eta(g tau) (c tau + d)^{-1/2} = eta(tau).
inline PhaseExp eta_multiplier(const Mat2& g) {
    const Int &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
    if (c == 0) {
        if (d == 1) return PhaseExp(make_rat(-b, Int(24)));
        // d = -1: (-1)^{-1/2} = -i on the principal branch
        return phase_mul(PhaseExp(make_rat(b, Int(24))), PhaseExp(1, 4));
    }
    if (c < 0) return phase_mul(eta_multiplier(-g), PhaseExp(-1, 4));
    Rat r = make_rat(-(a + d), 24 * c) + dedekind_sum(d, c) / 2 + make_rat(1, 8);
    return PhaseExp(r);
}

/// rho_{n|h}(g) = e(-cd/(nh)).
inline PhaseExp rho_multiplier(const GroupCtx& ctx, const Mat2& g) {
    if (!in_gamma0(ctx, g)) throw std::domain_error("rho_multiplier: matrix not in Gamma0(n)");
    return PhaseExp(make_rat(-g.c() * g.d(), Int(ctx.n * ctx.h)));
}

/// Character varsigma_g on Gamma0(N). For odd d: (N/d) (-1)^{(d-1)/2}. Even d
/// only occurs for odd N, and there (N/d) is read as the Jacobi symbol (d/N);
/// the Kronecker reading of (N/d) is not a character for N = 3 mod 4.
inline PhaseExp varsigma(long N, const Mat2& g) {
    if (!in_gamma0(N, g)) throw std::domain_error("varsigma: matrix not in Gamma0(N)");
    const Int& d = g.d();
    int sym;
    if (mpz_odd_p(d.get_mpz_t())) {
        sym = kronecker_symbol(Int(N), d);
        Int half = floor_div(d - 1, Int(2));
        if (mpz_odd_p(half.get_mpz_t())) sym = -sym;
    } else {
        sym = jacobi_symbol(d, Int(N));
    }
    if (sym == 0) throw std::domain_error("varsigma: d shares a factor with N");
    return sym > 0 ? PhaseExp() : PhaseExp(1, 2);
}

/// Multiplier of the eta product prod_s eta(i_s tau)^{l_s} on Gamma0(N), N a
/// multiple of every i_s: prod_s eps(a, i_s b; c / i_s, d)^{l_s}, so that
/// eta_g(g tau) jac^{k/2} times this phase gives back eta_g(tau).
inline PhaseExp eta_product_multiplier(const std::vector<std::pair<long, long>>& factors, const Mat2& g) {
    PhaseExp p;
    for (auto& [i, l] : factors) {
        if (g.c() % i != 0) throw std::domain_error("eta_product_multiplier: i does not divide c");
        Mat2 gi(g.a(), g.b() * i, g.c() / i, g.d());
        p = phase_mul(p, phase_pow(eta_multiplier(gi), l));
    }
    return p;
}

/// psi = rho * eps^{-3}, or its conjugate.
inline PhaseExp psi_multiplier(const GroupCtx& ctx, const Mat2& g, bool conjugate = false) {
    PhaseExp p = phase_mul(rho_multiplier(ctx, g), phase_pow(eta_multiplier(g), -3));
    return conjugate ? p.conj() : p;
}

/// One representative per double coset Gamma_inf \ Gamma0(n) / Gamma_inf with
/// lower-left entry c. `lift` shifts a into [lift*c, (lift+1)*c).
inline std::vector<Mat2> double_coset_reps(const GroupCtx& ctx, long c, long lift = 0) {
    if (c <= 0 || c % ctx.n != 0) throw std::domain_error("double_coset_reps: c must be a positive multiple of n");
    std::vector<Mat2> out;
    if (c == 1) {
        out.emplace_back(Int(lift), Int(-1), Int(1), Int(0));
        return out;
    }
    for (long d = 0; d < c; ++d) {
        if (gcd64(d, c) != 1) continue;
        Int a = dedekind_lift(d, c).dinv + Int(lift) * c;
        Int b = (a * d - 1) / c;
        out.emplace_back(a, b, Int(c), Int(d));
    }
    return out;
}

struct CuspInfo {
    bool infinite = false;
    long q = 0;      // representative 1/q when finite (q = 1 is the cusp 0)
    long width = 1;
    long m = 0;      // rho(sigma T^v sigma^{-1}) = e(m/h)
};

/// Cusps of Gamma0(n) for the class levels: infinity plus 1/q for each
/// divisor q < n. Width v is the least v > 0 with n | q^2 v, which is the
/// condition for sigma T^v sigma^{-1} to lie in Gamma0(n).
inline std::vector<CuspInfo> cusp_data(const GroupCtx& ctx) {
    std::vector<CuspInfo> out;
    out.push_back({true, 0, 1, 0});
    for (long q : divisors(ctx.n)) {
        if (q == ctx.n) continue;
        long v = ctx.n / gcd64(q * q, ctx.n);
        long m = ((q * q * v / ctx.n) * (1 + q * v)) % ctx.h;
        if (m < 0) m += ctx.h;
        out.push_back({false, q, v, m});
    }
    return out;
}

template <class T>
struct RealMat2 {
    T a, b, c, d;
};

/// Fricke involution w_n = (0, -1/sqrt n; sqrt n, 0).
template <class T = BigReal>
inline RealMat2<T> fricke(long n) {
    using std::sqrt;
    if (n < 1) throw std::domain_error("fricke: n must be positive");
    T s = sqrt(T(static_cast<double>(n)));
    return {T(0), T(-1) / s, s, T(0)};
}

template <class T>
inline Cx<T> act(const RealMat2<T>& m, const Cx<T>& tau) {
    return (tau * m.a + Cx<T>(m.b)) / (tau * m.c + Cx<T>(m.d));
}

}  // namespace m24rad
