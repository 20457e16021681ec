// Generalised Kloosterman sums, the Rademacher coefficient formulas, the
// directly regularised Rademacher sum, and the coefficient check against H_g.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "m24rad/bigreal.hpp"
#include "m24rad/dd.hpp"
#include "m24rad/hg.hpp"
#include "m24rad/m24.hpp"
#include "m24rad/modgroup.hpp"

namespace m24rad {

// ---------------------------------------------------------------- Bessel ---

/// I_{1/2}(x) = sqrt(2/(pi x)) sinh x
inline BigReal bessel_i_half(const BigReal& x) {
    if (!(x > BigReal(0))) throw std::domain_error("bessel_i_half: x must be positive");
    return sqrt(BigReal(2) / (BigReal::pi(x.prec()) * x)) * sinh(x);
}

/// J_{1/2}(x) = sqrt(2/(pi x)) sin x
inline BigReal bessel_j_half(const BigReal& x) {
    if (!(x > BigReal(0))) throw std::domain_error("bessel_j_half: x must be positive");
    return sqrt(BigReal(2) / (BigReal::pi(x.prec()) * x)) * sin(x);
}

/// e(x, s) = sum_{m>=0} (2 pi i x)^{m+s} / Gamma(m+s+1), principal branch for
/// the power. The loop stops once the terms have passed their peak and fall
/// below the working epsilon relative to the sum.
template <class T>
inline Cx<T> gen_exp(const Cx<T>& x, const T& s) {
    using std::abs;
    Cx<T> z = Cx<T>(T(0), 2 * pi_of<T>()) * x;
    double az = to_double(z.abs());
    if (az == 0.0) {
        if (to_double(s) == 0.0) return Cx<T>(T(1));
        return Cx<T>(T(0));
    }
    Cx<T> term;
    if constexpr (std::is_same_v<T, BigReal>) term = cpow(z, s) / tgamma(s + T(1));
    else term = cpow(z, s) / T(std::tgamma(to_double(s) + 1));
    Cx<T> sum = term;
    double eps = std::is_same_v<T, BigReal> ? std::ldexp(1.0, -static_cast<int>(default_precision()) - 4) : 1e-18;
    for (long m = 1; m < 100000; ++m) {
        term = term * z / (T(static_cast<double>(m)) + s);
        sum += term;
        if (static_cast<double>(m) > az && to_double(term.abs()) <= eps * to_double(sum.abs())) break;
    }
    return sum;
}

// ------------------------------------------------------------ Kloosterman ---

/// alpha with xi(T) = e(alpha), xi = psi or its conjugate.
inline Rat multiplier_alpha(const GroupCtx& ctx, bool conjugate) {
    return psi_multiplier(ctx, Mat2::T(), conjugate).exponent();
}

/// The summands of S(m, l, c, xi) as exact phases, one per double coset
/// representative (d ascending); `lift` selects a in [lift c, (lift+1) c).
inline std::vector<PhaseExp> kloosterman_terms(const GroupCtx& ctx, long m, long l, long c, bool conjugate,
                                               long lift = 0) {
    Rat alpha = multiplier_alpha(ctx, conjugate);
    std::vector<PhaseExp> out;
    for (const Mat2& g : double_coset_reps(ctx, c, lift)) {
        PhaseExp t = psi_multiplier(ctx, g, conjugate);
        Rat x = (Rat(m) - alpha) * Rat(g.a()) / Rat(c) + (Rat(l) - alpha) * Rat(g.d()) / Rat(c);
        out.push_back(phase_mul(t, PhaseExp(x)));
    }
    return out;
}

/// S(m, l, c, xi) from the exact phases, evaluated at the default precision.
inline BigComplex kloosterman(const GroupCtx& ctx, long m, long l, long c, bool conjugate, long lift = 0) {
    BigComplex s(BigReal(0), BigReal(0));
    for (const PhaseExp& p : kloosterman_terms(ctx, m, l, c, conjugate, lift)) s += to_complex<BigReal>(p);
    return s;
}

/// Integer form of the same sums for the long c-loops. Every summand of
/// S(m, l, c, xi) is e(E/D) with D = 24 c h and E an integer computed from the
/// literal definition: the eta multiplier through f = 12 c s(d, c), rho, and
/// the two Kloosterman phases.
class KloostermanKernel {
public:
    KloostermanKernel(const GroupCtx& ctx, long m, std::vector<long> ls, bool conjugate, long lift = 0)
        : ctx_(ctx), m_(m), ls_(std::move(ls)), conj_(conjugate), lift_(lift) {
        Rat a = multiplier_alpha(ctx, conjugate) * (24 * ctx.h);
        if (a.get_den() != 1) throw std::logic_error("KloostermanKernel: alpha is not a multiple of 1/(24h)");
        A_ = a.get_num().get_si();
    }

    const GroupCtx& ctx() const { return ctx_; }
    const std::vector<long>& ls() const { return ls_; }
    std::int64_t modulus(long c) const { return 24 * static_cast<std::int64_t>(c) * ctx_.h; }

    /// numerator of the exponent of xi(gamma) over D, for gamma = (a, b; c, d)
    /// with c > 0 and f = 12 c s(d, c)
    std::int64_t multiplier_num(std::int64_t a, std::int64_t d, std::int64_t c, std::int64_t f) const {
        const std::int64_t D = modulus(c);
        // eps = e(E/24c), E = -(a + d) + f + 3c, enters as eps^{-3};
        // rho = e(-c' d / h) with c' = c / n, i.e. e(-24 c c' d / D)
        std::int64_t e = mod_i64(-3 * ctx_.h * (f - a - d + 3 * c) - mod_i64(24 * c * (c / ctx_.n), D) * mod_i64(d, D) % D, D);
        return conj_ ? mod_i64(-e, D) : e;
    }

    /// exponent numerators for every representative and every l, row-major
    /// [rep][l]; `ds` receives the d of each representative
    void exponents(long c, std::vector<std::int64_t>& out, std::vector<std::int64_t>* ds = nullptr) const {
        check_c(c);
        out.clear();
        if (ds) ds->clear();
        const std::int64_t D = modulus(c), h24 = 24 * ctx_.h;
        for (std::int64_t d = 0; d < c; ++d) {
            DedekindLift dl;
            if (!dedekind_lift_try(d, c, dl)) continue;
            std::int64_t a = dl.dinv + static_cast<std::int64_t>(lift_) * c;
            std::int64_t base = multiplier_num(a, d, c, dl.f) + mod_i64(a, D) * mod_i64(h24 * m_ - A_, D) % D;
            for (long l : ls_) out.push_back(mod_i64(base + d * mod_i64(h24 * l - A_, D) % D, D));
            if (ds) ds->push_back(d);
        }
    }

    /// S(m, l, c, xi) for each l
    void sums(long c, RootTable& table, std::vector<DDComplex>& out) const {
        std::vector<RootAccumulator> acc;
        sums(c, table, out, acc);
    }

    /// as above with caller-owned scratch accumulators
    void sums(long c, RootTable& table, std::vector<DDComplex>& out, std::vector<RootAccumulator>& acc) const {
        check_c(c);
        const std::int64_t D = modulus(c), h24 = 24 * ctx_.h;
        table.build(D);
        const std::size_t L = ls_.size();
        acc.resize(L);
        for (auto& x : acc) x.reset(table);
        std::vector<std::int64_t> step(L), off(L, 0);
        for (std::size_t i = 0; i < L; ++i) step[i] = mod_i64(h24 * ls_[i] - A_, D);
        const std::int64_t mstep = mod_i64(h24 * m_ - A_, D);
        for (std::int64_t d = 0; d < c; ++d) {
            // off[i] = d * step[i] mod D
            if (d > 0)
                for (std::size_t i = 0; i < L; ++i) {
                    off[i] += step[i];
                    if (off[i] >= D) off[i] -= D;
                }
            DedekindLift dl;
            if (!dedekind_lift_try(d, c, dl)) continue;
            std::int64_t a = dl.dinv + static_cast<std::int64_t>(lift_) * c;
            std::int64_t base = (multiplier_num(a, d, c, dl.f) + a % D * mstep) % D;
            for (std::size_t i = 0; i < L; ++i) {
                std::int64_t j = base + off[i];
                acc[i].add(j >= D ? j - D : j);
            }
        }
        out.resize(L);
        for (std::size_t i = 0; i < L; ++i) out[i] = acc[i].total();
    }

private:
    static std::int64_t mod_i64(std::int64_t x, std::int64_t m) {
        std::int64_t r = x % m;
        return r < 0 ? r + m : r;
    }
    void check_c(long c) const {
        if (c <= 0 || c % ctx_.n != 0) throw std::domain_error("kloosterman: c must be a positive multiple of n");
    }

    GroupCtx ctx_;
    long m_;
    std::vector<long> ls_;
    bool conj_;
    long lift_;
    std::int64_t A_ = 0;
};

inline BigComplex dd_to_complex(const DDComplex& z) {
    return {dd_to_big(z.re, default_precision()), dd_to_big(z.im, default_precision())};
}

/// S(m, l, c, xi) through the integer kernel.
inline BigComplex kloosterman_fast(const GroupCtx& ctx, long m, long l, long c, bool conjugate, long lift = 0) {
    KloostermanKernel k(ctx, m, {l}, conjugate, lift);
    RootTable t;
    std::vector<DDComplex> s;
    k.sums(c, t, s);
    return dd_to_complex(s[0]);
}

// ------------------------------------------------------------- c-series ---

/// Running sums sum_{c <= C, n | c} w_i(c) S(m, l_i, c, xi) in ascending c.
/// Kloosterman sums for a block of c are spread over `threads` workers and
/// then added in c order, so the result does not depend on the thread count.
class KloostermanSeries {
public:
    using Weight = std::function<BigReal(long c, std::size_t i)>;

    KloostermanSeries(KloostermanKernel kernel, Weight w, unsigned threads = 1)
        : kernel_(std::move(kernel)), weight_(std::move(w)), threads_(std::max(1u, threads)),
          acc_(kernel_.ls().size(), BigComplex(BigReal(0), BigReal(0))) {}

    long done() const { return done_; }
    const std::vector<BigComplex>& sums() const { return acc_; }

    void advance_to(long C) {
        const long n = kernel_.ctx().n;
        long first = (done_ / n + 1) * n;
        if (C < first) return;
        std::vector<long> cs;
        for (long c = first; c <= C; c += n) cs.push_back(c);
        const std::size_t L = kernel_.ls().size();
        std::vector<std::vector<DDComplex>> per_c(cs.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            RootTable table;
            std::vector<RootAccumulator> scratch;
            for (std::size_t j = lo; j < hi; ++j) kernel_.sums(cs[j], table, per_c[j], scratch);
        };
        unsigned nt = static_cast<unsigned>(std::min<std::size_t>(threads_, cs.size()));
        if (nt <= 1) {
            work(0, cs.size());
        } else {
            // interleave large and small c by splitting into many chunks
            std::size_t chunks = nt * 8, per = (cs.size() + chunks - 1) / chunks;
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{0};
            for (unsigned t = 0; t < nt; ++t)
                pool.emplace_back([&] {
                    for (;;) {
                        std::size_t ch = next.fetch_add(1);
                        if (ch * per >= cs.size()) break;
                        work(ch * per, std::min(cs.size(), (ch + 1) * per));
                    }
                });
            for (auto& th : pool) th.join();
        }
        for (std::size_t j = 0; j < cs.size(); ++j)
            for (std::size_t i = 0; i < L; ++i) acc_[i] += dd_to_complex(per_c[j][i]) * weight_(cs[j], i);
        done_ = C;
    }

private:
    KloostermanKernel kernel_;
    Weight weight_;
    unsigned threads_;
    std::vector<BigComplex> acc_;
    long done_ = 0;
};

// ----------------------------------------------------------- coefficients ---

enum class CoeffKind { holomorphic, shadow };

inline const char* to_string(CoeffKind k) { return k == CoeffKind::holomorphic ? "holomorphic" : "shadow"; }

struct CoeffEstimate {
    BigComplex value;
    long c_max = 0;
    BigReal last_block;  // |value(c_max) - value(c_max / 2)|
    long k = 0;
    CoeffKind kind = CoeffKind::holomorphic;
};

/// Partial sums of c(k - 1/8) (holomorphic) or c*(k + 1/8) (shadow) for a set
/// of k, which share the Kloosterman loop.
class CoefficientSum {
public:
    CoefficientSum(const GroupCtx& ctx, CoeffKind kind, std::vector<long> ks, unsigned threads = 1)
        : ctx_(ctx), kind_(kind), ks_(std::move(ks)), series_(make_series(threads)) {
        for (long k : ks_) {
            if (kind_ == CoeffKind::holomorphic && k < 1) throw std::domain_error("holomorphic coefficient needs k >= 1");
            if (kind_ == CoeffKind::shadow && k < 0) throw std::domain_error("shadow coefficient needs k >= 0");
        }
    }

    const std::vector<long>& ks() const { return ks_; }
    long done() const { return series_.done(); }
    void advance_to(long C) { series_.advance_to(C); }

    std::vector<BigComplex> values() const {
        std::vector<BigComplex> out;
        const BigReal two_pi = BigReal::pi() * 2;
        for (std::size_t i = 0; i < ks_.size(); ++i) {
            long k = ks_[i];
            const BigComplex& s = series_.sums()[i];
            if (kind_ == CoeffKind::holomorphic) {
                // 2 pi e(-1/8) (8k-1)^{-1/4}
                BigReal r = two_pi / pow(BigReal(8 * k - 1), BigReal(0.25));
                out.push_back(e_of(BigReal(make_rat(-1, 8))) * s * r);
            } else {
                // e(-3/8) 2 pi (8k+1)^{1/4}, plus the identity coset at k = 0
                BigReal r = two_pi * pow(BigReal(8 * k + 1), BigReal(0.25));
                BigComplex v = e_of(BigReal(make_rat(-3, 8))) * s * r;
                if (k == 0) v += BigComplex(BigReal(1), BigReal(0));
                out.push_back(v);
            }
        }
        return out;
    }

private:
    KloostermanSeries make_series(unsigned threads) const {
        bool hol = kind_ == CoeffKind::holomorphic;
        std::vector<long> ls;
        for (long k : ks_) ls.push_back(hol ? k : k + 1);
        KloostermanKernel kernel(ctx_, hol ? 0 : 1, ls, !hol);
        std::vector<long> ks = ks_;
        auto w = [ks, hol](long c, std::size_t i) {
            long k = ks[i];
            BigReal x = BigReal::pi() * sqrt(BigReal(hol ? 8 * k - 1 : 8 * k + 1)) / BigReal(2 * c);
            return (hol ? bessel_i_half(x) : bessel_j_half(x)) / BigReal(c);
        };
        return KloostermanSeries(std::move(kernel), w, threads);
    }

    GroupCtx ctx_;
    CoeffKind kind_;
    std::vector<long> ks_;
    KloostermanSeries series_;
};

inline std::vector<CoeffEstimate> coefficient_estimates(const GroupCtx& ctx, CoeffKind kind, const std::vector<long>& ks,
                                                        long c_max, unsigned threads = 1) {
    if (c_max < ctx.n) throw std::domain_error("c_max must be at least n");
    CoefficientSum cs(ctx, kind, ks, threads);
    cs.advance_to(c_max / 2);
    std::vector<BigComplex> half = cs.values();
    cs.advance_to(c_max);
    std::vector<BigComplex> full = cs.values();
    std::vector<CoeffEstimate> out;
    for (std::size_t i = 0; i < ks.size(); ++i)
        out.push_back({full[i], c_max, (full[i] - half[i]).abs(), ks[i], kind});
    return out;
}

/// c(k - 1/8) summed over c <= c_max
inline CoeffEstimate rademacher_coeff(const GroupCtx& ctx, long k, long c_max, unsigned threads = 1) {
    return coefficient_estimates(ctx, CoeffKind::holomorphic, {k}, c_max, threads)[0];
}

/// c*(k + 1/8) summed over c <= c_max, including the identity coset at k = 0
inline CoeffEstimate shadow_coeff(const GroupCtx& ctx, long k, long c_max, unsigned threads = 1) {
    return coefficient_estimates(ctx, CoeffKind::shadow, {k}, c_max, threads)[0];
}

/// c_max values n, 2n, 4n, ... up to c_max, which is always included
inline std::vector<long> dyadic_checkpoints(long n, long c_max, long c_min = 1) {
    std::vector<long> out;
    for (long C = n; C <= c_max; C *= 2)
        if (C >= c_min) out.push_back(C);
    if (out.empty() || out.back() != c_max) out.push_back(c_max);
    return out;
}

struct ZetaPoint {
    long C;
    BigComplex value;
};

/// sum_{c <= C} S(m, l, c, psi) / c^{3/2} at the dyadic checkpoints
inline std::vector<ZetaPoint> zeta_partial(const GroupCtx& ctx, long m, long l, long c_max, unsigned threads = 1) {
    KloostermanSeries s(KloostermanKernel(ctx, m, {l}, false),
                        [](long c, std::size_t) { return BigReal(1) / pow(BigReal(c), BigReal(1.5)); }, threads);
    std::vector<ZetaPoint> out;
    for (long C : dyadic_checkpoints(ctx.n, c_max)) {
        s.advance_to(C);
        out.push_back({C, s.sums()[0]});
    }
    return out;
}

// ------------------------------------------------------------ direct sum ---

/// One summand psi(gamma) e(-gamma tau / 8) reg(gamma, tau) jac(gamma, tau)^{1/4}
/// of the regularised sum, from the matrix itself.
template <class T>
inline Cx<T> rademacher_term(const GroupCtx& ctx, const Mat2& g, const Cx<T>& tau) {
    Cx<T> psi = to_complex<T>(psi_multiplier(ctx, g));
    if (g.c() == 0) return psi * e_of(g.act(tau) * T(-0.125)) * jac_pow(g, tau, T(0.5));
    // e(-gamma tau/8) reg = e(-gamma infty / 8) e((gamma infty - gamma tau)/8, 1/2)
    Rat ginf = Rat(g.a()) / Rat(g.c());
    Cx<T> x;
    if constexpr (std::is_same_v<T, BigReal>) x = (Cx<T>(BigReal(ginf)) - g.act(tau)) * BigReal(0.125);
    else x = (Cx<T>(ginf.get_d()) - g.act(tau)) * T(0.125);
    Cx<T> lead;
    if constexpr (std::is_same_v<T, BigReal>) lead = e_of(BigReal(-ginf / 8));
    else lead = e_of(T(-ginf.get_d() / 8));
    return psi * lead * gen_exp(x, T(0.5)) * jac_pow(g, tau, T(0.5));
}

/// Truncated regularised Rademacher sum over the rectangle 0 < c < K,
/// -K^2 < d < K^2, plus the identity coset.
template <class T>
inline Cx<T> rademacher_direct(const GroupCtx& ctx, const Cx<T>& tau, long K) {
    if (!(to_double(tau.im) > 0)) throw std::domain_error("rademacher_direct: Im tau must be positive");
    Cx<T> sum = e_of(tau * T(-0.125));
    KloostermanKernel kern(ctx, 0, {0}, false);
    const long K2 = K * K;
    for (long c = ctx.n; c < K; c += ctx.n) {
        const std::int64_t D = kern.modulus(c);
        for (long d = -K2 + 1; d < K2; ++d) {
            std::int64_t dm = ((d % c) + c) % c;
            if (c > 1 && std::gcd(dm, static_cast<std::int64_t>(c)) != 1) continue;
            DedekindLift dl = dedekind_lift(dm, c);
            std::int64_t a = dl.dinv;
            // psi(gamma) e(-a/(8c)) as e(E/D); -a/(8c) = -3 h a / D
            std::int64_t E = kern.multiplier_num(a, d, c, dl.f) - 3 * ctx.h * a;
            E %= D;
            Cx<T> ph;
            if constexpr (std::is_same_v<T, BigReal>) ph = e_of(BigReal(make_rat(E, D)));
            else ph = e_of(T(static_cast<double>(E) / static_cast<double>(D)));
            Cx<T> ctd = tau * T(static_cast<double>(c)) + Cx<T>(T(static_cast<double>(d)));
            // gamma infty - gamma tau = 1 / (c (c tau + d))
            Cx<T> x = Cx<T>(T(0.125) / T(static_cast<double>(c))) / ctd;
            sum += ph * gen_exp(x, T(0.5)) * cpow(ctd, T(-0.5));
        }
    }
    return sum;
}

// ----------------------------------------------------------- verification ---

struct VerifyOptions {
    long c_max = 100000;   // cap for the adaptive loop
    long c_min = 512;      // first checkpoint considered
    double tol = 0.4;
    unsigned threads = 1;
};

struct VerifyEntry {
    long k = 0;
    Int target;
    BigComplex value;  // -2 c(k - 1/8)
    long c_max = 0;
    double re_err = 0, im_abs = 0;
    bool pass = false;
};

struct VerifyReport {
    std::string cls;
    long c_stop = 0;
    bool stable = false;
    std::vector<VerifyEntry> entries;
    bool pass() const {
        if (!stable) return false;
        for (auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

namespace detail {

inline bool settled(const BigComplex& v, double tol, Int& nearest) {
    BigReal r = round(v.re);
    nearest = Int(r.to_double());
    return to_double(abs(v.re - r)) < tol && to_double(abs(v.im)) < tol;
}

}  // namespace detail

/// Compare -2 c(k - 1/8) with the exact H_g coefficient for k = 1..k_max.
/// c_max doubles from the first checkpoint >= c_min until, for every k, two
/// consecutive checkpoints sit within tol of the same integer with |Im| < tol;
/// the comparison with the exact value happens only afterwards.
inline VerifyReport verify_theorem(const ClassRecord& cls, long k_max, const VerifyOptions& opt = {},
                                   const PSeries* hg = nullptr) {
    if (k_max < 1) throw std::domain_error("verify_theorem: k_max must be positive");
    PSeries exact = hg ? *hg : hg_series(cls, Rat(k_max) + 1);
    std::vector<long> ks;
    for (long k = 1; k <= k_max; ++k) ks.push_back(k);
    CoefficientSum sum(cls.ctx(), CoeffKind::holomorphic, ks, opt.threads);

    VerifyReport rep;
    rep.cls = cls.name;
    std::vector<Int> prev;
    std::vector<BigComplex> vals;
    bool have_prev = false;
    for (long C : dyadic_checkpoints(cls.n, opt.c_max, opt.c_min)) {
        sum.advance_to(C);
        vals = sum.values();
        for (auto& v : vals) v = v * BigReal(-2);
        rep.c_stop = C;
        std::vector<Int> cur(ks.size());
        bool all = true;
        for (std::size_t i = 0; i < ks.size(); ++i) all = detail::settled(vals[i], opt.tol, cur[i]) && all;
        if (all && have_prev && cur == prev) {
            rep.stable = true;
            break;
        }
        prev = cur;
        have_prev = all;
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
        VerifyEntry e;
        e.k = ks[i];
        Rat t = exact.coeff(make_rat(24 * ks[i] - 3, 24));
        if (t.get_den() != 1) throw std::logic_error("verify_theorem: non-integral H_g coefficient");
        e.target = t.get_num();
        e.value = vals[i];
        e.c_max = rep.c_stop;
        e.re_err = to_double(abs(vals[i].re - BigReal(e.target)));
        e.im_abs = to_double(abs(vals[i].im));
        Int nearest;
        bool ok = detail::settled(vals[i], opt.tol, nearest);
        e.pass = ok && nearest == e.target && e.re_err < opt.tol;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace m24rad
