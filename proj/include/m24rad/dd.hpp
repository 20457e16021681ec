// Double-double arithmetic (about 106 bits) for the inner Kloosterman loops.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "m24rad/bigreal.hpp"

namespace m24rad {

struct DD {
    double hi = 0, lo = 0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

// cheaper sum whose error is bounded by 2^-104 (|a| + |b|) instead of |a + b|
inline DD dd_add_sloppy(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_mul(DD a, DD b) {
    double p = a.hi * b.hi;
    double e = std::fma(a.hi, b.hi, -p);
    e += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p, e);
}

inline DD dd_from(const BigReal& x) {
    double hi = x.to_double();
    BigReal r = x - BigReal(hi);
    return {hi, r.to_double()};
}

inline BigReal dd_to_big(DD a, mpfr_prec_t bits) {
    BigReal r = BigReal::with_prec(bits);
    r = BigReal::with_prec(bits) + BigReal(a.hi);
    r += BigReal(a.lo);
    return r;
}

struct DDComplex {
    DD re, im;
};

inline DDComplex ddc_mul(const DDComplex& x, const DDComplex& y) {
    return {dd_add(dd_mul(x.re, y.re), dd_neg(dd_mul(x.im, y.im))),
            dd_add(dd_mul(x.re, y.im), dd_mul(x.im, y.re))};
}

inline void ddc_acc(DDComplex& acc, const DDComplex& x) {
    acc.re = dd_add(acc.re, x.re);
    acc.im = dd_add(acc.im, x.im);
}

/// Table of e(j/D), j in [0, D), split as j = u*B + v with B a power of two
/// near sqrt(D); both factor tables are seeded from MPFR values.
class RootTable {
public:
    RootTable() = default;

    void build(std::int64_t D) {
        if (D == D_) return;
        D_ = D;
        shift_ = 0;
        while ((std::int64_t(1) << (2 * shift_)) < D) ++shift_;
        B_ = std::int64_t(1) << shift_;
        std::int64_t U = (D + B_ - 1) / B_;
        small_.resize(B_);
        big_.resize(U);
        PrecisionScope ps(160);
        fill(small_, make_root(1, D));
        fill(big_, make_root(B_, D));
    }

    std::int64_t modulus() const { return D_; }
    int shift() const { return shift_; }
    std::size_t big_size() const { return big_.size(); }
    const DDComplex& small(std::int64_t v) const { return small_[v]; }
    const DDComplex& big(std::int64_t u) const { return big_[u]; }

    DDComplex operator[](std::int64_t j) const {
        return ddc_mul(big_[j >> shift_], small_[j & (B_ - 1)]);
    }

private:
    static BigComplex make_root(std::int64_t num, std::int64_t den) {
        return e_of(BigReal(make_rat(num, den)));
    }
    // entries w^i; reseeded from MPFR every 64 steps to keep the recurrence
    // error below 1e-30
    static void fill(std::vector<DDComplex>& t, const BigComplex& w) {
        BigComplex cur(BigReal(1), BigReal(0));
        BigComplex w64 = w;
        for (int s = 0; s < 6; ++s) w64 = w64 * w64;
        DDComplex wd{dd_from(w.re), dd_from(w.im)};
        DDComplex cd{{1, 0}, {0, 0}};
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i % 64 == 0) {
                cd = {dd_from(cur.re), dd_from(cur.im)};
                cur = cur * w64;
            }
            t[i] = cd;
            cd = ddc_mul(cd, wd);
        }
    }

    std::int64_t D_ = 0, B_ = 1;
    int shift_ = 0;
    std::vector<DDComplex> small_, big_;
};

/// Accumulates sum_j e(j/D) over a stream of exponents: terms are added into
/// one bucket per high part of j, and each bucket is multiplied by its factor
/// once at the end.
class RootAccumulator {
public:
    void reset(const RootTable& t) {
        t_ = &t;
        buckets_.assign(t.big_size(), DDComplex{});
    }
    void add(std::int64_t j) {
        const std::int64_t mask = (std::int64_t(1) << t_->shift()) - 1;
        DDComplex& b = buckets_[j >> t_->shift()];
        const DDComplex& x = t_->small(j & mask);
        b.re = dd_add_sloppy(b.re, x.re);
        b.im = dd_add_sloppy(b.im, x.im);
    }
    DDComplex total() const {
        DDComplex s{};
        for (std::size_t u = 0; u < buckets_.size(); ++u) {
            const DDComplex& b = buckets_[u];
            if (b.re.hi == 0 && b.im.hi == 0 && b.re.lo == 0 && b.im.lo == 0) continue;
            ddc_acc(s, ddc_mul(t_->big(static_cast<std::int64_t>(u)), b));
        }
        return s;
    }

private:
    const RootTable* t_ = nullptr;
    std::vector<DDComplex> buckets_;
};

}  // namespace m24rad
