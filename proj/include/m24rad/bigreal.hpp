// MPFR-backed real numbers and a small complex template shared with double.
#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "m24rad/phase_arith.hpp"

namespace m24rad {

inline mpfr_prec_t& default_precision_ref() {
    thread_local mpfr_prec_t p = 128;
    return p;
}

inline mpfr_prec_t default_precision() { return default_precision_ref(); }
inline void set_default_precision(mpfr_prec_t bits) { default_precision_ref() = bits; }

// RAII override of the thread default precision
class PrecisionScope {
public:
    explicit PrecisionScope(mpfr_prec_t bits) : saved_(default_precision()) { set_default_precision(bits); }
    ~PrecisionScope() { set_default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

/// Arbitrary precision real. Results of binary operations carry the larger
/// operand precision, so precision never drops silently.
class BigReal {
public:
    BigReal() { mpfr_init2(v_, default_precision()); mpfr_set_zero(v_, 1); }
    BigReal(double x) { mpfr_init2(v_, default_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigReal(int x) : BigReal(static_cast<long>(x)) {}
    BigReal(long x) { mpfr_init2(v_, default_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigReal(long long x) : BigReal(static_cast<long>(x)) {}
    BigReal(const Int& z) { mpfr_init2(v_, default_precision()); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    BigReal(const Rat& q) { mpfr_init2(v_, default_precision()); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    BigReal(const std::string& s) {
        mpfr_init2(v_, default_precision());
        mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
    }
    static BigReal with_prec(mpfr_prec_t bits) {
        BigReal r(Uninit{}, bits);
        mpfr_set_zero(r.v_, 1);
        return r;
    }

    BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    explicit operator double() const { return to_double(); }

    std::string str(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 2;
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

#define M24RAD_BINOP(op, fn)                                                      \
    friend BigReal operator op(const BigReal& x, const BigReal& y) {              \
        BigReal r(Uninit{}, std::max(x.prec(), y.prec()));                        \
        fn(r.v_, x.v_, y.v_, MPFR_RNDN);                                          \
        return r;                                                                 \
    }                                                                             \
    BigReal& operator op##=(const BigReal& y) {                                   \
        if (y.prec() > prec()) mpfr_prec_round(v_, y.prec(), MPFR_RNDN);          \
        fn(v_, v_, y.v_, MPFR_RNDN);                                              \
        return *this;                                                             \
    }
    M24RAD_BINOP(+, mpfr_add)
    M24RAD_BINOP(-, mpfr_sub)
    M24RAD_BINOP(*, mpfr_mul)
    M24RAD_BINOP(/, mpfr_div)
#undef M24RAD_BINOP

    friend BigReal operator-(const BigReal& x) {
        BigReal r(Uninit{}, x.prec());
        mpfr_neg(r.v_, x.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigReal& x, const BigReal& y) { return mpfr_less_p(x.v_, y.v_); }
    friend bool operator>(const BigReal& x, const BigReal& y) { return mpfr_greater_p(x.v_, y.v_); }
    friend bool operator<=(const BigReal& x, const BigReal& y) { return mpfr_lessequal_p(x.v_, y.v_); }
    friend bool operator>=(const BigReal& x, const BigReal& y) { return mpfr_greaterequal_p(x.v_, y.v_); }
    friend bool operator==(const BigReal& x, const BigReal& y) { return mpfr_equal_p(x.v_, y.v_); }
    friend bool operator!=(const BigReal& x, const BigReal& y) { return !mpfr_equal_p(x.v_, y.v_); }

#define M24RAD_UNARY(name, fn)                      \
    friend BigReal name(const BigReal& x) {         \
        BigReal r(Uninit{}, x.prec());              \
        fn(r.v_, x.v_, MPFR_RNDN);                  \
        return r;                                   \
    }
    M24RAD_UNARY(sin, mpfr_sin)
    M24RAD_UNARY(cos, mpfr_cos)
    M24RAD_UNARY(sinh, mpfr_sinh)
    M24RAD_UNARY(cosh, mpfr_cosh)
    M24RAD_UNARY(exp, mpfr_exp)
    M24RAD_UNARY(log, mpfr_log)
    M24RAD_UNARY(sqrt, mpfr_sqrt)
    M24RAD_UNARY(abs, mpfr_abs)
    M24RAD_UNARY(expm1, mpfr_expm1)
    M24RAD_UNARY(lgamma_pos, mpfr_lngamma)
    M24RAD_UNARY(tgamma, mpfr_gamma)
#undef M24RAD_UNARY

    friend BigReal atan2(const BigReal& y, const BigReal& x) {
        BigReal r(Uninit{}, std::max(x.prec(), y.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal pow(const BigReal& x, const BigReal& y) {
        BigReal r(Uninit{}, std::max(x.prec(), y.prec()));
        mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal floor(const BigReal& x) {
        BigReal r(Uninit{}, x.prec());
        mpfr_floor(r.v_, x.v_);
        return r;
    }
    friend BigReal round(const BigReal& x) {
        BigReal r(Uninit{}, x.prec());
        mpfr_round(r.v_, x.v_);
        return r;
    }
    // sin(2 pi x), cos(2 pi x) with exact reduction of the argument
    friend void sincos_2pi(const BigReal& x, BigReal& s, BigReal& c) {
        mpfr_prec_t p = x.prec();
        s = BigReal::with_prec(p);
        c = BigReal::with_prec(p);
        mpfr_sin_cos(s.v_, c.v_, (BigReal::pi(p) * 2 * x).v_, MPFR_RNDN);
    }

    static BigReal pi(mpfr_prec_t bits = 0) {
        BigReal r(Uninit{}, bits ? bits : default_precision());
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

private:
    struct Uninit {};
    BigReal(Uninit, mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    mpfr_t v_;
};

inline double to_double(double x) { return x; }
inline double to_double(const BigReal& x) { return x.to_double(); }

template <class T>
inline T int_to(const Int& z) {
    if constexpr (std::is_same_v<T, BigReal>) return BigReal(z);
    else return static_cast<T>(z.get_d());
}

template <class T>
inline T pi_of() {
    if constexpr (std::is_same_v<T, BigReal>) return BigReal::pi();
    else return T(3.14159265358979323846264338327950288L);
}

/// Complex numbers over double or BigReal. std::complex is only specified for
/// the built-in floating types, so this carries the handful of operations the
/// library needs.
template <class T>
struct Cx {
    T re, im;
    Cx() : re(0), im(0) {}
    Cx(const T& r) : re(r), im(0) {}
    Cx(const T& r, const T& i) : re(r), im(i) {}
    template <class U, class = std::enable_if_t<!std::is_same_v<U, T> && std::is_arithmetic_v<U>>>
    Cx(U r) : re(static_cast<double>(r)), im(0) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(const Cx& a, const T& s) { return {a.re * s, a.im * s}; }
    friend Cx operator*(const T& s, const Cx& a) { return {a.re * s, a.im * s}; }
    friend Cx operator/(const Cx& a, const T& s) { return {a.re / s, a.im / s}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        T den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Cx& operator+=(const Cx& b) { re += b.re; im += b.im; return *this; }
    Cx& operator-=(const Cx& b) { re -= b.re; im -= b.im; return *this; }
    Cx& operator*=(const Cx& b) { *this = *this * b; return *this; }

    Cx conj() const { return {re, -im}; }
    T norm() const { return re * re + im * im; }
    T abs() const {
        using std::sqrt;
        return sqrt(norm());
    }
    T arg() const {
        using std::atan2;
        return atan2(im, re);
    }
};

using BigComplex = Cx<BigReal>;

template <class T>
inline Cx<T> cexp(const Cx<T>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    T m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// principal branch
template <class T>
inline Cx<T> clog(const Cx<T>& z) {
    using std::log;
    return {log(z.abs()), z.arg()};
}

// principal branch z^s for real s
template <class T>
inline Cx<T> cpow(const Cx<T>& z, const T& s) {
    if (to_double(z.abs()) == 0.0) return Cx<T>(T(0));
    return cexp(clog(z) * s);
}

template <class T>
inline Cx<T> csqrt(const Cx<T>& z) {
    return cpow(z, T(0.5));
}

/// e(x) = exp(2 pi i x) for real x.
template <class T>
inline Cx<T> e_of(const T& x) {
    if constexpr (std::is_same_v<T, BigReal>) {
        BigReal s, c;
        sincos_2pi(x, s, c);
        return {c, s};
    } else {
        T a = 2 * pi_of<T>() * x;
        return {std::cos(a), std::sin(a)};
    }
}

/// e(z) for complex z.
template <class T>
inline Cx<T> e_of(const Cx<T>& z) {
    Cx<T> two_pi_i(T(0), 2 * pi_of<T>());
    return cexp(two_pi_i * z);
}

template <class T>
inline Cx<T> to_complex(const PhaseExp& p) {
    if constexpr (std::is_same_v<T, BigReal>) {
        return e_of(BigReal(p.exponent()));
    } else {
        return e_of(static_cast<T>(p.exponent().get_d()));
    }
}

}  // namespace m24rad
