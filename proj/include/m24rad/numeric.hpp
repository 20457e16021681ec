// Numeric evaluation at a point of the upper half-plane: theta functions,
// the Appell-Lerch sum, Z(tau, z), eta products and truncated q-series.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "m24rad/bigreal.hpp"
#include "m24rad/pseries.hpp"

namespace m24rad {

template <class T>
struct JacobiPoint {
    Cx<T> tau;
    Cx<T> z;
};

namespace detail {

template <class T>
inline double eps_of() {
    if constexpr (std::is_same_v<T, BigReal>) return std::ldexp(1.0, -static_cast<int>(default_precision()));
    else return std::numeric_limits<T>::epsilon();
}

template <class T>
inline void require_upper(const Cx<T>& tau, const char* who) {
    if (!(to_double(tau.im) > 0)) throw std::domain_error(std::string(who) + ": Im tau must be positive");
}

// enough product factors for |q|^n below the working epsilon
template <class T>
inline int auto_terms(const Cx<T>& tau) {
    double y = to_double(tau.im);
    double n = -std::log(eps_of<T>()) / (2 * M_PI * y);
    return static_cast<int>(std::ceil(n)) + 8;
}

}  // namespace detail

/// theta_i(tau, z), i = 1..4, from the product formulas with `nterms` factors
/// (0 picks a count from Im tau). The neglected tail is O(|q|^nterms).
template <class T>
inline Cx<T> theta_numeric(int i, const JacobiPoint<T>& p, int nterms = 0) {
    detail::require_upper(p.tau, "theta_numeric");
    if (i < 1 || i > 4) throw std::domain_error("theta_numeric: index must be 1..4");
    if (nterms <= 0) nterms = detail::auto_terms(p.tau);
    const Cx<T> one(T(1));
    Cx<T> q = e_of(p.tau), y = e_of(p.z), yinv = e_of(-p.z);
    Cx<T> qh = e_of(p.tau * T(0.5));
    Cx<T> prod = one, qn = one;
    for (int n = 1; n <= nterms; ++n) {
        Cx<T> qprev = qn;  // q^{n-1}
        qn = qn * q;
        Cx<T> f = one - qn;
        switch (i) {
            case 1: f = f * (one - y * qn) * (one - yinv * qprev); break;
            case 2: f = f * (one + y * qn) * (one + yinv * qprev); break;
            case 3: f = f * (one + y * qprev * qh) * (one + yinv * qprev * qh); break;
            case 4: f = f * (one - y * qprev * qh) * (one - yinv * qprev * qh); break;
        }
        prod = prod * f;
    }
    if (i == 1 || i == 2) {
        // q^{1/8} y^{1/2}
        Cx<T> pre = e_of(p.tau * T(0.125) + p.z * T(0.5));
        prod = prod * pre;
        if (i == 1) prod = prod * Cx<T>(T(0), T(-1));
    }
    return prod;
}

/// eta(tau) = q^{1/24} prod (1 - q^n)
template <class T>
inline Cx<T> eta_numeric(const Cx<T>& tau, int nterms = 0) {
    detail::require_upper(tau, "eta_numeric");
    if (nterms <= 0) nterms = detail::auto_terms(tau);
    const Cx<T> one(T(1));
    Cx<T> q = e_of(tau), qn = one, prod = one;
    for (int n = 1; n <= nterms; ++n) {
        qn = qn * q;
        prod = prod * (one - qn);
    }
    return prod * e_of(tau * (T(1) / T(24)));
}

/// prod_s eta(i_s tau)^{l_s}
template <class T>
inline Cx<T> eta_quotient_numeric(const std::vector<std::pair<long, long>>& factors, const Cx<T>& tau) {
    Cx<T> r(T(1));
    for (auto& [i, l] : factors) {
        Cx<T> e = eta_numeric(tau * T(static_cast<double>(i)));
        Cx<T> f = l > 0 ? e : Cx<T>(T(1)) / e;
        for (long k = 0; k < std::abs(l); ++k) r = r * f;
    }
    return r;
}

/// mu(tau, z) = (-i y^{1/2} / theta_1) sum_l (-1)^l y^l q^{l(l+1)/2} / (1 - y q^l),
/// truncated at |l| <= lmax. Throws when a denominator 1 - y q^l is below
/// `pole_tol` in modulus.
template <class T>
inline Cx<T> mu_numeric(const JacobiPoint<T>& p, int lmax = 0, double pole_tol = 1e-12) {
    detail::require_upper(p.tau, "mu_numeric");
    if (lmax <= 0) lmax = static_cast<int>(std::ceil(std::sqrt(2.0 * detail::auto_terms(p.tau)))) + 4;
    const Cx<T> one(T(1));
    Cx<T> sum(T(0));
    for (int l = -lmax; l <= lmax; ++l) {
        Cx<T> lt(T(static_cast<double>(l)));
        Cx<T> den = one - e_of(p.z + p.tau * T(static_cast<double>(l)));
        if (to_double(den.abs()) < pole_tol) throw std::domain_error("mu_numeric: z is at or near a pole");
        // y^l q^{l(l+1)/2}
        Cx<T> num = e_of(p.z * T(static_cast<double>(l)) + p.tau * T(0.5 * l * (l + 1)));
        if (l % 2 != 0) num = -num;
        sum += num / den;
    }
    Cx<T> pre = Cx<T>(T(0), T(-1)) * e_of(p.z * T(0.5));
    return pre * sum / theta_numeric(1, p);
}

/// Z(tau, z) = 8 sum_{i=2,3,4} (theta_i(tau,z)/theta_i(tau,0))^2
template <class T>
inline Cx<T> z_jacobi_numeric(const JacobiPoint<T>& p, int nterms = 0) {
    JacobiPoint<T> p0{p.tau, Cx<T>(T(0))};
    Cx<T> s(T(0));
    for (int i = 2; i <= 4; ++i) {
        Cx<T> r = theta_numeric(i, p, nterms) / theta_numeric(i, p0, nterms);
        s += r * r;
    }
    return s * T(8);
}

/// sum c_e q^e over the known terms of `s`; q^e = e(e tau) on the principal branch
template <class T>
inline Cx<T> eval_series(const PSeries& s, const Cx<T>& tau) {
    Cx<T> sum(T(0));
    for (auto& [num, c] : s.terms()) {
        if constexpr (std::is_same_v<T, BigReal>) {
            sum += e_of(tau * BigReal(s.exponent_of(num))) * BigReal(c);
        } else {
            sum += e_of(tau * T(s.exponent_of(num).get_d())) * T(c.get_d());
        }
    }
    return sum;
}

/// |Z eta^3 - theta_1^2 (24 mu + H)| with H given as a truncated series
template <class T>
inline T jacobi_residual(const JacobiPoint<T>& p, const PSeries& h) {
    Cx<T> eta = eta_numeric(p.tau);
    Cx<T> t1 = theta_numeric(1, p);
    Cx<T> lhs = z_jacobi_numeric(p) * eta * eta * eta;
    Cx<T> rhs = t1 * t1 * (mu_numeric(p) * T(24) + eval_series(h, p.tau));
    return (lhs - rhs).abs();
}

}  // namespace m24rad
