// Exact q-expansions of the modular objects: eta, E2, Lambda_m, phi_23,
// theta specialisations at z = 1/2, and the mock modular form H.
#pragma once

#include "m24rad/pseries.hpp"

namespace m24rad {

/// eta(scale * tau) to the given order, via Euler's pentagonal series.
inline PSeries eta_series(long scale, const Rat& order) {
    if (scale <= 0) throw std::domain_error("eta_series: scale must be positive");
    PSeries s(order);
    // eta(s tau) = sum_k (-1)^k q^{s/24 + s k(3k-1)/2}
    for (long k = 0;; ++k) {
        bool any = false;
        for (long kk : {k, -k}) {
            if (k == 0 && kk != 0) continue;
            Rat e = make_rat(scale, 24) + make_rat(scale * kk * (3 * kk - 1), 2);
            if (e >= order) continue;
            any = true;
            s.add_term(Rat(e * 24).get_num().get_si(), Rat((kk % 2 == 0) ? 1 : -1));
            if (k == 0) break;
        }
        if (!any && k > 0) break;
    }
    return s;
}

/// eta(scale tau) from the truncated Euler product; reference for tests.
inline PSeries eta_series_product(long scale, const Rat& order) {
    Rat rel = order - make_rat(scale, 24);
    PSeries p = PSeries::constant(Rat(1), rel);
    for (long n = 1; Rat(scale * n) < rel; ++n) {
        PSeries f = PSeries::constant(Rat(1), rel);
        f.add_term(24 * scale * n, Rat(-1));
        p = p * f;
    }
    return p.shifted(make_rat(scale, 24));
}

/// prod_s eta(i_s tau)^{l_s}; each factor is expanded to the order needed
/// for the product to be known below `order`.
inline PSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, const Rat& order) {
    // margin 2 + 2 sum |i l|/24 covers the order lost to inversion and to
    // negative valuations of the other factors (factor scales stay below 48)
    Rat margin(2);
    for (auto& [i, l] : factors) margin += 2 * make_rat(i * std::abs(l), 24);
    PSeries r;
    bool first = true;
    for (auto& [i, l] : factors) {
        if (l == 0) continue;
        PSeries e = eta_series(i, order + margin);
        PSeries f = l > 0 ? e.pow(l) : e.pow(-l).inverse();
        r = first ? f : r * f;
        first = false;
    }
    if (first) return PSeries::constant(Rat(1), order);
    if (r.order() < order) throw std::logic_error("eta_quotient: insufficient working order");
    return r.truncated(order);
}

/// E2(scale tau) = 1 - 24 sum sigma(k) q^{scale k}
inline PSeries e2_series(long scale, const Rat& order) {
    PSeries s = PSeries::constant(Rat(1), order);
    for (long k = 1; Rat(scale * k) < order; ++k) s.add_term(24 * scale * k, Rat(-24 * sigma_divisors(k)));
    return s;
}

/// Lambda_m = m(m-1)/24 + sum_k m sigma(k) (q^k - m q^{mk})
inline PSeries lambda_series(long m, const Rat& order) {
    if (m < 2) throw std::domain_error("lambda_series: m >= 2 required");
    PSeries s = PSeries::constant(make_rat(m * (m - 1), 24), order);
    for (long k = 1; Rat(k) < order; ++k) {
        Rat sk(sigma_divisors(k));
        s.add_term(24 * k, Rat(m) * sk);
        if (Rat(m * k) < order) s.add_term(24 * m * k, -Rat(m * m) * sk);
    }
    return s;
}

/// (m/24)(m E2(m tau) - E2(tau)); the second form of Lambda_m.
inline PSeries lambda_series_e2(long m, const Rat& order) {
    return make_rat(m, 24) * (Rat(m) * e2_series(m, order) - e2_series(1, order));
}

/// phi_{23,1} = eta(tau)^2 eta(23 tau)^2, or phi_{23,2} (which = 2).
inline PSeries phi23_series(int which, const Rat& order) {
    if (which == 1) return eta_quotient({{1, 2}, {23, 2}}, order);
    if (which != 2) throw std::domain_error("phi23_series: which must be 1 or 2");
    return eta_quotient({{1, 3}, {23, 3}, {2, -1}, {46, -1}}, order) +
           Rat(4) * eta_quotient({{1, 1}, {2, 1}, {23, 1}, {46, 1}}, order) +
           Rat(4) * eta_quotient({{2, 2}, {46, 2}}, order);
}

namespace detail {

// prod_{n>=1} (1 + sgn q^{n - shift})^{power}, shift in {0, 1/2}
inline PSeries product_series(const Rat& shift, int sgn, long power, const Rat& order) {
    PSeries p = PSeries::constant(Rat(1), order);
    for (long n = 1; Rat(n) - shift < order; ++n) {
        PSeries f = PSeries::constant(Rat(1), order);
        f.add_term(Rat((Rat(n) - shift) * 24).get_num().get_si(), Rat(sgn));
        for (long k = 0; k < power; ++k) p = p * f;
    }
    return p;
}

}  // namespace detail

/// theta_1(tau, 1/2)^2 = 4 q^{1/4} prod (1-q^n)^2 (1+q^n)^4
inline PSeries theta1_half_sq_series(const Rat& order) {
    Rat rel = order - make_rat(1, 4);
    PSeries p = detail::product_series(Rat(0), -1, 2, rel) * detail::product_series(Rat(0), 1, 4, rel);
    return Rat(4) * p.shifted(make_rat(1, 4));
}

/// theta_1(tau, 1/2) = 2 q^{1/8} prod (1-q^n)(1+q^n)^2
inline PSeries theta1_half_series(const Rat& order) {
    Rat rel = order - make_rat(1, 8);
    PSeries p = detail::product_series(Rat(0), -1, 1, rel) * detail::product_series(Rat(0), 1, 2, rel);
    return Rat(2) * p.shifted(make_rat(1, 8));
}

/// theta_3(tau, 0) and theta_4(tau, 0)
inline PSeries theta3_zero_series(const Rat& order) {
    return detail::product_series(Rat(0), -1, 1, order) * detail::product_series(make_rat(1, 2), 1, 2, order);
}
inline PSeries theta4_zero_series(const Rat& order) {
    return detail::product_series(Rat(0), -1, 1, order) * detail::product_series(make_rat(1, 2), -1, 2, order);
}

/// Z(tau, 1/2) = 8 ((theta4/theta3)^2 + (theta3/theta4)^2) at z = 0
/// (theta2(tau,1/2) vanishes, theta3 and theta4 swap at the half period).
inline PSeries z_half_series(const Rat& order) {
    PSeries t3 = theta3_zero_series(order), t4 = theta4_zero_series(order);
    PSeries r = t4 / t3, s = t3 / t4;
    return Rat(8) * (r * r + s * s);
}

/// mu(tau, 1/2) = (1/theta_1(tau,1/2)) (1/2 + 2 sum_{l>=1} q^{l(l+1)/2}/(1+q^l))
inline PSeries mu_half_series(const Rat& order) {
    Rat rel = order + make_rat(1, 8);
    PSeries s = PSeries::constant(make_rat(1, 2), rel);
    for (long l = 1; make_rat(l * (l + 1), 2) < rel; ++l) {
        // q^{l(l+1)/2} sum_j (-1)^j q^{lj}
        for (long j = 0;; ++j) {
            Rat e(l * (l + 1) / 2 + l * j);
            if (e >= rel) break;
            s.add_term(24 * (l * (l + 1) / 2 + l * j), Rat(j % 2 == 0 ? 2 : -2));
        }
    }
    return (s * theta1_half_series(rel + make_rat(1, 4)).inverse()).truncated(order);
}

/// H(tau) = Z(tau,1/2) eta^3 / theta_1(tau,1/2)^2 - 24 mu(tau,1/2)
inline PSeries h_series(const Rat& order) {
    Rat o = order + make_rat(1, 2);
    PSeries eta3 = eta_series(1, o).pow(3);
    PSeries z = z_half_series(o);
    PSeries t1sq = theta1_half_sq_series(o + make_rat(1, 2));
    PSeries h = z * eta3 / t1sq - Rat(24) * mu_half_series(o);
    return h.truncated(order);
}

}  // namespace m24rad
