// Helpers shared by the test suites and the acceptance runner.
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "m24rad/m24rad.hpp"

namespace support {

using namespace m24rad;

/// Random element of Gamma0(N) with 0 < |c| <= c_bound (c a multiple of N)
/// and |d| <= d_bound.
inline Mat2 random_gamma0(std::mt19937_64& rng, long N, long c_bound, long d_bound) {
    std::uniform_int_distribution<long> cm(1, std::max(1L, c_bound / N));
    std::uniform_int_distribution<long> dd(-d_bound, d_bound);
    std::bernoulli_distribution sign(0.5);
    for (;;) {
        long c = N * cm(rng);
        if (sign(rng)) c = -c;
        long d = dd(rng);
        if (std::gcd(std::abs(c), std::abs(d)) != 1) continue;
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), Int(d).get_mpz_t(), Int(c).get_mpz_t());
        // s d + t c = g = 1 -> a = s, b = -t
        if (g != 1) continue;
        return Mat2(s, -t, Int(c), Int(d));
    }
}

/// Random element of SL2(Z) from a word in T^k and S.
inline Mat2 random_sl2(std::mt19937_64& rng, int length = 4, long kmax = 3) {
    std::uniform_int_distribution<long> k(-kmax, kmax);
    Mat2 g;
    for (int i = 0; i < length; ++i) g = g * Mat2::T(k(rng)) * Mat2::S();
    return g * Mat2::T(k(rng));
}

struct CommandResult {
    int status = -1;
    std::string out;
};

/// Run a shell command and capture stdout.
inline CommandResult run(const std::string& cmd) {
    CommandResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed: " + cmd);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

/// Angle between a real vector and the line spanned by w, allowing complex
/// entries in v (|<v, w>| / (|v| |w|)).
inline double angle_to(const std::vector<BigComplex>& v, const std::vector<double>& w) {
    double nv = 0, nw = 0, dre = 0, dim = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double re = to_double(v[i].re), im = to_double(v[i].im);
        nv += re * re + im * im;
        nw += w[i] * w[i];
        dre += re * w[i];
        dim += im * w[i];
    }
    if (nv == 0) return M_PI / 2;
    double c = std::sqrt(dre * dre + dim * dim) / std::sqrt(nv * nw);
    return std::acos(std::min(1.0, c));
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Distinct (n, h) pairs of the class table in first-seen order.
inline std::vector<GroupCtx> table_contexts() {
    std::vector<GroupCtx> out;
    for (auto& c : all_classes()) {
        GroupCtx g = c.ctx();
        bool seen = false;
        for (auto& o : out) seen = seen || o == g;
        if (!seen) out.push_back(g);
    }
    return out;
}

}  // namespace support
