#pragma once

// Gamma-family and Gauss hypergeometric evaluation on real arguments,
// restricted to what the rest of the library needs: z in [0,1], real
// parameters, double precision.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace confext {

namespace detail {

// Lanczos approximation, g = 7, 9 terms.
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

inline constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

inline double lanczos_ln_gamma(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return kLogSqrtTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail

inline double ln_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("ln_gamma: argument must be positive, got " +
                                std::to_string(x));
    if (x < 0.5) {
        // reflection keeps the Lanczos kernel on x >= 0.5
        return std::log(M_PI / std::sin(M_PI * x)) - detail::lanczos_ln_gamma(1.0 - x);
    }
    return detail::lanczos_ln_gamma(x);
}

// log|Gamma(x)| with the sign of Gamma(x); x may be any non-pole real.
inline double ln_gamma_signed(double x, int& sign) {
    if (detail::is_nonpositive_integer(x))
        throw std::domain_error("ln_gamma_signed: pole at nonpositive integer");
    if (x > 0.0) {
        sign = 1;
        return x < 0.5 ? std::log(M_PI / std::sin(M_PI * x)) - detail::lanczos_ln_gamma(1.0 - x)
                       : detail::lanczos_ln_gamma(x);
    }
    // Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    const double s = std::sin(M_PI * x);
    sign = s > 0.0 ? 1 : -1;
    return std::log(M_PI / std::fabs(s)) - detail::lanczos_ln_gamma(1.0 - x);
}

inline double gamma_fn(double x) {
    int sign = 1;
    const double lg = ln_gamma_signed(x, sign);
    return sign * std::exp(lg);
}

inline double digamma(double x) {
    if (detail::is_nonpositive_integer(x))
        throw std::domain_error("digamma: pole at nonpositive integer");
    double acc = 0.0;
    if (x < 0.5) {
        acc -= M_PI / std::tan(M_PI * x);
        x = 1.0 - x;
    }
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // asymptotic series, |error| < 3e-15 for x >= 12
    acc += std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
    return acc;
}

inline double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta_fn: arguments must be positive");
    return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

inline double pochhammer(double a, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= a + i;
    return acc;
}

struct HypArgs {
    double a;
    double b;
    double c;
    double z;
};

namespace detail {

inline void check_hyp_domain(double a, double b, double c, double z) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c must not be zero or a negative integer");
    if (!(z >= 0.0) || z > 1.0)
        throw std::domain_error("hyp2f1: z must lie in [0,1]");
    if (z == 1.0 && !(c - a - b > 0.0))
        throw std::domain_error("hyp2f1: divergent at z=1 unless c-a-b > 0");
}

// Plain power series. Converges for z < 1; practical up to z ~ 0.99.
inline double hyp_series(double a, double b, double c, double z, int max_terms = 40000) {
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::fabs(term) < 1e-17 * std::fabs(sum) && k > 4) return sum;
    }
    throw std::runtime_error("hyp2f1: series failed to converge");
}

// Terminating series when a or b is a nonpositive integer.
inline double hyp_polynomial(double a, double b, double c, double z) {
    if (is_nonpositive_integer(b) && (!is_nonpositive_integer(a) || b > a)) std::swap(a, b);
    const int terms = static_cast<int>(-a);
    double term = 1.0, sum = 1.0;
    for (int k = 0; k <= terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
    }
    return sum;
}

// Gauss summation at z = 1 (requires c-a-b > 0).
inline double hyp_gauss_value(double a, double b, double c) {
    int s1 = 1, s2 = 1;
    const double num = ln_gamma(c) + ln_gamma(c - a - b);
    const double den = ln_gamma_signed(c - a, s1) + ln_gamma_signed(c - b, s2);
    return s1 * s2 * std::exp(num - den);
}

double hyp_near_one(double a, double b, double c, double z);

inline double hyp_dispatch(double a, double b, double c, double z) {
    check_hyp_domain(a, b, c, z);
    if (z == 0.0) return 1.0;
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return hyp_polynomial(a, b, c, z);
    if (z == 1.0) return hyp_gauss_value(a, b, c);
    if (z <= 0.99) return hyp_series(a, b, c, z);
    return hyp_near_one(a, b, c, z);
}

// Connection formulas in w = 1-z for z close to 1.
inline double hyp_near_one(double a, double b, double c, double z) {
    double s = c - a - b;
    if (s < 0.0) {
        // flip the surplus sign first, then the s >= 0 machinery applies
        return std::pow(1.0 - z, s) * hyp_dispatch(c - a, c - b, c, z);
    }
    const double w = 1.0 - z;
    const double m_real = std::round(s);
    const int m = static_cast<int>(m_real);

    if (std::fabs(s - m_real) > 5e-9) {
        // generic two-series connection
        int sa = 1, sb = 1, sca = 1, scb = 1;
        const double lgc = ln_gamma(c);
        const double t1 = lgc + ln_gamma(s) - ln_gamma_signed(c - a, sca) - ln_gamma_signed(c - b, scb);
        int sgs = 1;
        const double lg_ms = ln_gamma_signed(-s, sgs);
        const double t2 = lgc + lg_ms - ln_gamma_signed(a, sa) - ln_gamma_signed(b, sb);
        const double f1 = hyp_series(a, b, 1.0 - s, w);
        const double f2 = hyp_series(c - a, c - b, 1.0 + s, w);
        return sca * scb * std::exp(t1) * f1 +
               sgs * sa * sb * std::exp(t2) * std::pow(w, s) * f2;
    }

    // integer (or nearly integer) surplus: logarithmic branch
    const double lw = std::log(w);
    double sum_log = 0.0;
    {
        double coef = 1.0;  // (a+m)_k (b+m)_k / (k! (k+m)!) * w^k, times 1/m! at k=0
        for (int i = 1; i <= m; ++i) coef /= i;
        double pa = a + m, pb = b + m;
        for (int k = 0; k < 2000; ++k) {
            const double bracket = lw - digamma(k + 1.0) - digamma(k + m + 1.0) +
                                   digamma(pa + k) + digamma(pb + k);
            const double term = coef * bracket;
            sum_log += term;
            if (std::fabs(term) < 1e-17 * std::fabs(sum_log) && k > 3) break;
            coef *= (pa + k) * (pb + k) / ((k + 1.0) * (k + m + 1.0)) * w;
        }
    }
    int sa = 1, sb = 1;
    const double lgc = ln_gamma(c);
    const double log_pref = lgc - ln_gamma_signed(a, sa) - ln_gamma_signed(b, sb);
    double value = -(sa * sb) * ((m % 2 == 0) ? 1.0 : -1.0) * std::exp(log_pref) *
                   std::pow(w, m) * sum_log;
    if (m > 0) {
        int sam = 1, sbm = 1;
        const double pre = ln_gamma(static_cast<double>(m)) + lgc -
                           ln_gamma_signed(a + m, sam) - ln_gamma_signed(b + m, sbm);
        double term = 1.0, finite = 1.0;
        for (int k = 0; k + 1 < m; ++k) {
            term *= (a + k) * (b + k) / ((1.0 - m + k) * (k + 1.0)) * w;
            finite += term;
        }
        value += sam * sbm * std::exp(pre) * finite;
    }
    return value;
}

}  // namespace detail

inline double hyp2f1(double a, double b, double c, double z) {
    return detail::hyp_dispatch(a, b, c, z);
}

inline double hyp2f1(const HypArgs& args) {
    return detail::hyp_dispatch(args.a, args.b, args.c, args.z);
}

// Residuals of the three classical identities, scaled by max(1, |F(a,b;c;z)|).
// first:  F(a,b;c;z) - (1-z)^{c-a-b} F(c-a,c-b;c;z)
// second: F(a+1,b;c;z) - F(a,b;c;z) - (b/c) z F(a+1,b+1;c+1;z)
// third:  F(a,b;c;z) - (b/c) F(a,b+1;c+1;z) - ((c-b)/c) F(a,b;c+1;z)
inline std::array<double, 3> contiguous_residuals(double a, double b, double c, double z) {
    const double f = hyp2f1(a, b, c, z);
    const double scale = std::max(1.0, std::fabs(f));
    const double r1 = f - std::pow(1.0 - z, c - a - b) * hyp2f1(c - a, c - b, c, z);
    const double r2 = hyp2f1(a + 1.0, b, c, z) - f - (b / c) * z * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
    const double r3 = f - (b / c) * hyp2f1(a, b + 1.0, c + 1.0, z) -
                      ((c - b) / c) * hyp2f1(a, b, c + 1.0, z);
    return {std::fabs(r1) / scale, std::fabs(r2) / scale, std::fabs(r3) / scale};
}

}  // namespace confext
