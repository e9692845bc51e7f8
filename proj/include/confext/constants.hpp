#pragma once

// The scalar constants of the family: sharp constant, spectral-gap constant,
// the quadratic-form coefficients A_l, the dual constant d~, and the
// large-l decay fit of A_l.  Everything here is radial; no sphere rule is
// involved, so any n >= 3 is cheap.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "confext/operators.hpp"
#include "confext/params.hpp"
#include "confext/quadrature.hpp"
#include "confext/specfun.hpp"

namespace confext {

// A_l = (Gamma(l+(n-a)/2)/Gamma(l+n/2))^2 *
//       int_0^1 d^{q-2}(sqrt t) (1-t)^{2(beta+alpha-1)} t^{n/2+l-1} F_l(t)^2 dt
// with the (1-t) powers of d and F_l pulled into the Jacobi weight: the
// combined endpoint exponent is q*edge (q(beta+alpha-1) for alpha < 1, q*beta
// for alpha > 1).
inline double A_l(const Params& par, int l, int m = 160) {
    par.require_valid();
    const int n = par.n;
    const double a = par.alpha;
    const double log_ratio = 2.0 * (ln_gamma(l + 0.5 * (n - a)) - ln_gamma(l + 0.5 * n));
    const QuadratureRule rule =
        gauss_jacobi(m, par.q * par.edge(), 0.5 * n + l - 1.0);
    const double dq_pref = std::pow(d_prefactor(par), par.q - 2.0);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double f0 = d_bounded(par, t);
        double fl;
        if (a > 1.0)
            fl = hyp2f1(1.0 - 0.5 * a, l + 0.5 * (n - a), l + 0.5 * n, t);
        else
            fl = hyp2f1(l + 0.5 * (n + a) - 1.0, 0.5 * a, l + 0.5 * n, t);
        integral += rule.weights[i] * std::pow(f0, par.q - 2.0) * fl * fl;
    }
    return std::exp(log_ratio) * dq_pref * integral;
}

// pi^n 2^{1-2beta} / Gamma((n-alpha)/2)^2, the prefactor converting A_l to
// the mode-l value of the weighted quadratic form
inline double gap_form_prefactor(const Params& par) {
    const double lg = ln_gamma(0.5 * (par.n - par.alpha));
    return std::pow(M_PI, par.n) * std::pow(2.0, 1.0 - 2.0 * par.beta) * std::exp(-2.0 * lg);
}

// 1/K_{n,alpha,beta} = gap_form_prefactor * A_2
inline double K_inv(const Params& par, int m = 256) {
    return gap_form_prefactor(par) * A_l(par, 2, m);
}

// c_{alpha,beta} = |S^{n-1}|^{-1/p} ||d||_{L^q(B^n)}
inline double c_sharp(const Params& par, int m = 256) {
    par.require_valid();
    return std::pow(sphere_area(par.n), -1.0 / par.p) *
           std::pow(d_q_integral(par, m), 1.0 / par.q);
}

struct ConstantSet {
    Params params;
    double c_sharp = 0.0;
    double K_inv = 0.0;
    double d_q_integral = 0.0;
    double tilde_d = 0.0;
    std::vector<double> A;   // A_0 .. A_lmax
    double gap_lhs_A1 = 0.0; // gap_form_prefactor * A_1
    double gap_rhs = 0.0;    // (p-1)/(q-1) * int d^q / |S^{n-1}|
};

inline ConstantSet compute_constants(const Params& par, int lmax = 10, int m = 256) {
    par.require_valid();
    ConstantSet cs;
    cs.params = par;
    cs.d_q_integral = d_q_integral(par, m);
    cs.c_sharp = std::pow(sphere_area(par.n), -1.0 / par.p) *
                 std::pow(cs.d_q_integral, 1.0 / par.q);
    cs.A.resize(lmax + 1);
    for (int l = 0; l <= lmax; ++l) cs.A[l] = A_l(par, l, m);
    const double pref = gap_form_prefactor(par);
    cs.K_inv = pref * cs.A[2];
    cs.gap_lhs_A1 = pref * cs.A[1];
    cs.gap_rhs = (par.p - 1.0) / (par.q - 1.0) * cs.d_q_integral / sphere_area(par.n);
    cs.tilde_d = std::pow(cs.d_q_integral / ball_volume(par.n), 1.0 / par.q) / par.n;
    return cs;
}

struct DecayFit {
    double fitted_slope = 0.0;
    double target_slope = 0.0;
    double epsilon_slack = 0.0;  // nonzero only for alpha = 1
};

// least-squares slope of log A_l against log l over l in [l_max/2, l_max]
inline DecayFit decay_fit(const Params& par, int l_max = 200, int m = 128) {
    par.require_valid();
    if (l_max < 50) throw std::invalid_argument("decay_fit: l_max >= 50 required");
    DecayFit fit;
    if (par.alpha < 1.0)
        fit.target_slope = -(1.0 + par.q * (par.alpha + par.beta - 1.0));
    else
        fit.target_slope = -(1.0 + par.q * par.beta);
    if (par.alpha == 1.0) fit.epsilon_slack = 0.05;

    std::vector<double> xs, ys;
    for (int l = l_max / 2; l <= l_max; l += 2) {
        const double al = A_l(par, l, m);
        if (!(al > 0.0)) throw std::runtime_error("decay_fit: nonpositive A_l");
        xs.push_back(std::log(static_cast<double>(l)));
        ys.push_back(std::log(al));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    fit.fitted_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return fit;
}

}  // namespace confext
