#pragma once

// The kernel H, the extension operator Q and its adjoint S on the ball, the
// radial special functions d, phi_l, w_l, and the dual objects 1~ and d~.
//
// Radial profiles are handled in the variable t = r^2.  Every profile in this
// family behaves like (1-t)^E near the boundary with E = params.edge(); the
// bounded remainder is what gets sampled, and the (1-t)^E factor goes into
// the weight of a matched Gauss-Jacobi rule.

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "confext/conformal.hpp"
#include "confext/geometry.hpp"
#include "confext/params.hpp"
#include "confext/specfun.hpp"

namespace confext {

inline double kernel_H(const Params& par, const Vec& xi, const Vec& eta) {
    const double r2 = xi.squaredNorm();
    if (r2 >= 1.0) throw std::domain_error("kernel_H: xi must be interior");
    const double dist = (xi - eta).norm();
    return std::pow(0.5 * (1.0 - r2), par.beta) * std::pow(dist, par.alpha - par.n);
}

// d(r) = pref * (1-r^2)^delta * F((n+alpha)/2-1, alpha/2; n/2; r^2)
inline double d_prefactor(const Params& par) {
    return std::pow(M_PI, 0.5 * par.n) * std::pow(2.0, 1.0 - par.beta) /
           gamma_fn(0.5 * par.n);
}

// bounded factor of d(sqrt(t)) after pulling out d_prefactor * (1-t)^edge;
// for alpha > 1 the transformed series keeps it bounded at t = 1
inline double d_bounded(const Params& par, double t) {
    const int n = par.n;
    const double a = par.alpha;
    if (a > 1.0) return hyp2f1(1.0 - 0.5 * a, 0.5 * (n - a), 0.5 * n, t);
    return hyp2f1(0.5 * (n + a) - 1.0, 0.5 * a, 0.5 * n, t);
}

inline double d_closed(const Params& par, double r) {
    if (!(r >= 0.0) || r >= 1.0) throw std::domain_error("d_closed: need 0 <= r < 1");
    const double t = r * r;
    return d_prefactor(par) * std::pow(1.0 - t, par.edge()) * d_bounded(par, t);
}

// phi_l(t) = Gamma(l+(n-alpha)/2)/Gamma(l+n/2) F(l+(n+alpha)/2-1, alpha/2; l+n/2; t)
inline double phi_l(const Params& par, int l, double t) {
    const int n = par.n;
    const double a = par.alpha;
    const double ratio = std::exp(ln_gamma(l + 0.5 * (n - a)) - ln_gamma(l + 0.5 * n));
    return ratio * hyp2f1(l + 0.5 * (n + a) - 1.0, 0.5 * a, l + 0.5 * n, t);
}

// shared prefactor of the radial mode profiles: w_l(r) = mode_prefactor *
// (1-t)^edge * t^{l/2} * mode_bounded(l, t)
inline double mode_prefactor(const Params& par) {
    return std::pow(2.0, 1.0 - par.beta) * std::pow(M_PI, 0.5 * par.n) /
           gamma_fn(0.5 * (par.n - par.alpha));
}

inline double mode_bounded(const Params& par, int l, double t) {
    const int n = par.n;
    const double a = par.alpha;
    const double ratio = std::exp(ln_gamma(l + 0.5 * (n - a)) - ln_gamma(l + 0.5 * n));
    if (a > 1.0)
        return ratio * hyp2f1(1.0 - 0.5 * a, l + 0.5 * (n - a), l + 0.5 * n, t);
    return ratio * hyp2f1(l + 0.5 * (n + a) - 1.0, 0.5 * a, l + 0.5 * n, t);
}

// w_l(r) = 2^{1-beta} pi^{n/2} Gamma((n-alpha)/2+l) / (Gamma((n-alpha)/2)
//           Gamma(n/2+l)) (1-r^2)^{beta+alpha-1} r^l F(l+(n+alpha)/2-1,
//           alpha/2; l+n/2; r^2)
inline double w_l_closed(const Params& par, int l, double r) {
    if (!(r >= 0.0) || r >= 1.0) throw std::domain_error("w_l_closed: need 0 <= r < 1");
    const double t = r * r;
    return mode_prefactor(par) * std::pow(1.0 - t, par.edge()) * std::pow(t, 0.5 * l) *
           mode_bounded(par, l, t);
}

// A function on the ball stored as per-mode radial profiles.  All modes share
// the boundary exponent `edge`; `smooth` holds the bounded factors in t=r^2.
struct BallField {
    Params params;
    double edge = 0.0;
    std::map<std::pair<int, int>, std::function<double(double)>> smooth;

    double mode_value(int l, int k, double r) const {
        auto it = smooth.find({l, k});
        if (it == smooth.end()) return 0.0;
        const double t = r * r;
        return std::pow(1.0 - t, edge) * it->second(t);
    }

    double value(const Geometry& geom, const Vec& xi) const {
        const double r = xi.norm();
        const double t = r * r;
        double acc = 0.0;
        const Basis& basis = geom.basis();
        Vec eta = r > 1e-14 ? Vec(xi / r) : unit_vector(params.n, 0);
        for (const auto& [lk, fn] : smooth) {
            const std::size_t idx = basis.offset(lk.first) + (lk.second - 1);
            acc += fn(t) * basis.eval(idx, eta);
        }
        return std::pow(1.0 - t, edge) * acc;
    }
};

// Q(u) mode-wise: the coefficient of Y_{l,k} is a_{l,k} w_l(r).
inline BallField apply_Q(const Params& par, const HarmonicExpansion& u, const Geometry& geom) {
    par.require_valid();
    BallField field;
    field.params = par;
    field.edge = par.edge();
    const double pref = mode_prefactor(par);
    const Basis& basis = geom.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double a = u.coeffs[i];
        if (a == 0.0) continue;
        const int l = basis.entry(i).l;
        const int k = basis.entry(i).k;
        field.smooth[{l, k}] = [par, pref, l, a](double t) {
            return a * pref * std::pow(t, 0.5 * l) * mode_bounded(par, l, t);
        };
    }
    return field;
}

// brute-force route: Q(u)(xi) by sphere quadrature of the kernel
inline double apply_Q_quadrature(const Params& par, const HarmonicExpansion& u,
                                 const Geometry& geom, const Vec& xi) {
    const SphereRule& rule = geom.sphere();
    const Eigen::VectorXd uvals = geom.basis_values().transpose() * u.coeffs;
    double acc = 0.0;
    for (std::size_t p = 0; p < rule.points.size(); ++p)
        acc += rule.weights[p] * kernel_H(par, xi, rule.points[p]) * uvals[p];
    return acc;
}

// S(v): coefficient of Y_{l,k} is int_0^1 psi_{l,k}(r) w_l(r) r^{n-1} dr
inline HarmonicExpansion apply_S(const Params& par, const BallField& v, const Geometry& geom) {
    par.require_valid();
    HarmonicExpansion out;
    out.n = par.n;
    out.L = geom.max_degree();
    out.coeffs = Eigen::VectorXd::Zero(geom.basis().size());
    const double pref = mode_prefactor(par);
    const double hi = par.edge() + v.edge;
    const double lo = 0.5 * par.n - 1.0;
    for (const auto& [lk, fn] : v.smooth) {
        const int l = lk.first;
        if (l > geom.max_degree()) continue;
        const double integral = geom.edge_integral(hi, lo, [&](double t) {
            return fn(t) * pref * std::pow(t, 0.5 * l) * mode_bounded(par, l, t);
        });
        const std::size_t idx = geom.basis().offset(l) + (lk.second - 1);
        out.coeffs[idx] = 0.5 * integral;
    }
    return out;
}

// int_B d^q = |S^{n-1}| * (1/2) * int (1-t)^{q edge} t^{n/2-1} (pref *
// d_bounded)^q dt; radial only, no sphere rule needed
inline double d_q_integral(const Params& par, int m = 256) {
    par.require_valid();
    const QuadratureRule rule = gauss_jacobi(m, par.q * par.edge(), 0.5 * par.n - 1.0);
    const double inner =
        rule.integrate([&](double t) { return std::pow(d_bounded(par, t), par.q); });
    return sphere_area(par.n) * 0.5 * std::pow(d_prefactor(par), par.q) * inner;
}

// The dual extremal 1~ and the constant d~ = S(1~).
struct DualExtremal {
    Params params;
    double d_q_int = 0.0;   // int_B d^q
    double mean_d_q = 0.0;  // normalized integral of d^q
    double tilde_d = 0.0;   // n^{-1} (mean)^{1/q}
    double scale = 0.0;     // (mean)^{(1-q)/q}

    // 1~(r); satisfies ||1~||_{L^{q'}} = |B^n|^{1/q'}
    double value(double r) const {
        return scale * std::pow(d_closed(params, r), params.q - 1.0);
    }

    double boundary_exponent() const { return (params.q - 1.0) * params.edge(); }

    // modal form: a single (0,1) radial mode
    BallField field() const {
        BallField out;
        out.params = params;
        out.edge = boundary_exponent();
        const double amp = scale * std::pow(d_prefactor(params), params.q - 1.0) *
                           std::sqrt(sphere_area(params.n));
        const Params par = params;
        out.smooth[{0, 1}] = [par, amp](double t) {
            return amp * std::pow(d_bounded(par, t), par.q - 1.0);
        };
        return out;
    }
};

inline DualExtremal dual_extremal(const Params& par, int m = 256) {
    par.require_valid();
    DualExtremal dual;
    dual.params = par;
    dual.d_q_int = d_q_integral(par, m);
    dual.mean_d_q = dual.d_q_int / ball_volume(par.n);
    dual.tilde_d = std::pow(dual.mean_d_q, 1.0 / par.q) / par.n;
    dual.scale = std::pow(dual.mean_d_q, (1.0 - par.q) / par.q);
    return dual;
}

// ---------------------------------------------------------------------------
// half-space extension operator E and its boundary behavior

struct SupportBox {
    double radius = 3.0;  // f is negligible outside |y'| <= radius
};

// E(f)(x) = int x_n^beta f(y') / (x_n^2+|x'-y'|^2)^{(n-alpha)/2} dy'
// integrated in polar coordinates around x' with dyadically refined radial
// panels, so the kernel peak at scale x_n is resolved.
template <typename F>
double extension_E(const Params& par, F&& f, const SupportBox& box, const Vec& x) {
    const int n = par.n;
    const int d = n - 1;
    if (d != 2 && d != 3)
        throw std::domain_error("extension_E: implemented for n = 3 and n = 4");
    const double xn = x[n - 1];
    if (!(xn > 0.0)) throw std::domain_error("extension_E: x_n > 0 required");
    Vec xprime(d);
    for (int i = 0; i < d; ++i) xprime[i] = x[i];

    const double rmax = box.radius + xprime.norm() + 1.0;
    std::vector<double> cuts;
    cuts.push_back(0.0);
    double edge = std::min(xn, rmax);
    while (edge < rmax) {
        cuts.push_back(edge);
        edge *= 2.0;
    }
    cuts.push_back(rmax);

    // angular rule around x'
    std::vector<Vec> dirs;
    std::vector<double> dir_w;
    if (d == 2) {
        const int m_theta = 64;
        for (int j = 0; j < m_theta; ++j) {
            const double th = 2.0 * M_PI * j / m_theta;
            Vec w(2);
            w << std::cos(th), std::sin(th);
            dirs.push_back(w);
            dir_w.push_back(2.0 * M_PI / m_theta);
        }
    } else {
        const SphereRule ang = sphere_rule(3, 24);
        for (std::size_t j = 0; j < ang.points.size(); ++j) {
            dirs.push_back(ang.points[j]);
            dir_w.push_back(ang.weights[j]);
        }
    }

    const QuadratureRule panel = gauss_legendre(24);
    double acc = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        for (std::size_t i = 0; i < panel.nodes.size(); ++i) {
            const double rho = 0.5 * (a + b) + 0.5 * (b - a) * panel.nodes[i];
            const double wr = 0.5 * (b - a) * panel.weights[i];
            const double kernel = std::pow(xn * xn + rho * rho, -0.5 * (n - par.alpha));
            double fsum = 0.0;
            for (std::size_t j = 0; j < dirs.size(); ++j)
                fsum += dir_w[j] * f(Vec(xprime + rho * dirs[j]));
            acc += wr * std::pow(rho, d - 1) * kernel * fsum;
        }
    }
    return std::pow(xn, par.beta) * acc;
}

struct BoundaryLimit {
    double scaled_value = 0.0;  // x_n^{1-alpha-beta} E (alpha<1), or
                                // -x_n^{-beta} E / log x_n (alpha=1)
    double constant = 0.0;      // the predicted boundary constant times f(x')
    double ratio = 0.0;
};

// compares the scaled extension against the predicted trace constant
template <typename F>
BoundaryLimit boundary_limit_check(const Params& par, F&& f, const SupportBox& box,
                                   const Vec& xprime, double xn) {
    if (par.alpha > 1.0)
        throw std::domain_error("boundary_limit_check: alpha > 1 unsupported");
    const int n = par.n;
    Vec x(n);
    for (int i = 0; i < n - 1; ++i) x[i] = xprime[i];
    x[n - 1] = xn;
    const double e_val = extension_E(par, f, box, x);
    BoundaryLimit out;
    if (par.alpha < 1.0) {
        out.scaled_value = std::pow(xn, 1.0 - par.alpha - par.beta) * e_val;
        out.constant = std::pow(M_PI, 0.5 * (n - 1)) *
                       std::exp(ln_gamma(0.5 * (1.0 - par.alpha)) -
                                ln_gamma(0.5 * (n - par.alpha))) *
                       f(xprime);
    } else {
        out.scaled_value = -std::pow(xn, -par.beta) * e_val / std::log(xn);
        out.constant = sphere_area(n) * f(xprime);
    }
    out.ratio = out.scaled_value / out.constant;
    return out;
}

}  // namespace confext
