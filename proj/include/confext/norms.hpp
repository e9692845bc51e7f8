#pragma once

// L^p norms on the sphere and weighted L^s norms on the ball.  Ball
// integrands carry a known (1-t)^edge boundary factor which is folded into a
// matched Jacobi weight.

#include <cmath>
#include <functional>

#include "confext/geometry.hpp"
#include "confext/operators.hpp"

namespace confext {

template <typename F>
double sphere_integral(const Geometry& geom, F&& f) {
    return geom.sphere().integrate(std::forward<F>(f));
}

template <typename F>
double lp_norm_sphere(const Geometry& geom, F&& f, double p) {
    const double val = geom.sphere().integrate(
        [&](const Vec& eta) { return std::pow(std::fabs(f(eta)), p); });
    return std::pow(val, 1.0 / p);
}

inline double lp_norm_sphere(const Geometry& geom, const HarmonicExpansion& u, double p) {
    const Eigen::VectorXd vals = geom.basis_values().transpose() * u.coeffs;
    double acc = 0.0;
    for (std::size_t i = 0; i < geom.sphere().points.size(); ++i)
        acc += geom.sphere().weights[i] * std::pow(std::fabs(vals[i]), p);
    return std::pow(acc, 1.0 / p);
}

// int_B |v|^s for a modal field: (1/2) int t^{n/2-1} (1-t)^{s*edge} G(t) dt
// with G the sphere integral of the bounded part raised to s
inline double ball_integral_pow(const Geometry& geom, const BallField& v, double s, int m = 0) {
    const double hi = s * v.edge;
    const double lo = 0.5 * geom.n() - 1.0;
    const QuadratureRule& rule = geom.radial_rule(hi, lo, m);
    const SphereRule& sph = geom.sphere();
    const Eigen::MatrixXd& bv = geom.basis_values();

    std::vector<std::pair<std::size_t, const std::function<double(double)>*>> modes;
    for (const auto& [lk, fn] : v.smooth)
        modes.emplace_back(geom.basis().offset(lk.first) + (lk.second - 1), &fn);

    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        Eigen::VectorXd coef = Eigen::VectorXd::Zero(geom.basis().size());
        for (const auto& [idx, fn] : modes) coef[idx] = (*fn)(t);
        const Eigen::VectorXd vals = bv.transpose() * coef;
        double g = 0.0;
        for (std::size_t p = 0; p < sph.points.size(); ++p)
            g += sph.weights[p] * std::pow(std::fabs(vals[p]), s);
        acc += rule.weights[j] * g;
    }
    return 0.5 * acc;
}

inline double lq_norm_ball(const Geometry& geom, const BallField& v, double s, int m = 0) {
    return std::pow(ball_integral_pow(geom, v, s, m), 1.0 / s);
}

// pointwise route for non-modal integrands: F(xi) must behave like
// (1-|xi|^2)^edge near the boundary; s*edge goes into the Jacobi weight
template <typename F>
double ball_integral_pow_fn(const Geometry& geom, F&& f, double edge, double s, int m = 0) {
    const double hi = s * edge;
    const double lo = 0.5 * geom.n() - 1.0;
    const QuadratureRule& rule = geom.radial_rule(hi, lo, m);
    const SphereRule& sph = geom.sphere();
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        const double r = std::sqrt(t);
        const double deweight = std::pow(1.0 - t, -edge);
        double g = 0.0;
        for (std::size_t p = 0; p < sph.points.size(); ++p) {
            const double val = f(Vec(r * sph.points[p])) * deweight;
            g += sph.weights[p] * std::pow(std::fabs(val), s);
        }
        acc += rule.weights[j] * g;
    }
    return 0.5 * acc;
}

}  // namespace confext
