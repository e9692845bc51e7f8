#pragma once

// One-dimensional Gauss rules (Legendre and Jacobi weights, the latter for
// endpoint singularities) and product quadrature on S^{n-1}.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "confext/specfun.hpp"
#include "confext/vec.hpp"

namespace confext {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double lo = 0.0;
    double hi = 1.0;
    double exp_hi = 0.0;  // weight (hi-t)^exp_hi ...
    double exp_lo = 0.0;  // ... * (t-lo)^exp_lo

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }

    double weight_sum() const {
        double acc = 0.0;
        for (double w : weights) acc += w;
        return acc;
    }
};

namespace detail {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come from
// the first components of the eigenvectors.
inline void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                         double mu0, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    const int m = static_cast<int>(diag.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("golub_welsch: tridiagonal eigensolve failed");
    nodes.resize(m);
    weights.resize(m);
    for (int i = 0; i < m; ++i) {
        nodes[i] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        weights[i] = mu0 * v0 * v0;
    }
}

// Recurrence coefficients for Jacobi weight (1-x)^A (1+x)^B on [-1,1].
inline void jacobi_tridiagonal(int m, double A, double B, Eigen::VectorXd& diag,
                               Eigen::VectorXd& sub) {
    diag.resize(m);
    sub.resize(m - 1);
    const double ab = A + B;
    diag[0] = (B - A) / (ab + 2.0);
    for (int k = 1; k < m; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag[k] = (B * B - A * A) / den;
    }
    if (m > 1) sub[0] = std::sqrt(4.0 * (A + 1.0) * (B + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < m; ++k) {
        const double t = 2.0 * k + ab;
        sub[k - 1] = std::sqrt(4.0 * k * (k + A) * (k + B) * (k + ab) /
                               (t * t * (t + 1.0) * (t - 1.0)));
    }
}

}  // namespace detail

// m-point rule on [-1,1] with weight (1-x)^A (1+x)^B, A,B > -1.
inline QuadratureRule gauss_jacobi_sym(int m, double A, double B) {
    if (m < 1) throw std::invalid_argument("gauss_jacobi_sym: need m >= 1");
    if (!(A > -1.0) || !(B > -1.0))
        throw std::domain_error("gauss_jacobi_sym: exponents must exceed -1");
    Eigen::VectorXd diag, sub;
    detail::jacobi_tridiagonal(m, A, B, diag, sub);
    const double mu0 = std::exp((A + B + 1.0) * std::log(2.0) + ln_gamma(A + 1.0) +
                                ln_gamma(B + 1.0) - ln_gamma(A + B + 2.0));
    QuadratureRule rule;
    rule.lo = -1.0;
    rule.hi = 1.0;
    rule.exp_hi = A;
    rule.exp_lo = B;
    detail::golub_welsch(diag, sub, mu0, rule.nodes, rule.weights);
    return rule;
}

inline QuadratureRule gauss_legendre(int m) {
    return gauss_jacobi_sym(m, 0.0, 0.0);
}

// m-point rule on [0,1] with weight (1-t)^exp_hi t^exp_lo.
inline QuadratureRule gauss_jacobi(int m, double exp_hi, double exp_lo) {
    QuadratureRule rule = gauss_jacobi_sym(m, exp_hi, exp_lo);
    const double scale = std::pow(2.0, -(exp_hi + exp_lo + 1.0));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
        rule.weights[i] *= scale;
    }
    rule.lo = 0.0;
    rule.hi = 1.0;
    return rule;
}

// Gauss-Legendre rule mapped to [a,b].
inline QuadratureRule gauss_legendre_on(int m, double a, double b) {
    QuadratureRule rule = gauss_legendre(m);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
        rule.weights[i] *= 0.5 * (b - a);
    }
    rule.lo = a;
    rule.hi = b;
    return rule;
}

// Euler-integral route for F(a,b;c;z): Gamma(c)/(Gamma(b)Gamma(c-b)) *
// int_0^1 t^{b-1} (1-t)^{c-b-1} (1-tz)^{-a} dt, valid for c > b > 0.  Kept as
// an independent cross-check of the series path.
inline double hyp2f1_euler(double a, double b, double c, double z, int m = 96) {
    if (!(c > b && b > 0.0))
        throw std::domain_error("hyp2f1_euler: requires c > b > 0");
    const QuadratureRule rule = gauss_jacobi(m, c - b - 1.0, b - 1.0);
    const double integral =
        rule.integrate([&](double t) { return std::pow(1.0 - t * z, -a); });
    return std::exp(ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b)) * integral;
}

inline double sphere_area(int n) {
    return 2.0 * std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n);
}

inline double ball_volume(int n) { return sphere_area(n) / n; }

struct SphereRule {
    int n = 0;
    int resolution = 0;  // exact for spherical polynomials up to this degree
    std::vector<Vec> points;
    std::vector<double> weights;

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) acc += weights[i] * f(points[i]);
        return acc;
    }
};

// Product rule: Gauss-Jacobi in the n-2 polar cosines, trapezoid in azimuth.
inline SphereRule sphere_rule(int n, int resolution) {
    if (n < 3 || n > 8) throw std::domain_error("sphere_rule: need 3 <= n <= 8");
    if (resolution < 1) throw std::invalid_argument("sphere_rule: resolution >= 1");

    const int m_polar = resolution / 2 + 1;
    const int m_az = resolution + 2;

    std::vector<QuadratureRule> polar(n - 2);
    for (int k = 1; k <= n - 2; ++k) {
        const double lam = 0.5 * (n - 2 - k);
        polar[k - 1] = gauss_jacobi_sym(m_polar, lam, lam);
    }

    SphereRule rule;
    rule.n = n;
    rule.resolution = resolution;
    std::vector<int> idx(n - 2, 0);
    const double w_az = 2.0 * M_PI / m_az;
    for (;;) {
        double w_polar = 1.0;
        for (int k = 0; k < n - 2; ++k) w_polar *= polar[k].weights[idx[k]];
        for (int j = 0; j < m_az; ++j) {
            const double phi = (2.0 * M_PI * j) / m_az;
            Vec p = Vec::Zero(n);
            double sines = 1.0;
            for (int k = 0; k < n - 2; ++k) {
                const double t = polar[k].nodes[idx[k]];
                p[k] = sines * t;
                sines *= std::sqrt(1.0 - t * t);
            }
            p[n - 2] = sines * std::cos(phi);
            p[n - 1] = sines * std::sin(phi);
            rule.points.push_back(p);
            rule.weights.push_back(w_polar * w_az);
        }
        int k = n - 3;
        while (k >= 0 && ++idx[k] == m_polar) idx[k--] = 0;
        if (k < 0) break;
    }
    return rule;
}

}  // namespace confext
