#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "confext/conformal.hpp"
#include "confext/geometry.hpp"
#include "confext/norms.hpp"
#include "confext/quadrature.hpp"

using namespace confext;

namespace {
bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

Vec random_ball_point(std::mt19937_64& rng, int n, double rmax) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> rad(0.0, rmax);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    v *= rad(rng) / v.norm();
    return v;
}

Vec random_sphere_point(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss;
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    return v / v.norm();
}

Mat random_rotation(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return Mat(q);
}
}  // namespace

TEST_CASE("mobius identity and base point") {
    const int n = 3;
    std::mt19937_64 rng(3);
    const MobiusMap id = MobiusMap::translation(Vec::Zero(n));
    for (int rep = 0; rep < 5; ++rep) {
        const Vec p = random_ball_point(rng, n, 0.95);
        CHECK((mobius_apply(id, p) - p).norm() <= 1e-15);
    }
    Vec xi(n);
    xi << 0.3, -0.2, 0.4;
    const MobiusMap map = MobiusMap::translation(xi);
    CHECK(mobius_apply(map, xi).norm() <= 1e-15);
    // Psi_xi(0) = -xi
    CHECK((mobius_apply(map, Vec(Vec::Zero(n))) + xi).norm() <= 1e-15);
}

TEST_CASE("mobius maps preserve sphere and ball") {
    std::mt19937_64 rng(17);
    for (int n : {3, 4, 5}) {
        for (int rep = 0; rep < 20; ++rep) {
            const Vec xi = random_ball_point(rng, n, 0.9);
            const MobiusMap map = MobiusMap::rotated(random_rotation(rng, n), xi);
            const Vec eta = random_sphere_point(rng, n);
            CHECK(std::fabs(mobius_apply(map, eta).norm() - 1.0) <= 1e-12);
            const Vec p = random_ball_point(rng, n, 0.97);
            CHECK(mobius_apply(map, p).norm() < 1.0);
        }
    }
}

TEST_CASE("inverse map undoes the action") {
    std::mt19937_64 rng(23);
    const int n = 4;
    for (int rep = 0; rep < 20; ++rep) {
        const Vec xi = random_ball_point(rng, n, 0.85);
        const MobiusMap map = MobiusMap::rotated(random_rotation(rng, n), xi);
        const MobiusMap inv = map.inverse();
        const Vec p = random_ball_point(rng, n, 0.95);
        CHECK((mobius_apply(inv, mobius_apply(map, p)) - p).norm() <= 1e-10);
        CHECK((mobius_apply(map, mobius_apply(inv, p)) - p).norm() <= 1e-10);
    }
    // pure translation: the inverse is the map with negated base point
    const Vec xi = random_ball_point(rng, n, 0.8);
    const MobiusMap fwd = MobiusMap::translation(xi);
    const MobiusMap bwd = MobiusMap::translation(Vec(-xi));
    const Vec p = random_ball_point(rng, n, 0.9);
    CHECK((mobius_apply(bwd, mobius_apply(fwd, p)) - p).norm() <= 1e-12);
}

TEST_CASE("jacobians at the identity and under change of variables") {
    const int n = 3;
    const MobiusMap id = MobiusMap::translation(Vec::Zero(n));
    Vec eta(n);
    eta << 0.0, 0.0, 1.0;
    CHECK(det_jacobian_ball(id, eta) == 1.0);
    CHECK(det_jacobian_boundary(id, eta) == 1.0);

    Vec xi(n);
    xi << 0.3, 0.0, 0.0;
    const MobiusMap map = MobiusMap::translation(xi);
    const SphereRule rule = sphere_rule(n, 40);
    const double boundary_total =
        rule.integrate([&](const Vec& p) { return det_jacobian_boundary(map, p); });
    CHECK(close_rel(boundary_total, sphere_area(n), 1e-8));

    // interior change of variables: int_B det dPsi = |B^n|
    const QuadratureRule radial = gauss_jacobi(64, 0.0, 0.5 * n - 1.0);
    double ball_total = 0.0;
    for (std::size_t j = 0; j < radial.nodes.size(); ++j) {
        const double r = std::sqrt(radial.nodes[j]);
        const double inner =
            rule.integrate([&](const Vec& p) { return det_jacobian_ball(map, Vec(r * p)); });
        ball_total += radial.weights[j] * inner;
    }
    ball_total *= 0.5;
    CHECK(close_rel(ball_total, ball_volume(n), 1e-6));
}

TEST_CASE("jacobian chain rule under composition") {
    std::mt19937_64 rng(31);
    const int n = 3;
    for (int rep = 0; rep < 10; ++rep) {
        const MobiusMap first = MobiusMap::translation(random_ball_point(rng, n, 0.6));
        const MobiusMap second =
            MobiusMap::rotated(random_rotation(rng, n), random_ball_point(rng, n, 0.6));
        const Vec p = random_ball_point(rng, n, 0.9);
        const Vec mid = mobius_apply(first, p);
        const double chained = det_jacobian_ball(second, mid) * det_jacobian_ball(first, p);
        // numerical Jacobian of the composition via central differences
        const double h = 1e-5;
        Eigen::MatrixXd J(n, n);
        for (int j = 0; j < n; ++j) {
            Vec pp = p, pm = p;
            pp[j] += h;
            pm[j] -= h;
            const Vec fp = mobius_apply(second, mobius_apply(first, pp));
            const Vec fm = mobius_apply(second, mobius_apply(first, pm));
            J.col(j) = (fp - fm) / (2.0 * h);
        }
        CHECK(close_rel(J.determinant(), chained, 1e-8));
    }
}

TEST_CASE("boundary action preserves L^p norms") {
    const int n = 3;
    const Geometry geom(n, 4, 44);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> pdist(1.5, 4.0);
    auto u = [](const Vec& eta) { return 1.0 + 0.4 * eta[0] - 0.25 * eta[1] * eta[2]; };
    for (int rep = 0; rep < 20; ++rep) {
        const double p = pdist(rng);
        const MobiusMap map =
            MobiusMap::rotated(random_rotation(rng, n), random_ball_point(rng, n, 0.5));
        auto pushed = act_boundary(u, map, p);
        const double n0 = lp_norm_sphere(geom, u, p);
        const double n1 = lp_norm_sphere(geom, pushed, p);
        CHECK(close_rel(n0, n1, 1e-7));
    }
}

TEST_CASE("ball action preserves L^{q'} norms and composes") {
    const int n = 3;
    const Geometry geom(n, 4, 30);
    std::mt19937_64 rng(43);
    auto v = [](const Vec& xi) {
        return std::exp(-xi.squaredNorm()) * (1.0 + 0.5 * xi[0]);
    };
    for (int rep = 0; rep < 10; ++rep) {
        const double qp = 1.0 + 0.8 * (rep + 1) / 11.0;
        const MobiusMap map =
            MobiusMap::rotated(random_rotation(rng, n), random_ball_point(rng, n, 0.5));
        auto pushed = act_ball(v, map, qp);
        const double i0 = ball_integral_pow_fn(geom, v, 0.0, qp);
        const double i1 = ball_integral_pow_fn(geom, pushed, 0.0, qp);
        CHECK(close_rel(i0, i1, 1e-6));

        auto back = act_ball(pushed, map.inverse(), qp);
        const Vec p = random_ball_point(rng, n, 0.9);
        CHECK(close_rel(back(p), v(p), 1e-8));
    }
}

TEST_CASE("half-space to ball map") {
    const int n = 3;
    Vec en = Vec::Zero(n);
    en[n - 1] = 1.0;
    CHECK(halfspace_ball(en).norm() <= 1e-15);
    Vec origin = Vec::Zero(n);
    CHECK((halfspace_ball(origin) - en).norm() <= 1e-15);
    // involution
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> coord(-2.0, 2.0), height(0.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        Vec x(n);
        x << coord(rng), coord(rng), height(rng);
        CHECK((ball_halfspace(halfspace_ball(x)) - x).norm() <= 1e-12);
        // x_n = (1-|xi|^2)/|xi+e_n|^2
        const Vec xi = halfspace_ball(x);
        CHECK(close_rel(x[n - 1], (1.0 - xi.squaredNorm()) / (xi + en).squaredNorm(), 1e-12));
    }
    // distance identity 2 |xi+e_n|^{-1} |eta+e_n|^{-1} |xi-eta| = |x-y|
    for (int rep = 0; rep < 20; ++rep) {
        Vec x(n), y(n);
        x << coord(rng), coord(rng), height(rng);
        y << coord(rng), coord(rng), 0.0;
        const Vec xi = halfspace_ball(x);
        const Vec eta = halfspace_ball(y);
        const double lhs = 2.0 * (xi - eta).norm() / ((xi + en).norm() * (eta + en).norm());
        CHECK(close_rel(lhs, (x - y).norm(), 1e-12));
    }
}

TEST_CASE("boundary pullback preserves the L^p norm of compactly supported data") {
    // u(eta) = (2/|eta+e_n|^2)^{(n-1)/p} f(I^{-1}(eta)) has the same L^p norm
    // as f on R^{n-1}
    const int n = 3;
    const double p = 4.0;  // (n+alpha-2)/2 = (n-1)/p with alpha = 0
    const Geometry geom(n, 4, 40);
    auto f = [](const Vec& yp) { return std::exp(-2.0 * yp.squaredNorm()); };

    // ||f||_p^p by tensor quadrature over the plane
    const QuadratureRule line = gauss_legendre_on(60, -4.0, 4.0);
    double fpow = 0.0;
    for (std::size_t i = 0; i < line.nodes.size(); ++i)
        for (std::size_t j = 0; j < line.nodes.size(); ++j) {
            Vec yp(2);
            yp << line.nodes[i], line.nodes[j];
            fpow += line.weights[i] * line.weights[j] * std::pow(f(yp), p);
        }

    Vec en = Vec::Zero(n);
    en[n - 1] = 1.0;
    auto u = [&](const Vec& eta) {
        const Vec y = ball_halfspace(eta);
        Vec yp(2);
        yp << y[0], y[1];
        return std::pow(2.0 / (eta + en).squaredNorm(), (n - 1.0) / p) * f(yp);
    };
    const double upow = geom.sphere().integrate(
        [&](const Vec& eta) { return std::pow(std::fabs(u(eta)), p); });
    CHECK(close_rel(std::pow(upow, 1.0 / p), std::pow(fpow, 1.0 / p), 1e-4));
}
