#pragma once

// Mobius self-maps of the unit ball, their Jacobians, the conformal actions
// on boundary and ball functions, and the half-space <-> ball map.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "confext/vec.hpp"

namespace confext {

// rotation o Psi_base, where Psi_xi is the standard Mobius map with
// Psi_xi(xi) = 0, Psi_xi(0) = -xi.  Psi_0 with identity rotation is the
// identity map.  The inverse is rotation^T o Psi_{-rotation*base}; Psi_xi
// itself is not an involution.
struct MobiusMap {
    Vec base;
    Mat rotation;

    static MobiusMap translation(const Vec& xi) {
        MobiusMap map;
        map.base = xi;
        map.rotation = Mat::Identity(xi.size(), xi.size());
        return map;
    }

    static MobiusMap rotated(const Mat& rot, const Vec& xi) {
        MobiusMap map;
        map.base = xi;
        map.rotation = rot;
        return map;
    }

    MobiusMap inverse() const {
        MobiusMap inv;
        inv.rotation = rotation.transpose();
        inv.base = -(rotation * base);
        return inv;
    }
};

namespace detail {

inline double mobius_denominator(const Vec& xi, const Vec& p) {
    return 1.0 - 2.0 * xi.dot(p) + xi.squaredNorm() * p.squaredNorm();
}

}  // namespace detail

inline Vec mobius_apply(const MobiusMap& map, const Vec& p) {
    const Vec& xi = map.base;
    const double xi2 = xi.squaredNorm();
    const Vec diff = p - xi;
    const double den = detail::mobius_denominator(xi, p);
    Vec out = ((1.0 - xi2) * diff - diff.squaredNorm() * xi) / den;
    return map.rotation * out;
}

// det dPsi at an interior point; rotation contributes a factor 1
inline double det_jacobian_ball(const MobiusMap& map, const Vec& p) {
    const int n = static_cast<int>(p.size());
    const double xi2 = map.base.squaredNorm();
    return std::pow((1.0 - xi2) / detail::mobius_denominator(map.base, p), n);
}

// det of the boundary restriction at a sphere point
inline double det_jacobian_boundary(const MobiusMap& map, const Vec& eta) {
    const int n = static_cast<int>(eta.size());
    const double xi2 = map.base.squaredNorm();
    const double den = 1.0 - 2.0 * map.base.dot(eta) + xi2;
    return std::pow((1.0 - xi2) / den, n - 1);
}

inline std::pair<double, double> jacobians(const MobiusMap& map, const Vec& p) {
    return {det_jacobian_ball(map, p), det_jacobian_boundary(map, p)};
}

// u_Psi = (det dPsi|_boundary)^{1/p} (u o Psi) as a callable on the sphere
template <typename F>
auto act_boundary(F u, const MobiusMap& map, double p_exp) {
    return [u = std::move(u), map, p_exp](const Vec& eta) {
        return std::pow(det_jacobian_boundary(map, eta), 1.0 / p_exp) *
               u(mobius_apply(map, eta));
    };
}

// v_Psi = (det dPsi)^{1/q'} (v o Psi) as a callable on the ball
template <typename F>
auto act_ball(F v, const MobiusMap& map, double q_prime) {
    return [v = std::move(v), map, q_prime](const Vec& xi) {
        return std::pow(det_jacobian_ball(map, xi), 1.0 / q_prime) * v(mobius_apply(map, xi));
    };
}

// xi = I(x) = -e_n + 2(x+e_n)/|x+e_n|^2, an involution exchanging the closed
// upper half-space and the closed ball
inline Vec halfspace_ball(const Vec& x) {
    const int n = static_cast<int>(x.size());
    Vec shifted = x;
    shifted[n - 1] += 1.0;
    const double s2 = shifted.squaredNorm();
    Vec out = 2.0 * shifted / s2;
    out[n - 1] -= 1.0;
    return out;
}

inline Vec ball_halfspace(const Vec& xi) { return halfspace_ball(xi); }

// boundary trace of the map: y' in R^{n-1} -> eta on S^{n-1}
inline Vec boundary_to_sphere(const Vec& yprime) {
    const int n = static_cast<int>(yprime.size()) + 1;
    Vec y = Vec::Zero(n);
    for (int i = 0; i + 1 < n; ++i) y[i] = yprime[i];
    return halfspace_ball(y);
}

}  // namespace confext
