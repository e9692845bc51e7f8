#pragma once

// Shared per-dimension context: production sphere rule, harmonic basis with
// cached point values, and a cache of Jacobi-weighted radial rules.

#include <map>
#include <memory>
#include <tuple>

#include "confext/harmonics.hpp"
#include "confext/quadrature.hpp"

namespace confext {

class Geometry {
  public:
    Geometry(int n, int L, int resolution, int radial_points = 128)
        : n_(n),
          L_(L),
          radial_points_(radial_points),
          sphere_(sphere_rule(n, resolution)),
          basis_(n, L, sphere_rule(n, std::max(2 * L, 6))),
          basis_values_(basis_.values_on(sphere_)) {}

    int n() const { return n_; }
    int max_degree() const { return L_; }
    int radial_points() const { return radial_points_; }
    const SphereRule& sphere() const { return sphere_; }
    const Basis& basis() const { return basis_; }
    // entries x sphere-points matrix of basis values
    const Eigen::MatrixXd& basis_values() const { return basis_values_; }

    const QuadratureRule& radial_rule(double exp_hi, double exp_lo, int m = 0) const {
        if (m == 0) m = radial_points_;
        const auto key = std::make_tuple(exp_hi, exp_lo, m);
        auto it = radial_cache_.find(key);
        if (it == radial_cache_.end())
            it = radial_cache_.emplace(key, gauss_jacobi(m, exp_hi, exp_lo)).first;
        return it->second;
    }

    // integral of (1-t)^hi t^lo g(t) over [0,1] with g bounded
    template <typename G>
    double edge_integral(double exp_hi, double exp_lo, G&& g, int m = 0) const {
        const QuadratureRule& rule = radial_rule(exp_hi, exp_lo, m);
        return rule.integrate(g);
    }

  private:
    int n_;
    int L_;
    int radial_points_;
    SphereRule sphere_;
    Basis basis_;
    Eigen::MatrixXd basis_values_;
    mutable std::map<std::tuple<double, double, int>, QuadratureRule> radial_cache_;
};

}  // namespace confext
