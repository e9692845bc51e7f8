#pragma once

// Gegenbauer polynomials, an orthonormal real spherical-harmonic basis up to
// a fixed degree, projection, and Funk-Hecke eigenvalues of zonal kernels.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "confext/quadrature.hpp"
#include "confext/specfun.hpp"
#include "confext/vec.hpp"

namespace confext {

// C_l^{(n-2)/2}(t) by the three-term recurrence.
inline double gegenbauer(int l, int n, double t) {
    const double lam = 0.5 * (n - 2);
    if (l == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lam * t;
    for (int k = 2; k <= l; ++k) {
        const double next = (2.0 * (k + lam - 1.0) * t * cur - (k + 2.0 * lam - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

// N_l = (2l+n-2)/(n-2) * binom(l+n-3, l)
inline long harmonic_space_dim(int n, int l) {
    if (l == 0) return 1;
    double binom = 1.0;
    for (int i = 1; i <= n - 3; ++i) binom = binom * (l + i) / i;
    return std::lround(binom * (2.0 * l + n - 2.0) / (n - 2.0));
}

struct HarmonicExpansion {
    int n = 0;
    int L = 0;
    Eigen::VectorXd coeffs;  // aligned with Basis entry order
};

// Orthonormal basis of spherical harmonics built by Gram-Schmidt on monomial
// restrictions, orthonormalized under a quadrature rule exact to degree 2L.
class Basis {
  public:
    struct Entry {
        int l = 0;
        int k = 0;                    // 1..N_l within the degree
        Eigen::VectorXd mono_coeffs;  // over the monomial list
    };

    Basis() = default;

    Basis(int n, int L, const SphereRule& fit_rule) : n_(n), L_(L) {
        if (fit_rule.resolution < 2 * L)
            throw std::invalid_argument("Basis: fit rule must be exact to degree 2L");
        build_monomials();
        gram_schmidt(fit_rule);
    }

    int dimension_n() const { return n_; }
    int max_degree() const { return L_; }
    std::size_t size() const { return entries_.size(); }
    const Entry& entry(std::size_t i) const { return entries_[i]; }
    std::size_t offset(int l) const { return offsets_[l]; }

    double eval(std::size_t i, const Vec& eta) const {
        return entries_[i].mono_coeffs.dot(mono_values(eta));
    }

    // entries x points value matrix
    Eigen::MatrixXd values_on(const SphereRule& rule) const {
        Eigen::MatrixXd vals(entries_.size(), rule.points.size());
        for (std::size_t p = 0; p < rule.points.size(); ++p) {
            const Eigen::VectorXd mono = mono_values(rule.points[p]);
            for (std::size_t i = 0; i < entries_.size(); ++i)
                vals(i, p) = entries_[i].mono_coeffs.dot(mono);
        }
        return vals;
    }

    Eigen::VectorXd mono_values(const Vec& eta) const {
        Eigen::VectorXd vals(monos_.size());
        for (std::size_t j = 0; j < monos_.size(); ++j) {
            double v = 1.0;
            for (int d = 0; d < n_; ++d)
                for (int rep = 0; rep < monos_[j][d]; ++rep) v *= eta[d];
            vals[j] = v;
        }
        return vals;
    }

  private:
    int n_ = 0;
    int L_ = 0;
    std::vector<std::vector<int>> monos_;
    std::vector<int> mono_degree_;
    std::vector<Entry> entries_;
    std::vector<std::size_t> offsets_;

    void build_monomials() {
        for (int deg = 0; deg <= L_; ++deg) {
            std::vector<int> idx(n_, 0);
            idx[0] = deg;
            for (;;) {
                monos_.push_back(idx);
                mono_degree_.push_back(deg);
                if (idx[n_ - 1] == deg) break;
                int i = n_ - 2;
                while (idx[i] == 0) --i;
                const int tail = idx[n_ - 1];
                idx[n_ - 1] = 0;
                --idx[i];
                idx[i + 1] = tail + 1;
            }
        }
    }

    void gram_schmidt(const SphereRule& rule) {
        const std::size_t npts = rule.points.size();
        Eigen::MatrixXd mono_vals(monos_.size(), npts);
        for (std::size_t p = 0; p < npts; ++p) mono_vals.col(p) = mono_values(rule.points[p]);
        Eigen::VectorXd w(npts);
        for (std::size_t p = 0; p < npts; ++p) w[p] = rule.weights[p];

        std::vector<Eigen::VectorXd> accepted;
        offsets_.assign(L_ + 1, 0);
        for (int deg = 0; deg <= L_; ++deg) {
            offsets_[deg] = entries_.size();
            int added = 0;
            for (std::size_t j = 0; j < monos_.size(); ++j) {
                if (mono_degree_[j] != deg) continue;
                Eigen::VectorXd v = mono_vals.row(j).transpose();
                Eigen::VectorXd c = Eigen::VectorXd::Zero(monos_.size());
                c[j] = 1.0;
                const double norm0 = std::sqrt(v.cwiseProduct(v).dot(w));
                for (int pass = 0; pass < 2; ++pass) {
                    for (std::size_t i = 0; i < accepted.size(); ++i) {
                        const double proj = accepted[i].cwiseProduct(v).dot(w);
                        v -= proj * accepted[i];
                        c -= proj * entries_[i].mono_coeffs;
                    }
                }
                const double norm1 = std::sqrt(v.cwiseProduct(v).dot(w));
                if (norm1 < 1e-6 * norm0) continue;  // dependent direction
                v /= norm1;
                c /= norm1;
                entries_.push_back(Entry{deg, added + 1, c});
                accepted.push_back(v);
                ++added;
            }
            if (added != harmonic_space_dim(n_, deg))
                throw std::runtime_error("Basis: rank mismatch in Gram-Schmidt");
        }
    }
};

// Funk-Hecke eigenvalue of the zonal kernel K on S^{n-1} for degree l.
template <typename K>
double funk_hecke(K&& kernel, int l, int n, int quad_points = 192) {
    const QuadratureRule rule = gauss_jacobi_sym(quad_points, 0.5 * (n - 3), 0.5 * (n - 3));
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        integral += rule.weights[i] * kernel(t) * gegenbauer(l, n, t);
    }
    const double log_pref = 0.5 * (n - 2) * std::log(4.0 * M_PI) + ln_gamma(0.5 * (n - 2)) +
                            ln_gamma(l + 1.0) - ln_gamma(static_cast<double>(l + n - 2));
    return std::exp(log_pref) * integral;
}

inline HarmonicExpansion project(const std::vector<double>& samples, const Basis& basis,
                                 const SphereRule& rule) {
    if (samples.size() != rule.points.size())
        throw std::invalid_argument("project: samples must match rule points");
    HarmonicExpansion out;
    out.n = basis.dimension_n();
    out.L = basis.max_degree();
    out.coeffs = Eigen::VectorXd::Zero(basis.size());
    const Eigen::MatrixXd vals = basis.values_on(rule);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double acc = 0.0;
        for (std::size_t p = 0; p < rule.points.size(); ++p)
            acc += rule.weights[p] * samples[p] * vals(i, p);
        out.coeffs[i] = acc;
    }
    return out;
}

template <typename F>
HarmonicExpansion project_fn(F&& f, const Basis& basis, const SphereRule& rule) {
    std::vector<double> samples(rule.points.size());
    for (std::size_t p = 0; p < rule.points.size(); ++p) samples[p] = f(rule.points[p]);
    return project(samples, basis, rule);
}

inline double evaluate(const HarmonicExpansion& u, const Basis& basis, const Vec& eta) {
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) acc += u.coeffs[i] * basis.eval(i, eta);
    return acc;
}

}  // namespace confext
