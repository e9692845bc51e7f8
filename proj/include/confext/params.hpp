#pragma once

// Exponent bookkeeping for the (n, alpha, beta) family and validation of the
// admissibility constraints.

#include <cmath>
#include <stdexcept>
#include <string>

namespace confext {

struct Params {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double p = 0.0;
    double q = 0.0;
    double p_prime = 0.0;
    double q_prime = 0.0;
    bool valid = false;
    std::string violation;  // empty when valid

    // alpha+beta-1, the exponent of (1-r^2) in d_{alpha,beta}
    double delta() const { return alpha + beta - 1.0; }

    // exponent of the (1-t) factor carried by d and the radial mode profiles
    double edge() const { return alpha > 1.0 ? beta : alpha + beta - 1.0; }

    const Params& require_valid() const {
        if (!valid) throw std::domain_error("invalid parameters: " + violation);
        return *this;
    }
};

inline Params exponents(int n, double alpha, double beta) {
    Params par;
    par.n = n;
    par.alpha = alpha;
    par.beta = beta;
    if (n < 3) {
        par.violation = "n >= 3 required";
        return par;
    }
    if (!(beta >= 0.0)) {
        par.violation = "beta >= 0 violated";
        return par;
    }
    if (!(alpha + beta > 0.0)) {
        par.violation = "alpha + beta > 0 violated";
        return par;
    }
    if (!(alpha + beta < n - beta)) {
        par.violation = "alpha + beta < n - beta violated";
        return par;
    }
    par.p = 2.0 * (n - 1.0) / (n + alpha - 2.0);
    par.q = 2.0 * n / (n - alpha - 2.0 * beta);
    par.p_prime = par.p / (par.p - 1.0);
    par.q_prime = par.q / (par.q - 1.0);
    if (!(par.q * (alpha + beta - 1.0) + 1.0 > 0.0)) {
        par.violation = "q(alpha+beta-1)+1 > 0 violated";
        return par;
    }
    par.valid = true;
    return par;
}

}  // namespace confext
