#pragma once

#include <Eigen/Dense>

namespace confext {

// Points live in R^n with n <= 8; fixed max size keeps them off the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

inline Vec unit_vector(int n, int axis) {
    Vec e = Vec::Zero(n);
    e[axis] = 1.0;
    return e;
}

}  // namespace confext
