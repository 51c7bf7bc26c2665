#pragma once

#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "emforms/errors.hpp"

namespace emforms {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double l1 = 0.0;
};

/// Adaptive Gauss–Kronrod (7/15) integral of f over [a, b]. Fails unless
/// the error estimate is within rel_tol of the L1 norm.
inline QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12,
                                           unsigned max_depth = 15) {
    QuadratureResult out;
    if (a == b) return out;
    out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol, &out.error_estimate, &out.l1);
    if (!std::isfinite(out.value) || !(out.error_estimate <= rel_tol * std::max(out.l1, 1e-300)))
        throw QuadratureError("adaptive quadrature did not reach the requested tolerance");
    return out;
}

}  // namespace emforms
