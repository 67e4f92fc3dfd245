#pragma once

#include <functional>

#include "gpnex/errors.hpp"

namespace gpnex {

// Adaptive Simpson integration on [a, b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

// Integral of f over [0, infinity) by adaptive panels with geometric growth.
// Throws DivergentQuadratureError when the tail refuses to decay.
double integrate_halfline(const std::function<double(double)>& f, double tol = 1e-12);

}  // namespace gpnex
