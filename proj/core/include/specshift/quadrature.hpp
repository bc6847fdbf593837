#pragma once

#include "specshift/types.hpp"

namespace specshift {

// One-dimensional quadrature rule: sum w_i g(x_i).
struct GaussRule {
  RealVector x;
  RealVector w;
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta,
// alpha, beta > -1. Exact for polynomial integrands of degree <= 2n-1.
GaussRule gauss_jacobi(int n, double alpha, double beta);

// Rule on [0,1] for the weight u^exp_at_zero (1-u)^exp_at_one, exponents > -1.
GaussRule gauss_jacobi01(int n, double exp_at_zero, double exp_at_one);

// Gauss-Legendre on [0,1].
GaussRule gauss_legendre01(int n);

// Gauss-Legendre mapped to [a,b].
GaussRule gauss_legendre(int n, double a, double b);

// Generalized Gauss-Laguerre on [0,inf) for the weight x^alpha e^{-x}.
GaussRule gauss_laguerre(int n, double alpha);

}  // namespace specshift
