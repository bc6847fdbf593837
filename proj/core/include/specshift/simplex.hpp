#pragma once

#include <functional>

#include "specshift/types.hpp"

namespace specshift {

// Quadrature over the standard simplex
// Delta_n = { s in [0,1]^(n+1) : sum s_j = 1 },
// with "ds" the n-dimensional Lebesgue measure of total mass 1/n! (the
// convention forced by Dif_n x^n = 1 in the simplex representation of
// divided differences). The Dirichlet kind absorbs the integrable weight
// prod_j s_j^(-1/2) into the quadrature weights; its total mass is
// Gamma(1/2)^(n+1) / Gamma((n+1)/2).
struct SimplexRule {
  enum class Kind { uniform, dirichlet_half };
  int n = 0;
  Kind kind = Kind::uniform;
  RealMatrix nodes;    // one row per point, n+1 barycentric coordinates
  RealVector weights;  // weight function folded in
};

// Conical-product rule exact for polynomials of total degree <= 2*points_per_axis - 1.
SimplexRule make_uniform_simplex_rule(int n, int points_per_axis);

// Stick-breaking product of endpoint-singular Gauss-Jacobi rules; the
// s^(-1/2) factors are never sampled, they are folded into the weights.
SimplexRule make_dirichlet_simplex_rule(int n, int points_per_axis);

double simplex_integrate(const std::function<double(const RealVector&)>& g,
                         const SimplexRule& rule);

}  // namespace specshift
