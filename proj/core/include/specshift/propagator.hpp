#pragma once

#include <functional>

#include "specshift/types.hpp"

namespace specshift {

// Hermitian matrix path y -> T(y).
using MatrixPath = std::function<Matrix(double)>;

// exp(i H) for Hermitian H, built from the eigendecomposition so the result
// is unitary to rounding.
Matrix unitary_exp_i(const Matrix& h);

// ||U*U - Id||_F
double unitarity_defect(const Matrix& u);

// Evolution system U(y1, y2) of u'(y) = i T(y) u(y): u(y1) = U(y1,y2) u(y2).
// Second-order exponential-midpoint stepping; the step count doubles until
// successive refinements agree below tol, then the cocycle residual across an
// asymmetric split and the unitarity residual are enforced at the same tol.
Matrix propagate(const MatrixPath& t_path, double y1, double y2, double tol = 1e-9);

// Commuting-family shortcut for T(y) = g(y) T0: exp(i (int_{y2}^{y1} g) T0),
// exact up to the 1d quadrature of g.
Matrix propagate_commuting(const Matrix& t0, const std::function<double(double)>& g, double y1,
                           double y2);

}  // namespace specshift
