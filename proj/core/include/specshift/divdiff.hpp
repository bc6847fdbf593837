#pragma once

#include <vector>

#include "specshift/scalar_function.hpp"
#include "specshift/simplex.hpp"

namespace specshift {

// Dif_n f at the given n+1 nodes (repetitions allowed and handled exactly by
// derivative entries). Near-coincident distinct nodes (adjacent gap below
// 1e-3 of the spread) are routed through the matrix-function (Opitz) branch:
// Dif_n f = [f(J)]_(0,n) with J the upper bidiagonal matrix of the sorted
// nodes, avoiding the recursion's catastrophic cancellation.
double divided_difference(const ScalarFunctionFamily& f, const std::vector<double>& nodes);

// Simplex representation int_(Delta_n) f^(n)(<s, nodes>) ds evaluated with a
// uniform-kind rule; converges to divided_difference under rule refinement.
double genochi_hermite(const ScalarFunctionFamily& f, const std::vector<double>& nodes,
                       const SimplexRule& rule);

// The matrix-function branch on its own, for cross-validation against the
// recursion: always evaluates f at the bidiagonal node matrix.
double divided_difference_confluent(const ScalarFunctionFamily& f,
                                    const std::vector<double>& nodes);

}  // namespace specshift
