#pragma once

#include <vector>

#include "specshift/clifford.hpp"
#include "specshift/density.hpp"
#include "specshift/hermitian.hpp"
#include "specshift/types.hpp"

namespace specshift {

// One tuple's contribution to a shift density: the eigenvalue nodes of the
// transported B-spline and the trace weight in front of it.
struct WeightedNodes {
  std::vector<double> nodes;
  cplx weight;
};

// Raw tuple expansion of Tr(T0 P^0 T_1 P^1 ... T_n P^n) over the spectra of
// the pivots. No pruning, no snapping; deterministic enumeration order.
std::vector<WeightedNodes> ssf_tuple_contributions(
    const std::vector<const HermitianOperator*>& a_list, const Matrix& t0,
    const std::vector<Matrix>& t_list);

// Assemble weighted B-splines into one density. Nodes are first snapped onto
// a clustered global grid (gap below snap_rel of the node span) so unions of
// piece grids stay exact; contributions with |weight| below prune_rel of the
// largest weight are dropped. Single-node contributions become atoms.
SpectralShiftDensity assemble_weighted_bsplines(const std::vector<WeightedNodes>& contributions,
                                                double prune_rel = 1e-14,
                                                double snap_rel = 1e-12);

// Order-n spectral shift density: the unique measure eta_n with
//   Int f^(n) d eta_n = Tr(T0 J(Dif_n f, A_list, T_list)).
// a_list has n+1 pivots, t_list has n factors.
SpectralShiftDensity ssf_density(const std::vector<HermitianOperator>& a_list, const Matrix& t0,
                                 const std::vector<Matrix>& t_list);

// Repeated-pivot convenience overload.
SpectralShiftDensity ssf_density(const HermitianOperator& a, const Matrix& t0,
                                 const std::vector<Matrix>& t_list);

// First-order shift function as an eigenvalue-counting difference:
//   xi(x) = #{eig(a_minus) <= x} - #{eig(a_plus) <= x},
// returned as a piecewise constant density (pairing Int f' xi dx equals
// Tr(f(a_plus) - f(a_minus))).
SpectralShiftDensity krein_ssf(const HermitianOperator& a_plus, const HermitianOperator& a_minus);

// One lattice cell of a radial fiber problem: position (never the origin),
// cell volume, the field value, and its d partial derivatives.
struct FiberSample {
  RealVector position;
  double volume;
  Matrix a_phi;
  std::vector<Matrix> grad;
};

// The order-(d-1) shift density of the radial fiber decomposition: per cell,
// pivots are Id_r (x) a_phi(x)^2, the leading factor is the radial part
// i c_R (x) d_R a_phi, and the remaining d-1 factors are the angular rest of
// i c.grad a_phi. Cells with total gradient norm below grad_skip_tol are
// skipped. Aborts if the assembled density fails the realness budget.
SpectralShiftDensity eta_callias(const CliffordRep& cl, const std::vector<FiberSample>& samples,
                                 double grad_skip_tol = 1e-14);

}  // namespace specshift
