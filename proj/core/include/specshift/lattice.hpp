#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specshift/clifford.hpp"
#include "specshift/density.hpp"
#include "specshift/simplex.hpp"
#include "specshift/ssf.hpp"
#include "specshift/transform.hpp"
#include "specshift/types.hpp"

namespace specshift {

// Smooth radial cutoff: 1 on [0, r0], 0 on [r1, inf), C^inf in between via the
// e^(-1/u) partition pair. derivative() is the analytic d/dr.
struct CutoffBump {
  double r0 = 0.5;
  double r1 = 1.5;
  double operator()(double r) const;
  double derivative(double r) const;
};

// A periodic lattice discretization of a first-order operator with matrix
// potential: odd dimension d, N points per axis (N even so no site hits the
// origin), spacing h, fiber dimension m. The potential splits as a constant
// floor a0 plus a decaying-to-saturation part b with exact gradient grad_b;
// the cutoff phi deforms b near the origin for the fiber-integral side only.
struct LatticeModel {
  int d = 3;
  int N = 6;
  int m = 2;
  double h = 1.0;
  Matrix a0;
  std::function<Matrix(const RealVector&)> b;
  std::function<std::vector<Matrix>(const RealVector&)> grad_b;
  CutoffBump phi;
  std::string name;

  int grid_size() const;
  RealVector point(int flat_index) const;  // x_j = h (k_j - (N-1)/2)

  Matrix a(const RealVector& x) const;      // a0 + b(x)
  Matrix a_phi(const RealVector& x) const;  // a0 + (1 - phi(|x|)) b(x)
  std::vector<Matrix> grad_a_phi(const RealVector& x) const;
};

// Factories. The hedgehog couples f(r) = pi r^2 / (1 + r^2) to the radial
// Pauli direction, a degree-one field saturating at radius scale ~3.
LatticeModel make_hedgehog_model(int N, double h, double phi_r0, double phi_r1);
LatticeModel make_zero_model(int d, int N, double h, int m, double mu);
LatticeModel make_constant_model(int d, int N, double h, const Matrix& a0, const Matrix& b0);
// Trigonometric box-periodic potential, analytic gradient; good for
// finite-difference consistency because it has no wrap seam.
LatticeModel make_fourier_model(int d, int N, double h, int m, unsigned long long seed);

class AssembledOperators {
 public:
  const Matrix& d_op() const { return d_; }
  const Matrix& d_star() const { return dstar_; }
  const CliffordRep& clifford() const { return clifford_; }
  int dim() const { return static_cast<int>(d_.rows()); }
  int grid() const { return grid_; }
  int spinor_dim() const { return r_; }
  int fiber_dim() const { return m_; }

  // Cached eigenvalues (ascending) of D*D and DD*.
  const RealVector& spectrum_dstar_d() const;
  const RealVector& spectrum_d_dstar() const;

 private:
  friend AssembledOperators assemble(const LatticeModel&, int);
  Matrix d_, dstar_;
  CliffordRep clifford_;
  int grid_ = 0, r_ = 0, m_ = 0;
  mutable RealVector spec_dstar_d_, spec_d_dstar_;  // lazily filled
};

// Dense assembly of D = i c.grad + A and its adjoint (built independently and
// cross-checked). Dimension N^d r m must stay within dim_cap.
AssembledOperators assemble(const LatticeModel& model, int dim_cap = 4096);

// Sum e^(-t eig(D*D)) - Sum e^(-t eig(DD*)). In finite dimensions the partial
// spinor trace followed by the grid-fiber trace equals the full trace, so the
// spectra suffice.
double heat_trace_diff(const AssembledOperators& ops, double t);

// Diagnostic route through the explicit heat kernels: partial trace over the
// spinor factor first, then the remaining trace. Needs eigenvectors; meant
// for small models.
double heat_trace_diff_iterated(const AssembledOperators& ops, double t);

// Fiber side of the trace formula at time t:
//   (2/d)(4 pi)^(-d/2) t^(d/2) Sum_x h^d Int_simplex
//     Tr prod_{j=0}^{d-1} [(i c.grad a_phi)(x) e^(-t s_j a_phi^2(x))] ds,
// with the analytic gradient and a uniform simplex rule on the d-slot simplex.
double rhs_trace_formula(const LatticeModel& model, double t, const SimplexRule& rule);

// Per-cell fiber data for the shift-density assembly.
std::vector<FiberSample> fiber_samples(const LatticeModel& model);

struct ModelShiftReport {
  SpectralShiftDensity eta;
  std::vector<double> t;
  std::vector<double> heat_lhs;          // heat_trace_diff
  std::vector<double> laplace_eta_rhs;   // 2 (4 pi)^(-d/2) t^(d/2) L(eta)(t)
  std::vector<double> minus_td_laplace_xi;  // -t^d L(xi)(t), functional-equation route
};

// eta from the fiber decomposition, xi through the fractional integral, and
// the Laplace-domain comparison columns on t_grid. xi is recoverable from
// eta via xi_from_eta; the report keeps the density and the curves.
ModelShiftReport eta_and_xi_for_model(const LatticeModel& model, const std::vector<double>& t_grid,
                                      int dim_cap = 4096);

// Fourier oracle for the flat operator: ascending eigenvalues of D*D when
// b = 0 and a0 = 0, i.e. sum_j sin(2 pi k_j / N)^2 / h^2 with multiplicity
// r m per momentum vector.
RealVector flat_kinetic_spectrum(int d, int N, double h, int m);

}  // namespace specshift
