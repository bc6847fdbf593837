#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specshift/scalar_function.hpp"
#include "specshift/types.hpp"

namespace specshift {

// A finite measure on the line: an absolutely continuous part stored as a
// piecewise polynomial (coefficients ascending, centered at each piece's left
// endpoint) plus a finite list of atoms. Atoms are first class: fully
// confluent eigenvalue tuples force them in finite dimensions.
class SpectralShiftDensity {
 public:
  struct Atom {
    double location;
    cplx mass;
  };

  SpectralShiftDensity() = default;
  SpectralShiftDensity(std::vector<double> breakpoints, std::vector<std::vector<cplx>> pieces,
                       std::vector<Atom> atoms);

  static SpectralShiftDensity zero() { return SpectralShiftDensity(); }
  static SpectralShiftDensity atom(double location, cplx mass);
  static SpectralShiftDensity piecewise_constant(std::vector<double> breakpoints,
                                                 std::vector<cplx> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<cplx>>& pieces() const { return pieces_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return pieces_.empty() && atoms_.empty(); }

  // Value of the absolutely continuous part (atoms are not point values).
  cplx operator()(double x) const;

  cplx total_mass() const;
  cplx moment(int k) const;  // int x^k d(this)
  double l1_norm() const;    // numerical for the a.c. part, exact for atoms
  double imag_l1() const;

  // int e^(-t x) d(this), exact per piece via regularized lower incomplete gamma.
  cplx integral_against_exp(double t) const;

  // int f^(n) d(this): exact for exponential/monomial/polynomial families;
  // gaussian_tail uses the exponential closed form on [0,inf) pieces and
  // high-order Gauss-Legendre on pieces below 0.
  cplx pair_with_derivative(const ScalarFunctionFamily& f, int n) const;

  // Support bounds over pieces and atoms; meaningless when is_zero().
  double support_min() const;
  double support_max() const;

  // Exact piecewise derivative of the a.c. part; atoms must be absent.
  SpectralShiftDensity ac_derivative() const;
  // Evaluate the k-th derivative of the a.c. part at x (x not a breakpoint).
  cplx ac_derivative_value(int k, double x) const;
  // Max jump of the j-th derivative across interior breakpoints (smoothness probe).
  double max_interior_jump(int j) const;

  void add_scaled(const SpectralShiftDensity& other, cplx weight);
  void scale(cplx weight);

  // Drop zero edge pieces and fuse adjacent pieces whose polynomials agree
  // (coefficientwise, relative tolerance) after recentering.
  void compactify(double relative_merge_tol = 1e-12);

  // Real-reduced JSON (17 significant digits). Throws if the imaginary residue
  // exceeds 1e-10 of the L1 norm.
  std::string to_json(int indent = 2) const;
  static SpectralShiftDensity from_json(const std::string& text);

 private:
  void validate() const;

  std::vector<double> breakpoints_;         // sorted; empty or size >= 2
  std::vector<std::vector<cplx>> pieces_;   // size breakpoints_.size() - 1 when nonempty
  std::vector<Atom> atoms_;                 // sorted by location
};

// The unit-mass B-spline transported measure: the pushforward of ds (mass
// 1/n!) on Delta_n under s -> <s, nodes>. Piecewise polynomial of degree
// n-1 on [min nodes, max nodes]; the pure atom (1/n!) delta when all nodes
// coincide. Satisfies int f^(n) d rho = Dif_n f.
SpectralShiftDensity bspline_density(const std::vector<double>& nodes);

// Piecewise-linear interpolant through (x_i, y_i), zero outside [x_0, x_last].
// x must be strictly increasing with at least two points.
SpectralShiftDensity density_from_samples(const std::vector<double>& x,
                                          const std::vector<double>& y);

}  // namespace specshift
