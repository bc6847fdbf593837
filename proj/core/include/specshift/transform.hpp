#pragma once

#include <functional>
#include <vector>

#include "specshift/density.hpp"
#include "specshift/hermitian.hpp"
#include "specshift/types.hpp"

namespace specshift {

// Constants tying the odd dimension d to its fractional-integral weights.
struct FunctionalEquationConstants {
  int d = 1;
  int k = 0;               // (d-1)/2
  double c_d = 0.0;        // ((d-1)/2)! / (pi^((d+1)/2) (d-1)!)
  double halfpower = 0.0;  // d/2 - 1, the Abel weight exponent
  double corollary = 0.0;  // (1/pi) (4 pi)^(-k)
  double laplace_factor = 0.0;  // 2 (4 pi)^(-d/2); equals c_d Gamma(d/2)

  static FunctionalEquationConstants make(int d);
};

// Laplace transform of a density, exact per piece and atom.
cplx laplace(const SpectralShiftDensity& density, double t);

// prefactor * [ Int_0^lambda (lambda-mu)^s rho_ac(mu) dmu
//               + sum atoms m (lambda-loc)_+^s ]
// for a real-reduced base density rho. Pointwise values use exact incomplete
// betas per piece; definite integrals and Laplace transforms integrate each
// inter-breakpoint panel after the substitution lambda = p + w u^2, which
// turns the (lambda-p)^(s+1) edge behavior into an integer power of u.
class FractionalShift {
 public:
  FractionalShift(SpectralShiftDensity base, double s, double prefactor);

  double operator()(double lambda) const;
  double integral(double upper) const;  // Int_0^upper of the evaluator
  double laplace(double t) const;       // Int_0^inf e^(-t lambda) value dlambda

  const SpectralShiftDensity& base() const { return base_; }
  double power() const { return s_; }
  double prefactor() const { return prefactor_; }

 private:
  double ac_value(double lambda) const;
  double atom_value(double lambda) const;

  SpectralShiftDensity base_;
  double s_;
  double prefactor_;
  std::vector<double> edges_;  // piece breakpoints and atom locations
};

// The order-d shift function: -c_d Int_0^lambda (lambda-mu)^(d/2-1) eta dmu,
// atoms contributing -c_d m (lambda-loc)_+^(d/2-1). Requires supp eta in
// [0, inf).
FractionalShift xi_from_eta(const SpectralShiftDensity& eta, int d);

// Its k-th derivative, k = (d-1)/2, which collapses to the single weight
// -(1/pi)(4 pi)^(-k) Int_0^lambda (lambda-mu)^(-1/2) eta dmu.
FractionalShift xi_k_from_eta(const SpectralShiftDensity& eta, int d);

// The (d-1)-st derivative: same -1/2 weight against the exact k-th piecewise
// derivative of eta. Demands k-fold differentiability (derivative jumps at
// interior breakpoints below smoothness_tol), eta^(j)(0+) = 0 for
// j <= (d-3)/2, and no atoms; violations raise hypothesis_not_met.
FractionalShift xi_dminus1_from_eta(const SpectralShiftDensity& eta, int d,
                                    double smoothness_tol = 1e-8);

// Relative defect of L(xi)(t) + 2 (4 pi)^(-d/2) t^(-d/2) L(eta)(t) = 0,
// the Laplace-domain form of the functional equation. L(xi) is quadrature,
// L(eta) exact.
double functional_equation_gap(const SpectralShiftDensity& eta, int d, double t);

// Int_0^lambda (lambda-mu)^power g(mu) dmu with the endpoint singularity
// folded into a Gauss-Jacobi rule (power > -1).
double abel_integral(const std::function<double(double)>& g, double power, double lambda,
                     int order = 48);

struct HeatLimitReport {
  std::vector<double> t;
  std::vector<double> value;  // -Int_0^inf nu e^(-nu) Avg(nu/t) dnu per t
  double limit = 0.0;
  bool converged = false;
};

// Long-time heat limit from the cumulative integral of xi^(d-1): the
// averaged identity F(t) = -Int nu e^(-nu) [(t/nu) Int_0^(nu/t) xi^(d-1)] dnu
// evaluated on t_grid (ascending), extrapolated in 1/t.
HeatLimitReport heat_limit(const std::function<double(double)>& xi_cumulative,
                           const std::vector<double>& t_grid, int laguerre_order = 40);
HeatLimitReport heat_limit(const FractionalShift& xi_dminus1, const std::vector<double>& t_grid);

struct LebesgueReport {
  std::vector<double> h;
  std::vector<double> average;      // (1/h) Int_0^h g
  std::vector<double> extrapolant;  // geometric-sequence extrapolation
  double value = 0.0;
  bool converged = false;
};

// Right Lebesgue point of g at 0 over h_j = h0 2^(-j): consecutive
// extrapolants must agree to rel_tol (relative to max(|value|, 1)).
LebesgueReport lebesgue_point_right(const std::function<double(double)>& g, double h0,
                                    int levels = 11, double rel_tol = 1e-3);

struct WittenReport {
  double lebesgue_value = 0.0;  // L, the Lebesgue point of u -> u eta^(k)(u^2)
  double index = 0.0;           // (4 pi)^(-k) L
  double xi_dminus1_at_zero = 0.0;
  double route_gap = 0.0;  // |index - (-xi^(d-1)(0+))| / max(1, |index|)
  bool routes_agree = false;
  LebesgueReport lebesgue;
};

// Partial Witten index from a piecewise-polynomial eta (eta^(k) taken
// exactly); cross-checked against -xi^(d-1)(0+).
WittenReport witten_index(const SpectralShiftDensity& eta, int d, double h0 = 0.5,
                          double agree_tol = 1e-6);

// Same from a continuum evaluator of eta^(k). mu_power_at_zero declares the
// leading power of eta^(k) at 0 (0 for bounded, -0.5 for the inverse-sqrt
// class) so the Abel quadrature can fold it into its weight.
WittenReport witten_index_from_derivative(const std::function<double(double)>& eta_k, int d,
                                          double mu_power_at_zero, double h0 = 0.5,
                                          double agree_tol = 1e-6);

// dim ker D - dim ker D* via singular values below rel_threshold * sigma_max.
int fredholm_index(const Matrix& d_op, double rel_threshold = 1e-10);

struct D1CompatReport {
  std::vector<double> lambda;
  std::vector<double> via_symmetrized_eta;      // xi_from_eta at d=1 applied to
                                                // (kappa(sqrt mu)+kappa(-sqrt mu))/(2 sqrt mu)
  std::vector<double> via_kappa_substitution;   // -(1/pi) Int (lambda-mu^2)^(-1/2) kappa
  double max_abs_gap = 0.0;
};

// d=1 compatibility of the two first-order shift-function routes; both sides
// come out in arcsin closed form per constancy interval of kappa.
D1CompatReport check_d1_compatibility(const HermitianOperator& a_plus,
                                      const HermitianOperator& a_minus,
                                      const std::vector<double>& lambda_grid);

}  // namespace specshift
