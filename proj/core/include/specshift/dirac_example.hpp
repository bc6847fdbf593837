#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specshift/simplex.hpp"
#include "specshift/transform.hpp"
#include "specshift/types.hpp"

namespace specshift {

// Potential V(x, y): x in R^d, y in R, values Hermitian dim_g x dim_g.
// Separable kind means V(x,y) = phi(y) H(x) with a normalized profile
// (int phi = 1, verified at construction). Scalar kind (dim_g = 1) may carry
// an exact y-antiderivative so its propagators are closed-form.
struct PotentialV {
  int d = 3;
  int dim_g = 2;
  bool separable = false;
  double support_radius_y = 8.0;  // |y| beyond which the y-profile is negligible
  double decay_rate_x = 1.0;      // documented length scale of the x-decay
  std::string name;

  std::function<Matrix(const RealVector&, double)> value;
  std::function<std::vector<Matrix>(const RealVector&, double)> grad_x;

  // separable kind
  std::function<double(double)> phi_y;
  std::function<double(double)> phi_cdf;  // int_{-inf}^y phi
  std::function<Matrix(const RealVector&)> h_x;

  // scalar kind: int_{-inf}^y V(x, .) (1x1, returned as double)
  std::function<double(const RealVector&, double)> scalar_cdf;
};

PotentialV make_hedgehog_potential(double y_width = 1.0);
PotentialV make_scalar_control_potential();
PotentialV make_zero_potential(int d = 3, int dim_g = 2);

// U^{V(x,.)}(y1, y2), dispatching on the potential kind (closed form for
// separable and scalar kinds, midpoint stepping otherwise).
Matrix potential_propagator(const PotentialV& v, const RealVector& x, double y1, double y2,
                            double tol = 1e-9);

// U^V(x): the propagator over [-L, L] with L grown until increments fall
// below 1e-8 (cap l_cap); separable kind returns exp(i H(x)) directly.
Matrix limit_propagator(const PotentialV& v, const RealVector& x, double l_cap = 16.0);

// Cell-centered cube grid [-radius, radius]^d, even counts keep 0 off-grid.
struct XGrid {
  double radius = 7.0;
  int points_per_axis = 26;
};

// ind_V(z) = (2/d)(4 pi)^(-d/2) (2i)^((d-1)/2) *
//            int_x Tr_G sum_{sigma in S_d} sgn(sigma)
//            prod_j d_{sigma(j)}V(x, z_{j-1}) U^{V(x,.)}(z_{j-1}, z_j)
// with the cyclic convention z_0 := z_d. start_slot rotates the traced
// product, a cyclicity diagnostic that must not change the value.
cplx index_density(const PotentialV& v, const RealVector& z, const XGrid& grid,
                   int start_slot = 0);

struct McOptions {
  int samples = 1200;
  unsigned long long seed = 2026;
  double sampler_width = 0.0;  // Gaussian importance width per z-slot; 0 = auto
};

// Importance-sampled z cloud with cached ind_V values; one seed fixes the
// whole cloud so every consumer sees common random numbers.
struct ZSampleSet {
  int d = 3;
  double sampler_width = 1.0;
  std::vector<RealVector> z;
  std::vector<double> weight;  // 1 / sampling pdf
  std::vector<cplx> ind;

  cplx integral() const;  // MC estimate of int ind_V(z) dz
  double standard_error() const;
  ZSampleSet head(int n) const;  // leading sub-cloud (shared randomness)
};

ZSampleSet sample_index_cloud(const PotentialV& v, const XGrid& grid, const McOptions& mc);

// Simplex-quadrature kernels built from Bessel ladders:
//   Omega_d(mu, z)   = (1/2) int (prod s^(-1/2)) phi_(d/2-1)(a(s,z), mu) ds
//   Sigma_d(lambda,z) = -(4 pi)^(-d/2) int (prod s^(-1/2)) phi_(d-1)(a(s,z), lambda) ds
// with a(s, z) = sum_j (z_{j-1} - z_j)^2 / (4 s_j). derivative_order shifts
// the Bessel order down (d/dmu phi_nu = phi_(nu-1)).
struct ExampleKernels {
  int d = 3;
  SimplexRule rule;

  static ExampleKernels make(int d, int points_per_axis = 16);
  double a_of(const RealVector& s, const RealVector& z) const;
  double omega(double mu, const RealVector& z, int derivative_order = 0) const;
  double sigma(double lambda, const RealVector& z, int derivative_order = 0) const;
};

// eta(mu) = int Omega_d(mu, z) ind_V(z) dz over the cloud; xi(lambda)
// likewise with Sigma_d. derivative_order differentiates the kernel.
double eta_example(const ZSampleSet& cloud, const ExampleKernels& kernels, double mu,
                   int derivative_order = 0);
double xi_example(const ZSampleSet& cloud, const ExampleKernels& kernels, double lambda,
                  int derivative_order = 0);

// |int_0^inf e^(-t mu) phi_(d/2-1)(a, mu) dmu - t^(-d/2) e^(-a/t)|
double schlafli_gap(double a, double t, int d);

struct WindingReport {
  double value = 0.0;
  double nearest_integer_gap = 0.0;
  double boundary_defect = 0.0;
};

// Degree of a unitary field: (2 pi i)^(-(d+1)/2) ((d-1)/2)!/d! *
// int Tr_G (U^(-1) dU)^d, Levi-Civita expanded with central differences on a
// cell-centered cube grid. For d=3 the constant equals -1/(24 pi^2).
// Boundary samples must agree with each other within boundary_tol, else the
// domain is reported as truncated.
WindingReport winding_index(const std::function<Matrix(const RealVector&)>& u_field, int d,
                            double radius, int points_per_axis, double boundary_tol = 0.1);

struct ExampleIndexReport {
  WindingReport winding;
  cplx mc_integral;  // raw int ind_V(z) dz
  double mc_standard_error = 0.0;
  int mc_samples = 0;
  // the z-integral carries the index up to the dimensional constant
  // (4 pi)^(-d/2) int_simplex prod s^(-1/2) ds = 2^(-d) / Gamma(d/2)
  double mc_index = 0.0;
  double mc_index_standard_error = 0.0;
  WittenReport pipeline;  // heat route: eta-derivative -> Lebesgue limit
};

// 2^(-d) / Gamma(d/2): multiplies int ind_V dz to give the index.
double index_dimensional_constant(int d);

// Runs the three index routes (winding form, MC z-integral of ind_V, spectral
// shift pipeline) on one shared sample cloud.
ExampleIndexReport example_index_report(const PotentialV& v, const XGrid& grid,
                                        const McOptions& mc, int kernel_points = 12,
                                        int pipeline_samples = 150);

}  // namespace specshift
