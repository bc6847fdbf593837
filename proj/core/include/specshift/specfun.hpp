#pragma once

namespace specshift {

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a), a > 0, x >= 0.
double lower_gamma_regularized(double a, double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0,1].
double inc_beta_regularized(double a, double b, double x);

// Unnormalized incomplete beta B(x; a, b) = int_0^x u^(a-1)(1-u)^(b-1) du.
double inc_beta(double a, double b, double x);

double beta_fn(double a, double b);

// Bessel J of integer order; series below |x| = 12, Hankel asymptotics beyond.
double bessel_j_int(int n, double x);

// Bessel J of half-integer order k + 1/2 (k >= -1) via closed trigonometric
// forms, with a series fallback near 0 where those forms cancel.
double bessel_j_half(int k, double x);

// Dispatch on integer / half-integer order.
double bessel_j(double nu, double x);

// phi_nu(a, mu) = (mu/a)^(nu/2) J_nu(2 sqrt(a mu)), extended to its entire
// continuation in (a, mu) with a, mu >= 0. Satisfies d/dmu phi_nu = phi_(nu-1)
// and the Laplace pair int_0^inf e^(-t mu) phi_(d/2-1)(a, mu) dmu = t^(-d/2) e^(-a/t).
double phi_bessel(double nu, double a, double mu);

}  // namespace specshift
