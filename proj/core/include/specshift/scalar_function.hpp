#pragma once

#include <string>
#include <vector>

namespace specshift {

// A scalar function together with exact derivatives up to max_order().
// Families: exponential e^(-t x); monomial x^k; polynomial; gaussian_tail,
// the Schwartz-type extension equal to e^(-t x) on x >= 0 and to
// e^(-t m(x)), m(x) = x + x^2 e^(1/x), on x < 0 (smooth junction at 0).
class ScalarFunctionFamily {
 public:
  enum class Kind { exponential, monomial, polynomial, gaussian_tail };

  static ScalarFunctionFamily exponential(double t);
  static ScalarFunctionFamily monomial(int k);
  static ScalarFunctionFamily polynomial(std::vector<double> ascending_coeffs);
  static ScalarFunctionFamily gaussian_tail(double t, int n_max = 12);

  double operator()(double x) const { return derivative(0, x); }
  // Exact k-th derivative; throws a capability error for k > max_order().
  double derivative(int order, double x) const;
  int max_order() const;
  Kind kind() const { return kind_; }
  double param() const { return t_; }
  // Degree of the (offset-differentiated) polynomial; -1 for other kinds.
  int poly_degree() const;
  const std::string& name() const { return name_; }

  // The family of f^(shift): derivative evaluations are offset, so divided
  // differences and operator integrals of f' reuse the same machinery.
  ScalarFunctionFamily derivative_family(int shift = 1) const;

 private:
  ScalarFunctionFamily() = default;

  Kind kind_ = Kind::exponential;
  double t_ = 1.0;                  // rate for exponential/gaussian_tail
  double scale_ = 1.0;              // overall factor (accumulated by derivative_family)
  std::vector<double> coeffs_;      // polynomial/monomial, ascending
  int order_offset_ = 0;
  int n_max_ = 1 << 20;
  std::string name_;
};

}  // namespace specshift
