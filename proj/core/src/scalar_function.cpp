#include "specshift/scalar_function.hpp"

#include <cmath>
#include <vector>

#include "specshift/errors.hpp"

namespace specshift {
namespace {

// Truncated Taylor jet around a point: value plus derivatives/k!.
struct Jet {
  std::vector<double> c;
  explicit Jet(int len) : c(len, 0.0) {}
  int len() const { return static_cast<int>(c.size()); }
};

Jet jet_var(double x, int len) {
  Jet j(len);
  j.c[0] = x;
  if (len > 1) j.c[1] = 1.0;
  return j;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r(a.len());
  for (int i = 0; i < a.len(); ++i)
    for (int j = 0; i + j < a.len(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Jet jet_add(const Jet& a, const Jet& b) {
  Jet r(a.len());
  for (int i = 0; i < a.len(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Jet jet_scale(const Jet& a, double s) {
  Jet r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

Jet jet_reciprocal(const Jet& a) {
  Jet r(a.len());
  r.c[0] = 1.0 / a.c[0];
  for (int n = 1; n < a.len(); ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += a.c[k] * r.c[n - k];
    r.c[n] = -s * r.c[0];
  }
  return r;
}

Jet jet_exp(const Jet& a) {
  Jet r(a.len());
  r.c[0] = std::exp(a.c[0]);
  for (int n = 1; n < a.len(); ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * a.c[k] * r.c[n - k];
    r.c[n] = s / n;
  }
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// k-th derivative of e^(-t m(x)) at x < 0, m(x) = x + x^2 e^(1/x).
double gaussian_tail_negative(double t, int order, double x) {
  int len = order + 1;
  Jet xj = jet_var(x, len);
  Jet m = xj;
  // x^2 e^(1/x) underflows to exactly 0 for x > -1/700; the jet then reduces to x.
  if (1.0 / x > -700.0) {
    Jet e = jet_exp(jet_reciprocal(xj));
    m = jet_add(xj, jet_mul(jet_mul(xj, xj), e));
  }
  Jet f = jet_exp(jet_scale(m, -t));
  return f.c[order] * factorial(order);
}

}  // namespace

ScalarFunctionFamily ScalarFunctionFamily::exponential(double t) {
  require(t > 0.0, Error::Code::invalid_argument, "exponential family needs t > 0");
  ScalarFunctionFamily f;
  f.kind_ = Kind::exponential;
  f.t_ = t;
  f.name_ = "exp(-" + std::to_string(t) + "x)";
  return f;
}

ScalarFunctionFamily ScalarFunctionFamily::monomial(int k) {
  require(k >= 0, Error::Code::invalid_argument, "monomial degree must be >= 0");
  ScalarFunctionFamily f;
  f.kind_ = Kind::monomial;
  f.coeffs_.assign(k + 1, 0.0);
  f.coeffs_[k] = 1.0;
  f.name_ = "x^" + std::to_string(k);
  return f;
}

ScalarFunctionFamily ScalarFunctionFamily::polynomial(std::vector<double> ascending_coeffs) {
  ScalarFunctionFamily f;
  f.kind_ = Kind::polynomial;
  f.coeffs_ = std::move(ascending_coeffs);
  if (f.coeffs_.empty()) f.coeffs_.push_back(0.0);
  f.name_ = "poly(deg " + std::to_string(f.coeffs_.size() - 1) + ")";
  return f;
}

ScalarFunctionFamily ScalarFunctionFamily::gaussian_tail(double t, int n_max) {
  require(t > 0.0, Error::Code::invalid_argument, "gaussian_tail family needs t > 0");
  require(n_max >= 0, Error::Code::invalid_argument, "n_max must be >= 0");
  ScalarFunctionFamily f;
  f.kind_ = Kind::gaussian_tail;
  f.t_ = t;
  f.n_max_ = n_max;
  f.name_ = "tail(-" + std::to_string(t) + "x)";
  return f;
}

int ScalarFunctionFamily::max_order() const { return n_max_ - order_offset_; }

int ScalarFunctionFamily::poly_degree() const {
  if (kind_ != Kind::monomial && kind_ != Kind::polynomial) return -1;
  int deg = static_cast<int>(coeffs_.size()) - 1 - order_offset_;
  return deg < -1 ? -1 : deg;
}

double ScalarFunctionFamily::derivative(int order, double x) const {
  require(order >= 0, Error::Code::invalid_argument, "derivative order must be >= 0");
  require(order <= max_order(), Error::Code::capability,
          name_ + ": derivative order " + std::to_string(order + order_offset_) +
              " exceeds cap " + std::to_string(n_max_));
  int k = order + order_offset_;
  switch (kind_) {
    case Kind::exponential: {
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return scale_ * sign * std::pow(t_, k) * std::exp(-t_ * x);
    }
    case Kind::monomial:
    case Kind::polynomial: {
      // k-th derivative of sum c_j x^j: sum over j >= k of c_j j!/(j-k)! x^(j-k).
      double v = 0.0;
      double xp = 1.0;
      for (int j = k; j < static_cast<int>(coeffs_.size()); ++j) {
        double fall = 1.0;
        for (int i = 0; i < k; ++i) fall *= (j - i);
        v += coeffs_[j] * fall * xp;
        xp *= x;
      }
      return scale_ * v;
    }
    case Kind::gaussian_tail: {
      if (x >= 0.0) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return scale_ * sign * std::pow(t_, k) * std::exp(-t_ * x);
      }
      return scale_ * gaussian_tail_negative(t_, k, x);
    }
  }
  throw_error(Error::Code::invalid_argument, "unknown function kind");
}

ScalarFunctionFamily ScalarFunctionFamily::derivative_family(int shift) const {
  require(shift >= 0, Error::Code::invalid_argument, "derivative shift must be >= 0");
  ScalarFunctionFamily f = *this;
  f.order_offset_ += shift;
  require(f.order_offset_ <= f.n_max_, Error::Code::capability,
          "derivative_family exceeds the family's order cap");
  f.name_ = name_ + "'" + (shift > 1 ? "(" + std::to_string(shift) + ")" : "");
  return f;
}

}  // namespace specshift
