#include "specshift/clifford.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "specshift/errors.hpp"

namespace specshift {
namespace {

Matrix pauli(int j) {
  Matrix s(2, 2);
  switch (j) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

cplx clifford_trace_constant(int d) {
  cplx v = std::pow(2.0 * kI, (d - 1) / 2);
  cplx mi = std::pow(-kI, d);
  return v * mi;
}

CliffordRep build_clifford(int d) {
  require(d >= 1 && d % 2 == 1, Error::Code::invalid_argument,
          "Clifford dimension must be odd and positive");
  require(d <= 13, Error::Code::resource, "Clifford dimension capped at 13 (rank 64)");

  CliffordRep rep;
  rep.d = d;
  rep.r = 1 << ((d - 1) / 2);
  if (d == 1) {
    Matrix c(1, 1);
    c << -kI;
    rep.c = {c};
    return rep;
  }
  if (d == 3) {
    rep.c = {-kI * pauli(1), -kI * pauli(2), -kI * pauli(3)};
    return rep;
  }

  // Doubling step d-2 -> d: with gamma_j = i c_j Hermitian, take
  // G_j = sigma_1 (x) gamma_j, G_(d-1) = sigma_2 (x) Id, G_d = sigma_3 (x) Id,
  // and c_j = -i G_j.
  CliffordRep prev = build_clifford(d - 2);
  Matrix id_prev = identity(prev.r);
  rep.c.reserve(d);
  for (int j = 0; j < d - 2; ++j) {
    Matrix gamma = kI * prev.c[j];
    rep.c.push_back(-kI * Eigen::kroneckerProduct(pauli(1), gamma).eval());
  }
  rep.c.push_back(-kI * Eigen::kroneckerProduct(pauli(2), id_prev).eval());
  rep.c.push_back(-kI * Eigen::kroneckerProduct(pauli(3), id_prev).eval());

  // Fix the orientation so the d-fold trace matches the convention exactly:
  // swapping two generators flips the sign.
  Matrix prod = rep.c[0];
  for (int j = 1; j < d; ++j) prod = prod * rep.c[j];
  cplx got = prod.trace();
  cplx expected = clifford_trace_constant(d);
  if (std::abs(got - expected) > std::abs(got + expected)) {
    std::swap(rep.c[d - 2], rep.c[d - 1]);
  }
  return rep;
}

cplx clifford_word_trace(const CliffordRep& rep, const std::vector<int>& word) {
  for (int idx : word)
    require(idx >= 1 && idx <= rep.d, Error::Code::invalid_argument,
            "Clifford word index out of range");
  Matrix prod = identity(rep.r);
  for (int idx : word) prod = prod * rep.c[idx - 1];
  return prod.trace();
}

RadialSplit radial_split(const CliffordRep& rep, const RealVector& direction) {
  require(direction.size() == rep.d, Error::Code::shape,
          "direction dimension must match the Clifford dimension");
  require(std::abs(direction.norm() - 1.0) < 1e-12, Error::Code::invalid_argument,
          "direction must be a unit vector");
  RadialSplit out;
  out.c_R = Matrix::Zero(rep.r, rep.r);
  for (int j = 0; j < rep.d; ++j) out.c_R += direction[j] * rep.c[j];
  Matrix id = identity(rep.r);
  out.P_plus = 0.5 * (id - kI * out.c_R);
  out.P_minus = 0.5 * (id + kI * out.c_R);
  return out;
}

}  // namespace specshift
