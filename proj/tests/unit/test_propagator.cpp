#include <doctest.h>

#include <specshift/propagator.hpp>

#include <cmath>
#include <complex>

using namespace specshift;
using cplx = std::complex<double>;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_SUITE("propagator") {

TEST_CASE("unitary exponential of a diagonal generator") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 0.4;
  h(1, 1) = -1.1;
  Matrix u = unitary_exp_i(h);
  CHECK(std::abs(u(0, 0) - std::exp(cplx(0.0, 0.4))) <= 1e-15);
  CHECK(std::abs(u(1, 1) - std::exp(cplx(0.0, -1.1))) <= 1e-15);
  CHECK(std::abs(u(0, 1)) <= 1e-15);
  CHECK(unitarity_defect(u) <= 1e-14);
}

TEST_CASE("constant generator integrates to the exact exponential") {
  Matrix t0 = 0.7 * pauli_x() + 0.3 * pauli_z();
  auto path = [&](double) { return t0; };
  double y1 = 2.0, y2 = -1.5;
  Matrix got = propagate(path, y1, y2);
  Matrix want = unitary_exp_i(Matrix((y1 - y2) * t0));
  CHECK((got - want).norm() <= 1e-9);
  // degenerate interval is the identity exactly
  CHECK((propagate(path, 0.3, 0.3) - Matrix(Matrix::Identity(2, 2))).norm() == 0.0);
}

TEST_CASE("commuting family matches the shortcut") {
  Matrix t0 = 0.8 * pauli_x();
  auto g = [](double y) { return std::exp(-y * y); };
  auto path = [&](double y) { return Matrix(g(y) * t0); };
  for (auto [y1, y2] : {std::pair{1.5, -1.5}, std::pair{-0.4, 2.0}}) {
    Matrix stepped = propagate(path, y1, y2);
    Matrix closed = propagate_commuting(t0, g, y1, y2);
    CHECK((stepped - closed).norm() <= 1e-8);
  }
}

TEST_CASE("generic noncommuting path satisfies the cocycle rule") {
  auto path = [](double y) {
    return Matrix(std::exp(-0.5 * y * y) * pauli_x() +
                  std::exp(-0.5 * (y - 1.0) * (y - 1.0)) * pauli_z());
  };
  double a = 2.5, b = 0.4, c = -2.0;
  Matrix u_ab = propagate(path, a, b);
  Matrix u_bc = propagate(path, b, c);
  Matrix u_ac = propagate(path, a, c);
  CHECK((u_ac - u_ab * u_bc).norm() <= 1e-8);
  CHECK(unitarity_defect(u_ac) <= 1e-9);
  // reversing the endpoints inverts the evolution
  Matrix u_ca = propagate(path, c, a);
  CHECK((u_ac * u_ca - Matrix(Matrix::Identity(2, 2))).norm() <= 1e-8);
}

TEST_CASE("tightening the tolerance moves the answer by less than the budget") {
  auto path = [](double y) {
    return Matrix(std::cos(y) * pauli_x() + 0.5 * std::sin(2.0 * y) * pauli_z());
  };
  Matrix coarse = propagate(path, 3.0, -3.0, 1e-9);
  Matrix fine = propagate(path, 3.0, -3.0, 1e-11);
  CHECK((coarse - fine).norm() <= 1e-7);
}

TEST_CASE("non-hermitian samples are rejected") {
  auto path = [](double y) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = cplx(0.0, y);  // not Hermitian for y != 0
    return m;
  };
  CHECK_THROWS(propagate(path, 1.0, -1.0));
}

TEST_CASE("non-finite endpoints are rejected") {
  auto path = [](double) { return Matrix(pauli_x()); };
  CHECK_THROWS(propagate(path, std::nan(""), 0.0));
}

}  // TEST_SUITE
