#include "doctest.h"

#include <complex>

#include "nv/spin.hpp"

using namespace nv;
using Eigen::MatrixXcd;
using namespace std::complex_literals;

namespace {
double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("spin validity and multiplicities") {
  CHECK(valid_spin(0.5));
  CHECK(valid_spin(1.0));
  CHECK(valid_spin(1.5));
  CHECK_FALSE(valid_spin(0.3));
  CHECK_FALSE(valid_spin(-1.0));
  CHECK(multiplicity(0.5) == 2);
  CHECK(multiplicity(1.0) == 3);
  CHECK(multiplicity(2.5) == 6);
}

TEST_CASE("angular momentum algebra holds for several spins") {
  for (double S : {0.5, 1.0, 1.5, 2.0}) {
    CAPTURE(S);
    auto [sx, sy, sz] = spin_ops(S);
    const int d = multiplicity(S);

    // hermiticity
    CHECK(max_abs(sx - sx.adjoint()) < 1e-14);
    CHECK(max_abs(sy - sy.adjoint()) < 1e-14);
    CHECK(max_abs(sz - sz.adjoint()) < 1e-14);

    // cyclic commutators [Si, Sj] = i Sk
    CHECK(max_abs(sx * sy - sy * sx - 1i * sz) < 1e-14);
    CHECK(max_abs(sy * sz - sz * sy - 1i * sx) < 1e-14);
    CHECK(max_abs(sz * sx - sx * sz - 1i * sy) < 1e-14);

    // Casimir S^2 = S(S+1) I
    const MatrixXcd s2 = sx * sx + sy * sy + sz * sz;
    const MatrixXcd expect = S * (S + 1) * MatrixXcd::Identity(d, d);
    CHECK(max_abs(s2 - expect) < 1e-13);
  }
}

TEST_CASE("ladder operator matrix elements") {
  const double S = 1.0;
  const MatrixXcd sp = spin_plus(S);
  // basis ordered m = +1, 0, -1: <m+1|S+|m> = sqrt(S(S+1) - m(m+1))
  CHECK(std::abs(sp(0, 1)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(sp(1, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(max_abs(spin_minus(S) - sp.adjoint()) < 1e-14);
  // S+- raise/lower along the ordered basis only
  CHECK(std::abs(sp(1, 0)) < 1e-14);
  CHECK(std::abs(sp(2, 1)) < 1e-14);
}

TEST_CASE("spin_z is diagonal with descending m") {
  const MatrixXcd sz = spin_z(1.5);
  CHECK(sz(0, 0).real() == doctest::Approx(1.5));
  CHECK(sz(1, 1).real() == doctest::Approx(0.5));
  CHECK(sz(2, 2).real() == doctest::Approx(-0.5));
  CHECK(sz(3, 3).real() == doctest::Approx(-1.5));
  CHECK(std::abs(sz.trace()) < 1e-14);
}

TEST_CASE("kron dimensions and block structure") {
  const MatrixXcd a = spin_z(1.0);             // 3x3
  const MatrixXcd b = MatrixXcd::Identity(2, 2);
  const MatrixXcd k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  // diagonal blocks a(i,i) * I2
  CHECK(k(0, 0) == a(0, 0));
  CHECK(k(1, 1) == a(0, 0));
  CHECK(k(2, 2) == a(1, 1));
  CHECK(k(5, 5) == a(2, 2));

  // mixed product rule (A x B)(C x D) = AC x BD
  const MatrixXcd c = spin_x(1.0);
  const MatrixXcd d = spin_y(0.5);
  CHECK(max_abs(kron(a, d) * kron(c, d) - kron(a * c, d * d)) < 1e-13);
}

TEST_CASE("anticommutator") {
  auto [sx, sy, sz] = spin_ops(1.0);
  CHECK(max_abs(anticomm(sx, sy) - (sx * sy + sy * sx)) < 1e-15);
  // for S=1, {Sx, Sx} = 2 Sx^2
  CHECK(max_abs(anticomm(sx, sx) - 2.0 * sx * sx) < 1e-15);
}
