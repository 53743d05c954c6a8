#include "doctest.h"

#include <complex>
#include <stdexcept>

#include "nv/linalg.hpp"

using namespace nv;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using namespace std::complex_literals;

namespace {
double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

MatrixXcd test_hermitian(int n, unsigned seed) {
  std::srand(seed);
  MatrixXcd a = MatrixXcd::Random(n, n);
  return 0.5 * (a + a.adjoint());
}
}  // namespace

TEST_CASE("eigenvalues ascend and reconstruct the input") {
  const MatrixXcd h = test_hermitian(8, 42);
  const auto sys = diagonalize(h);
  REQUIRE(sys.values.size() == 8);
  for (int i = 0; i + 1 < 8; ++i) CHECK(sys.values(i) <= sys.values(i + 1));
  // unitarity
  CHECK(max_abs(sys.vectors.adjoint() * sys.vectors -
                MatrixXcd::Identity(8, 8)) < 1e-12);
  // H = V diag(w) V^dag
  const MatrixXcd rebuilt =
      sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint();
  CHECK(max_abs(rebuilt - h) < 1e-12);
}

TEST_CASE("non-Hermitian input is rejected") {
  MatrixXcd h = MatrixXcd::Zero(3, 3);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(diagonalize(h), std::invalid_argument);
}

TEST_CASE("phase convention: largest component real positive") {
  const MatrixXcd h = test_hermitian(6, 7);
  const auto sys = diagonalize(h);
  for (int k = 0; k < 6; ++k) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < 6; ++i) {
      if (std::abs(sys.vectors(i, k)) > best) {
        best = std::abs(sys.vectors(i, k));
        imax = i;
      }
    }
    CHECK(sys.vectors(imax, k).real() > 0.0);
    CHECK(std::abs(sys.vectors(imax, k).imag()) < 1e-12);
  }
}

TEST_CASE("repeated calls give identical output") {
  const MatrixXcd h = test_hermitian(10, 3);
  const auto a = diagonalize(h);
  const auto b = diagonalize(h);
  CHECK(max_abs(a.vectors - b.vectors) == 0.0);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degenerate clusters get a deterministic basis") {
  // diag(1, 1, 2) conjugated by a fixed unitary has a degenerate pair.
  MatrixXcd u = MatrixXcd::Zero(3, 3);
  const double c = std::cos(0.3), s = std::sin(0.3);
  u << c, -s, 0, s, c, 0, 0, 0, 1;
  Eigen::Vector3d w(1.0, 1.0, 2.0);
  const MatrixXcd h = u * w.asDiagonal() * u.adjoint();

  const auto sys = diagonalize(h);
  CHECK(sys.values(0) == doctest::Approx(1.0));
  CHECK(sys.values(1) == doctest::Approx(1.0));
  CHECK(sys.values(2) == doctest::Approx(2.0));

  // the degenerate basis is rebuilt from coordinate projections, so the
  // returned columns are the coordinate axes of the subspace, not the
  // arbitrary mixture the backend solver happens to produce
  CHECK(std::abs(sys.vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(sys.vectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-10));

  // eigenvector property still holds for every column
  for (int k = 0; k < 3; ++k) {
    CHECK(max_abs(h * sys.vectors.col(k) - sys.values(k) * sys.vectors.col(k)) <
          1e-12);
  }
}

TEST_CASE("symmetry-equivalent degenerate inputs produce the same basis") {
  // two different unitaries acting inside the same degenerate subspace
  auto build = [](double angle) {
    MatrixXcd u = MatrixXcd::Identity(4, 4);
    const double c = std::cos(angle), s = std::sin(angle);
    u(1, 1) = c;
    u(1, 2) = -s;
    u(2, 1) = s;
    u(2, 2) = c;
    Eigen::Vector4d w(0.0, 5.0, 5.0, 9.0);
    return MatrixXcd(u * w.asDiagonal() * u.adjoint());
  };
  const auto a = diagonalize(build(0.4));
  const auto b = diagonalize(build(1.1));
  CHECK(max_abs(a.vectors - b.vectors) < 1e-10);
}
