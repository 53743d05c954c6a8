#include "nv/spin.hpp"

#include <cmath>
#include <stdexcept>

namespace nv {

namespace {

void check_spin(double S) {
  if (!valid_spin(S)) throw std::invalid_argument("spin must be a non-negative multiple of 1/2");
}

}  // namespace

bool valid_spin(double S) {
  if (S < 0.0) return false;
  const double twoS = 2.0 * S;
  return std::abs(twoS - std::round(twoS)) < 1e-12;
}

int multiplicity(double S) {
  check_spin(S);
  return static_cast<int>(std::lround(2.0 * S)) + 1;
}

Eigen::MatrixXcd spin_z(double S) {
  const int n = multiplicity(S);
  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) sz(k, k) = S - k;
  return sz;
}

Eigen::MatrixXcd spin_plus(double S) {
  const int n = multiplicity(S);
  Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(n, n);
  // S+|S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>; row k holds m = S - k
  for (int k = 1; k < n; ++k) {
    const double m = S - k;
    sp(k - 1, k) = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
  }
  return sp;
}

Eigen::MatrixXcd spin_minus(double S) {
  return spin_plus(S).adjoint();
}

Eigen::MatrixXcd spin_x(double S) {
  const Eigen::MatrixXcd sp = spin_plus(S);
  return 0.5 * (sp + sp.adjoint());
}

Eigen::MatrixXcd spin_y(double S) {
  const Eigen::MatrixXcd sp = spin_plus(S);
  return std::complex<double>(0.0, -0.5) * (sp - sp.adjoint());
}

std::array<Eigen::MatrixXcd, 3> spin_ops(double S) {
  return {spin_x(S), spin_y(S), spin_z(S)};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd anticomm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b + b * a;
}

}  // namespace nv
