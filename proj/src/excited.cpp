#include "nv/excited.hpp"

#include <cmath>
#include <stdexcept>

#include "nv/linalg.hpp"
#include "nv/units.hpp"

namespace nv {

namespace {
constexpr int kA1 = 0, kA2 = 1, kEx = 2, kEy = 3, kE1 = 4, kE2 = 5;
const std::complex<double> kI(0.0, 1.0);

// Shared sparsity of the strain and electric perturbations: u couples the
// reflection-even combinations, v the odd ones.
Eigen::MatrixXcd e_symmetry_block(double u_corner, double v_corner,
                                  double u_mid, double v_mid) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(6, 6);
  m(kA1, kE1) = u_corner;
  m(kA1, kE2) = -kI * v_corner;
  m(kA2, kE1) = -kI * v_corner;
  m(kA2, kE2) = u_corner;
  m(kEx, kEx) = u_mid;
  m(kEy, kEy) = -u_mid;
  m(kEx, kEy) = v_mid;
  Eigen::MatrixXcd full = m + m.adjoint();
  full.diagonal() *= 0.5;  // diagonal entries were not doubled in the paper form
  return full;
}
}  // namespace

ExcitedStateParams ExcitedStateParams::dft_spin_spin() {
  ExcitedStateParams p;
  p.d_es_MHz = 1610.0;
  p.d_a1a2_MHz = 1950.0;
  p.d_e12exy_MHz = 150.0;
  return p;
}

double reduction_factor(double eps_perp_MHz, double t_K) {
  if (eps_perp_MHz < 0.0 || t_K < 0.0)
    throw std::invalid_argument("reduction_factor: negative argument");
  if (eps_perp_MHz == 0.0) return 0.0;
  if (t_K == 0.0) return 1.0;
  const double x = std::exp(-eps_perp_MHz / (KB_MHZ_PER_K * t_K));
  return (1.0 - x) / (1.0 + x);
}

Eigen::MatrixXcd build_excited_hamiltonian(const ExcitedStateParams& p,
                                           const Eigen::Matrix3d& eps,
                                           const Eigen::Vector3d& e_field,
                                           double t_K) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(6, 6);

  const double r = reduction_factor(p.eps_perp_MHz, t_K);
  h(kA1, kA1) = p.d_es_MHz + p.lambda_z_MHz - 0.5 * p.d_a1a2_MHz * r;
  h(kA2, kA2) = p.d_es_MHz + p.lambda_z_MHz + 0.5 * p.d_a1a2_MHz * r;
  h(kE1, kE1) = h(kE2, kE2) = p.d_es_MHz - p.lambda_z_MHz;
  h(kEx, kE1) = h(kE1, kEx) = p.d_e12exy_MHz;
  h(kEy, kE2) = h(kE2, kEy) = p.d_e12exy_MHz;

  const double da1 = 0.5 * (eps(0, 0) - eps(1, 1));
  const double da2 = 0.5 * (eps(0, 1) + eps(1, 0));
  const double db1 = 0.5 * (eps(0, 2) + eps(2, 0));
  const double db2 = 0.5 * (eps(1, 2) + eps(2, 1));
  h += e_symmetry_block(db1, db2, da1, da2);
  h += p.strain_zz_shift_MHz * eps(2, 2) * Eigen::MatrixXcd::Identity(6, 6);

  const double ex = p.d_perp_es_MHz_per_MV_m * e_field(0);
  const double ey = p.d_perp_es_MHz_per_MV_m * e_field(1);
  h += e_symmetry_block(ex, ey, ex, ey);
  h += p.d_z_es_MHz_per_MV_m * e_field(2) * Eigen::MatrixXcd::Identity(6, 6);

  return h;
}

std::vector<PleLine> ple_lines(const Eigen::MatrixXcd& h6,
                               const std::array<double, 6>& w) {
  if (h6.rows() != 6 || h6.cols() != 6)
    throw std::invalid_argument("ple_lines: expected a 6x6 matrix");
  const auto sys = diagonalize(h6);
  const double centroid = sys.values.mean();
  std::vector<PleLine> lines;
  for (int k = 0; k < 6; ++k) {
    double inten = 0.0;
    for (int b = 0; b < 6; ++b) inten += w[b] * std::norm(sys.vectors(b, k));
    lines.push_back({sys.values(k) - centroid, inten});
  }
  return lines;
}

}  // namespace nv
