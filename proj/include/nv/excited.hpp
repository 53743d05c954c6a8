#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace nv {

// Orbital-excited triplet fine structure in the basis
// (A1, A2, Ex, Ey, E1, E2), energies in MHz.

struct ExcitedStateParams {
  double lambda_z_MHz = 5330.0;     // effective axial spin-orbit
  double d_es_MHz = 1420.0;         // axial spin-spin
  double d_a1a2_MHz = 3100.0;       // A1/A2 splitting (= D_xx - D_yy)
  double d_e12exy_MHz = 200.0;      // ms=0 <-> ms=+-1 spin-spin coupling
  double d_z_es_MHz_per_MV_m = 6600.0;
  double d_perp_es_MHz_per_MV_m = 600.0;
  double eps_perp_MHz = 1000.0;     // splitting entering the thermal average
  double strain_zz_shift_MHz = 0.0; // susceptibility of the uniform e_zz shift

  // ab initio spin-spin values (the experimental set is the default)
  static ExcitedStateParams dft_spin_spin();
};

// Thermal orbital-averaging factor (1-x)/(1+x), x = exp(-eps/kT).
// 1 at T=0 for eps>0; identically 0 for eps=0.
double reduction_factor(double eps_perp_MHz, double t_K);

// Strain entries are energy-valued (MHz): the off-diagonal blocks take the
// symmetry combinations (e_xx-e_yy)/2, (e_xy+e_yx)/2, (e_xz+e_zx)/2,
// (e_yz+e_zy)/2 directly as matrix elements; e_zz only shifts all levels.
Eigen::MatrixXcd build_excited_hamiltonian(
    const ExcitedStateParams& p,
    const Eigen::Matrix3d& strain_MHz = Eigen::Matrix3d::Zero(),
    const Eigen::Vector3d& e_MV_per_m = Eigen::Vector3d::Zero(),
    double t_K = 0.0);

struct PleLine {
  double offset_MHz;  // eigenvalue minus manifold centroid
  double intensity;   // sum_b weight[b] |<b|psi>|^2
};

std::vector<PleLine> ple_lines(const Eigen::MatrixXcd& h6,
                               const std::array<double, 6>& dipole_weights);

}  // namespace nv
