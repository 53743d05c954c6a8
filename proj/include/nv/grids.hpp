#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace nv {

// Regular real-space box. Values are stored row-major with x slowest and z
// fastest; densities carry 1/A^3, orbital amplitudes 1/A^(3/2).
struct ScalarGrid3D {
  Eigen::Vector3d origin_A = Eigen::Vector3d::Zero();
  Eigen::Vector3d spacing_A = Eigen::Vector3d::Ones();
  std::array<int, 3> dims = {0, 0, 0};
  std::vector<double> values;

  int size() const { return dims[0] * dims[1] * dims[2]; }
  int index(int ix, int iy, int iz) const {
    return (ix * dims[1] + iy) * dims[2] + iz;
  }
  double& at(int ix, int iy, int iz) { return values[index(ix, iy, iz)]; }
  double at(int ix, int iy, int iz) const { return values[index(ix, iy, iz)]; }
  Eigen::Vector3d position(int ix, int iy, int iz) const {
    return origin_A + Eigen::Vector3d(ix * spacing_A.x(), iy * spacing_A.y(),
                                      iz * spacing_A.z());
  }
  double voxel_A3() const { return spacing_A.prod(); }
  double integral() const;  // sum of values times voxel volume
  double l2_norm() const;   // sqrt of the amplitude-squared integral
};

ScalarGrid3D make_grid(const Eigen::Vector3d& origin_A,
                       const Eigen::Vector3d& spacing_A,
                       const std::array<int, 3>& dims);

// Centered cubic box with n points per axis.
ScalarGrid3D make_cubic_grid(double half_extent_A, int n);

// Adds an L2-normalized Gaussian amplitude lobe, width = 1/e radius of the
// squared profile.
void add_gaussian_amplitude(ScalarGrid3D& g, const Eigen::Vector3d& center_A,
                            double width_A, double scale = 1.0);

// Adds a density lobe integrating to `electrons`.
void add_gaussian_density(ScalarGrid3D& g, const Eigen::Vector3d& center_A,
                          double width_A, double electrons);

// Plain text exchange format: "nvgrid 1" header, origin/spacing/dims lines,
// then values in storage order.
ScalarGrid3D read_grid(const std::string& path);
void write_grid(const ScalarGrid3D& g, const std::string& path);

// Two occupied orbitals contributing an antisymmetrized pair density to the
// spin-spin integral; the sign carries the spin channel.
struct OrbitalPair {
  ScalarGrid3D phi_i;
  ScalarGrid3D phi_j;
  int spin_sign = +1;
};

enum class ZfsMethod { Direct, Fft };

struct ZfsResult {
  Eigen::Matrix3d tensor_MHz = Eigen::Matrix3d::Zero();
  double d_MHz = 0.0;           // 3/2 of the leading principal component
  double e_MHz = 0.0;           // half-difference of the transverse pair
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

// Spin-spin zero-field-splitting tensor from pair densities on a grid. The
// direct path is an O(N^6) double loop kept for validation; the FFT path
// evaluates the same lattice sum by zero-padded convolution. Same-cell
// (zero-offset) terms are excluded in both.
ZfsResult zfs_tensor(const std::vector<OrbitalPair>& pairs, double spin,
                     ZfsMethod method = ZfsMethod::Fft);

struct NucleusSite {
  Eigen::Vector3d position_A = Eigen::Vector3d::Zero();
  double gn_mun_J_per_T = 0.0;  // nuclear g-factor times nuclear magneton
};

struct HyperfineResult {
  Eigen::Matrix3d tensor_MHz = Eigen::Matrix3d::Zero();
  double contact_MHz = 0.0;     // valence-only Fermi contact term
  Eigen::Matrix3d dipolar_MHz = Eigen::Matrix3d::Zero();
  bool axial = false;
  double a_parallel_MHz = 0.0;  // contact + 2b, set when axial
  double a_perp_MHz = 0.0;      // contact - b, set when axial
};

// Contact term from tricubic interpolation of the spin density at the
// nucleus, dipolar term from the traceless kernel integral.
HyperfineResult hyperfine_tensor(const ScalarGrid3D& spin_density,
                                 const NucleusSite& nucleus, double spin);

// Closed-form dipolar tensor of a point spin at displacement r from the
// nucleus; diag(-1,-1,2) pattern for r along z.
Eigen::Matrix3d point_dipole_hyperfine(const Eigen::Vector3d& r_A,
                                       double gn_mun_J_per_T);

// C_Q = 3 e Q V_zz / 4h; V_zz in V/A^2, Q in barn, result in MHz.
double quadrupole_coupling(double v_zz_V_per_A2, double q_barn);

}  // namespace nv
