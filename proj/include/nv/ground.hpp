#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nv/elastic.hpp"

namespace nv {

enum class NuclearSpecies { N14, N15, C13 };

double nuclear_spin(NuclearSpecies s);  // N14: 1, N15/C13: 1/2

// Hyperfine tensors live in the NV frame. Axial input (a, b) expands as
// A_perp = a - b, A_par = a + 2b.
Eigen::Matrix3d axial_tensor(double a_iso_MHz, double b_axial_MHz);

struct Nucleus {
  NuclearSpecies species = NuclearSpecies::N14;
  Eigen::Matrix3d a_MHz = Eigen::Matrix3d::Zero();
  double cq_MHz = 0.0;               // quadrupole, N14 only
  double gn_mun_MHz_per_T = 0.0;     // nuclear Zeeman scale

  static Nucleus n14();              // A_par=-2.14, A_perp=-2.70, C_Q=-4.945
  static Nucleus n15();
  static Nucleus c13(const Eigen::Matrix3d& a_MHz);
};

struct SpinStrainCouplings {         // MHz per unit strain
  double h43 = 2300.0;
  double h41 = -6420.0;
  double h25 = -2600.0;
  double h26 = -2830.0;
  double h15 = 5700.0;
  double h16 = 19660.0;
};

struct SpinStressCouplings {         // MHz per GPa, NV-frame stress
  double g43 = 2.4;
  double g41 = -5.17;
  double g25 = -2.17;
  double g26 = -2.58;
  double g15 = 3.6;
  double g16 = 18.98;
};

struct GroundStateParams {
  double d_gs_MHz = 2870.0;
  Eigen::Matrix3d g_tensor =
      Eigen::Vector3d(2.0029, 2.0029, 2.0031).asDiagonal();
  std::vector<Nucleus> nuclei;
  double d_perp_Hz_cm_per_V = 17.0;
  double d_z_Hz_cm_per_V = 0.35;
  double dp_perp_Hz_cm_per_V = 17.0;  // unmeasured; defaults to d_perp
  SpinStrainCouplings h;
  SpinStressCouplings g_sigma;
};

struct FieldConfig {
  Eigen::Vector3d b_mT = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_V_per_cm = Eigen::Vector3d::Zero();
  std::optional<Eigen::Matrix3d> strain;      // dimensionless
  std::optional<Eigen::Matrix3d> stress_GPa;
  Frame tensor_frame = Frame::NV;
};

// Symmetric coupling matrix M with H = sum_ij M_ij S_i S_j for the
// spin-strain (or spin-stress, via the same functional form) interaction.
// The (Sy^2 - Sx^2) piece is folded into M_xx/M_yy. Tensor in NV frame.
Eigen::Matrix3d spin_strain_matrix(const SpinStrainCouplings& h,
                                   const Eigen::Matrix3d& eps);
Eigen::Matrix3d spin_stress_matrix(const SpinStressCouplings& g,
                                   const Eigen::Matrix3d& sigma_GPa);

// Full spin Hamiltonian in MHz over electron (x) nuclei product space,
// electron index slowest. Dimension 3 * prod(2 I_k + 1).
Eigen::MatrixXcd build_ground_hamiltonian(const GroundStateParams& p,
                                          const FieldConfig& f);

struct OdmrLine {
  double frequency_MHz;
  double weight;  // |<f|Sx|i>|^2 + |<f|Sy|i>|^2
  int from, to;
};

std::vector<OdmrLine> odmr_transitions(const Eigen::MatrixXcd& h,
                                       const GroundStateParams& p,
                                       double min_weight = 1e-6);

struct HybridStressParameters { double a1, a2, b, c, d, e; };
HybridStressParameters hybrid_stress_parameters(const SpinStressCouplings& g);

// Scan configurations used to extract one coupling constant from a series of
// (tensor component value, coupling-matrix element) samples.
enum class CouplingConfig { H43, H41, H25, H26, H15, H16 };

struct CouplingFit {
  double coefficient;  // convention factor times fitted slope
  double residual;     // rms misfit
};

// factor * least-squares slope; factor per configuration: H43/H41: 1 (D_zz
// vs e_zz / e_xx), H26: 2 (D_yz vs e_yz), H16: 2 (D_xy vs e_yz), H25: -4
// (D_xz vs e_xx), H15: -4 (D_yy vs e_xx).
CouplingFit extract_coupling_constant(
    const std::vector<std::pair<double, double>>& samples, CouplingConfig cfg);

// Converts strain couplings to stress couplings by simulating uniaxial and
// shear NV-frame stress scans through the compliance tensor and re-fitting.
SpinStressCouplings convert_h_to_g(const SpinStrainCouplings& h,
                                   const Stiffness& c = {});

struct Anticrossing {
  double b_mT;
  double gap_MHz;
  double rotation_MHz;  // |A_perp|/sqrt(2) of the first nucleus, 0 if none
};

Anticrossing find_level_anticrossing(const GroundStateParams& p,
                                     const Eigen::Vector3d& axis,
                                     double b_min_mT, double b_max_mT);

// One-phonon spin-lattice relaxation rate Gamma0 * (1 + 3 n_BE(D)).
double t1_one_phonon_rate(double gamma0_per_s, double d_MHz, double t_K);

}  // namespace nv
