#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nv {

enum class ModeSymmetry { A1, E };

// One effective phonon mode with its vibrational-overlap strength.
struct PhononMode {
  double hbar_omega_meV = 0.0;
  double huang_rhys = 0.0;
  ModeSymmetry symmetry = ModeSymmetry::A1;
};

double total_huang_rhys(const std::vector<PhononMode>& modes);
double debye_waller(double total_s);

struct SpectralGrid {
  double min_meV = 0.0;
  double max_meV = 0.0;
  int points = 0;
};

// Grid spanning six quanta of the largest mode beyond the comb mean, plus
// broadening margins on both sides.
SpectralGrid default_spectral_grid(const std::vector<PhononMode>& modes,
                                   double sigma_meV);

// Normalized phonon-overlap density: a convolution of per-mode Poisson
// combs, each line carrying a Gaussian of width sigma. The exact line list
// is kept alongside the sampled grid; value() sums the Gaussians directly.
struct SpectralFunction {
  Eigen::VectorXd energy_meV;
  Eigen::VectorXd density;  // 1/meV, unit mass on the grid
  double sigma_meV = 0.0;
  std::vector<std::pair<double, double>> lines;  // (energy meV, weight)
  double norm = 1.0;  // grid renormalization applied to the raw Gaussian sum

  double value(double e_meV) const;
  double first_moment() const;
  // Total weight of lines at |e| < half a quantum of the smallest mode;
  // the zero-phonon share of the comb.
  double zero_line_weight() const;
};

SpectralFunction spectral_function(const std::vector<PhononMode>& modes,
                                   double sigma_meV, const SpectralGrid& grid);
SpectralFunction spectral_function(const std::vector<PhononMode>& modes,
                                   double sigma_meV);

struct Spectrum {
  Eigen::VectorXd energy_eV;
  Eigen::VectorXd density;  // 1/eV
};

// Luminescence lineshape: the spectral function reflected to photon
// energies below the zero-phonon line, optionally weighted by the cubic
// photon-density factor (E / E_zpl)^3.
Spectrum emission_spectrum(double zpl_eV, const SpectralFunction& f,
                           bool photon_cubed);

enum class SidebandPolicy {
  MirrorOfEmission,    // reflect the full emission sideband about the ZPL
  SymmetricModesOnly,  // build the upward sideband from A1-tagged modes only
};

Spectrum absorption_spectrum(double zpl_eV, const SpectralFunction& f_a1_only,
                             const SpectralFunction& f_full,
                             SidebandPolicy policy);

// Spontaneous-emission lifetime 1/tau = n_r w^3 |e mu|^2 / (3 pi eps0 hbar c^3),
// evaluated in SI, returned in ns. The dipole is given in units of e*nm.
double radiative_lifetime_ns(double n_refr, double photon_eV, double mu_e_nm);

// Inverse of radiative_lifetime_ns at fixed refractive index and energy.
double dipole_from_lifetime(double n_refr, double photon_eV, double tau_ns);

// Reference value attached to the metastable-shelf preset.
inline constexpr double SINGLET_RADIATIVE_LIFETIME_NS = 1878.0;

}  // namespace nv
