#pragma once

#include <vector>

#include "nv/lineshape.hpp"
#include "nv/singlets.hpp"
#include "nv/vibronic.hpp"

namespace nv {

// Inputs shared by both intersystem-crossing branches. Spin-orbit elements
// are quoted as ordinary frequencies (MHz); the angular factors live in the
// rate prefactors.
struct IscInputs {
  double lambda_perp_MHz = 0.0;
  double lambda_z_MHz = 0.0;
  double c_squared = 0.9;         // ms = 0 character of the shelf state
  double gap_upper_meV = 400.0;   // triplet branch energy release
  double gap_lower_meV = 400.0;   // shelf branch energy release
  double hbar_omega_e_meV = 77.6; // quantum attached to coefficient quanta
  SpectralFunction f;             // accepting-mode overlap density
};

struct UpperRates {
  double a1_MHz = 0.0;
  double e12_MHz = 0.0;
  double a2_MHz = 0.0;
};

// Triplet-side crossing rates of the three fine-structure channels, each a
// coefficient-weighted sample of the overlap density at the release energy
// shifted by the coefficient's phonon quanta.
UpperRates upper_branch_rates(const IscInputs& in,
                              const TripletIscCoefficients& c);

struct LowerRates {
  double z_MHz = 0.0;
  double plus_MHz = 0.0;
  double minus_MHz = 0.0;

  double perp_MHz() const { return plus_MHz + minus_MHz; }
  double total_MHz() const { return z_MHz + perp_MHz(); }
  double z_over_perp() const { return z_MHz / perp_MHz(); }
  double ms0_share() const { return z_MHz / total_MHz(); }
};

// Shelf-depopulation rates of one vibronic level: the ms = 0 channel rides
// the upper-sheet content, the ms = +-1 channels the two chiral doublet
// contents.
LowerRates lower_branch_rates(const IscInputs& in, const IscChannelSet& level);

struct ShelfLifetime {
  double tau_ns = 0.0;
  double z_over_perp = 0.0;
  double ms0_share = 0.0;
};

// Boltzmann average of the per-level depopulation rates at temperature T;
// T = 0 keeps only the ground level(s).
ShelfLifetime singlet_lifetime_vs_T(const std::vector<IscChannelSet>& levels,
                                    const IscInputs& in, double temperature_K);

// Rescales lambda_z (keeping lambda_perp / lambda_z fixed) so the T = 0
// shelf lifetime equals tau0_ns.
IscInputs calibrate_lambda_z(const std::vector<IscChannelSet>& levels,
                             IscInputs in, double tau0_ns,
                             double perp_over_z);

}  // namespace nv
