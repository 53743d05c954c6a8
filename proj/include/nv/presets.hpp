#pragma once

#include <vector>

#include "nv/excited.hpp"
#include "nv/ground.hpp"
#include "nv/lineshape.hpp"
#include "nv/pump.hpp"
#include "nv/rates.hpp"
#include "nv/singlets.hpp"
#include "nv/thermo.hpp"
#include "nv/vibronic.hpp"

// Published parameter sets wired together so every command and test starts
// from the same numbers.
namespace nv::presets {

GroundStateParams ground();    // 2870 MHz triplet with the host nitrogen
ExcitedStateParams excited();  // experimental fine-structure set

DJTParams triplet_djt();  // 42 / 9 / 77.6 meV orbital-doublet problem
PJTParams singlet_pjt();  // shelf calibrated to the 14 meV vibronic level

// Emission sideband model: two effective modes carrying a combined
// Huang-Rhys factor of 3.5.
std::vector<PhononMode> emission_modes();
double emission_sigma_meV();
inline constexpr double ZPL_EV = 1.945;
inline constexpr double REFRACTIVE_INDEX = 2.4;
inline constexpr double TRIPLET_LIFETIME_NS = 12.0;

// Accepting-mode models for the two crossing branches. The final vibrational
// ladders differ, so each branch carries its own effective mode.
std::vector<PhononMode> isc_modes();
std::vector<PhononMode> isc_lower_modes();
double isc_sigma_meV();

IscInputs isc_upper();  // triplet-side branch, ab initio lambda_perp
IscInputs isc_lower();  // shelf branch before lifetime calibration
inline constexpr double SHELF_LIFETIME_0K_NS = 371.0;
inline constexpr double LOWER_PERP_OVER_Z = 1.2;

LevelScheme pump();  // optical cycle tuned for readout contrast
LevelScheme pump_with_ionization();

struct ThermoPreset {
  std::vector<DefectSpecies> species;
  HostModel host;
  ChemicalPotentials mu;
};
ThermoPreset thermo();

}  // namespace nv::presets
