#pragma once

#include <stdexcept>
#include <string>

namespace nv {

// Canonical internal energy unit is MHz (frequency units, h = 1).
inline constexpr double MHZ_PER_MEV = 241799.0504;    // 1 meV in MHz
inline constexpr double KB_MHZ_PER_K = 20836.6123;    // Boltzmann constant in MHz/K
inline constexpr double MUB_MHZ_PER_MT = 13.996245;   // Bohr magneton / h in MHz/mT per unit g
inline constexpr double G_FREE = 2.00231930436;       // free-electron g factor
inline constexpr double KB_EV_PER_K = KB_MHZ_PER_K / (MHZ_PER_MEV * 1e3);

// SI constants (2018 CODATA exact where defined).
inline constexpr double E_CHARGE_C = 1.602176634e-19;
inline constexpr double HBAR_JS = 1.054571817e-34;
inline constexpr double H_JS = 6.62607015e-34;
inline constexpr double C_M_PER_S = 2.99792458e8;
inline constexpr double EPS0_F_PER_M = 8.8541878128e-12;
inline constexpr double MU0_SI = 1.25663706212e-6;
inline constexpr double MUB_J_PER_T = 9.2740100783e-24;

enum class Unit { MHz, GHz, meV, eV, K, mT, GPa };

// Converts between energy-like units (MHz, GHz, meV, eV, K) and, given a
// g factor, magnetic field in mT via the electron Zeeman scale. GPa is a
// mechanical unit and only converts to itself; incompatible pairs throw
// std::invalid_argument.
double convert(double value, Unit from, Unit to, double g = G_FREE);

const char* unit_name(Unit u);
Unit unit_from_name(const std::string& name);

}  // namespace nv
