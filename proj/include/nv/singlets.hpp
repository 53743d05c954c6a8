#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nv/vibronic.hpp"

namespace nv {

// Three-sheet vibronic model of the singlet shelf: an upper A1 electronic
// sheet a gap above a degenerate E doublet, linearly coupled to the same
// e phonon pair both across the gap and within the doublet.
struct PJTParams {
  double gap_meV = 1190.0;          // electronic A1-E separation
  double pjt_coupling_meV = 250.0;  // cross-sheet linear coupling
  double djt_coupling_meV = 115.0;  // in-doublet linear coupling, already
                                    // scaled by the sheet-mixing weight
  double hbar_omega_meV = 66.0;
  double mixing = 0.1;              // 1 - C^2 share of the doublet character
  int n_max = 14;
};

// H = hw(n_x + n_y + 1) I3 + gap |A1><A1|
//   + F_P [ (|A1><Ex| + h.c.) X - (|A1><Ey| + h.c.) Y ]
//   + F_D [ (|Ex><Ex| - |Ey><Ey|) X + (|Ex><Ey| + h.c.) Y ]
// on electronic {A1, Ex, Ey} (slow index) times |n, m> bosons. Real symmetric.
Eigen::MatrixXcd build_pjt_hamiltonian(const PJTParams& p);

// Diagonalize, label by the C3v classifier, and check cutoff convergence.
VibronicSolution solve_pjt(const PJTParams& p);

// Expansion of an E-labeled singlet vibronic level over symmetry-adapted
// oscillator functions: `symmetric`/`antisymmetric` multiply the totally
// symmetric / sign-odd functions on the same-chirality doublet partner
// (c_i / g_i), `a1_sheet` the e functions attached to the upper electronic
// sheet (d_i), and `cross` the e functions on the opposite doublet partner
// (f_i).
struct SingletPolaron {
  std::vector<IscCoefficient> symmetric;
  std::vector<IscCoefficient> antisymmetric;
  std::vector<IscCoefficient> a1_sheet;
  std::vector<IscCoefficient> cross;
  double completeness = 0.0;
};

SingletPolaron polaron_coefficients(const VibronicSolution& s, int level);

// Expansion of an A1-labeled level: `a1_sheet` holds the totally symmetric
// functions on the upper sheet (c'_i), `doublet` the paired e-function
// content on the E sheets (d'_i).
struct UpperPolaron {
  std::vector<IscCoefficient> a1_sheet;
  std::vector<IscCoefficient> doublet;
  double completeness = 0.0;
};

UpperPolaron upper_polaron_coefficients(const VibronicSolution& s, int level);

// Lowest A1-labeled level whose weight sits mostly on the upper electronic
// sheet: the polaronic upper singlet.
int find_upper_singlet(const VibronicSolution& s);

// Per-level decomposition feeding the shelf-depopulation rate channels:
// `z` collects upper-sheet (A1 electronic) content, `plus`/`minus` the two
// chiral doublet contents. Values are projection magnitudes.
struct IscChannelSet {
  double energy_meV = 0.0;
  VibronicSymmetry label = VibronicSymmetry::Unknown;
  std::vector<IscCoefficient> z;
  std::vector<IscCoefficient> plus;
  std::vector<IscCoefficient> minus;
};

std::vector<IscChannelSet> singlet_isc_decomposition(const VibronicSolution& s,
                                                     double max_energy_meV);

struct TransitionLine {
  double delta_e_meV = 0.0;  // upper-level energy minus lower-level energy
  double intensity = 0.0;
  int lower_level = -1;
};

// Dipole-allowed emission lines from one upper vibronic level into a set of
// lower levels, through the in-plane electronic dipole between the upper
// sheet and one doublet partner.
std::vector<TransitionLine> vibronic_transition_intensities(
    const VibronicSolution& s, int upper, const std::vector<int>& lower,
    double mu_perp);

}  // namespace nv
