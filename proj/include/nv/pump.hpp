#pragma once

#include <Eigen/Dense>

namespace nv {

// Level order used throughout the optical pump loop.
enum PumpLevel {
  LVL_G0 = 0,   // ground ms = 0
  LVL_GP = 1,   // ground ms = +1
  LVL_GM = 2,   // ground ms = -1
  LVL_E0 = 3,   // excited ms = 0
  LVL_EP = 4,   // excited ms = +1
  LVL_EM = 5,   // excited ms = -1
  LVL_SA = 6,   // upper singlet (fast internal decay)
  LVL_SE = 7,   // lower singlet shelf
  PUMP_LEVELS = 8,
};

// Population rate model of the optical cycle: spin-conserving pump and
// radiative decay, spin-selective crossing into the singlet shelf, and the
// shelf's spin-selective return. Photoionization out of the excited levels
// is optional; the neutral charge state's sub-cycle is collapsed into an
// immediate spin-scrambled return to the ground manifold.
struct LevelScheme {
  double pump_MHz = 0.0;                  // spin-conserving g -> e drive
  double radiative_MHz = 1e3 / 12.0;      // e -> g, same spin
  double isc_e0_MHz = 0.0;                // e0 -> upper singlet
  double isc_e1_MHz = 0.0;                // e+-1 -> upper singlet
  double singlet_internal_MHz = 1e4;      // upper -> lower singlet (100 ps)
  double shelf_z_MHz = 0.0;               // shelf -> g0
  double shelf_perp_MHz = 0.0;            // shelf -> g+-1, split equally
  double mw_mixing_MHz = 0.0;             // incoherent g0 <-> g-1 mixing
  double ionization_scale = 0.0;          // two-photon: rate = scale * pump per e level
  double auger_recombination_ns = 0.8;    // neutral-state capture branches
  double direct_recombination_ns = 500.0;
};

// Column-generator form: M(i, j) is the flow rate j -> i; columns sum to 0.
Eigen::MatrixXd build_rate_matrix(const LevelScheme& s);

// Null vector of the generator, normalized to unit total population.
Eigen::VectorXd steady_state(const Eigen::MatrixXd& m);

// Populations over a time grid, p(t) = exp(M t) p0. Columns follow t_ns.
Eigen::MatrixXd transient(const Eigen::MatrixXd& m, const Eigen::VectorXd& p0,
                          const Eigen::VectorXd& t_ns);

// Instantaneous photoluminescence rate, radiative_MHz times the excited
// population, one entry per time column.
Eigen::VectorXd pl_signal(const Eigen::MatrixXd& populations,
                          double radiative_MHz);

// Pulsed-readout contrast: photoluminescence integrated over the readout
// window starting from the optically polarized steady state, with the
// scheme's microwave mixing switched off versus on.
double odmr_contrast(const LevelScheme& s, double window_ns = 300.0);

struct PdmrResult {
  double photocurrent_MHz = 0.0;  // steady ionization event rate
  double contrast = 0.0;          // microwave on/off change of that rate
  double auger_share = 0.0;       // fast-capture branch of the neutral cycle
};

PdmrResult pdmr_observables(const LevelScheme& s);

}  // namespace nv
