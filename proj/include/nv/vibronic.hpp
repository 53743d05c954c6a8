#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nv/boson.hpp"

namespace nv {

// Linear (F) and quadratic (G) vibronic coupling constants, in meV.
struct JtCouplings {
  double linear_meV = 0.0;
  double quadratic_meV = 0.0;
};

// Inverts (E_jt, delta_jt) -> (F, G) for the quadratic e-mode coupling.
// The result is verified against a direct scan of the classical adiabatic
// potential-energy surface to 0.1% before it is returned.
JtCouplings couplings_from_apes(double e_jt_meV, double delta_jt_meV,
                                double hbar_omega_meV);

// Lower sheet of the classical APES in polar coordinates of (Q_x, Q_y).
double jt_apes_lower(const JtCouplings& c, double hbar_omega_meV, double rho,
                     double phi);

struct DJTParams {
  double hbar_omega_meV = 77.6;
  double e_jt_meV = 42.0;
  double delta_jt_meV = 9.0;
  int n_max = 14;

  JtCouplings couplings() const {
    return couplings_from_apes(e_jt_meV, delta_jt_meV, hbar_omega_meV);
  }
};

enum class VibronicSymmetry { E, A1, A2, Unknown };

const char* vibronic_symmetry_name(VibronicSymmetry s);

struct VibronicSolution {
  TwoModeBasis basis{2};
  Eigen::VectorXd energies_meV;        // relative to the lowest level
  double ground_energy_meV = 0.0;      // absolute lowest eigenvalue
  Eigen::MatrixXcd states;             // columns ordered with energies_meV
  std::vector<VibronicSymmetry> labels;
  std::vector<int> partner;            // degenerate E partner column, -1 if none
  std::vector<int> unresolved;         // columns whose label could not be fixed
  bool converged = false;

  int electronic_dim() const {
    return static_cast<int>(states.rows()) / basis.size();
  }
};

// H = hw(n_x + n_y + 1) I + F (sz X + sx Y) + G (sz (X^2 - Y^2) - sx (XY + YX))
// on the electronic doublet {E_x, E_y} (slow index) times |n, m> bosons.
// Real symmetric.
Eigen::MatrixXcd build_djt_hamiltonian(const DJTParams& p);

// Symmetry operators used to label vibronic levels: a discrete C3 rotation on
// the electronic + boson space and a vertical reflection.
struct C3vOps {
  Eigen::MatrixXcd rotation;
  Eigen::MatrixXcd reflection;
};

// C3v operators for a Hamiltonian on {electronic d x bosons}; the electronic
// factor is blockdiag(identity on n_scalar leading states, R(-2pi/3) on a
// trailing {x, y} doublet).
C3vOps c3v_operators(const TwoModeBasis& b, int n_scalar);

// Diagonalizes and labels. States with rotation eigenvalue 1 split into
// A1/A2 by reflection parity; conjugate-eigenvalue pairs are E doublets,
// stored with the conjugate partner immediately reconstructible as the
// complex conjugate column. Clusters where the procedure is ambiguous are
// listed in `unresolved` instead of being silently labeled.
void classify_c3v(const Eigen::VectorXd& energies,
                  const Eigen::MatrixXcd& vectors, const C3vOps& ops,
                  double degeneracy_tol_meV, VibronicSolution& out);

// Full solve: diagonalize, label, and check convergence by re-solving at
// n_max + 2 (ground energy shift < 0.1 meV).
VibronicSolution solve_vibronic(const Eigen::MatrixXcd& h, const DJTParams& p);

// Rephases an E state so its reflection image equals its complex conjugate;
// all symmetry-adapted projections of the result are real.
Eigen::VectorXcd reflection_canonical(const Eigen::VectorXcd& psi,
                                      const Eigen::MatrixXcd& reflection);

// Orbital angular-momentum quenching factor of the ground vibronic doublet,
// p = sum(c_nm^2 - d_nm^2) in (0, 1].
double ham_factor(const VibronicSolution& s);

// One expansion coefficient of a vibronic state on a symmetry-adapted
// oscillator function carrying `quanta` total phonon quanta.
struct IscCoefficient {
  double value = 0.0;
  int quanta = 0;
};

double coefficient_weight(const std::vector<IscCoefficient>& v);

// Decomposition of the ground vibronic doublet over symmetry-adapted
// oscillator functions: `symmetric` multiplies totally symmetric functions
// (the c_i set), `antisymmetric` the sign-odd ones (f_i), and `doublet` the
// degenerate e-type functions attached to the opposite electronic partner
// (d_i). Weights c_i^2, f_i^2 and d_i^2/2 drive the upper intersystem
// crossing channels.
struct TripletIscCoefficients {
  std::vector<IscCoefficient> symmetric;
  std::vector<IscCoefficient> antisymmetric;
  std::vector<IscCoefficient> doublet;
  double completeness = 0.0;
};

TripletIscCoefficients triplet_isc_coefficients(const VibronicSolution& s);

// Orbit-flip tunneling rate for a splitting delta_e, as delta_e / h in GHz.
double tunneling_rate_GHz(double delta_e_meV);

// Reference tunneling rates attached as metadata.
inline constexpr double TUNNELING_RATE_TRIPLET_GHZ = 112.6;
inline constexpr double TUNNELING_RATE_SINGLET_GHZ = 31.0;

}  // namespace nv
