#include "nv/singlets.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nv/linalg.hpp"

namespace nv {

namespace {

using cd = std::complex<double>;

int sector_of(int np, int nm) { return ((np - nm) % 3 + 3) % 3; }

void tidy(std::vector<IscCoefficient>& v) {
  std::sort(v.begin(), v.end(), [](const IscCoefficient& a, const IscCoefficient& b) {
    if (a.quanta != b.quanta) return a.quanta < b.quanta;
    return std::abs(a.value) > std::abs(b.value);
  });
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](const IscCoefficient& c) { return std::abs(c.value) < 1e-9; }),
          v.end());
}

// Splits the amplitudes of one electronic block over the totally symmetric
// and sign-odd oscillator functions; amplitudes must be real after the
// reflection phase convention.
void split_symmetric(const CircularBasis& circ, const Eigen::VectorXcd& amp,
                     std::vector<IscCoefficient>& even,
                     std::vector<IscCoefficient>& odd, double& imag_residual,
                     double& stray) {
  const int nb = static_cast<int>(amp.size());
  for (int k = 0; k < nb; ++k) {
    const auto [np, nm] = circ.occ[k];
    if (sector_of(np, nm) != 0) {
      stray += std::norm(amp(k));
      continue;
    }
    if (np < nm) continue;
    if (np == nm) {
      even.push_back({amp(k).real(), np + nm});
      imag_residual = std::max(imag_residual, std::abs(amp(k).imag()));
    } else {
      const int kk = circ.find(nm, np);
      const cd e = (amp(k) + amp(kk)) / std::sqrt(2.0);
      const cd o = (amp(k) - amp(kk)) / std::sqrt(2.0);
      even.push_back({e.real(), np + nm});
      odd.push_back({o.real(), np + nm});
      imag_residual = std::max({imag_residual, std::abs(e.imag()), std::abs(o.imag())});
    }
  }
}

// Collects the e-sector amplitudes of one electronic block; exactly one
// chirality sector may carry weight.
void collect_doublet(const CircularBasis& circ, const Eigen::VectorXcd& amp,
                     std::vector<IscCoefficient>& out, double& imag_residual,
                     double& stray, bool paired) {
  const int nb = static_cast<int>(amp.size());
  double w[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k < nb; ++k) {
    const auto [np, nm] = circ.occ[k];
    w[sector_of(np, nm)] += std::norm(amp(k));
  }
  const int live = w[1] >= w[2] ? 1 : 2;
  stray += w[live == 1 ? 2 : 1];
  for (int k = 0; k < nb; ++k) {
    const auto [np, nm] = circ.occ[k];
    if (sector_of(np, nm) != live) continue;
    const cd z = amp(k);
    if (std::abs(z) < 1e-12) continue;
    if (paired) {
      out.push_back({std::sqrt(2.0) * z.real(), np + nm});
      imag_residual = std::max(imag_residual, std::abs(z.imag()));
    } else {
      out.push_back({z.real(), np + nm});
      imag_residual = std::max(imag_residual, std::abs(z.imag()));
    }
  }
}

struct Blocks {
  Eigen::VectorXcd amp_a;      // upper-sheet amplitudes, circular functions
  Eigen::VectorXcd amp_plus;   // chiral doublet blocks
  Eigen::VectorXcd amp_minus;
};

Blocks circular_blocks(const VibronicSolution& s, const Eigen::VectorXcd& psi,
                       const CircularBasis& circ) {
  const int nb = s.basis.size();
  Blocks b;
  const Eigen::VectorXcd ba = psi.segment(0, nb);
  const Eigen::VectorXcd bx = psi.segment(nb, nb);
  const Eigen::VectorXcd by = psi.segment(2 * nb, nb);
  b.amp_a = circ.states.adjoint() * ba;
  b.amp_plus = circ.states.adjoint() * ((bx - cd(0, 1) * by) / std::sqrt(2.0));
  b.amp_minus = circ.states.adjoint() * ((bx + cd(0, 1) * by) / std::sqrt(2.0));
  return b;
}

void check_level(const VibronicSolution& s, int level, VibronicSymmetry want) {
  if (level < 0 || level >= static_cast<int>(s.labels.size()))
    throw std::invalid_argument("level index out of range");
  if (s.labels[level] != want)
    throw std::invalid_argument("level does not carry the required symmetry label");
  if (s.electronic_dim() != 3)
    throw std::invalid_argument("solution is not a three-sheet system");
}

void flip_sign(std::vector<IscCoefficient>* lead,
               std::initializer_list<std::vector<IscCoefficient>*> rest) {
  double peak = 0.0;
  bool flip = false;
  for (const auto& c : *lead)
    if (std::abs(c.value) > peak) {
      peak = std::abs(c.value);
      flip = c.value < 0.0;
    }
  if (!flip) return;
  for (auto& c : *lead) c.value = -c.value;
  for (auto* v : rest)
    for (auto& c : *v) c.value = -c.value;
}

}  // namespace

Eigen::MatrixXcd build_pjt_hamiltonian(const PJTParams& p) {
  if (p.n_max < 2) throw std::invalid_argument("boson cutoff must be at least 2");
  if (p.gap_meV <= 0.0 || p.hbar_omega_meV <= 0.0)
    throw std::invalid_argument("gap and phonon quantum must be positive");
  if (p.mixing < 0.0 || p.mixing > 1.0)
    throw std::invalid_argument("mixing fraction must lie in [0, 1]");

  const TwoModeBasis b(p.n_max);
  const int nb = b.size();
  const Eigen::MatrixXd x = coord_x(b);
  const Eigen::MatrixXd y = coord_y(b);
  const Eigen::MatrixXd ladder =
      p.hbar_omega_meV * (number_op(b) + Eigen::MatrixXd::Identity(nb, nb));

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3 * nb, 3 * nb);
  h.block(0, 0, nb, nb) = ladder + p.gap_meV * Eigen::MatrixXd::Identity(nb, nb);
  h.block(nb, nb, nb, nb) = ladder + p.djt_coupling_meV * x;
  h.block(2 * nb, 2 * nb, nb, nb) = ladder - p.djt_coupling_meV * x;

  // The cross-sheet Y coupling carries the opposite sign to the X one; with
  // the doublet convention fixed by the in-doublet coupling below this is
  // the combination invariant under the shared C3v operators.
  h.block(0, nb, nb, nb) = p.pjt_coupling_meV * x;
  h.block(nb, 0, nb, nb) = p.pjt_coupling_meV * x;
  h.block(0, 2 * nb, nb, nb) = -p.pjt_coupling_meV * y;
  h.block(2 * nb, 0, nb, nb) = -p.pjt_coupling_meV * y;

  h.block(nb, 2 * nb, nb, nb) = p.djt_coupling_meV * y;
  h.block(2 * nb, nb, nb, nb) = p.djt_coupling_meV * y;
  return h.cast<cd>();
}

VibronicSolution solve_pjt(const PJTParams& p) {
  VibronicSolution out;
  out.basis = TwoModeBasis(p.n_max);
  const Eigen::MatrixXcd h = build_pjt_hamiltonian(p);

  const C3vOps ops = c3v_operators(out.basis, 1);
  const double scale = h.cwiseAbs().maxCoeff();
  if ((ops.rotation * h - h * ops.rotation).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::logic_error("rotation operator does not commute with the Hamiltonian");
  if ((ops.reflection * h - h * ops.reflection).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::logic_error("reflection operator does not commute with the Hamiltonian");

  const EigenSystem es = diagonalize(h);
  classify_c3v(es.values, es.vectors, ops, 0.01, out);
  out.ground_energy_meV = es.values(0);
  out.energies_meV = es.values.array() - es.values(0);

  PJTParams bigger = p;
  bigger.n_max = p.n_max + 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ses(
      build_pjt_hamiltonian(bigger), Eigen::EigenvaluesOnly);
  out.converged = std::abs(ses.eigenvalues()(0) - out.ground_energy_meV) < 0.1;
  return out;
}

SingletPolaron polaron_coefficients(const VibronicSolution& s, int level) {
  check_level(s, level, VibronicSymmetry::E);
  const CircularBasis circ = circular_basis(s.basis);
  const C3vOps ops = c3v_operators(s.basis, 1);
  const Eigen::VectorXcd psi =
      reflection_canonical(s.states.col(level), ops.reflection);
  const Blocks b = circular_blocks(s, psi, circ);

  auto sector_weight = [&](const Eigen::VectorXcd& amp, int sector) {
    double w = 0.0;
    for (int k = 0; k < static_cast<int>(circ.occ.size()); ++k) {
      const auto [np, nm] = circ.occ[k];
      if (sector_of(np, nm) == sector) w += std::norm(amp(k));
    }
    return w;
  };
  const bool plus_is_c =
      sector_weight(b.amp_plus, 0) >= sector_weight(b.amp_minus, 0);
  const Eigen::VectorXcd& amp_c = plus_is_c ? b.amp_plus : b.amp_minus;
  const Eigen::VectorXcd& amp_f = plus_is_c ? b.amp_minus : b.amp_plus;

  SingletPolaron out;
  double imag_residual = 0.0;
  double stray = 0.0;
  split_symmetric(circ, amp_c, out.symmetric, out.antisymmetric, imag_residual,
                  stray);
  collect_doublet(circ, b.amp_a, out.a1_sheet, imag_residual, stray, false);
  collect_doublet(circ, amp_f, out.cross, imag_residual, stray, false);
  stray += sector_weight(b.amp_a, 0);

  if (imag_residual > 1e-7)
    throw std::logic_error("symmetry-adapted projections are not real");
  if (stray > 1e-8)
    throw std::logic_error("coefficient blocks leak across symmetry sectors");

  flip_sign(&out.symmetric, {&out.antisymmetric, &out.a1_sheet, &out.cross});
  out.completeness =
      coefficient_weight(out.symmetric) + coefficient_weight(out.antisymmetric) +
      coefficient_weight(out.a1_sheet) + coefficient_weight(out.cross);
  tidy(out.symmetric);
  tidy(out.antisymmetric);
  tidy(out.a1_sheet);
  tidy(out.cross);
  return out;
}

UpperPolaron upper_polaron_coefficients(const VibronicSolution& s, int level) {
  check_level(s, level, VibronicSymmetry::A1);
  const CircularBasis circ = circular_basis(s.basis);
  const Eigen::VectorXcd psi = s.states.col(level);
  const Blocks b = circular_blocks(s, psi, circ);

  UpperPolaron out;
  double imag_residual = 0.0;
  double stray = 0.0;
  std::vector<IscCoefficient> odd;
  split_symmetric(circ, b.amp_a, out.a1_sheet, odd, imag_residual, stray);
  for (const auto& c : odd) stray += c.value * c.value;
  collect_doublet(circ, b.amp_plus, out.doublet, imag_residual, stray, true);

  // The minus block mirrors the plus block for an A1 level; its weight is
  // already counted through the sqrt(2) pairing above.
  const double wp = b.amp_plus.squaredNorm();
  const double wm = b.amp_minus.squaredNorm();
  if (std::abs(wp - wm) > 1e-8)
    throw std::logic_error("chiral blocks of an A1 level are unbalanced");

  if (imag_residual > 1e-7)
    throw std::logic_error("symmetry-adapted projections are not real");
  if (stray > 1e-8)
    throw std::logic_error("coefficient blocks leak across symmetry sectors");

  flip_sign(&out.a1_sheet, {&out.doublet});
  out.completeness =
      coefficient_weight(out.a1_sheet) + coefficient_weight(out.doublet);
  tidy(out.a1_sheet);
  tidy(out.doublet);
  return out;
}

int find_upper_singlet(const VibronicSolution& s) {
  const int nb = s.basis.size();
  for (int i = 0; i < static_cast<int>(s.labels.size()); ++i) {
    if (s.labels[i] != VibronicSymmetry::A1) continue;
    if (s.states.col(i).segment(0, nb).squaredNorm() > 0.5) return i;
  }
  throw std::runtime_error("no upper-sheet-dominated A1 level found");
}

std::vector<IscChannelSet> singlet_isc_decomposition(const VibronicSolution& s,
                                                     double max_energy_meV) {
  if (s.electronic_dim() != 3)
    throw std::invalid_argument("solution is not a three-sheet system");
  const CircularBasis circ = circular_basis(s.basis);
  std::vector<IscChannelSet> out;
  for (int i = 0; i < static_cast<int>(s.labels.size()); ++i) {
    if (s.energies_meV(i) > max_energy_meV) break;
    if (s.labels[i] == VibronicSymmetry::Unknown)
      throw std::runtime_error("unresolved symmetry label below the energy cutoff");
    const Blocks b = circular_blocks(s, s.states.col(i), circ);
    IscChannelSet set;
    set.energy_meV = s.energies_meV(i);
    set.label = s.labels[i];
    auto collect = [&](const Eigen::VectorXcd& amp, std::vector<IscCoefficient>& v) {
      for (int k = 0; k < static_cast<int>(circ.occ.size()); ++k) {
        const double mag = std::abs(amp(k));
        if (mag < 1e-9) continue;
        const auto [np, nm] = circ.occ[k];
        v.push_back({mag, np + nm});
      }
      tidy(v);
    };
    collect(b.amp_a, set.z);
    collect(b.amp_plus, set.plus);
    collect(b.amp_minus, set.minus);
    out.push_back(std::move(set));
  }
  if (out.empty()) throw std::invalid_argument("no levels below the energy cutoff");
  return out;
}

std::vector<TransitionLine> vibronic_transition_intensities(
    const VibronicSolution& s, int upper, const std::vector<int>& lower,
    double mu_perp) {
  if (s.electronic_dim() != 3)
    throw std::invalid_argument("solution is not a three-sheet system");
  const int nb = s.basis.size();
  const int n = static_cast<int>(s.labels.size());
  if (upper < 0 || upper >= n) throw std::invalid_argument("upper level out of range");
  const Eigen::VectorXcd ua = s.states.col(upper).segment(0, nb);
  const Eigen::VectorXcd ux = s.states.col(upper).segment(nb, nb);

  std::vector<TransitionLine> lines;
  lines.reserve(lower.size());
  for (int l : lower) {
    if (l < 0 || l >= n) throw std::invalid_argument("lower level out of range");
    const Eigen::VectorXcd la = s.states.col(l).segment(0, nb);
    const Eigen::VectorXcd lx = s.states.col(l).segment(nb, nb);
    const cd amp = ua.dot(lx) + ux.dot(la);
    lines.push_back({s.energies_meV(upper) - s.energies_meV(l),
                     mu_perp * mu_perp * std::norm(amp), l});
  }
  return lines;
}

}  // namespace nv
