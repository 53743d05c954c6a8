#include "nv/vibronic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nv/linalg.hpp"
#include "nv/spin.hpp"
#include "nv/units.hpp"

namespace nv {

namespace {

constexpr double PI = 3.14159265358979323846;

using cd = std::complex<double>;

double golden_minimize(double a, double b, const auto& f) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f(0.5 * (a + b));
}

// Phase convention: largest-|.| component real positive (ties: lowest index).
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best + 1e-14) { best = a; imax = i; }
  }
  if (best <= 0.0) return;
  v *= std::conj(v(imax)) / best;
}

Eigen::MatrixXcd electronic_rotation(int n_scalar) {
  const double beta = -2.0 * PI / 3.0;
  Eigen::MatrixXcd el = Eigen::MatrixXcd::Identity(n_scalar + 2, n_scalar + 2);
  el(n_scalar, n_scalar) = std::cos(beta);
  el(n_scalar, n_scalar + 1) = -std::sin(beta);
  el(n_scalar + 1, n_scalar) = std::sin(beta);
  el(n_scalar + 1, n_scalar + 1) = std::cos(beta);
  return el;
}

}  // namespace

const char* vibronic_symmetry_name(VibronicSymmetry s) {
  switch (s) {
    case VibronicSymmetry::E: return "E";
    case VibronicSymmetry::A1: return "A1";
    case VibronicSymmetry::A2: return "A2";
    default: return "unknown";
  }
}

double jt_apes_lower(const JtCouplings& c, double hbar_omega_meV, double rho,
                     double phi) {
  const double f = c.linear_meV;
  const double g = c.quadratic_meV;
  const double r2 = rho * rho;
  const double root = std::sqrt(f * f * r2 + g * g * r2 * r2 +
                                2.0 * f * g * r2 * rho * std::cos(3.0 * phi));
  return 0.5 * hbar_omega_meV * r2 - root;
}

JtCouplings couplings_from_apes(double e_jt_meV, double delta_jt_meV,
                                double hbar_omega_meV) {
  if (e_jt_meV <= 0.0 || hbar_omega_meV <= 0.0)
    throw std::invalid_argument("relaxation energy and phonon quantum must be positive");
  if (delta_jt_meV < 0.0 || delta_jt_meV >= e_jt_meV)
    throw std::invalid_argument("barrier must satisfy 0 <= barrier < relaxation energy");

  JtCouplings c;
  // Negative branch: the wells sit where the lower electronic sheet is
  // reflection-even, which puts the symmetric tunneling level below the
  // antisymmetric one.
  c.quadratic_meV =
      -delta_jt_meV * hbar_omega_meV / (4.0 * e_jt_meV - 2.0 * delta_jt_meV);
  if (2.0 * std::abs(c.quadratic_meV) >= hbar_omega_meV)
    throw std::runtime_error("no physical coupling branch: 2|G| >= phonon quantum");
  c.linear_meV = std::sqrt(
      2.0 * e_jt_meV * (hbar_omega_meV - 2.0 * std::abs(c.quadratic_meV)));

  const double rho_hi =
      3.0 * c.linear_meV / (hbar_omega_meV - 2.0 * std::abs(c.quadratic_meV)) +
      1.0;
  const double e_min = golden_minimize(
      0.0, rho_hi,
      [&](double r) { return jt_apes_lower(c, hbar_omega_meV, r, PI / 3.0); });
  const double e_saddle = golden_minimize(
      0.0, rho_hi,
      [&](double r) { return jt_apes_lower(c, hbar_omega_meV, r, 0.0); });
  const double depth_err = std::abs(-e_min - e_jt_meV);
  const double barrier_err = std::abs((e_saddle - e_min) - delta_jt_meV);
  if (depth_err > 1e-3 * e_jt_meV ||
      barrier_err > std::max(1e-3 * delta_jt_meV, 1e-9 * e_jt_meV))
    throw std::runtime_error("APES scan does not reproduce the requested energies");
  return c;
}

Eigen::MatrixXcd build_djt_hamiltonian(const DJTParams& p) {
  if (p.n_max < 2) throw std::invalid_argument("boson cutoff must be at least 2");
  const JtCouplings c = p.couplings();
  const TwoModeBasis b(p.n_max);
  const int nb = b.size();

  const Eigen::MatrixXd x = coord_x(b);
  const Eigen::MatrixXd y = coord_y(b);
  const Eigen::MatrixXd q1 = quad_x2_minus_y2(b);
  const Eigen::MatrixXd q2 = quad_xy_plus_yx(b);
  const Eigen::MatrixXd ladder =
      p.hbar_omega_meV * (number_op(b) + Eigen::MatrixXd::Identity(nb, nb));

  const Eigen::MatrixXd diag = c.linear_meV * x + c.quadratic_meV * q1;
  const Eigen::MatrixXd off = c.linear_meV * y - c.quadratic_meV * q2;

  Eigen::MatrixXd h(2 * nb, 2 * nb);
  h.topLeftCorner(nb, nb) = ladder + diag;
  h.bottomRightCorner(nb, nb) = ladder - diag;
  h.topRightCorner(nb, nb) = off;
  h.bottomLeftCorner(nb, nb) = off;
  return h.cast<cd>();
}

C3vOps c3v_operators(const TwoModeBasis& b, int n_scalar) {
  C3vOps ops;
  // Bosons co-rotate with the electronic doublet; the common angle -2pi/3
  // is what makes the linear and quadratic couplings simultaneously
  // invariant.
  const Eigen::MatrixXcd ub = boson_rotation(b, -2.0 * PI / 3.0);
  ops.rotation = kron(electronic_rotation(n_scalar), ub);

  Eigen::MatrixXcd el_ref =
      Eigen::MatrixXcd::Identity(n_scalar + 2, n_scalar + 2);
  el_ref(n_scalar + 1, n_scalar + 1) = -1.0;
  const Eigen::VectorXd par = y_parity(b);
  Eigen::MatrixXcd pb = Eigen::MatrixXcd::Zero(b.size(), b.size());
  for (int k = 0; k < b.size(); ++k) pb(k, k) = par(k);
  ops.reflection = kron(el_ref, pb);
  return ops;
}

void classify_c3v(const Eigen::VectorXd& energies,
                  const Eigen::MatrixXcd& vectors, const C3vOps& ops,
                  double degeneracy_tol_meV, VibronicSolution& out) {
  const int n = static_cast<int>(energies.size());
  out.energies_meV = energies;
  out.states = vectors;
  out.labels.assign(n, VibronicSymmetry::Unknown);
  out.partner.assign(n, -1);
  out.unresolved.clear();

  const cd omega = std::polar(1.0, 2.0 * PI / 3.0);
  const cd targets[3] = {cd(1.0, 0.0), omega, std::conj(omega)};

  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && energies(hi) - energies(hi - 1) < degeneracy_tol_meV) ++hi;
    const int k = hi - lo;
    const Eigen::MatrixXcd v = vectors.middleCols(lo, k);
    const Eigen::MatrixXcd m = v.adjoint() * (ops.rotation * v);

    bool ok = (m * m.adjoint() - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-6;

    std::vector<Eigen::MatrixXcd> sub(3);
    int total_rank = 0;
    if (ok) {
      for (int t = 0; t < 3 && ok; ++t) {
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(k, k);
        for (int s = 0; s < 3; ++s) {
          if (s == t) continue;
          proj = (m - targets[s] * Eigen::MatrixXcd::Identity(k, k)) * proj /
                 (targets[t] - targets[s]);
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(proj, Eigen::ComputeThinU);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i) {
          const double s = svd.singularValues()(i);
          if (s > 0.5) {
            ++rank;
          } else if (s > 0.1) {
            ok = false;  // projector not clean: mixed cluster
          }
        }
        if (!ok) break;
        sub[t] = svd.matrixU().leftCols(rank);
        for (int i = 0; i < rank; ++i) {
          const Eigen::VectorXcd q = sub[t].col(i);
          if ((m * q - targets[t] * q).norm() > 1e-6) ok = false;
        }
        total_rank += rank;
      }
    }
    const int n_plus = ok ? static_cast<int>(sub[1].cols()) : 0;
    const int n_minus = ok ? static_cast<int>(sub[2].cols()) : 0;
    if (ok && (total_rank != k || n_plus != n_minus)) ok = false;

    if (!ok) {
      for (int i = lo; i < hi; ++i) out.unresolved.push_back(i);
      lo = hi;
      continue;
    }

    int slot = lo;
    if (sub[0].cols() > 0) {
      const Eigen::MatrixXcd wa = v * sub[0];
      const Eigen::MatrixXcd sa = wa.adjoint() * (ops.reflection * wa);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ses(sa);
      bool clean = true;
      for (int i = 0; i < ses.eigenvalues().size(); ++i)
        if (std::abs(std::abs(ses.eigenvalues()(i)) - 1.0) > 0.05) clean = false;
      if (!clean) {
        for (int i = lo; i < hi; ++i) out.unresolved.push_back(i);
        lo = hi;
        continue;
      }
      for (int i = 0; i < ses.eigenvalues().size(); ++i) {
        Eigen::VectorXcd col = wa * ses.eigenvectors().col(i);
        fix_phase(col);
        out.states.col(slot) = col;
        out.labels[slot] =
            ses.eigenvalues()(i) > 0 ? VibronicSymmetry::A1 : VibronicSymmetry::A2;
        ++slot;
      }
    }
    for (int i = 0; i < n_plus; ++i) {
      Eigen::VectorXcd col = v * sub[1].col(i);
      fix_phase(col);
      out.states.col(slot) = col;
      out.states.col(slot + 1) = col.conjugate();
      out.labels[slot] = VibronicSymmetry::E;
      out.labels[slot + 1] = VibronicSymmetry::E;
      out.partner[slot] = slot + 1;
      out.partner[slot + 1] = slot;
      slot += 2;
    }
    lo = hi;
  }
}

VibronicSolution solve_vibronic(const Eigen::MatrixXcd& h, const DJTParams& p) {
  VibronicSolution out;
  out.basis = TwoModeBasis(p.n_max);
  const int nb = out.basis.size();
  if (h.rows() != 2 * nb)
    throw std::invalid_argument("Hamiltonian dimension does not match the boson cutoff");

  const C3vOps ops = c3v_operators(out.basis, 0);
  const double scale = h.cwiseAbs().maxCoeff();
  if ((ops.rotation * h - h * ops.rotation).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::logic_error("rotation operator does not commute with the Hamiltonian");
  if ((ops.reflection * h - h * ops.reflection).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::logic_error("reflection operator does not commute with the Hamiltonian");

  const EigenSystem es = diagonalize(h);
  classify_c3v(es.values, es.vectors, ops, 0.01, out);
  out.ground_energy_meV = es.values(0);
  out.energies_meV = es.values.array() - es.values(0);

  DJTParams bigger = p;
  bigger.n_max = p.n_max + 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ses(
      build_djt_hamiltonian(bigger), Eigen::EigenvaluesOnly);
  out.converged =
      std::abs(ses.eigenvalues()(0) - out.ground_energy_meV) < 0.1;
  return out;
}

Eigen::VectorXcd reflection_canonical(const Eigen::VectorXcd& psi,
                                      const Eigen::MatrixXcd& reflection) {
  const Eigen::VectorXcd spsi = reflection * psi;
  const cd s = psi.transpose() * spsi;
  if (std::abs(std::abs(s) - 1.0) > 1e-6)
    throw std::logic_error("state is not reflection-paired with its conjugate");
  const cd half = std::polar(1.0, -0.5 * std::arg(s));
  Eigen::VectorXcd fixed = half * psi;
  if ((reflection * fixed - fixed.conjugate()).norm() > 1e-6)
    throw std::logic_error("reflection phase convention failed");
  return fixed;
}

double ham_factor(const VibronicSolution& s) {
  if (s.labels.empty() || s.labels[0] != VibronicSymmetry::E)
    throw std::invalid_argument("ground vibronic state is not an E doublet");
  const int nb = s.basis.size();
  const Eigen::VectorXcd psi = s.states.col(0);
  const Eigen::VectorXcd bx = psi.segment(0, nb);
  const Eigen::VectorXcd by = psi.segment(nb, nb);
  const double wp = 0.5 * (bx - cd(0, 1) * by).squaredNorm();
  const double wm = 0.5 * (bx + cd(0, 1) * by).squaredNorm();
  return std::abs(wp - wm);
}

double coefficient_weight(const std::vector<IscCoefficient>& v) {
  double w = 0.0;
  for (const auto& c : v) w += c.value * c.value;
  return w;
}

TripletIscCoefficients triplet_isc_coefficients(const VibronicSolution& s) {
  if (s.labels.empty() || s.labels[0] != VibronicSymmetry::E)
    throw std::invalid_argument("ground vibronic state is not an E doublet");
  const int nb = s.basis.size();
  const C3vOps ops = c3v_operators(s.basis, 0);
  const Eigen::VectorXcd psi =
      reflection_canonical(s.states.col(0), ops.reflection);

  const Eigen::VectorXcd bx = psi.segment(0, nb);
  const Eigen::VectorXcd by = psi.segment(nb, nb);
  const Eigen::VectorXcd block_p = (bx - cd(0, 1) * by) / std::sqrt(2.0);
  const Eigen::VectorXcd block_m = (bx + cd(0, 1) * by) / std::sqrt(2.0);

  const CircularBasis circ = circular_basis(s.basis);
  const Eigen::VectorXcd amp_p = circ.states.adjoint() * block_p;
  const Eigen::VectorXcd amp_m = circ.states.adjoint() * block_m;

  auto sector_weight = [&](const Eigen::VectorXcd& amp, int sector) {
    double w = 0.0;
    for (int k = 0; k < nb; ++k) {
      const auto [np, nm] = circ.occ[k];
      if (((np - nm) % 3 + 3) % 3 == sector) w += std::norm(amp(k));
    }
    return w;
  };

  // The block carrying the totally symmetric (l = 0 mod 3) functions hosts
  // the c/f sets; the opposite block hosts the d set on e-type functions.
  const bool plus_is_c = sector_weight(amp_p, 0) >= sector_weight(amp_m, 0);
  const Eigen::VectorXcd& amp_c = plus_is_c ? amp_p : amp_m;
  const Eigen::VectorXcd& amp_d = plus_is_c ? amp_m : amp_p;

  TripletIscCoefficients out;
  double imag_residual = 0.0;
  double stray = 0.0;

  for (int k = 0; k < nb; ++k) {
    const auto [np, nm] = circ.occ[k];
    const int sector = ((np - nm) % 3 + 3) % 3;
    if (sector == 0) {
      stray += std::norm(amp_d(k));
      if (np < nm) continue;  // handled together with the (nm, np) partner
      if (np == nm) {
        out.symmetric.push_back({amp_c(k).real(), np + nm});
        imag_residual = std::max(imag_residual, std::abs(amp_c(k).imag()));
      } else {
        const int kk = circ.find(nm, np);
        const cd even = (amp_c(k) + amp_c(kk)) / std::sqrt(2.0);
        const cd odd = (amp_c(k) - amp_c(kk)) / std::sqrt(2.0);
        out.symmetric.push_back({even.real(), np + nm});
        out.antisymmetric.push_back({odd.real(), np + nm});
        imag_residual =
            std::max({imag_residual, std::abs(even.imag()), std::abs(odd.imag())});
      }
    } else {
      stray += std::norm(amp_c(k));
      const cd d = amp_d(k);
      if (std::abs(d) > 1e-12) {
        out.doublet.push_back({d.real(), np + nm});
        imag_residual = std::max(imag_residual, std::abs(d.imag()));
      }
    }
  }

  if (imag_residual > 1e-7)
    throw std::logic_error("symmetry-adapted projections are not real");
  if (stray > 1e-10)
    throw std::logic_error("coefficient blocks leak across symmetry sectors");

  double peak = 0.0;
  bool flip = false;
  for (const auto& c : out.symmetric)
    if (std::abs(c.value) > peak) {
      peak = std::abs(c.value);
      flip = c.value < 0.0;
    }
  if (flip) {
    for (auto& c : out.symmetric) c.value = -c.value;
    for (auto& c : out.antisymmetric) c.value = -c.value;
    for (auto& c : out.doublet) c.value = -c.value;
  }

  auto tidy = [](std::vector<IscCoefficient>& v) {
    std::sort(v.begin(), v.end(), [](const IscCoefficient& a, const IscCoefficient& b) {
      if (a.quanta != b.quanta) return a.quanta < b.quanta;
      return std::abs(a.value) > std::abs(b.value);
    });
    v.erase(std::remove_if(v.begin(), v.end(),
                           [](const IscCoefficient& c) { return std::abs(c.value) < 1e-9; }),
            v.end());
  };
  out.completeness = coefficient_weight(out.symmetric) +
                     coefficient_weight(out.antisymmetric) +
                     coefficient_weight(out.doublet);
  tidy(out.symmetric);
  tidy(out.antisymmetric);
  tidy(out.doublet);
  return out;
}

double tunneling_rate_GHz(double delta_e_meV) {
  if (delta_e_meV < 0.0) throw std::invalid_argument("splitting must be non-negative");
  return delta_e_meV * MHZ_PER_MEV * 1e-3;
}

}  // namespace nv
