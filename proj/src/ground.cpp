#include "nv/ground.hpp"

#include <cmath>
#include <stdexcept>

#include "nv/linalg.hpp"
#include "nv/spin.hpp"
#include "nv/units.hpp"

namespace nv {

namespace {

using Eigen::Matrix3d;
using Eigen::MatrixXcd;
using Eigen::Vector3d;

void check_symmetric(const Matrix3d& t, const char* what) {
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(std::string(what) + " tensor must be symmetric");
}

// Electron-space operator promoted to the full product space.
MatrixXcd embed_electron(const MatrixXcd& op, int nuc_dim) {
  return kron(op, MatrixXcd::Identity(nuc_dim, nuc_dim));
}

struct NuclearLayout {
  std::vector<int> dims;
  int total = 1;
};

NuclearLayout nuclear_layout(const GroundStateParams& p) {
  NuclearLayout lay;
  for (const auto& nuc : p.nuclei) {
    lay.dims.push_back(multiplicity(nuclear_spin(nuc.species)));
    lay.total *= lay.dims.back();
  }
  return lay;
}

// Operator acting on nucleus k, identity elsewhere (within nuclear space).
MatrixXcd embed_nuclear(const MatrixXcd& op, const NuclearLayout& lay, size_t k) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (size_t j = 0; j < lay.dims.size(); ++j) {
    if (j == k)
      out = kron(out, op);
    else
      out = kron(out, MatrixXcd::Identity(lay.dims[j], lay.dims[j]));
  }
  return out;
}

}  // namespace

double nuclear_spin(NuclearSpecies s) {
  switch (s) {
    case NuclearSpecies::N14: return 1.0;
    case NuclearSpecies::N15: return 0.5;
    case NuclearSpecies::C13: return 0.5;
  }
  throw std::invalid_argument("unknown nuclear species");
}

Eigen::Matrix3d axial_tensor(double a, double b) {
  return Eigen::Vector3d(a - b, a - b, a + 2.0 * b).asDiagonal();
}

Nucleus Nucleus::n14() {
  Nucleus n;
  n.species = NuclearSpecies::N14;
  n.a_MHz = Eigen::Vector3d(-2.70, -2.70, -2.14).asDiagonal();
  n.cq_MHz = -4.945;
  n.gn_mun_MHz_per_T = 3.077;
  return n;
}

Nucleus Nucleus::n15() {
  Nucleus n;
  n.species = NuclearSpecies::N15;
  n.a_MHz = Eigen::Vector3d(3.65, 3.65, 3.03).asDiagonal();
  n.gn_mun_MHz_per_T = -4.316;
  return n;
}

Nucleus Nucleus::c13(const Eigen::Matrix3d& a) {
  Nucleus n;
  n.species = NuclearSpecies::C13;
  n.a_MHz = a;
  n.gn_mun_MHz_per_T = 10.708;
  return n;
}

Eigen::Matrix3d spin_strain_matrix(const SpinStrainCouplings& h,
                                   const Eigen::Matrix3d& e) {
  Matrix3d m = Matrix3d::Zero();
  m(2, 2) = h.h41 * (e(0, 0) + e(1, 1)) + h.h43 * e(2, 2);
  const double mxz = 0.5 * (h.h26 * e(2, 0) - 0.5 * h.h25 * (e(0, 0) - e(1, 1)));
  const double myz = 0.5 * (h.h26 * e(1, 2) + h.h25 * e(0, 1));
  // coefficient of (Sy^2 - Sx^2)
  const double cyx = 0.5 * (h.h16 * e(2, 0) - 0.5 * h.h15 * (e(0, 0) - e(1, 1)));
  const double mxy = 0.5 * (h.h16 * e(1, 2) + h.h15 * e(0, 1));
  m(0, 2) = m(2, 0) = mxz;
  m(1, 2) = m(2, 1) = myz;
  m(1, 1) += cyx;
  m(0, 0) -= cyx;
  m(0, 1) = m(1, 0) = mxy;
  return m;
}

Eigen::Matrix3d spin_stress_matrix(const SpinStressCouplings& g,
                                   const Eigen::Matrix3d& s) {
  SpinStrainCouplings h;
  h.h43 = g.g43; h.h41 = g.g41; h.h25 = g.g25;
  h.h26 = g.g26; h.h15 = g.g15; h.h16 = g.g16;
  return spin_strain_matrix(h, s);
}

Eigen::MatrixXcd build_ground_hamiltonian(const GroundStateParams& p,
                                          const FieldConfig& f) {
  if (p.d_gs_MHz <= 0.0) throw std::invalid_argument("D must be positive");
  if (f.strain && f.stress_GPa)
    throw std::invalid_argument("set at most one of strain and stress");

  const auto lay = nuclear_layout(p);
  const int dim = 3 * lay.total;
  const auto [sx, sy, sz] = spin_ops(1.0);
  const std::array<MatrixXcd, 3> s_full = {
      embed_electron(sx, lay.total), embed_electron(sy, lay.total),
      embed_electron(sz, lay.total)};

  MatrixXcd ham = MatrixXcd::Zero(dim, dim);

  // zero-field splitting D(Sz^2 - 2/3)
  ham += p.d_gs_MHz * (s_full[2] * s_full[2] -
                       (2.0 / 3.0) * MatrixXcd::Identity(dim, dim));

  // electron Zeeman mu_B/h * S.g.B
  for (int a = 0; a < 3; ++a) {
    double w = 0.0;
    for (int b = 0; b < 3; ++b) w += p.g_tensor(a, b) * f.b_mT(b);
    ham += MUB_MHZ_PER_MT * w * s_full[a];
  }

  // per-nucleus hyperfine, quadrupole, nuclear Zeeman
  for (size_t k = 0; k < p.nuclei.size(); ++k) {
    const Nucleus& nuc = p.nuclei[k];
    check_symmetric(nuc.a_MHz, "hyperfine");
    const double spin = nuclear_spin(nuc.species);
    const auto [ix, iy, iz] = spin_ops(spin);
    const std::array<MatrixXcd, 3> i_ops = {ix, iy, iz};
    std::array<MatrixXcd, 3> i_full;
    for (int a = 0; a < 3; ++a)
      i_full[a] =
          kron(MatrixXcd::Identity(3, 3), embed_nuclear(i_ops[a], lay, k));

    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (nuc.a_MHz(a, b) != 0.0)
          ham += nuc.a_MHz(a, b) * s_full[a] * i_full[b];

    if (nuc.cq_MHz != 0.0) {
      if (nuc.species != NuclearSpecies::N14)
        throw std::invalid_argument("quadrupole term requires a spin-1 nucleus");
      ham += nuc.cq_MHz * i_full[2] * i_full[2];
    }

    const double gn = nuc.gn_mun_MHz_per_T * 1e-3;  // MHz/mT
    for (int a = 0; a < 3; ++a) ham -= gn * f.b_mT(a) * i_full[a];
  }

  // linear Stark shift, couplings in Hz.cm/V and E in V/cm
  const Vector3d e_field = f.e_V_per_cm;
  if (e_field.squaredNorm() > 0.0) {
    const double dz = p.d_z_Hz_cm_per_V * 1e-6;
    const double dperp = p.d_perp_Hz_cm_per_V * 1e-6;
    const double dpp = p.dp_perp_Hz_cm_per_V * 1e-6;
    ham += dz * e_field(2) * s_full[2] * s_full[2];
    ham += dpp * e_field(0) * anticomm(s_full[0], s_full[2]);
    ham += dpp * e_field(1) * anticomm(s_full[1], s_full[2]);
    ham -= dperp * e_field(0) *
           (s_full[0] * s_full[0] - s_full[1] * s_full[1]);
    ham += dperp * e_field(1) * anticomm(s_full[0], s_full[1]);
  }

  // spin-strain / spin-stress as S^T M S
  Matrix3d m = Matrix3d::Zero();
  if (f.strain) {
    check_symmetric(*f.strain, "strain");
    m = spin_strain_matrix(p.h, to_nv_frame(*f.strain, f.tensor_frame));
  } else if (f.stress_GPa) {
    check_symmetric(*f.stress_GPa, "stress");
    m = spin_stress_matrix(p.g_sigma, to_nv_frame(*f.stress_GPa, f.tensor_frame));
  }
  if (m.cwiseAbs().maxCoeff() > 0.0) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (m(a, b) != 0.0) ham += m(a, b) * s_full[a] * s_full[b];
  }

  return ham;
}

std::vector<OdmrLine> odmr_transitions(const Eigen::MatrixXcd& h,
                                       const GroundStateParams& p,
                                       double min_weight) {
  const auto lay = nuclear_layout(p);
  if (h.rows() != 3 * lay.total)
    throw std::invalid_argument("Hamiltonian dimension does not match params");
  const auto sys = diagonalize(h);
  const MatrixXcd sx = embed_electron(spin_x(1.0), lay.total);
  const MatrixXcd sy = embed_electron(spin_y(1.0), lay.total);

  std::vector<OdmrLine> lines;
  for (int i = 0; i < h.rows(); ++i) {
    for (int j = i + 1; j < h.rows(); ++j) {
      const auto vi = sys.vectors.col(i);
      const auto vj = sys.vectors.col(j);
      const double w = std::norm((vj.adjoint() * (sx * vi))(0)) +
                       std::norm((vj.adjoint() * (sy * vi))(0));
      if (w >= min_weight)
        lines.push_back({sys.values(j) - sys.values(i), w, i, j});
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const OdmrLine& a, const OdmrLine& b) {
              return a.frequency_MHz < b.frequency_MHz;
            });
  return lines;
}

HybridStressParameters hybrid_stress_parameters(const SpinStressCouplings& g) {
  const double r2 = std::sqrt(2.0);
  HybridStressParameters out;
  out.a1 = (2.0 * g.g41 + g.g43) / 3.0;
  out.a2 = (-g.g41 + g.g43) / 3.0;
  out.b = (-g.g15 + r2 * g.g16) / 12.0;
  out.c = (-2.0 * g.g15 - r2 * g.g16) / 12.0;
  out.d = (-g.g25 + r2 * g.g26) / 12.0;
  out.e = (-2.0 * g.g25 - r2 * g.g26) / 12.0;
  return out;
}

CouplingFit extract_coupling_constant(
    const std::vector<std::pair<double, double>>& samples, CouplingConfig cfg) {
  if (samples.size() < 3)
    throw std::invalid_argument("need at least 3 samples for the fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto& [x, y] : samples) {
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  const double spread = sxx / n - (sx / n) * (sx / n);
  if (spread <= 1e-30 * std::max(1.0, sxx / n))
    throw std::invalid_argument("degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (const auto& [x, y] : samples) {
    const double r = y - (slope * x + intercept);
    ss += r * r;
  }
  double factor = 1.0;
  switch (cfg) {
    case CouplingConfig::H43:
    case CouplingConfig::H41: factor = 1.0; break;
    case CouplingConfig::H26:
    case CouplingConfig::H16: factor = 2.0; break;
    case CouplingConfig::H25:
    case CouplingConfig::H15: factor = -4.0; break;
  }
  return {factor * slope, std::sqrt(ss / n)};
}

SpinStressCouplings convert_h_to_g(const SpinStrainCouplings& h,
                                   const Stiffness& c) {
  // NV-frame stress scans, 11 points in [-0.01, 0.01] GPa.
  const int npts = 11;
  const double span = 0.01;
  auto scan = [&](int row, int col, auto element) {
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < npts; ++i) {
      const double s = -span + 2.0 * span * i / (npts - 1);
      Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
      sigma(row, col) = sigma(col, row) = s;
      const Eigen::Matrix3d eps = stress_to_strain_nv(sigma, Frame::NV, c);
      const Eigen::Matrix3d m = spin_strain_matrix(h, eps);
      samples.emplace_back(s, element(m));
    }
    return samples;
  };
  auto mzz = [](const Eigen::Matrix3d& m) { return m(2, 2); };
  auto mxz = [](const Eigen::Matrix3d& m) { return m(0, 2); };
  auto myz = [](const Eigen::Matrix3d& m) { return m(1, 2); };
  auto myy = [](const Eigen::Matrix3d& m) { return m(1, 1); };
  auto mxy = [](const Eigen::Matrix3d& m) { return m(0, 1); };

  SpinStressCouplings g;
  g.g43 = extract_coupling_constant(scan(2, 2, mzz), CouplingConfig::H43).coefficient;
  g.g41 = extract_coupling_constant(scan(0, 0, mzz), CouplingConfig::H41).coefficient;
  g.g25 = extract_coupling_constant(scan(0, 0, mxz), CouplingConfig::H25).coefficient;
  g.g15 = extract_coupling_constant(scan(0, 0, myy), CouplingConfig::H15).coefficient;
  g.g26 = extract_coupling_constant(scan(1, 2, myz), CouplingConfig::H26).coefficient;
  g.g16 = extract_coupling_constant(scan(1, 2, mxy), CouplingConfig::H16).coefficient;
  return g;
}

Anticrossing find_level_anticrossing(const GroundStateParams& p,
                                     const Eigen::Vector3d& axis,
                                     double b_min_mT, double b_max_mT) {
  if (axis.norm() < 1e-12) throw std::invalid_argument("zero field axis");
  if (!(b_max_mT > b_min_mT)) throw std::invalid_argument("empty search window");
  const Eigen::Vector3d dir = axis.normalized();

  auto min_gap = [&](double b) {
    FieldConfig f;
    f.b_mT = b * dir;
    const auto sys = diagonalize(build_ground_hamiltonian(p, f));
    double gmin = std::numeric_limits<double>::max();
    for (int i = 0; i + 1 < sys.values.size(); ++i)
      gmin = std::min(gmin, sys.values(i + 1) - sys.values(i));
    return gmin;
  };

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = b_min_mT, b = b_max_mT;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = min_gap(x1), f2 = min_gap(x2);
  while (b - a > 1e-3) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = min_gap(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = min_gap(x2);
    }
  }
  const double b_star = 0.5 * (a + b);
  const double gap = min_gap(b_star);
  if (b_star - b_min_mT < 2e-3 || b_max_mT - b_star < 2e-3)
    throw std::runtime_error("no gap minimum inside search window");

  double rot = 0.0;
  if (!p.nuclei.empty()) {
    const auto& a_tensor = p.nuclei.front().a_MHz;
    const double a_perp = 0.5 * (std::abs(a_tensor(0, 0)) + std::abs(a_tensor(1, 1)));
    rot = a_perp / std::sqrt(2.0);
  }
  return {b_star, gap, rot};
}

double t1_one_phonon_rate(double gamma0, double d_MHz, double t_K) {
  if (t_K < 0.0 || gamma0 < 0.0) throw std::invalid_argument("negative input");
  if (t_K == 0.0) return gamma0;
  const double x = d_MHz / (KB_MHZ_PER_K * t_K);
  return gamma0 * (1.0 + 3.0 / std::expm1(x));
}

}  // namespace nv
