#include "nv/pump.hpp"

#include <cmath>
#include <stdexcept>

namespace nv {

namespace {

void check_rates(const LevelScheme& s) {
  const double rates[] = {s.pump_MHz,        s.radiative_MHz,
                          s.isc_e0_MHz,      s.isc_e1_MHz,
                          s.singlet_internal_MHz, s.shelf_z_MHz,
                          s.shelf_perp_MHz,  s.mw_mixing_MHz,
                          s.ionization_scale};
  for (double r : rates) {
    if (r < 0.0 || !std::isfinite(r)) {
      throw std::invalid_argument("pump scheme: negative or non-finite rate");
    }
  }
  if (s.auger_recombination_ns <= 0.0 || s.direct_recombination_ns <= 0.0) {
    throw std::invalid_argument("pump scheme: recombination times must be positive");
  }
}

void add_flow(Eigen::MatrixXd& m, int from, int to, double rate) {
  m(to, from) += rate;
  m(from, from) -= rate;
}

// exp(A) by scaling and squaring with a degree-13 Pade approximant.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const int n = static_cast<int>(a.rows());
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 5.37) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 5.37)));
  }
  const Eigen::MatrixXd s = a / std::ldexp(1.0, squarings);
  const Eigen::MatrixXd s2 = s * s;
  const Eigen::MatrixXd s4 = s2 * s2;
  const Eigen::MatrixXd s6 = s4 * s2;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd u =
      s * (s6 * (b[13] * s6 + b[11] * s4 + b[9] * s2) + b[7] * s6 +
           b[5] * s4 + b[3] * s2 + b[1] * id);
  const Eigen::MatrixXd v = s6 * (b[12] * s6 + b[10] * s4 + b[8] * s2) +
                            b[6] * s6 + b[4] * s4 + b[2] * s2 + b[0] * id;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

// Time propagation through the eigenbasis when the generator is cleanly
// diagonalizable, otherwise by stepping with matrix exponentials.
struct Propagator {
  explicit Propagator(const Eigen::MatrixXd& m) : gen(m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() == Eigen::Success) {
      vectors = es.eigenvectors();
      values = es.eigenvalues();
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(vectors);
      const Eigen::MatrixXcd recon =
          vectors * values.asDiagonal() * lu.solve(
              Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
      const double scale = std::max(1.0, m.norm());
      if ((recon - m.cast<std::complex<double>>()).norm() < 1e-9 * scale) {
        inverse_ok = true;
        lu_inv = lu.solve(Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
      }
    }
  }

  Eigen::VectorXd at(const Eigen::VectorXd& p0, double t) const {
    if (inverse_ok) {
      const Eigen::VectorXcd c = lu_inv * p0.cast<std::complex<double>>();
      Eigen::VectorXcd phased(c.size());
      for (int k = 0; k < c.size(); ++k) {
        phased(k) = std::exp(values(k) * t) * c(k);
      }
      return (vectors * phased).real();
    }
    return expm(gen * t) * p0;
  }

  Eigen::MatrixXd gen;
  Eigen::MatrixXcd vectors;
  Eigen::VectorXcd values;
  Eigen::MatrixXcd lu_inv;
  bool inverse_ok = false;
};

double trapezoid(const Eigen::VectorXd& t, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (int i = 1; i < t.size(); ++i) {
    acc += 0.5 * (y(i) + y(i - 1)) * (t(i) - t(i - 1));
  }
  return acc;
}

double windowed_pl(const Eigen::MatrixXd& m, const Eigen::VectorXd& p0,
                   double radiative_MHz, double window_ns) {
  const int points = 2001;
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(points, 0.0, window_ns);
  const Eigen::MatrixXd pops = transient(m, p0, t);
  return trapezoid(t, pl_signal(pops, radiative_MHz));
}

double steady_ionization_flux(const LevelScheme& s) {
  const Eigen::VectorXd p = steady_state(build_rate_matrix(s));
  const double excited = p(LVL_E0) + p(LVL_EP) + p(LVL_EM);
  return s.ionization_scale * s.pump_MHz * excited;
}

}  // namespace

Eigen::MatrixXd build_rate_matrix(const LevelScheme& s) {
  check_rates(s);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(PUMP_LEVELS, PUMP_LEVELS);

  const int ground[] = {LVL_G0, LVL_GP, LVL_GM};
  const int excited[] = {LVL_E0, LVL_EP, LVL_EM};
  for (int k = 0; k < 3; ++k) {
    add_flow(m, ground[k], excited[k], s.pump_MHz);
    add_flow(m, excited[k], ground[k], s.radiative_MHz);
  }

  add_flow(m, LVL_E0, LVL_SA, s.isc_e0_MHz);
  add_flow(m, LVL_EP, LVL_SA, s.isc_e1_MHz);
  add_flow(m, LVL_EM, LVL_SA, s.isc_e1_MHz);
  add_flow(m, LVL_SA, LVL_SE, s.singlet_internal_MHz);
  add_flow(m, LVL_SE, LVL_G0, s.shelf_z_MHz);
  add_flow(m, LVL_SE, LVL_GP, 0.5 * s.shelf_perp_MHz);
  add_flow(m, LVL_SE, LVL_GM, 0.5 * s.shelf_perp_MHz);

  add_flow(m, LVL_G0, LVL_GM, s.mw_mixing_MHz);
  add_flow(m, LVL_GM, LVL_G0, s.mw_mixing_MHz);

  // Ionized population returns through the neutral charge state with spin
  // memory lost; the round trip is treated as instantaneous.
  const double ion = s.ionization_scale * s.pump_MHz;
  if (ion > 0.0) {
    for (int e : excited) {
      for (int g : ground) add_flow(m, e, g, ion / 3.0);
    }
  }
  return m;
}

Eigen::VectorXd steady_state(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("steady_state: matrix must be square");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(sv(0), 1.0);
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) < tol) ++null_dim;
  }
  if (null_dim != 1) {
    throw std::runtime_error(
        "steady_state: generator kernel is not one-dimensional");
  }
  Eigen::VectorXd p = svd.matrixV().col(m.cols() - 1);
  const double total = p.sum();
  if (std::abs(total) < 1e-12) {
    throw std::runtime_error("steady_state: kernel vector has zero total");
  }
  p /= total;
  if (p.minCoeff() < -1e-9) {
    throw std::runtime_error("steady_state: kernel is not a population");
  }
  return p.cwiseMax(0.0) / p.cwiseMax(0.0).sum();
}

Eigen::MatrixXd transient(const Eigen::MatrixXd& m, const Eigen::VectorXd& p0,
                          const Eigen::VectorXd& t_ns) {
  if (m.rows() != m.cols() || m.rows() != p0.size()) {
    throw std::invalid_argument("transient: dimension mismatch");
  }
  const Propagator prop(m);
  Eigen::MatrixXd out(p0.size(), t_ns.size());
  for (int i = 0; i < t_ns.size(); ++i) {
    if (t_ns(i) < 0.0) {
      throw std::invalid_argument("transient: negative time");
    }
    out.col(i) = prop.at(p0, t_ns(i) * 1e-3);  // rates in MHz, time in ns
  }
  return out;
}

Eigen::VectorXd pl_signal(const Eigen::MatrixXd& populations,
                          double radiative_MHz) {
  if (populations.rows() != PUMP_LEVELS) {
    throw std::invalid_argument("pl_signal: expected one row per pump level");
  }
  return radiative_MHz *
         (populations.row(LVL_E0) + populations.row(LVL_EP) +
          populations.row(LVL_EM)).transpose();
}

double odmr_contrast(const LevelScheme& s, double window_ns) {
  if (window_ns <= 0.0) {
    throw std::invalid_argument("odmr_contrast: window must be positive");
  }
  LevelScheme off = s;
  off.mw_mixing_MHz = 0.0;
  const Eigen::MatrixXd m_off = build_rate_matrix(off);
  const Eigen::MatrixXd m_on = build_rate_matrix(s);

  // Polarized initial state: let the pump loop settle without microwaves.
  const Eigen::VectorXd init = steady_state(m_off);

  const double pl_off = windowed_pl(m_off, init, s.radiative_MHz, window_ns);
  const double pl_on = windowed_pl(m_on, init, s.radiative_MHz, window_ns);
  if (pl_off <= 0.0) {
    throw std::runtime_error("odmr_contrast: no photoluminescence in window");
  }
  return (pl_off - pl_on) / pl_off;
}

PdmrResult pdmr_observables(const LevelScheme& s) {
  check_rates(s);
  PdmrResult r;
  const double auger = 1.0 / s.auger_recombination_ns;
  const double direct = 1.0 / s.direct_recombination_ns;
  r.auger_share = auger / (auger + direct);

  LevelScheme off = s;
  off.mw_mixing_MHz = 0.0;
  const double flux_off = steady_ionization_flux(off);
  const double flux_on = steady_ionization_flux(s);
  r.photocurrent_MHz = flux_off;
  r.contrast = flux_off > 0.0 ? (flux_off - flux_on) / flux_off : 0.0;
  return r;
}

}  // namespace nv
