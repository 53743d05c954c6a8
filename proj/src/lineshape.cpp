#include "nv/lineshape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nv/units.hpp"

namespace nv {

namespace {

constexpr double PI = 3.14159265358979323846;

void check_modes(const std::vector<PhononMode>& modes) {
  for (const auto& m : modes) {
    if (m.huang_rhys < 0.0)
      throw std::invalid_argument("mode strength must be non-negative");
    if (m.hbar_omega_meV <= 0.0)
      throw std::invalid_argument("mode quantum must be positive");
  }
}

double gaussian(double x, double sigma) {
  const double t = x / sigma;
  return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * PI));
}

double trapezoid(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (int i = 1; i < x.size(); ++i)
    acc += 0.5 * (y(i) + y(i - 1)) * (x(i) - x(i - 1));
  return acc;
}

}  // namespace

double total_huang_rhys(const std::vector<PhononMode>& modes) {
  check_modes(modes);
  double s = 0.0;
  for (const auto& m : modes) s += m.huang_rhys;
  return s;
}

double debye_waller(double total_s) {
  if (total_s < 0.0) throw std::invalid_argument("total strength must be non-negative");
  return std::exp(-total_s);
}

SpectralGrid default_spectral_grid(const std::vector<PhononMode>& modes,
                                   double sigma_meV) {
  check_modes(modes);
  double mean = 0.0;
  double quantum = 0.0;
  for (const auto& m : modes) {
    mean += m.huang_rhys * m.hbar_omega_meV;
    quantum = std::max(quantum, m.hbar_omega_meV);
  }
  SpectralGrid g;
  g.min_meV = -8.0 * sigma_meV;
  g.max_meV = mean + 6.0 * quantum + 8.0 * sigma_meV;
  const double span = g.max_meV - g.min_meV;
  g.points = std::max(400, static_cast<int>(std::ceil(span / (sigma_meV / 4.0))) + 1);
  return g;
}

double SpectralFunction::value(double e_meV) const {
  double acc = 0.0;
  for (const auto& [e, w] : lines) acc += w * gaussian(e_meV - e, sigma_meV);
  return acc * norm;
}

double SpectralFunction::first_moment() const {
  // The broadening is symmetric, so the exact line list carries the moment.
  double acc = 0.0;
  for (const auto& [e, w] : lines) acc += w * e;
  return acc;
}

double SpectralFunction::zero_line_weight() const {
  double window = sigma_meV;
  for (const auto& [e, w] : lines)
    if (e > 1e-9) {
      window = std::min(window, 0.5 * e);
    }
  double acc = 0.0;
  for (const auto& [e, w] : lines)
    if (std::abs(e) < window) acc += w;
  return acc;
}

SpectralFunction spectral_function(const std::vector<PhononMode>& modes,
                                   double sigma_meV, const SpectralGrid& grid) {
  check_modes(modes);
  if (sigma_meV <= 0.0) throw std::invalid_argument("broadening must be positive");
  if (grid.points < 2 || grid.max_meV <= grid.min_meV)
    throw std::invalid_argument("invalid spectral grid");

  // Convolution of per-mode Poisson combs as an exact line list.
  std::map<long long, double> comb{{0, 1.0}};
  const double e_res = 1e-9;
  for (const auto& m : modes) {
    if (m.huang_rhys == 0.0) continue;
    std::vector<double> pois;
    double w = std::exp(-m.huang_rhys);
    double cum = w;
    pois.push_back(w);
    for (int n = 1; n < 512 && 1.0 - cum > 1e-12; ++n) {
      w *= m.huang_rhys / n;
      cum += w;
      pois.push_back(w);
    }
    std::map<long long, double> next;
    for (const auto& [key, base] : comb) {
      const double e0 = key * e_res;
      for (std::size_t n = 0; n < pois.size(); ++n) {
        const double contrib = base * pois[n];
        if (contrib < 1e-15) continue;
        const double e = e0 + static_cast<double>(n) * m.hbar_omega_meV;
        next[llround(e / e_res)] += contrib;
      }
    }
    comb.swap(next);
  }

  SpectralFunction f;
  f.sigma_meV = sigma_meV;
  f.lines.reserve(comb.size());
  for (const auto& [key, w] : comb) f.lines.emplace_back(key * e_res, w);

  f.energy_meV = Eigen::VectorXd::LinSpaced(grid.points, grid.min_meV, grid.max_meV);
  Eigen::VectorXd raw(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    double acc = 0.0;
    for (const auto& [e, w] : f.lines) acc += w * gaussian(f.energy_meV(i) - e, sigma_meV);
    raw(i) = acc;
  }
  const double mass = trapezoid(f.energy_meV, raw);
  if (mass < 0.999)
    throw std::runtime_error("spectral grid too narrow: it captures less than 99.9% of the sideband");
  f.norm = 1.0 / mass;
  f.density = raw * f.norm;
  return f;
}

SpectralFunction spectral_function(const std::vector<PhononMode>& modes,
                                   double sigma_meV) {
  return spectral_function(modes, sigma_meV, default_spectral_grid(modes, sigma_meV));
}

Spectrum emission_spectrum(double zpl_eV, const SpectralFunction& f,
                           bool photon_cubed) {
  if (zpl_eV <= 0.0) throw std::invalid_argument("transition energy must be positive");
  const int n = static_cast<int>(f.energy_meV.size());
  Spectrum s;
  s.energy_eV.resize(n);
  s.density.resize(n);
  for (int i = 0; i < n; ++i) {
    const int j = n - 1 - i;  // ascending photon energy
    const double e = zpl_eV - f.energy_meV(j) * 1e-3;
    double d = f.density(j) * 1e3;
    if (photon_cubed) {
      const double r = e / zpl_eV;
      d *= r * r * r;
    }
    s.energy_eV(i) = e;
    s.density(i) = d;
  }
  return s;
}

Spectrum absorption_spectrum(double zpl_eV, const SpectralFunction& f_a1_only,
                             const SpectralFunction& f_full,
                             SidebandPolicy policy) {
  if (zpl_eV <= 0.0) throw std::invalid_argument("transition energy must be positive");
  const SpectralFunction& f =
      policy == SidebandPolicy::SymmetricModesOnly ? f_a1_only : f_full;
  const int n = static_cast<int>(f.energy_meV.size());
  Spectrum s;
  s.energy_eV.resize(n);
  s.density.resize(n);
  for (int i = 0; i < n; ++i) {
    s.energy_eV(i) = zpl_eV + f.energy_meV(i) * 1e-3;
    s.density(i) = f.density(i) * 1e3;
  }
  return s;
}

double radiative_lifetime_ns(double n_refr, double photon_eV, double mu_e_nm) {
  if (n_refr <= 0.0 || photon_eV <= 0.0 || mu_e_nm <= 0.0)
    throw std::invalid_argument("lifetime inputs must be positive");
  const double omega = photon_eV * E_CHARGE_C / HBAR_JS;
  const double mu = mu_e_nm * E_CHARGE_C * 1e-9;
  const double rate = n_refr * omega * omega * omega * mu * mu /
                      (3.0 * PI * EPS0_F_PER_M * HBAR_JS *
                       C_M_PER_S * C_M_PER_S * C_M_PER_S);
  return 1e9 / rate;
}

double dipole_from_lifetime(double n_refr, double photon_eV, double tau_ns) {
  if (n_refr <= 0.0 || photon_eV <= 0.0 || tau_ns <= 0.0)
    throw std::invalid_argument("lifetime inputs must be positive");
  const double omega = photon_eV * E_CHARGE_C / HBAR_JS;
  const double rate = 1e9 / tau_ns;
  const double mu2 = rate * 3.0 * PI * EPS0_F_PER_M * HBAR_JS * C_M_PER_S *
                     C_M_PER_S * C_M_PER_S / (n_refr * omega * omega * omega);
  return std::sqrt(mu2) / (E_CHARGE_C * 1e-9);
}

}  // namespace nv
