#include "nv/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "nv/units.hpp"

namespace nv {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr double MEV_J = E_CHARGE_C * 1e-3;

// Gamma[MHz] = K_ANGULAR * lambda[MHz]^2 * F[1/meV] for a rate written as
// 4 pi hbar lambda^2 F with lambda in rad/s.
const double K_ANGULAR =
    4.0 * PI * HBAR_JS * (2.0 * PI * 1e6) * (2.0 * PI * 1e6) / (MEV_J * 1e6);

// Gamma[MHz] = K_ENERGY * lambda[MHz]^2 * F[1/meV] for a rate written as
// (2 pi / hbar) lambda^2 F with lambda in energy units.
const double K_ENERGY =
    2.0 * PI / HBAR_JS * (H_JS * 1e6) * (H_JS * 1e6) / (MEV_J * 1e6);

double comb_sum(const std::vector<IscCoefficient>& coeffs, double release_meV,
                double quantum_meV, const SpectralFunction& f) {
  double acc = 0.0;
  for (const auto& c : coeffs)
    acc += c.value * c.value * f.value(release_meV - c.quanta * quantum_meV);
  return acc;
}

void check_support(const SpectralFunction& f, double gap_meV) {
  if (f.energy_meV.size() < 2)
    throw std::invalid_argument("overlap density is empty");
  if (gap_meV < f.energy_meV(0) || gap_meV > f.energy_meV(f.energy_meV.size() - 1))
    throw std::invalid_argument("energy release lies outside the overlap density support");
}

}  // namespace

UpperRates upper_branch_rates(const IscInputs& in,
                              const TripletIscCoefficients& c) {
  check_support(in.f, in.gap_upper_meV);
  const double pre = K_ANGULAR * in.lambda_perp_MHz * in.lambda_perp_MHz;
  UpperRates out;
  out.a1_MHz = pre * comb_sum(c.symmetric, in.gap_upper_meV, in.hbar_omega_e_meV, in.f);
  out.e12_MHz =
      0.5 * pre * comb_sum(c.doublet, in.gap_upper_meV, in.hbar_omega_e_meV, in.f);
  out.a2_MHz =
      pre * comb_sum(c.antisymmetric, in.gap_upper_meV, in.hbar_omega_e_meV, in.f);
  return out;
}

LowerRates lower_branch_rates(const IscInputs& in, const IscChannelSet& level) {
  check_support(in.f, in.gap_lower_meV);
  if (in.c_squared < 0.0 || in.c_squared > 1.0)
    throw std::invalid_argument("ms = 0 character must lie in [0, 1]");
  const double release = in.gap_lower_meV + level.energy_meV;
  LowerRates out;
  out.z_MHz = K_ENERGY * in.c_squared * 4.0 * in.lambda_z_MHz * in.lambda_z_MHz *
              comb_sum(level.z, release, in.hbar_omega_e_meV, in.f);
  const double perp_pre =
      K_ENERGY * (1.0 - in.c_squared) * in.lambda_perp_MHz * in.lambda_perp_MHz;
  out.plus_MHz = perp_pre * comb_sum(level.plus, release, in.hbar_omega_e_meV, in.f);
  out.minus_MHz = perp_pre * comb_sum(level.minus, release, in.hbar_omega_e_meV, in.f);
  return out;
}

ShelfLifetime singlet_lifetime_vs_T(const std::vector<IscChannelSet>& levels,
                                    const IscInputs& in, double temperature_K) {
  if (levels.empty()) throw std::invalid_argument("no shelf levels given");
  if (temperature_K < 0.0) throw std::invalid_argument("temperature must be non-negative");

  double e0 = levels.front().energy_meV;
  for (const auto& l : levels) e0 = std::min(e0, l.energy_meV);

  const double kt_meV = temperature_K * KB_MHZ_PER_K / MHZ_PER_MEV;
  double pop = 0.0;
  double rate_z = 0.0;
  double rate_perp = 0.0;
  for (const auto& l : levels) {
    double w = 0.0;
    if (kt_meV == 0.0) {
      w = (l.energy_meV - e0) < 1e-9 ? 1.0 : 0.0;
    } else {
      w = std::exp(-(l.energy_meV - e0) / kt_meV);
    }
    if (w == 0.0) continue;
    const LowerRates r = lower_branch_rates(in, l);
    pop += w;
    rate_z += w * r.z_MHz;
    rate_perp += w * r.perp_MHz();
  }
  const double total = (rate_z + rate_perp) / pop;
  ShelfLifetime out;
  out.tau_ns = 1e3 / total;
  out.z_over_perp = rate_z / rate_perp;
  out.ms0_share = rate_z / (rate_z + rate_perp);
  return out;
}

IscInputs calibrate_lambda_z(const std::vector<IscChannelSet>& levels,
                             IscInputs in, double tau0_ns, double perp_over_z) {
  if (tau0_ns <= 0.0) throw std::invalid_argument("target lifetime must be positive");
  in.lambda_z_MHz = 1.0;
  in.lambda_perp_MHz = perp_over_z;
  const ShelfLifetime unit = singlet_lifetime_vs_T(levels, in, 0.0);
  const double scale = std::sqrt(unit.tau_ns / tau0_ns);
  in.lambda_z_MHz = scale;
  in.lambda_perp_MHz = perp_over_z * scale;
  return in;
}

}  // namespace nv
