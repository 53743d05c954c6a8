#include "nv/thermo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nv/units.hpp"

namespace nv {

namespace {

void check_species(const DefectSpecies& d) {
  if (d.states.empty()) {
    throw std::invalid_argument("thermo: species " + d.name +
                                " has no charge states");
  }
  for (const auto& s : d.states) {
    if (s.q == 0 && s.correction_eV != 0.0) {
      throw std::invalid_argument("thermo: neutral state of " + d.name +
                                  " must carry zero correction");
    }
  }
}

double chemical_sum(const DefectSpecies& d, const ChemicalPotentials& mu) {
  double acc = 0.0;
  for (const auto& [atom, count] : d.stoichiometry) {
    if (count == 0) continue;
    const auto it = mu.find(atom);
    if (it == mu.end()) {
      throw std::invalid_argument("thermo: missing chemical potential for " +
                                  atom);
    }
    acc += count * it->second;
  }
  return acc;
}

}  // namespace

bool DefectSpecies::has_charge(int q) const {
  for (const auto& s : states) {
    if (s.q == q) return true;
  }
  return false;
}

const ChargeState& DefectSpecies::state(int q) const {
  for (const auto& s : states) {
    if (s.q == q) return s;
  }
  throw std::invalid_argument("thermo: species " + name +
                              " has no charge state q=" + std::to_string(q));
}

double formation_energy(const DefectSpecies& d, const HostModel& host,
                        const ChemicalPotentials& mu, int q, double fermi_eV) {
  check_species(d);
  if (host.gap_eV <= 0.0) throw std::invalid_argument("thermo: gap must be > 0");
  if (fermi_eV < 0.0 || fermi_eV > host.gap_eV) {
    throw std::invalid_argument("thermo: Fermi level outside the gap");
  }
  const ChargeState& s = d.state(q);
  return s.total_energy_eV + s.correction_eV - chemical_sum(d, mu) +
         q * (fermi_eV + host.valence_eV);
}

TransitionLevel transition_level(const DefectSpecies& d, const HostModel& host,
                                 int q) {
  if (!d.has_charge(q) || !d.has_charge(q + 1)) {
    throw std::invalid_argument("thermo: transition needs both charge states");
  }
  const ChargeState& lo = d.state(q);
  const ChargeState& hi = d.state(q + 1);
  TransitionLevel t;
  t.level_eV = (hi.total_energy_eV + hi.correction_eV) -
               (lo.total_energy_eV + lo.correction_eV) - host.valence_eV;
  t.inside_gap = t.level_eV >= 0.0 && t.level_eV <= host.gap_eV;
  return t;
}

double concentration(double e_form_eV, double site_density_cm3, double t_K,
                     double degeneracy) {
  if (t_K <= 0.0) throw std::invalid_argument("thermo: temperature must be > 0");
  if (site_density_cm3 < 0.0 || degeneracy <= 0.0) {
    throw std::invalid_argument("thermo: bad site density or degeneracy");
  }
  return site_density_cm3 * degeneracy *
         std::exp(-e_form_eV / (KB_EV_PER_K * t_K));
}

namespace {

double net_charge(const std::vector<DefectSpecies>& species,
                  const HostModel& host, const ChemicalPotentials& mu,
                  double t_K, double fermi_eV) {
  double acc = host.donor_cm3 - host.acceptor_cm3;
  for (const auto& d : species) {
    for (const auto& s : d.states) {
      const double ef = formation_energy(d, host, mu, s.q, fermi_eV);
      acc += s.q * concentration(ef, d.site_density_cm3, t_K, d.degeneracy);
    }
  }
  const double kt = KB_EV_PER_K * t_K;
  acc += host.n_v_cm3 * std::exp(-fermi_eV / kt);                    // holes
  acc -= host.n_c_cm3 * std::exp(-(host.gap_eV - fermi_eV) / kt);    // electrons
  return acc;
}

}  // namespace

FermiSolution solve_fermi_level(const std::vector<DefectSpecies>& species,
                                const HostModel& host,
                                const ChemicalPotentials& mu, double t_K) {
  if (species.empty()) throw std::invalid_argument("thermo: no species");
  double lo = 0.0, hi = host.gap_eV;
  double f_lo = net_charge(species, host, mu, t_K, lo);
  double f_hi = net_charge(species, host, mu, t_K, hi);
  if (f_lo == 0.0) hi = lo;
  if (f_hi == 0.0) lo = hi;
  if (f_lo * f_hi > 0.0) {
    std::ostringstream msg;
    msg << "thermo: charge neutrality has no sign change in the gap"
        << " (net charge " << f_lo << " cm^-3 at E_V, " << f_hi
        << " cm^-3 at E_C)";
    throw std::runtime_error(msg.str());
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * host.gap_eV; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = net_charge(species, host, mu, t_K, mid);
    if ((f_mid <= 0.0) == (f_lo <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  FermiSolution sol;
  sol.fermi_eV = 0.5 * (lo + hi);
  sol.residual_cm3 = net_charge(species, host, mu, t_K, sol.fermi_eV);
  const double kt = KB_EV_PER_K * t_K;
  sol.holes_cm3 = host.n_v_cm3 * std::exp(-sol.fermi_eV / kt);
  sol.electrons_cm3 =
      host.n_c_cm3 * std::exp(-(host.gap_eV - sol.fermi_eV) / kt);
  double total = 0.0;
  for (const auto& d : species) {
    for (const auto& s : d.states) {
      const double ef = formation_energy(d, host, mu, s.q, sol.fermi_eV);
      const double n = concentration(ef, d.site_density_cm3, t_K, d.degeneracy);
      sol.concentrations_cm3[d.name][s.q] = n;
      total += n;
    }
  }
  if (total > 0.0 && std::abs(sol.residual_cm3) > 1e-6 * total) {
    throw std::runtime_error("thermo: neutrality residual did not converge");
  }
  return sol;
}

double reaction_energy(const std::vector<ReactionTerm>& products,
                       const std::vector<ReactionTerm>& reactants,
                       const HostModel& host, const ChemicalPotentials& mu) {
  std::map<std::string, int> balance;
  const auto tally = [&balance](const std::vector<ReactionTerm>& side,
                                int sign) {
    for (const auto& t : side) {
      if (t.species == nullptr) {
        throw std::invalid_argument("thermo: reaction term without species");
      }
      for (const auto& [atom, count] : t.species->stoichiometry) {
        balance[atom] += sign * count;
      }
    }
  };
  tally(products, +1);
  tally(reactants, -1);
  for (const auto& [atom, count] : balance) {
    if (count != 0) {
      throw std::invalid_argument("thermo: unbalanced stoichiometry in " +
                                  atom);
    }
  }
  double acc = 0.0;
  for (const auto& t : products) {
    acc += formation_energy(*t.species, host, mu, t.q, t.fermi_eV);
  }
  for (const auto& t : reactants) {
    acc -= formation_energy(*t.species, host, mu, t.q, t.fermi_eV);
  }
  return acc;
}

}  // namespace nv
