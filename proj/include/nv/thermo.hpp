#pragma once

#include <map>
#include <string>
#include <vector>

namespace nv {

struct ChargeState {
  int q = 0;
  double total_energy_eV = 0.0;  // host-referenced total energy
  double correction_eV = 0.0;    // finite-size correction, 0 for neutral
};

struct DefectSpecies {
  std::string name;
  std::vector<ChargeState> states;
  std::map<std::string, int> stoichiometry;  // atoms added (+) / removed (-)
  double site_density_cm3 = 1.77e23;         // diamond carbon site density
  double degeneracy = 1.0;

  bool has_charge(int q) const;
  const ChargeState& state(int q) const;
};

struct HostModel {
  double gap_eV = 5.4;
  double valence_eV = 0.0;    // absolute position of the valence band edge
  double donor_cm3 = 0.0;     // shallow fully ionized donors (+1)
  double acceptor_cm3 = 0.0;  // shallow fully ionized acceptors (-1)
  double n_c_cm3 = 0.0;       // band effective densities; 0 = defect-only
  double n_v_cm3 = 0.0;
};

using ChemicalPotentials = std::map<std::string, double>;  // eV per atom

// E_tot^q + E_corr^q - sum n_i mu_i + q (E_F + E_V); E_F measured from the
// valence band edge and restricted to the gap.
double formation_energy(const DefectSpecies& d, const HostModel& host,
                        const ChemicalPotentials& mu, int q, double fermi_eV);

struct TransitionLevel {
  double level_eV = 0.0;  // relative to the valence band edge
  bool inside_gap = false;
};

// Occupation level between charge states q and q+1, the total-energy
// difference E^{q+1} - E^q including corrections.
TransitionLevel transition_level(const DefectSpecies& d, const HostModel& host,
                                 int q);

// Dilute Boltzmann occupation of N0 available sites.
double concentration(double e_form_eV, double site_density_cm3, double t_K,
                     double degeneracy = 1.0);

struct FermiSolution {
  double fermi_eV = 0.0;
  double residual_cm3 = 0.0;  // net charge density at the solution
  double electrons_cm3 = 0.0;
  double holes_cm3 = 0.0;
  std::map<std::string, std::map<int, double>> concentrations_cm3;
};

// Bisection on the charge-neutrality condition over the gap.
FermiSolution solve_fermi_level(const std::vector<DefectSpecies>& species,
                                const HostModel& host,
                                const ChemicalPotentials& mu, double t_K);

struct ReactionTerm {
  const DefectSpecies* species = nullptr;
  int q = 0;
  double fermi_eV = 0.0;
};

// Formation-energy balance, products minus reactants; atom counts must
// match across the two sides.
double reaction_energy(const std::vector<ReactionTerm>& products,
                       const std::vector<ReactionTerm>& reactants,
                       const HostModel& host, const ChemicalPotentials& mu);

}  // namespace nv
