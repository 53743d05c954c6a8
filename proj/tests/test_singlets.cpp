#include <cmath>
#include <stdexcept>
#include <vector>

#include "approx.hpp"
#include "doctest.h"
#include "nv/presets.hpp"
#include "nv/singlets.hpp"
#include "nv/vibronic.hpp"

using namespace nv;
using nvtest::Approx;

namespace {

const VibronicSolution& preset_solution() {
  static VibronicSolution s = solve_pjt(presets::singlet_pjt());
  return s;
}

}  // namespace

TEST_CASE("weak coupling leaves a near-harmonic three-sheet ladder") {
  PJTParams p;
  p.pjt_coupling_meV = 1.0;
  p.djt_coupling_meV = 0.5;
  p.n_max = 10;
  auto s = solve_pjt(p);
  REQUIRE(s.converged);
  CHECK(s.energies_meV(0) == Approx(0.0).margin(1e-9));
  CHECK(s.energies_meV(1) == Approx(0.0).margin(1e-8));
  CHECK(s.labels[0] == VibronicSymmetry::E);
  CHECK(s.partner[1] == 0);
  for (int i = 2; i <= 5; ++i)
    CHECK(s.energies_meV(i) == Approx(p.hbar_omega_meV).margin(0.05));
  int up = find_upper_singlet(s);
  CHECK(s.energies_meV(up) == Approx(p.gap_meV).margin(0.05));
  CHECK(s.labels[up] == VibronicSymmetry::A1);
}

TEST_CASE("preset ladder reproduces the calibrated singlet levels") {
  const auto& s = preset_solution();
  REQUIRE(s.converged);
  CHECK(s.unresolved.empty());

  CHECK(s.energies_meV(0) == Approx(0.0).margin(1e-9));
  CHECK(s.labels[0] == VibronicSymmetry::E);
  CHECK(s.partner[1] == 0);
  CHECK(s.energies_meV(1) == Approx(s.energies_meV(0)).margin(1e-6));

  struct Line {
    double e;
    VibronicSymmetry sym;
  };
  // Distinct ladder rungs in order, doublets listed once.
  const std::vector<Line> expected = {
      {0.0, VibronicSymmetry::E},        {14.13344, VibronicSymmetry::A1},
      {45.71500, VibronicSymmetry::E},   {64.24524, VibronicSymmetry::E},
      {68.52087, VibronicSymmetry::A2},  {78.34716, VibronicSymmetry::A1},
      {101.49276, VibronicSymmetry::E},  {107.13803, VibronicSymmetry::A2},
  };
  std::vector<Line> got;
  for (int i = 0; i < s.energies_meV.size() && got.size() < expected.size();
       ++i) {
    if (i > 0 && s.partner[i] == i - 1) continue;
    got.push_back({s.energies_meV(i), s.labels[i]});
  }
  REQUIRE(got.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(got[i].e == Approx(expected[i].e).margin(2e-3));
    CHECK(got[i].sym == expected[i].sym);
  }
}

TEST_CASE("ground doublet carries a small totally symmetric admixture") {
  const auto& s = preset_solution();
  auto pol = polaron_coefficients(s, 0);
  CHECK(pol.completeness == Approx(1.0).margin(1e-8));
  double d2 = coefficient_weight(pol.a1_sheet);
  CHECK(d2 == Approx(0.038893).margin(5e-4));
  double weights = coefficient_weight(pol.symmetric) +
                   coefficient_weight(pol.antisymmetric) + d2 +
                   coefficient_weight(pol.cross);
  CHECK(weights == Approx(pol.completeness).margin(1e-10));

  // The partner column carries the same sheet weights.
  auto pol2 = polaron_coefficients(s, 1);
  CHECK(coefficient_weight(pol2.a1_sheet) == Approx(d2).margin(1e-8));
}

TEST_CASE("upper singlet sits on the gap sheet with near-unit weight") {
  const auto& s = preset_solution();
  int up = find_upper_singlet(s);
  CHECK(s.labels[up] == VibronicSymmetry::A1);
  CHECK(s.energies_meV(up) == Approx(1248.233).margin(0.05));
  auto upol = upper_polaron_coefficients(s, up);
  CHECK(upol.completeness == Approx(1.0).margin(1e-6));
  CHECK(coefficient_weight(upol.a1_sheet) == Approx(0.98114).margin(1e-3));
  CHECK(coefficient_weight(upol.doublet) == Approx(0.01886).margin(1e-3));
}

TEST_CASE("emission from the upper singlet concentrates in the E sideband") {
  const auto& s = preset_solution();
  int up = find_upper_singlet(s);
  double e_up = s.energies_meV(up);
  std::vector<int> lower;
  for (int i = 0; i < s.energies_meV.size(); ++i)
    if (s.energies_meV(i) < 200.0) lower.push_back(i);
  auto tl = vibronic_transition_intensities(s, up, lower, 1.0);
  REQUIRE(!tl.empty());

  double imax = 0, e_dominant = 0, i_zpl = 0, i_a1 = 0;
  for (const auto& t : tl) {
    CHECK(t.intensity >= 0.0);
    CHECK(t.delta_e_meV ==
          Approx(e_up - s.energies_meV(t.lower_level)).margin(1e-9));
    double elow = e_up - t.delta_e_meV;
    if (t.intensity > imax) {
      imax = t.intensity;
      e_dominant = elow;
    }
    if (std::abs(elow) < 1.0) i_zpl += t.intensity;
    if (std::abs(elow - 14.13344) < 1.0) i_a1 += t.intensity;
  }
  CHECK(i_zpl == Approx(0.5230169).epsilon(1e-3));
  CHECK(e_dominant == Approx(45.715).margin(0.1));
  // Transitions into the totally symmetric level are dipole-forbidden.
  CHECK(i_a1 / imax < 1e-3);

  auto tl2 = vibronic_transition_intensities(s, up, lower, 2.0);
  CHECK(tl2[0].intensity == Approx(4.0 * tl[0].intensity).epsilon(1e-12));
}

TEST_CASE("channel decomposition splits each level into z and chiral parts") {
  const auto& s = preset_solution();
  auto dec = singlet_isc_decomposition(s, 160.0);
  REQUIRE(dec.size() == 19);
  CHECK(dec.front().energy_meV == Approx(0.0).margin(1e-9));
  for (size_t i = 1; i < dec.size(); ++i)
    CHECK(dec[i].energy_meV >= dec[i - 1].energy_meV - 1e-9);

  for (const auto& c : dec) {
    double total = coefficient_weight(c.z) + coefficient_weight(c.plus) +
                   coefficient_weight(c.minus);
    CHECK(total == Approx(1.0).margin(1e-6));
  }

  CHECK(dec[0].label == VibronicSymmetry::E);
  CHECK(coefficient_weight(dec[0].z) == Approx(0.03889).margin(5e-4));
  CHECK(coefficient_weight(dec[0].plus) == Approx(0.73410).margin(5e-4));
  CHECK(coefficient_weight(dec[0].minus) == Approx(0.22701).margin(5e-4));

  // Doublet partners swap chirality.
  CHECK(coefficient_weight(dec[1].plus) ==
        Approx(coefficient_weight(dec[0].minus)).margin(1e-8));
  CHECK(coefficient_weight(dec[1].minus) ==
        Approx(coefficient_weight(dec[0].plus)).margin(1e-8));

  // The totally symmetric level has balanced chirality.
  CHECK(dec[2].label == VibronicSymmetry::A1);
  CHECK(dec[2].energy_meV == Approx(14.13344).margin(2e-3));
  CHECK(coefficient_weight(dec[2].z) == Approx(0.07161).margin(5e-4));
  CHECK(coefficient_weight(dec[2].plus) ==
        Approx(coefficient_weight(dec[2].minus)).margin(1e-8));
}

TEST_CASE("singlet input validation") {
  CHECK_THROWS_AS(solve_pjt([] {
                    PJTParams p;
                    p.n_max = 1;
                    return p;
                  }()),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_pjt([] {
                    PJTParams p;
                    p.mixing = 1.5;
                    return p;
                  }()),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_pjt([] {
                    PJTParams p;
                    p.gap_meV = -1.0;
                    return p;
                  }()),
                  std::invalid_argument);

  const auto& s = preset_solution();
  // Level 2 is the first totally symmetric level, not an E level.
  CHECK_THROWS_AS(polaron_coefficients(s, 2), std::invalid_argument);
  CHECK_THROWS_AS(upper_polaron_coefficients(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(polaron_coefficients(s, -1), std::invalid_argument);
  CHECK_THROWS_AS(singlet_isc_decomposition(s, -5.0), std::invalid_argument);
}
