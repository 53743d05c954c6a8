#include <cmath>
#include <vector>

#include "approx.hpp"
#include "doctest.h"
#include "nv/lineshape.hpp"
#include "nv/presets.hpp"

using namespace nv;
using nvtest::Approx;

TEST_CASE("zero-phonon weight follows the exponential of the total strength") {
  CHECK(debye_waller(3.5) == Approx(std::exp(-3.5)).epsilon(1e-12));
  CHECK(debye_waller(3.5) == Approx(0.0301973834).margin(1e-10));
  CHECK(debye_waller(0.0) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("emission preset carries the two effective modes") {
  auto modes = presets::emission_modes();
  REQUIRE(modes.size() == 2);
  CHECK(modes[0].hbar_omega_meV == Approx(65.0));
  CHECK(modes[0].huang_rhys == Approx(1.8));
  CHECK(modes[0].symmetry == ModeSymmetry::A1);
  CHECK(modes[1].hbar_omega_meV == Approx(77.6));
  CHECK(modes[1].huang_rhys == Approx(1.7));
  CHECK(modes[1].symmetry == ModeSymmetry::E);
  CHECK(total_huang_rhys(modes) == Approx(3.5).epsilon(1e-12));
}

TEST_CASE("sampled comb keeps the exact first moment and zero-line share") {
  auto modes = presets::emission_modes();
  auto f = spectral_function(modes, 6.0);
  double expect = 0.0;
  for (const auto& m : modes) expect += m.huang_rhys * m.hbar_omega_meV;
  CHECK(expect == Approx(248.92).margin(1e-9));
  CHECK(f.first_moment() == Approx(expect).epsilon(1e-6));
  CHECK(f.zero_line_weight() ==
        Approx(debye_waller(total_huang_rhys(modes))).epsilon(1e-10));

  // Unit mass on the grid.
  double dx = f.energy_meV(1) - f.energy_meV(0);
  CHECK(f.density.sum() * dx == Approx(1.0).epsilon(1e-6));
  CHECK(f.density.minCoeff() >= 0.0);

  // value() agrees with the sampled grid.
  int mid = static_cast<int>(f.energy_meV.size()) / 2;
  CHECK(f.value(f.energy_meV(mid)) == Approx(f.density(mid)).epsilon(1e-9));
}

TEST_CASE("single-mode comb is an exact factorial-weighted ladder") {
  std::vector<PhononMode> one = {{70.0, 1.3, ModeSymmetry::A1}};
  auto f = spectral_function(one, 4.0);
  double s = 1.3;
  for (const auto& [e, w] : f.lines) {
    double k = e / 70.0;
    int ki = static_cast<int>(std::lround(k));
    REQUIRE(std::abs(k - ki) < 1e-9);
    double expect = std::exp(-s) * std::pow(s, ki) / std::tgamma(ki + 1.0);
    if (expect > 1e-12) CHECK(w == Approx(expect).margin(1e-10));
  }
}

TEST_CASE("first moment is additive over modes") {
  std::vector<PhononMode> a = {{65.0, 1.8, ModeSymmetry::A1}};
  std::vector<PhononMode> b = {{77.6, 1.7, ModeSymmetry::E}};
  std::vector<PhononMode> both = {a[0], b[0]};
  double m = spectral_function(both, 5.0).first_moment();
  CHECK(m == Approx(spectral_function(a, 5.0).first_moment() +
                    spectral_function(b, 5.0).first_moment())
                 .epsilon(1e-6));
}

TEST_CASE("emission spectrum reflects the comb below the zero-phonon line") {
  auto f = spectral_function(presets::emission_modes(), 6.0);
  double zpl = 1.945;
  auto sp = emission_spectrum(zpl, f, false);
  REQUIRE(sp.energy_eV.size() == sp.density.size());

  // Peak density sits at the ZPL minus the comb; nothing above the line
  // carries appreciable weight.
  double above = 0.0, below = 0.0;
  double de = sp.energy_eV(1) - sp.energy_eV(0);
  for (int i = 0; i < sp.energy_eV.size(); ++i) {
    if (sp.energy_eV(i) > zpl + 0.02)
      above += sp.density(i) * std::abs(de);
    else
      below += sp.density(i) * std::abs(de);
  }
  CHECK(above < 2e-3);
  CHECK(below == Approx(1.0).margin(2e-2));

  // The cubic photon factor suppresses the red side relative to the ZPL.
  auto spc = emission_spectrum(zpl, f, true);
  int izpl = 0, ired = 0;
  for (int i = 0; i < sp.energy_eV.size(); ++i) {
    if (std::abs(sp.energy_eV(i) - zpl) <
        std::abs(sp.energy_eV(izpl) - zpl))
      izpl = i;
    if (std::abs(sp.energy_eV(i) - (zpl - 0.2)) <
        std::abs(sp.energy_eV(ired) - (zpl - 0.2)))
      ired = i;
  }
  double plain = sp.density(ired) / sp.density(izpl);
  double cubed = spc.density(ired) / spc.density(izpl);
  CHECK(cubed < plain);
  CHECK(cubed == Approx(plain * std::pow((zpl - 0.2) / zpl, 3)).epsilon(2e-2));
}

TEST_CASE("absorption mirror policies differ only above the line") {
  auto modes = presets::emission_modes();
  std::vector<PhononMode> a1_only;
  for (const auto& m : modes)
    if (m.symmetry == ModeSymmetry::A1) a1_only.push_back(m);
  auto f_full = spectral_function(modes, 6.0);
  auto f_a1 = spectral_function(a1_only, 6.0);
  double zpl = 1.945;

  auto mirror = absorption_spectrum(zpl, f_a1, f_full,
                                    SidebandPolicy::MirrorOfEmission);
  auto narrow = absorption_spectrum(zpl, f_a1, f_full,
                                    SidebandPolicy::SymmetricModesOnly);

  // Both sidebands sit above the ZPL.
  auto mass_below = [&](const Spectrum& s) {
    double m = 0.0, de = std::abs(s.energy_eV(1) - s.energy_eV(0));
    for (int i = 0; i < s.energy_eV.size(); ++i)
      if (s.energy_eV(i) < zpl - 0.02) m += s.density(i) * de;
    return m;
  };
  CHECK(mass_below(mirror) < 2e-3);
  CHECK(mass_below(narrow) < 2e-3);

  // Restricting the upward comb to the totally symmetric mode moves weight
  // toward the line: the zero-phonon share grows.
  auto share_at_zpl = [&](const Spectrum& s) {
    double m = 0.0, de = std::abs(s.energy_eV(1) - s.energy_eV(0));
    for (int i = 0; i < s.energy_eV.size(); ++i)
      if (std::abs(s.energy_eV(i) - zpl) < 0.02) m += s.density(i) * de;
    return m;
  };
  CHECK(share_at_zpl(narrow) > share_at_zpl(mirror));
}

TEST_CASE("lifetime and dipole are exact inverses with a cubic energy law") {
  double mu = dipole_from_lifetime(2.4, 1.945, 12.0);
  CHECK(mu == Approx(0.11149148).margin(1e-6));
  CHECK(radiative_lifetime_ns(2.4, 1.945, mu) == Approx(12.0).epsilon(1e-9));

  // tau ~ 1/w^3 at fixed dipole.
  CHECK(radiative_lifetime_ns(2.4, 2.0 * 1.945, mu) * 8.0 ==
        Approx(12.0).epsilon(1e-12));
  // tau ~ 1/n at fixed dipole and energy.
  CHECK(radiative_lifetime_ns(1.2, 1.945, mu) ==
        Approx(24.0).epsilon(1e-12));

  CHECK(SINGLET_RADIATIVE_LIFETIME_NS == 1878.0);
}
