#include <stdexcept>

#include "approx.hpp"
#include "doctest.h"
#include "nv/presets.hpp"
#include "nv/pump.hpp"

using namespace nv;
using nvtest::Approx;

TEST_CASE("rate matrix is a population-conserving generator") {
  auto s = presets::pump();
  auto m = build_rate_matrix(s);
  REQUIRE(m.rows() == PUMP_LEVELS);
  REQUIRE(m.cols() == PUMP_LEVELS);
  for (int j = 0; j < m.cols(); ++j) {
    CHECK(m.col(j).sum() == Approx(0.0).margin(1e-12));
    for (int i = 0; i < m.rows(); ++i)
      if (i != j) CHECK(m(i, j) >= 0.0);
  }
}

TEST_CASE("steady state is the normalized null vector") {
  auto m = build_rate_matrix(presets::pump());
  auto p = steady_state(m);
  CHECK(p.sum() == Approx(1.0).margin(1e-12));
  CHECK(p.minCoeff() >= -1e-15);
  CHECK((m * p).cwiseAbs().maxCoeff() < 1e-12 * m.cwiseAbs().maxCoeff());
}

TEST_CASE("steady state requires a connected level graph") {
  LevelScheme s;
  s.pump_MHz = 10.0;  // no crossing, no mixing: spin sectors never talk
  CHECK_THROWS_AS(steady_state(build_rate_matrix(s)), std::runtime_error);
}

TEST_CASE("optical cycling polarizes the ground spin") {
  auto s = presets::pump();
  s.mw_mixing_MHz = 0.0;
  auto p = steady_state(build_rate_matrix(s));
  double ground = p(LVL_G0) + p(LVL_GP) + p(LVL_GM);
  CHECK(p(LVL_G0) / ground == Approx(0.996890859).margin(1e-6));
  CHECK(p(LVL_G0) / ground >= 0.80);
}

TEST_CASE("readout contrast sits in the observed band") {
  double c = odmr_contrast(presets::pump());
  CHECK(c == Approx(0.240985).margin(1e-5));
  CHECK(c >= 0.15);
  CHECK(c <= 0.35);
}

TEST_CASE("spin-symmetric crossing gives zero contrast") {
  LevelScheme s;
  s.pump_MHz = 30.0;
  s.isc_e0_MHz = 10.0;
  s.isc_e1_MHz = 10.0;
  s.shelf_z_MHz = 1.0;
  s.shelf_perp_MHz = 2.0;
  s.mw_mixing_MHz = 20.0;
  CHECK(odmr_contrast(s) == Approx(0.0).margin(1e-10));
}

TEST_CASE("transient conserves population and relaxes to the steady state") {
  auto m = build_rate_matrix(presets::pump());
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(PUMP_LEVELS);
  p0(LVL_G0) = 1.0;
  Eigen::VectorXd t(5);
  t << 0.0, 1.0, 10.0, 100.0, 1e6;
  auto tr = transient(m, p0, t);
  REQUIRE(tr.cols() == t.size());
  CHECK((tr.col(0) - p0).cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 1; k < 4; ++k)
    CHECK(tr.col(k).sum() == Approx(1.0).margin(1e-12));
  CHECK(tr.col(4).sum() == Approx(1.0).margin(1e-8));
  auto ps = steady_state(m);
  CHECK((tr.col(4) - ps).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("photoluminescence tracks the excited population") {
  auto s = presets::pump();
  auto m = build_rate_matrix(s);
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(PUMP_LEVELS);
  p0(LVL_G0) = 1.0;
  Eigen::VectorXd t(3);
  t << 0.0, 50.0, 500.0;
  auto tr = transient(m, p0, t);
  auto pl = pl_signal(tr, s.radiative_MHz);
  REQUIRE(pl.size() == t.size());
  CHECK(pl(0) == Approx(0.0).margin(1e-12));
  for (int k = 1; k < t.size(); ++k) {
    double excited = tr(LVL_E0, k) + tr(LVL_EP, k) + tr(LVL_EM, k);
    CHECK(pl(k) == Approx(s.radiative_MHz * excited).epsilon(1e-12));
  }
}

TEST_CASE("ionization cycle reproduces the capture branching") {
  auto s = presets::pump_with_ionization();
  auto r = pdmr_observables(s);
  double expected_auger = (1.0 / s.auger_recombination_ns) /
                          (1.0 / s.auger_recombination_ns +
                           1.0 / s.direct_recombination_ns);
  CHECK(r.auger_share == Approx(expected_auger).epsilon(1e-12));
  CHECK(r.auger_share == Approx(0.998402556).margin(1e-6));
  CHECK(r.auger_share == Approx(0.998).margin(1e-3));
  CHECK(r.photocurrent_MHz == Approx(0.036155).margin(1e-5));
  CHECK(r.contrast == Approx(0.451069).margin(1e-5));
  CHECK(r.photocurrent_MHz > 0.0);
}

TEST_CASE("ionization rate scales with the square of the drive") {
  auto s = presets::pump_with_ionization();
  auto base = pdmr_observables(s);
  // Two-photon process: per-level rate is scale * pump, and occupation of
  // the excited levels also grows with pump, so the current rises faster
  // than linearly at weak drive.
  auto weak = s;
  weak.pump_MHz *= 0.5;
  auto half = pdmr_observables(weak);
  CHECK(base.photocurrent_MHz > 2.0 * half.photocurrent_MHz);
}
