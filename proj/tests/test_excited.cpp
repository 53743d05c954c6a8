#include "doctest.h"

#include <cmath>

#include "nv/excited.hpp"
#include "nv/linalg.hpp"
#include "nv/units.hpp"

using namespace nv;
using Eigen::Matrix3d;
using Eigen::MatrixXcd;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {
VectorXd spectrum(const MatrixXcd& h) { return diagonalize(h).values; }
}  // namespace

TEST_CASE("zero-perturbation fine structure") {
  const ExcitedStateParams p;
  const VectorXd w = spectrum(build_excited_hamiltonian(p));
  REQUIRE(w.size() == 6);

  // ms=0 doublet against the ms=+-1 spin-orbit branch: the 200 MHz
  // spin-spin element mixes them, eigenvalues -1955 +- sqrt(1955^2 + 200^2)
  const double mid = 0.5 * (0.0 + (-p.lambda_z_MHz + p.d_es_MHz));
  const double r = std::hypot(mid, p.d_e12exy_MHz);
  CHECK(w(0) == doctest::Approx(mid - r).epsilon(1e-10));
  CHECK(w(1) == doctest::Approx(mid - r).epsilon(1e-10));
  CHECK(w(2) == doctest::Approx(mid + r).epsilon(1e-10));
  CHECK(w(3) == doctest::Approx(mid + r).epsilon(1e-10));

  // singlet-like ms=0 pair split by d_a1a2
  CHECK(w(4) == doctest::Approx(p.d_es_MHz + p.lambda_z_MHz -
                                0.5 * p.d_a1a2_MHz));
  CHECK(w(5) == doctest::Approx(p.d_es_MHz + p.lambda_z_MHz +
                                0.5 * p.d_a1a2_MHz));
  CHECK(w(5) - w(4) == doctest::Approx(3100.0));
}

TEST_CASE("thermal reduction factor limits and closed form") {
  CHECK(reduction_factor(1000.0, 0.0) == 1.0);
  CHECK(reduction_factor(0.0, 300.0) == 0.0);
  // (1-x)/(1+x) with x = exp(-eps/kT) equals tanh(eps/2kT)
  for (double t : {4.0, 77.0, 300.0}) {
    CHECK(reduction_factor(1000.0, t) ==
          doctest::Approx(std::tanh(1000.0 / (2.0 * KB_MHZ_PER_K * t)))
              .epsilon(1e-12));
  }
  CHECK(reduction_factor(1000.0, 300.0) ==
        doctest::Approx(7.9987e-5).epsilon(1e-4));
}

TEST_CASE("temperature collapses the ms=0 orbital splitting") {
  const ExcitedStateParams p;
  const VectorXd cold = spectrum(build_excited_hamiltonian(p));
  const VectorXd warm = spectrum(
      build_excited_hamiltonian(p, Matrix3d::Zero(), Vector3d::Zero(), 300.0));
  const double split_cold = cold(5) - cold(4);
  const double split_warm = warm(5) - warm(4);
  CHECK(split_cold == doctest::Approx(3100.0));
  CHECK(split_warm ==
        doctest::Approx(3100.0 * reduction_factor(p.eps_perp_MHz, 300.0))
            .epsilon(1e-6));
}

TEST_CASE("uniform axial strain only shifts the manifold") {
  ExcitedStateParams p;
  p.strain_zz_shift_MHz = 1.0;
  Matrix3d eps = Matrix3d::Zero();
  eps(2, 2) = 750.0;  // energy-valued strain component
  const VectorXd w0 = spectrum(build_excited_hamiltonian(p));
  const VectorXd wz = spectrum(build_excited_hamiltonian(p, eps));
  for (int i = 0; i < 6; ++i)
    CHECK(wz(i) - w0(i) == doctest::Approx(750.0).epsilon(1e-10));
}

TEST_CASE("large transverse strain forms two orbital branches") {
  const ExcitedStateParams p;
  Matrix3d eps = Matrix3d::Zero();
  const double delta = 5e5;
  eps(0, 0) = delta;
  eps(1, 1) = -delta;  // (e_xx - e_yy)/2 = delta
  const VectorXd w = spectrum(build_excited_hamiltonian(p, eps));
  // three low levels, three high levels, branch separation ~ 2 delta
  const double gap = w(3) - w(2);
  CHECK(std::abs(gap - 2.0 * delta) / (2.0 * delta) < 0.02);
  CHECK(w(2) - w(0) < 0.1 * delta);
  CHECK(w(5) - w(3) < 0.1 * delta);
}

TEST_CASE("axial electric field shifts all six levels equally") {
  const ExcitedStateParams p;
  const VectorXd w0 = spectrum(build_excited_hamiltonian(p));
  const VectorXd wz = spectrum(build_excited_hamiltonian(
      p, Matrix3d::Zero(), Vector3d(0, 0, 0.1)));
  for (int i = 0; i < 6; ++i)
    CHECK(wz(i) - w0(i) ==
          doctest::Approx(0.1 * p.d_z_es_MHz_per_MV_m).epsilon(1e-9));
}

TEST_CASE("transverse electric field splits like transverse strain") {
  const ExcitedStateParams p;
  const double ex = 0.5;  // MV/m
  const VectorXd we = spectrum(build_excited_hamiltonian(
      p, Matrix3d::Zero(), Vector3d(ex, 0, 0)));
  Matrix3d eps = Matrix3d::Zero();
  eps(0, 0) = ex * p.d_perp_es_MHz_per_MV_m;
  eps(1, 1) = -ex * p.d_perp_es_MHz_per_MV_m;
  const VectorXd ws = spectrum(build_excited_hamiltonian(p, eps));
  for (int i = 0; i < 6; ++i)
    CHECK(we(i) == doctest::Approx(ws(i)).epsilon(1e-9));
}

TEST_CASE("optical line weights ride the orbital character") {
  const ExcitedStateParams p;
  const auto h = build_excited_hamiltonian(p);
  const auto lines = ple_lines(h, {0, 0, 1, 1, 0, 0});
  REQUIRE(lines.size() == 6);
  double total = 0.0;
  for (const auto& l : lines) {
    CHECK(l.intensity >= 0.0);
    total += l.intensity;
  }
  // completeness: the weights distribute over the eigenbasis without loss
  CHECK(total == doctest::Approx(2.0).epsilon(1e-9));

  // the two ms=0 orbital-singlet levels carry no Ex/Ey weight
  CHECK(lines[4].intensity == doctest::Approx(0.0).scale(1.0));
  CHECK(lines[5].intensity == doctest::Approx(0.0).scale(1.0));
  // offsets are centroid-referenced: A2 - A1 = 3100 MHz
  CHECK(lines[5].offset_MHz - lines[4].offset_MHz == doctest::Approx(3100.0));

  // all-dark weights give a dark spectrum
  const auto dark = ple_lines(h, {0, 0, 0, 0, 0, 0});
  for (const auto& l : dark) CHECK(l.intensity == 0.0);
}

TEST_CASE("ab initio spin-spin variant keeps the structure") {
  const auto p = ExcitedStateParams::dft_spin_spin();
  const auto h = build_excited_hamiltonian(p);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
  const VectorXd w = spectrum(h);
  CHECK(w(5) - w(4) == doctest::Approx(p.d_a1a2_MHz).epsilon(1e-9));
}

TEST_CASE("built Hamiltonians are Hermitian under mixed perturbations") {
  const ExcitedStateParams p;
  Matrix3d eps;
  eps << 100.0, 30.0, -20.0, 30.0, -50.0, 60.0, -20.0, 60.0, 10.0;
  const auto h =
      build_excited_hamiltonian(p, eps, Vector3d(0.2, -0.1, 0.3), 150.0);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}
