#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "approx.hpp"
#include "doctest.h"
#include "nv/grids.hpp"
#include "nv/units.hpp"

using namespace nv;
using nvtest::Approx;

namespace {

ScalarGrid3D lobe_grid(double half, int n, const Eigen::Vector3d& center,
                       double width) {
  auto g = make_cubic_grid(half, n);
  add_gaussian_amplitude(g, center, width);
  return g;
}

}  // namespace

TEST_CASE("cubic grid geometry") {
  auto g = make_cubic_grid(6.0, 41);
  CHECK(g.dims[0] == 41);
  CHECK(g.dims[1] == 41);
  CHECK(g.dims[2] == 41);
  CHECK(g.origin_A.x() == Approx(-6.0));
  CHECK(g.spacing_A.x() == Approx(0.3));
  CHECK(g.position(20, 20, 20).norm() == Approx(0.0).margin(1e-12));
  CHECK(g.voxel_A3() == Approx(0.027).epsilon(1e-12));
  CHECK(g.size() == 41 * 41 * 41);
  CHECK_THROWS_AS(make_cubic_grid(-1.0, 41), std::invalid_argument);
  CHECK_THROWS_AS(make_cubic_grid(6.0, 1), std::invalid_argument);
}

TEST_CASE("gaussian lobes carry unit norm and unit charge") {
  auto amp = lobe_grid(4.0, 41, {0, 0, 1.0}, 0.5);
  CHECK(amp.l2_norm() == Approx(1.0).margin(1e-4));

  auto den = make_cubic_grid(4.0, 49);
  add_gaussian_density(den, {0, 0, 0}, 0.6, 1.0);
  CHECK(den.integral() == Approx(1.0).margin(1e-9));
  add_gaussian_density(den, {1.0, 0, 0}, 0.6, 2.0);
  CHECK(den.integral() == Approx(3.0).margin(1e-6));

  auto bad = make_cubic_grid(4.0, 41);
  CHECK_THROWS_AS(add_gaussian_amplitude(bad, {0, 0, 0}, -0.5),
                  std::invalid_argument);
}

TEST_CASE("grid file round-trip") {
  auto g = lobe_grid(3.0, 21, {0.5, -0.3, 1.0}, 0.45);
  auto path =
      (std::filesystem::temp_directory_path() / "nvgrid_test.dat").string();
  write_grid(g, path);
  auto r = read_grid(path);
  std::filesystem::remove(path);
  REQUIRE(r.dims == g.dims);
  CHECK((r.origin_A - g.origin_A).norm() < 1e-12);
  CHECK((r.spacing_A - g.spacing_A).norm() < 1e-12);
  double maxdiff = 0.0;
  for (size_t i = 0; i < g.values.size(); ++i)
    maxdiff = std::max(maxdiff, std::abs(g.values[i] - r.values[i]));
  CHECK(maxdiff < 1e-12);
  CHECK_THROWS_AS(read_grid("/nonexistent/path/grid.dat"), std::runtime_error);
}

TEST_CASE("well-separated lobe pair matches the point-dipole limit") {
  const double width = 0.35, offset = 1.75;
  auto a = lobe_grid(6.0, 41, {0, 0, -offset}, width);
  auto b = lobe_grid(6.0, 41, {0, 0, offset}, width);
  std::vector<OrbitalPair> pairs = {{a, b, +1}};
  auto r = zfs_tensor(pairs, 1.0, ZfsMethod::Fft);

  CHECK(r.d_MHz == Approx(-3641.4103).epsilon(1e-4));
  CHECK(std::abs(r.tensor_MHz.trace()) < 1e-6 * std::abs(r.d_MHz));
  CHECK(std::abs(r.axis.z()) == Approx(1.0).margin(1e-9));
  CHECK(r.tensor_MHz(0, 0) == Approx(1213.803).epsilon(1e-4));
  CHECK(r.tensor_MHz(1, 1) == Approx(r.tensor_MHz(0, 0)).epsilon(1e-6));
  CHECK(r.tensor_MHz(2, 2) == Approx(-2427.607).epsilon(1e-4));
  CHECK(std::abs(r.e_MHz) < 1e-3 * std::abs(r.d_MHz));

  // Separation is 10x the lobe width: the closed-form point-dipole tensor
  // pinned to the same magnetic constants must agree to a couple percent.
  double sep = 2.0 * offset;
  double pref = (MU0_SI / (4.0 * M_PI)) * std::pow(G_FREE * MUB_J_PER_T, 2) /
                H_JS * 1e30 / 1e6;  // MHz * A^3
  double expect_zz = -2.0 * pref / std::pow(sep, 3);
  CHECK(r.tensor_MHz(2, 2) == Approx(expect_zz).epsilon(0.02));
  CHECK(r.tensor_MHz(0, 0) == Approx(-expect_zz / 2.0).epsilon(0.02));
}

TEST_CASE("zero-padded convolution equals the direct lattice sum") {
  auto a = lobe_grid(2.5, 17, {0, 0, -1.0}, 0.35);
  auto b = lobe_grid(2.5, 17, {0, 0, 1.0}, 0.35);
  std::vector<OrbitalPair> pairs = {{a, b, +1}};
  auto rf = zfs_tensor(pairs, 1.0, ZfsMethod::Fft);
  auto rd = zfs_tensor(pairs, 1.0, ZfsMethod::Direct);
  double rel = (rf.tensor_MHz - rd.tensor_MHz).cwiseAbs().maxCoeff() /
               rd.tensor_MHz.cwiseAbs().maxCoeff();
  CHECK(rel < 1e-4);
  CHECK(rf.d_MHz == Approx(rd.d_MHz).epsilon(1e-10));
}

TEST_CASE("spin-sign flips the pair contribution") {
  auto a = lobe_grid(2.5, 17, {0, 0, -1.0}, 0.35);
  auto b = lobe_grid(2.5, 17, {0, 0, 1.0}, 0.35);
  auto plus = zfs_tensor({{a, b, +1}}, 1.0, ZfsMethod::Fft);
  auto minus = zfs_tensor({{a, b, -1}}, 1.0, ZfsMethod::Fft);
  CHECK((plus.tensor_MHz + minus.tensor_MHz).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("spin-spin integral input validation") {
  auto a = lobe_grid(2.5, 17, {0, 0, -1.0}, 0.35);
  auto b = lobe_grid(2.5, 17, {0, 0, 1.0}, 0.35);
  CHECK_THROWS_AS(zfs_tensor({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(zfs_tensor({{a, b, 0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(zfs_tensor({{a, b, +1}}, 0.5), std::invalid_argument);
  auto half = a;
  for (auto& v : half.values) v *= 0.5;
  CHECK_THROWS_AS(zfs_tensor({{half, b, +1}}, 1.0), std::invalid_argument);
}

TEST_CASE("point-dipole tensor pattern, scaling and covariance") {
  const double gn = 0.4037 * 5.0507837461e-27;
  auto m = point_dipole_hyperfine({0, 0, 2.0}, gn);
  CHECK(m(2, 2) > 0.0);
  CHECK(m(0, 0) == Approx(m(1, 1)).epsilon(1e-12));
  CHECK(m(2, 2) == Approx(-2.0 * m(0, 0)).epsilon(1e-12));
  CHECK(std::abs(m.trace()) < 1e-12 * m(2, 2));

  auto m2 = point_dipole_hyperfine({0, 0, 4.0}, gn);
  CHECK(m2(2, 2) * 8.0 == Approx(m(2, 2)).epsilon(1e-12));

  Eigen::Matrix3d rot =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized())
          .toRotationMatrix();
  Eigen::Vector3d r(0.3, -1.1, 0.8);
  auto lhs = point_dipole_hyperfine(rot * r, gn);
  auto rhs = rot * point_dipole_hyperfine(r, gn) * rot.transpose();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9 * lhs.cwiseAbs().maxCoeff());

  CHECK_THROWS_AS(point_dipole_hyperfine({0, 0, 0}, gn), std::invalid_argument);
}

TEST_CASE("spherical spin density reduces to a point dipole plus contact") {
  auto g = make_cubic_grid(4.0, 49);
  add_gaussian_density(g, {0, 0, 0}, 0.6, 1.0);
  NucleusSite n;
  n.position_A = {0, 0, 2.5};
  n.gn_mun_J_per_T = 0.4037 * 5.0507837461e-27;

  auto h = hyperfine_tensor(g, n, 1.0);
  auto pd = point_dipole_hyperfine(Eigen::Vector3d(0, 0, -2.5),
                                   n.gn_mun_J_per_T);
  CHECK(h.dipolar_MHz(2, 2) == Approx(0.731428).margin(1e-4));
  CHECK(h.dipolar_MHz(2, 2) == Approx(pd(2, 2)).epsilon(1e-3));
  CHECK(h.axial);
  CHECK(h.a_parallel_MHz - h.contact_MHz ==
        Approx(h.dipolar_MHz(2, 2)).epsilon(1e-6));
  CHECK(h.a_perp_MHz - h.contact_MHz ==
        Approx(-0.5 * h.dipolar_MHz(2, 2)).epsilon(1e-6));
  // The density is negligible 2.5 A from its center: no contact term.
  CHECK(std::abs(h.contact_MHz) < 1e-4);
  CHECK((h.tensor_MHz - h.contact_MHz * Eigen::Matrix3d::Identity() -
         h.dipolar_MHz)
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("contact term is linear in the spin density at the nucleus") {
  auto g = make_cubic_grid(4.0, 49);
  add_gaussian_density(g, {0, 0, 0}, 0.6, 1.0);
  NucleusSite n;
  n.position_A = {0, 0, 0};
  n.gn_mun_J_per_T = 0.4037 * 5.0507837461e-27;
  auto h1 = hyperfine_tensor(g, n, 0.5);
  CHECK(h1.contact_MHz == Approx(79.603549).epsilon(1e-4));
  auto g2 = g;
  for (auto& v : g2.values) v *= 2.0;
  auto h2 = hyperfine_tensor(g2, n, 0.5);
  CHECK(h2.contact_MHz == Approx(2.0 * h1.contact_MHz).epsilon(1e-10));

  NucleusSite outside;
  outside.position_A = {10, 0, 0};
  outside.gn_mun_J_per_T = n.gn_mun_J_per_T;
  CHECK_THROWS_AS(hyperfine_tensor(g, outside, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hyperfine_tensor(g, n, 0.0), std::invalid_argument);
}

TEST_CASE("quadrupole coupling is bilinear with the pinned prefactor") {
  CHECK(quadrupole_coupling(1.0, 1.0) == Approx(1.81349193).margin(1e-6));
  CHECK(quadrupole_coupling(2.0, 0.5) ==
        Approx(quadrupole_coupling(1.0, 1.0)).epsilon(1e-12));
  CHECK(quadrupole_coupling(-1.0, 1.0) ==
        Approx(-quadrupole_coupling(1.0, 1.0)).epsilon(1e-12));
}
