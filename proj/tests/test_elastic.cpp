#include "doctest.h"

#include "nv/elastic.hpp"

using namespace nv;
using Eigen::Matrix3d;

namespace {
double max_abs(const Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("defect frame rotation is a proper orthonormal basis") {
  const Matrix3d r = nv_frame_rotation();
  CHECK(max_abs(r * r.transpose() - Matrix3d::Identity()) < 1e-12);
  CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  // z row along [111]
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(r(2, 0) == doctest::Approx(inv_sqrt3));
  CHECK(r(2, 1) == doctest::Approx(inv_sqrt3));
  CHECK(r(2, 2) == doctest::Approx(inv_sqrt3));
  // in-plane rows orthogonal to z and to each other by construction;
  // x row lies in the <112> family
  CHECK(std::abs(r.row(0).dot(Eigen::Vector3d(1, 1, 1))) < 1e-12);
}

TEST_CASE("frame conversions round-trip") {
  Matrix3d t;
  t << 1.0, 0.2, -0.3, 0.2, -2.0, 0.5, -0.3, 0.5, 0.7;
  CHECK(max_abs(to_cubic_frame(to_nv_frame(t, Frame::Cubic), Frame::NV) - t) <
        1e-12);
  CHECK(max_abs(to_nv_frame(t, Frame::NV) - t) == 0.0);  // no-op
  // trace is frame invariant
  CHECK(to_nv_frame(t, Frame::Cubic).trace() == doctest::Approx(t.trace()));
}

TEST_CASE("compliance constants invert the stiffness") {
  const Stiffness c;
  CHECK(c.s11() == doctest::Approx(9.52399078e-4).epsilon(1e-8));
  CHECK(c.s12() == doctest::Approx(-9.91256326e-5).epsilon(1e-8));
  CHECK(c.s44() == doctest::Approx(1.0 / 576.0).epsilon(1e-12));
  // defining identities of the cubic inverse
  CHECK(c.s11() - c.s12() ==
        doctest::Approx(1.0 / (c.c11_GPa - c.c12_GPa)).epsilon(1e-12));
  CHECK(c.s11() + 2.0 * c.s12() ==
        doctest::Approx(1.0 / (c.c11_GPa + 2.0 * c.c12_GPa)).epsilon(1e-12));
}

TEST_CASE("hydrostatic stress gives an isotropic frame-independent strain") {
  const double p = 2.5;
  const Matrix3d sigma = p * Matrix3d::Identity();
  const Stiffness c;
  const double expect = p / (c.c11_GPa + 2.0 * c.c12_GPa);
  for (Frame f : {Frame::NV, Frame::Cubic}) {
    const Matrix3d eps = stress_to_strain_nv(sigma, f);
    CHECK(max_abs(eps - expect * Matrix3d::Identity()) < 1e-15);
  }
}

TEST_CASE("uniaxial stress along the defect axis") {
  Matrix3d sigma = Matrix3d::Zero();
  sigma(2, 2) = 1.0;  // 1 GPa along z, NV frame
  const Matrix3d eps = stress_to_strain_nv(sigma, Frame::NV);
  CHECK(eps(2, 2) == doctest::Approx(8.300863e-4).epsilon(1e-6));
  CHECK(eps(0, 0) == doctest::Approx(-3.796925e-5).epsilon(1e-6));
  CHECK(eps(1, 1) == doctest::Approx(eps(0, 0)).epsilon(1e-12));
  // uniaxial stress along the trigonal axis keeps the tensor diagonal
  CHECK(std::abs(eps(0, 1)) < 1e-18);
  CHECK(std::abs(eps(0, 2)) < 1e-18);
}

TEST_CASE("cubic-frame uniaxial stress volume response") {
  Matrix3d sigma = Matrix3d::Zero();
  sigma(0, 0) = 1.0;  // 1 GPa along a cube axis
  const Matrix3d eps = stress_to_strain_nv(sigma, Frame::Cubic);
  const Stiffness c;
  // trace is frame invariant and equals s11 + 2 s12 per unit stress
  CHECK(eps.trace() ==
        doctest::Approx(c.s11() + 2.0 * c.s12()).epsilon(1e-12));
  CHECK(eps(2, 2) == doctest::Approx(2.513826e-4).epsilon(1e-6));
}

TEST_CASE("tensor shear picks up half the engineering-shear compliance") {
  Matrix3d sigma = Matrix3d::Zero();
  sigma(0, 1) = sigma(1, 0) = 1.0;  // cubic-frame shear
  // evaluate in the cubic frame by converting the result back
  const Matrix3d eps_nv = stress_to_strain_nv(sigma, Frame::Cubic);
  const Matrix3d eps = to_cubic_frame(eps_nv, Frame::NV);
  const Stiffness c;
  CHECK(eps(0, 1) == doctest::Approx(c.s44() / 2.0).epsilon(1e-12));
  CHECK(std::abs(eps(0, 0)) < 1e-15);
  CHECK(std::abs(eps.trace()) < 1e-15);
}

TEST_CASE("zero stress maps to zero strain") {
  CHECK(max_abs(stress_to_strain_nv(Matrix3d::Zero(), Frame::Cubic)) == 0.0);
}

TEST_CASE("response is linear in the stress") {
  Matrix3d sigma;
  sigma << 0.3, 0.1, 0.0, 0.1, -0.2, 0.4, 0.0, 0.4, 1.1;
  const Matrix3d e1 = stress_to_strain_nv(sigma, Frame::Cubic);
  const Matrix3d e3 = stress_to_strain_nv(3.0 * sigma, Frame::Cubic);
  CHECK(max_abs(e3 - 3.0 * e1) < 1e-15);
}
