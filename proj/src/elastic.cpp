#include "nv/elastic.hpp"

#include <cmath>

namespace nv {

Eigen::Matrix3d nv_frame_rotation() {
  // The in-plane sense (x antiparallel to [11-2]) fixes the sign of the
  // trigonal normal-shear compliance coupling; the spin-stress couplings
  // derived from the spin-strain set depend on it.
  Eigen::Matrix3d r;
  r.row(0) = Eigen::Vector3d(-1, -1, 2).normalized();
  r.row(1) = Eigen::Vector3d(1, -1, 0).normalized();
  r.row(2) = Eigen::Vector3d(1, 1, 1).normalized();
  return r;
}

Eigen::Matrix3d to_nv_frame(const Eigen::Matrix3d& t, Frame from) {
  if (from == Frame::NV) return t;
  const Eigen::Matrix3d r = nv_frame_rotation();
  return r * t * r.transpose();
}

Eigen::Matrix3d to_cubic_frame(const Eigen::Matrix3d& t, Frame from) {
  if (from == Frame::Cubic) return t;
  const Eigen::Matrix3d r = nv_frame_rotation();
  return r.transpose() * t * r;
}

double Stiffness::s11() const {
  return (c11_GPa + c12_GPa) /
         ((c11_GPa - c12_GPa) * (c11_GPa + 2.0 * c12_GPa));
}

double Stiffness::s12() const {
  return -c12_GPa / ((c11_GPa - c12_GPa) * (c11_GPa + 2.0 * c12_GPa));
}

double Stiffness::s44() const { return 1.0 / c44_GPa; }

Eigen::Matrix3d stress_to_strain_nv(const Eigen::Matrix3d& sigma, Frame frame,
                                    const Stiffness& c) {
  const Eigen::Matrix3d sc = to_cubic_frame(sigma, frame);
  const double s11 = c.s11(), s12 = c.s12(), s44 = c.s44();
  Eigen::Matrix3d eps;
  eps(0, 0) = s11 * sc(0, 0) + s12 * (sc(1, 1) + sc(2, 2));
  eps(1, 1) = s11 * sc(1, 1) + s12 * (sc(0, 0) + sc(2, 2));
  eps(2, 2) = s11 * sc(2, 2) + s12 * (sc(0, 0) + sc(1, 1));
  eps(1, 2) = eps(2, 1) = 0.5 * s44 * sc(1, 2);
  eps(0, 2) = eps(2, 0) = 0.5 * s44 * sc(0, 2);
  eps(0, 1) = eps(1, 0) = 0.5 * s44 * sc(0, 1);
  return to_nv_frame(eps, Frame::Cubic);
}

}  // namespace nv
