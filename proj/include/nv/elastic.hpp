#pragma once

#include <Eigen/Dense>

namespace nv {

// Tensor frames: Cubic is the crystal axis frame <100>; NV is the defect
// frame with z along [111], x along [-1-12], y along [1-10].
enum class Frame { NV, Cubic };

// Rows are the NV frame axes expressed in cubic coordinates.
Eigen::Matrix3d nv_frame_rotation();

// Rotates a rank-2 tensor between frames.
Eigen::Matrix3d to_nv_frame(const Eigen::Matrix3d& t, Frame from);
Eigen::Matrix3d to_cubic_frame(const Eigen::Matrix3d& t, Frame from);

struct Stiffness {
  double c11_GPa = 1076.0;
  double c12_GPa = 125.0;
  double c44_GPa = 576.0;
  double s11() const;  // 1/GPa
  double s12() const;
  double s44() const;
};

// Applies cubic compliance to a stress tensor given in `frame` and returns
// the strain tensor in the NV frame. Shear compliance acts on engineering
// shears, so tensor shear components come out as s44*sigma_ij/2.
Eigen::Matrix3d stress_to_strain_nv(const Eigen::Matrix3d& sigma_GPa, Frame frame,
                                    const Stiffness& c = {});

}  // namespace nv
