#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace nv {

// Two-mode harmonic oscillator basis truncated by total quanta
// nx + ny <= n_max, ordered by shell (nx+ny ascending, nx descending inside
// a shell). Dimensionless coordinates X = (ax + ax^dag)/sqrt(2).
class TwoModeBasis {
 public:
  explicit TwoModeBasis(int n_max);

  int n_max() const { return n_max_; }
  int size() const { return static_cast<int>(occ_.size()); }
  const std::pair<int, int>& occ(int k) const { return occ_[k]; }
  int find(int nx, int ny) const;  // -1 when outside the truncation

 private:
  int n_max_;
  std::vector<std::pair<int, int>> occ_;
  std::vector<std::vector<int>> index_;
};

Eigen::MatrixXd lowering_x(const TwoModeBasis& b);
Eigen::MatrixXd lowering_y(const TwoModeBasis& b);
Eigen::MatrixXd coord_x(const TwoModeBasis& b);
Eigen::MatrixXd coord_y(const TwoModeBasis& b);
Eigen::MatrixXd number_op(const TwoModeBasis& b);

// Exact second-quantized forms of the quadratic pair (X^2 - Y^2) and
// (XY + YX); both stay inside a shell or jump by two quanta, so truncation
// by total quanta keeps them exact on the retained space except at the edge.
Eigen::MatrixXd quad_x2_minus_y2(const TwoModeBasis& b);
Eigen::MatrixXd quad_xy_plus_yx(const TwoModeBasis& b);

// Vibrational angular momentum L = i(ax ay^dag - ax^dag ay); integer
// spectrum -N..N in steps of 2 within shell N.
Eigen::MatrixXcd angular_momentum(const TwoModeBasis& b);

// exp(i angle L), computed exactly per shell.
Eigen::MatrixXcd boson_rotation(const TwoModeBasis& b, double angle);

// Reflection y -> -y: diagonal (-1)^ny.
Eigen::VectorXd y_parity(const TwoModeBasis& b);

// Columns are the circular states |n+, n-> expanded over |nx, ny>, where
// a+- = (ax -+ i ay)/sqrt(2); ordering matches circular_occ. Under
// complex conjugation (real-basis) |n+, n-> maps to |n-, n+>.
struct CircularBasis {
  std::vector<std::pair<int, int>> occ;  // (n_plus, n_minus)
  Eigen::MatrixXcd states;
  int find(int np, int nm) const;
};
CircularBasis circular_basis(const TwoModeBasis& b);

}  // namespace nv
