#include "nv/boson.hpp"

#include <cmath>
#include <stdexcept>

namespace nv {

TwoModeBasis::TwoModeBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  index_.assign(n_max + 1, std::vector<int>(n_max + 1, -1));
  for (int shell = 0; shell <= n_max; ++shell) {
    for (int nx = shell; nx >= 0; --nx) {
      const int ny = shell - nx;
      index_[nx][ny] = static_cast<int>(occ_.size());
      occ_.emplace_back(nx, ny);
    }
  }
}

int TwoModeBasis::find(int nx, int ny) const {
  if (nx < 0 || ny < 0 || nx + ny > n_max_) return -1;
  return index_[nx][ny];
}

namespace {

Eigen::MatrixXd lowering(const TwoModeBasis& b, bool mode_x) {
  const int n = b.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const auto [nx, ny] = b.occ(k);
    if (mode_x && nx > 0) {
      const int j = b.find(nx - 1, ny);
      a(j, k) = std::sqrt(static_cast<double>(nx));
    }
    if (!mode_x && ny > 0) {
      const int j = b.find(nx, ny - 1);
      a(j, k) = std::sqrt(static_cast<double>(ny));
    }
  }
  return a;
}

}  // namespace

Eigen::MatrixXd lowering_x(const TwoModeBasis& b) { return lowering(b, true); }
Eigen::MatrixXd lowering_y(const TwoModeBasis& b) { return lowering(b, false); }

Eigen::MatrixXd coord_x(const TwoModeBasis& b) {
  const Eigen::MatrixXd a = lowering_x(b);
  return (a + a.transpose()) / std::sqrt(2.0);
}

Eigen::MatrixXd coord_y(const TwoModeBasis& b) {
  const Eigen::MatrixXd a = lowering_y(b);
  return (a + a.transpose()) / std::sqrt(2.0);
}

Eigen::MatrixXd number_op(const TwoModeBasis& b) {
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(b.size(), b.size());
  for (int k = 0; k < b.size(); ++k) {
    const auto [nx, ny] = b.occ(k);
    n(k, k) = nx + ny;
  }
  return n;
}

Eigen::MatrixXd quad_x2_minus_y2(const TwoModeBasis& b) {
  const Eigen::MatrixXd ax = lowering_x(b), ay = lowering_y(b);
  const Eigen::MatrixXd rx = ax.transpose(), ry = ay.transpose();
  return 0.5 * (ax * ax + rx * rx - ay * ay - ry * ry) + (rx * ax - ry * ay);
}

Eigen::MatrixXd quad_xy_plus_yx(const TwoModeBasis& b) {
  const Eigen::MatrixXd ax = lowering_x(b), ay = lowering_y(b);
  const Eigen::MatrixXd rx = ax.transpose(), ry = ay.transpose();
  // ax and ry commute; the lowering factor is applied first so every
  // intermediate state stays inside the truncated basis.
  return ax * ay + ry * ax + rx * ay + rx * ry;
}

Eigen::MatrixXcd angular_momentum(const TwoModeBasis& b) {
  const Eigen::MatrixXd ax = lowering_x(b), ay = lowering_y(b);
  // Normal-ordered products (commuting factors): intermediates never leave
  // the truncation, so L is exact on every retained shell.
  const Eigen::MatrixXd anti =
      ay.transpose() * ax - ax.transpose() * ay;
  return std::complex<double>(0.0, 1.0) * anti.cast<std::complex<double>>();
}

Eigen::MatrixXcd boson_rotation(const TwoModeBasis& b, double angle) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(angular_momentum(b));
  const Eigen::VectorXd ell = solver.eigenvalues();
  Eigen::VectorXcd phases(ell.size());
  for (Eigen::Index k = 0; k < ell.size(); ++k)
    phases(k) = std::polar(1.0, angle * ell(k));
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

Eigen::VectorXd y_parity(const TwoModeBasis& b) {
  Eigen::VectorXd p(b.size());
  for (int k = 0; k < b.size(); ++k) p(k) = (b.occ(k).second % 2 == 0) ? 1.0 : -1.0;
  return p;
}

int CircularBasis::find(int np, int nm) const {
  for (size_t k = 0; k < occ.size(); ++k)
    if (occ[k].first == np && occ[k].second == nm) return static_cast<int>(k);
  return -1;
}

CircularBasis circular_basis(const TwoModeBasis& b) {
  const int n = b.size();
  const Eigen::MatrixXcd raise_x =
      lowering_x(b).transpose().cast<std::complex<double>>();
  const Eigen::MatrixXcd raise_y =
      lowering_y(b).transpose().cast<std::complex<double>>();
  const std::complex<double> im(0.0, 1.0);
  const Eigen::MatrixXcd raise_p = (raise_x + im * raise_y) / std::sqrt(2.0);
  const Eigen::MatrixXcd raise_m = (raise_x - im * raise_y) / std::sqrt(2.0);

  CircularBasis cb;
  cb.states.resize(n, n);
  // |n+, n-> = raise_p |n+-1, n-> / sqrt(n+), built shell by shell
  std::vector<std::vector<Eigen::VectorXcd>> table(
      b.n_max() + 1, std::vector<Eigen::VectorXcd>(b.n_max() + 1));
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(n);
  vac(b.find(0, 0)) = 1.0;
  table[0][0] = vac;
  int col = 0;
  for (int shell = 0; shell <= b.n_max(); ++shell) {
    for (int np = shell; np >= 0; --np) {
      const int nm = shell - np;
      if (shell > 0) {
        if (np > 0)
          table[np][nm] = raise_p * table[np - 1][nm] / std::sqrt(double(np));
        else
          table[np][nm] = raise_m * table[np][nm - 1] / std::sqrt(double(nm));
      }
      cb.occ.emplace_back(np, nm);
      cb.states.col(col++) = table[np][nm];
    }
  }
  return cb;
}

}  // namespace nv
