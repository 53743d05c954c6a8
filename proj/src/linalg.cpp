#include "nv/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nv {

namespace {

// Phase convention: largest-|.| component real positive (ties: lowest index).
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best + 1e-14) { best = a; imax = i; }
  }
  if (best <= 0.0) return;
  const std::complex<double> ph = std::conj(v(imax)) / best;
  v *= ph;
}

// Rebuilds the orthonormal basis of the subspace spanned by the columns of
// sub from projections of coordinate basis vectors, greedily by projection
// norm. Deterministic for any incoming basis of the same subspace.
Eigen::MatrixXcd canonical_subspace_basis(Eigen::MatrixXcd sub) {
  const Eigen::Index n = sub.rows();
  const Eigen::Index k = sub.cols();
  Eigen::MatrixXcd out(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    // projection norm of e_b onto current span = norm of row b
    Eigen::Index pick = 0;
    double best = -1.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double w = sub.row(b).norm();
      if (w > best + 1e-12) { best = w; pick = b; }
    }
    Eigen::VectorXcd v = sub * sub.row(pick).adjoint();
    v.normalize();
    out.col(j) = v;
    if (j + 1 == k) break;
    // deflate v from the remaining span
    Eigen::MatrixXcd rest = sub - v * (v.adjoint() * sub);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest, Eigen::ComputeThinU);
    Eigen::Index keep = 0;
    for (Eigen::Index s = 0; s < svd.singularValues().size(); ++s)
      if (svd.singularValues()(s) > 1e-9) ++keep;
    sub = svd.matrixU().leftCols(keep);
  }
  for (Eigen::Index j = 0; j < k; ++j) fix_phase(out.col(j));
  return out;
}

}  // namespace

EigenSystem diagonalize(const Eigen::MatrixXcd& h, double herm_tol, double cluster_tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("diagonalize: matrix not square");
  const Eigen::MatrixXcd asym = h - h.adjoint();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < asym.rows(); ++i)
    for (Eigen::Index j = 0; j < asym.cols(); ++j)
      worst = std::max(worst, std::abs(asym(i, j)));
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (worst > herm_tol * scale) {
    std::ostringstream os;
    os << "diagonalize: matrix not Hermitian, max |H - H^dag| element = " << worst;
    throw std::invalid_argument(os.str());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: eigensolver failed to converge");

  EigenSystem sys;
  sys.values = solver.eigenvalues();
  sys.vectors = solver.eigenvectors();

  const Eigen::Index n = sys.values.size();
  const double vmax = std::max({1.0, std::abs(sys.values(0)), std::abs(sys.values(n - 1))});
  const double gap_tol = cluster_tol * vmax;

  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo;
    while (hi + 1 < n && sys.values(hi + 1) - sys.values(hi) <= gap_tol) ++hi;
    if (hi > lo) {
      sys.vectors.middleCols(lo, hi - lo + 1) =
          canonical_subspace_basis(sys.vectors.middleCols(lo, hi - lo + 1));
    } else {
      fix_phase(sys.vectors.col(lo));
    }
    lo = hi + 1;
  }
  return sys;
}

}  // namespace nv
