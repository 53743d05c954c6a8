#pragma once

#include <Eigen/Dense>

namespace nv {

struct EigenSystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // column k belongs to values(k)
};

// Diagonalizes a Hermitian matrix with a deterministic output convention.
// Rejects non-Hermitian input (max |H - H^dag| element above herm_tol) with
// std::invalid_argument naming the offending magnitude. Within a degenerate
// cluster (relative gap below cluster_tol) the returned basis is rebuilt by
// projecting coordinate basis vectors into the cluster subspace, largest
// projection first (ties broken by basis index), so repeated calls and
// symmetry-equivalent inputs produce the same vectors. Every column's phase
// is fixed by making its largest-magnitude component real positive.
EigenSystem diagonalize(const Eigen::MatrixXcd& h, double herm_tol = 1e-9,
                        double cluster_tol = 1e-9);

}  // namespace nv
