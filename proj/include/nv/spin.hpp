#pragma once

#include <Eigen/Dense>
#include <array>

namespace nv {

// Spin matrices in the |S,m> basis ordered m = S, S-1, ..., -S.
// S may be integer or half-integer.

bool valid_spin(double S);
int multiplicity(double S);

Eigen::MatrixXcd spin_z(double S);
Eigen::MatrixXcd spin_plus(double S);
Eigen::MatrixXcd spin_minus(double S);
Eigen::MatrixXcd spin_x(double S);
Eigen::MatrixXcd spin_y(double S);
std::array<Eigen::MatrixXcd, 3> spin_ops(double S);  // {Sx, Sy, Sz}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// anti-commutator {A, B}
Eigen::MatrixXcd anticomm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace nv
