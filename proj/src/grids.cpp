#include "nv/grids.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>

#include "nv/units.hpp"

namespace nv {

namespace {

struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

bool commensurate(const ScalarGrid3D& a, const ScalarGrid3D& b) {
  return a.dims == b.dims &&
         (a.origin_A - b.origin_A).cwiseAbs().maxCoeff() < 1e-12 &&
         (a.spacing_A - b.spacing_A).cwiseAbs().maxCoeff() < 1e-12;
}

// Traceless dipole kernel, 1/A^3. Component order xx yy zz xy xz yz with the
// (r^2 d_ab - 3 r_a r_b)/r^5 sign used by the spin-spin integral.
void zfs_kernel(const Eigen::Vector3d& r, double out[6]) {
  const double r2 = r.squaredNorm();
  const double inv_r5 = 1.0 / (r2 * r2 * std::sqrt(r2));
  out[0] = (r2 - 3.0 * r.x() * r.x()) * inv_r5;
  out[1] = (r2 - 3.0 * r.y() * r.y()) * inv_r5;
  out[2] = (r2 - 3.0 * r.z() * r.z()) * inv_r5;
  out[3] = -3.0 * r.x() * r.y() * inv_r5;
  out[4] = -3.0 * r.x() * r.z() * inv_r5;
  out[5] = -3.0 * r.y() * r.z() * inv_r5;
}

Eigen::Matrix3d assemble_symmetric(const double c[6]) {
  Eigen::Matrix3d m;
  m << c[0], c[3], c[4], c[3], c[1], c[5], c[4], c[5], c[2];
  return m;
}

// mu0/4pi * ge^2 muB^2 / h in MHz A^3.
double zfs_scale_MHz_A3() {
  const double hz_m3 = MU0_SI / (4.0 * M_PI) *
                       (G_FREE * MUB_J_PER_T) * (G_FREE * MUB_J_PER_T) / H_JS;
  return hz_m3 * 1e30 / 1e6;
}

// mu0/4pi * ge muB * gn mun / h in MHz A^3.
double dipole_scale_MHz_A3(double gn_mun_J_per_T) {
  const double hz_m3 =
      MU0_SI / (4.0 * M_PI) * G_FREE * MUB_J_PER_T * gn_mun_J_per_T / H_JS;
  return hz_m3 * 1e30 / 1e6;
}

struct PairDensities {
  std::vector<double> rho_i;  // phi_i^2
  std::vector<double> rho_j;  // phi_j^2
  std::vector<double> cross;  // phi_i phi_j
};

PairDensities pair_densities(const OrbitalPair& p) {
  PairDensities d;
  const int n = p.phi_i.size();
  d.rho_i.resize(n);
  d.rho_j.resize(n);
  d.cross.resize(n);
  for (int k = 0; k < n; ++k) {
    d.rho_i[k] = p.phi_i.values[k] * p.phi_i.values[k];
    d.rho_j[k] = p.phi_j.values[k] * p.phi_j.values[k];
    d.cross[k] = p.phi_i.values[k] * p.phi_j.values[k];
  }
  return d;
}

// Lattice sum over ordered cell pairs of w1(r1) w2(r2) K_ab(r1-r2), same
// cell excluded. Direct O(N^6) evaluation with compensated summation.
void direct_pair_sum(const ScalarGrid3D& geom, const std::vector<double>& w1,
                     const std::vector<double>& w2, Kahan acc[6]) {
  const int nx = geom.dims[0], ny = geom.dims[1], nz = geom.dims[2];
  double k[6];
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy)
      for (int iz = 0; iz < nz; ++iz) {
        const double a = w1[geom.index(ix, iy, iz)];
        if (a == 0.0) continue;
        for (int jx = 0; jx < nx; ++jx)
          for (int jy = 0; jy < ny; ++jy)
            for (int jz = 0; jz < nz; ++jz) {
              if (ix == jx && iy == jy && iz == jz) continue;
              const double b = w2[geom.index(jx, jy, jz)];
              if (b == 0.0) continue;
              const Eigen::Vector3d r((ix - jx) * geom.spacing_A.x(),
                                      (iy - jy) * geom.spacing_A.y(),
                                      (iz - jz) * geom.spacing_A.z());
              zfs_kernel(r, k);
              const double ab = a * b;
              for (int c = 0; c < 6; ++c) acc[c].add(ab * k[c]);
            }
      }
}

// Zero-padded FFT machinery shared by all pairs on one grid geometry.
struct ConvolutionBox {
  std::array<int, 3> n;   // source dims
  std::array<int, 3> m;   // padded dims, 2n
  int mzc = 0;            // complex z extent
  std::size_t real_size = 0, cplx_size = 0;
  std::vector<std::vector<std::complex<double>>> kernel_hat;  // 6 components

  explicit ConvolutionBox(const ScalarGrid3D& geom) {
    n = geom.dims;
    for (int a = 0; a < 3; ++a) m[a] = 2 * n[a];
    mzc = m[2] / 2 + 1;
    real_size = static_cast<std::size_t>(m[0]) * m[1] * m[2];
    cplx_size = static_cast<std::size_t>(m[0]) * m[1] * mzc;
    kernel_hat.resize(6);

    std::vector<double> k_real(real_size);
    double k[6];
    for (int c = 0; c < 6; ++c) {
      for (int mx = 0; mx < m[0]; ++mx) {
        const int dx = mx >= n[0] ? mx - m[0] : mx;
        for (int my = 0; my < m[1]; ++my) {
          const int dy = my >= n[1] ? my - m[1] : my;
          for (int mz = 0; mz < m[2]; ++mz) {
            const int dz = mz >= n[2] ? mz - m[2] : mz;
            double v = 0.0;
            if (dx != 0 || dy != 0 || dz != 0) {
              const Eigen::Vector3d r(dx * geom.spacing_A.x(),
                                      dy * geom.spacing_A.y(),
                                      dz * geom.spacing_A.z());
              zfs_kernel(r, k);
              v = k[c];
            }
            k_real[(static_cast<std::size_t>(mx) * m[1] + my) * m[2] + mz] = v;
          }
        }
      }
      kernel_hat[c] = forward(k_real);
    }
  }

  std::vector<std::complex<double>> forward(std::vector<double>& in) const {
    std::vector<std::complex<double>> out(cplx_size);
    fftw_plan plan = fftw_plan_dft_r2c_3d(
        m[0], m[1], m[2], in.data(),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
  }

  std::vector<std::complex<double>> forward_padded(
      const std::vector<double>& vals) const {
    std::vector<double> padded(real_size, 0.0);
    for (int ix = 0; ix < n[0]; ++ix)
      for (int iy = 0; iy < n[1]; ++iy)
        for (int iz = 0; iz < n[2]; ++iz) {
          padded[(static_cast<std::size_t>(ix) * m[1] + iy) * m[2] + iz] =
              vals[(static_cast<std::size_t>(ix) * n[1] + iy) * n[2] + iz];
        }
    return forward(padded);
  }

  // sum_cells w1 . (K_c * w2) from the spectra, one value per component.
  double convolve_dot(int component,
                      const std::vector<std::complex<double>>& rho_hat,
                      const std::vector<double>& w1) const {
    std::vector<std::complex<double>> prod(cplx_size);
    for (std::size_t i = 0; i < cplx_size; ++i) {
      prod[i] = kernel_hat[component][i] * rho_hat[i];
    }
    std::vector<double> conv(real_size);
    fftw_plan plan = fftw_plan_dft_c2r_3d(
        m[0], m[1], m[2], reinterpret_cast<fftw_complex*>(prod.data()),
        conv.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const double norm = 1.0 / static_cast<double>(real_size);
    Kahan acc;
    for (int ix = 0; ix < n[0]; ++ix)
      for (int iy = 0; iy < n[1]; ++iy)
        for (int iz = 0; iz < n[2]; ++iz) {
          const double a =
              w1[(static_cast<std::size_t>(ix) * n[1] + iy) * n[2] + iz];
          if (a == 0.0) continue;
          acc.add(a * norm *
                  conv[(static_cast<std::size_t>(ix) * m[1] + iy) * m[2] + iz]);
        }
    return acc.sum;
  }
};

// Catmull-Rom weights for fractional position t in [0, 1].
void cubic_weights(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

double tricubic(const ScalarGrid3D& g, const Eigen::Vector3d& pos) {
  double w[3][4];
  int base[3];
  for (int a = 0; a < 3; ++a) {
    const double t = (pos(a) - g.origin_A(a)) / g.spacing_A(a);
    double fl = std::floor(t);
    base[a] = static_cast<int>(fl) - 1;
    cubic_weights(t - fl, w[a]);
  }
  const auto clamp = [](int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); };
  double acc = 0.0;
  for (int ix = 0; ix < 4; ++ix)
    for (int iy = 0; iy < 4; ++iy)
      for (int iz = 0; iz < 4; ++iz) {
        acc += w[0][ix] * w[1][iy] * w[2][iz] *
               g.at(clamp(base[0] + ix, g.dims[0]),
                    clamp(base[1] + iy, g.dims[1]),
                    clamp(base[2] + iz, g.dims[2]));
      }
  return acc;
}

double boundary_mass(const ScalarGrid3D& g) {
  Kahan acc;
  for (int ix = 0; ix < g.dims[0]; ++ix)
    for (int iy = 0; iy < g.dims[1]; ++iy)
      for (int iz = 0; iz < g.dims[2]; ++iz) {
        const bool edge = ix == 0 || iy == 0 || iz == 0 ||
                          ix == g.dims[0] - 1 || iy == g.dims[1] - 1 ||
                          iz == g.dims[2] - 1;
        if (edge) acc.add(std::abs(g.at(ix, iy, iz)));
      }
  return acc.sum * g.voxel_A3();
}

}  // namespace

double ScalarGrid3D::integral() const {
  Kahan acc;
  for (double v : values) acc.add(v);
  return acc.sum * voxel_A3();
}

double ScalarGrid3D::l2_norm() const {
  Kahan acc;
  for (double v : values) acc.add(v * v);
  return std::sqrt(acc.sum * voxel_A3());
}

ScalarGrid3D make_grid(const Eigen::Vector3d& origin_A,
                       const Eigen::Vector3d& spacing_A,
                       const std::array<int, 3>& dims) {
  if (spacing_A.minCoeff() <= 0.0 || dims[0] < 2 || dims[1] < 2 || dims[2] < 2) {
    throw std::invalid_argument("grid: spacing must be positive, dims >= 2");
  }
  ScalarGrid3D g;
  g.origin_A = origin_A;
  g.spacing_A = spacing_A;
  g.dims = dims;
  g.values.assign(static_cast<std::size_t>(g.size()), 0.0);
  return g;
}

ScalarGrid3D make_cubic_grid(double half_extent_A, int n) {
  if (half_extent_A <= 0.0 || n < 2) {
    throw std::invalid_argument("grid: bad cubic box");
  }
  const double step = 2.0 * half_extent_A / (n - 1);
  return make_grid(Eigen::Vector3d::Constant(-half_extent_A),
                   Eigen::Vector3d::Constant(step), {n, n, n});
}

void add_gaussian_amplitude(ScalarGrid3D& g, const Eigen::Vector3d& center_A,
                            double width_A, double scale) {
  if (width_A <= 0.0) throw std::invalid_argument("gaussian: width > 0");
  const double norm = std::pow(M_PI, -0.75) * std::pow(width_A, -1.5);
  for (int ix = 0; ix < g.dims[0]; ++ix)
    for (int iy = 0; iy < g.dims[1]; ++iy)
      for (int iz = 0; iz < g.dims[2]; ++iz) {
        const double d2 = (g.position(ix, iy, iz) - center_A).squaredNorm();
        g.at(ix, iy, iz) +=
            scale * norm * std::exp(-0.5 * d2 / (width_A * width_A));
      }
}

void add_gaussian_density(ScalarGrid3D& g, const Eigen::Vector3d& center_A,
                          double width_A, double electrons) {
  if (width_A <= 0.0) throw std::invalid_argument("gaussian: width > 0");
  const double norm =
      electrons / (std::pow(M_PI, 1.5) * std::pow(width_A, 3.0));
  for (int ix = 0; ix < g.dims[0]; ++ix)
    for (int iy = 0; iy < g.dims[1]; ++iy)
      for (int iz = 0; iz < g.dims[2]; ++iz) {
        const double d2 = (g.position(ix, iy, iz) - center_A).squaredNorm();
        g.at(ix, iy, iz) += norm * std::exp(-d2 / (width_A * width_A));
      }
}

ScalarGrid3D read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("grid: cannot open " + path);
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "nvgrid" || version != 1) {
    throw std::runtime_error("grid: bad header in " + path);
  }
  ScalarGrid3D g;
  std::string key;
  in >> key >> g.origin_A.x() >> g.origin_A.y() >> g.origin_A.z();
  if (key != "origin") throw std::runtime_error("grid: expected origin line");
  in >> key >> g.spacing_A.x() >> g.spacing_A.y() >> g.spacing_A.z();
  if (key != "spacing") throw std::runtime_error("grid: expected spacing line");
  in >> key >> g.dims[0] >> g.dims[1] >> g.dims[2];
  if (key != "dims") throw std::runtime_error("grid: expected dims line");
  if (g.spacing_A.minCoeff() <= 0.0 || g.size() <= 0) {
    throw std::runtime_error("grid: invalid geometry in " + path);
  }
  g.values.resize(static_cast<std::size_t>(g.size()));
  for (double& v : g.values) {
    if (!(in >> v)) throw std::runtime_error("grid: truncated values");
  }
  return g;
}

void write_grid(const ScalarGrid3D& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("grid: cannot write " + path);
  out.precision(17);
  out << "nvgrid 1\n";
  out << "origin " << g.origin_A.x() << ' ' << g.origin_A.y() << ' '
      << g.origin_A.z() << '\n';
  out << "spacing " << g.spacing_A.x() << ' ' << g.spacing_A.y() << ' '
      << g.spacing_A.z() << '\n';
  out << "dims " << g.dims[0] << ' ' << g.dims[1] << ' ' << g.dims[2] << '\n';
  for (double v : g.values) out << v << '\n';
}

ZfsResult zfs_tensor(const std::vector<OrbitalPair>& pairs, double spin,
                     ZfsMethod method) {
  if (pairs.empty()) throw std::invalid_argument("zfs: no orbital pairs");
  const double denom = spin * (2.0 * spin - 1.0);
  if (std::abs(denom) < 1e-9) {
    throw std::invalid_argument("zfs: prefactor singular at this spin");
  }
  const ScalarGrid3D& geom = pairs.front().phi_i;
  for (const auto& p : pairs) {
    if (!commensurate(p.phi_i, geom) || !commensurate(p.phi_j, geom)) {
      throw std::invalid_argument("zfs: grids not commensurate");
    }
    if (std::abs(p.phi_i.l2_norm() - 1.0) > 1e-3 ||
        std::abs(p.phi_j.l2_norm() - 1.0) > 1e-3) {
      throw std::invalid_argument("zfs: orbitals must be normalized");
    }
    if (p.spin_sign != 1 && p.spin_sign != -1) {
      throw std::invalid_argument("zfs: spin sign must be +-1");
    }
  }

  const double dv = geom.voxel_A3();
  // Ordered-pair convention: each listed pair enters as both (i, j) and
  // (j, i), which the symmetric kernel folds into a factor 2.
  const double pref = 0.5 * zfs_scale_MHz_A3() / denom * dv * dv * 2.0;

  double comps[6] = {0, 0, 0, 0, 0, 0};
  if (method == ZfsMethod::Direct) {
    for (const auto& p : pairs) {
      const PairDensities d = pair_densities(p);
      Kahan direct[6], exch[6];
      direct_pair_sum(geom, d.rho_i, d.rho_j, direct);
      direct_pair_sum(geom, d.cross, d.cross, exch);
      for (int c = 0; c < 6; ++c) {
        comps[c] += p.spin_sign * (direct[c].sum - exch[c].sum);
      }
    }
  } else {
    const ConvolutionBox box(geom);
    for (const auto& p : pairs) {
      const PairDensities d = pair_densities(p);
      const auto rho_j_hat = box.forward_padded(d.rho_j);
      const auto cross_hat = box.forward_padded(d.cross);
      for (int c = 0; c < 6; ++c) {
        const double direct = box.convolve_dot(c, rho_j_hat, d.rho_i);
        const double exch = box.convolve_dot(c, cross_hat, d.cross);
        comps[c] += p.spin_sign * (direct - exch);
      }
    }
  }
  for (double& c : comps) c *= pref;

  ZfsResult res;
  res.tensor_MHz = assemble_symmetric(comps);
  const double scale = res.tensor_MHz.norm();
  if (scale > 0.0 && std::abs(res.tensor_MHz.trace()) > 1e-6 * scale) {
    throw std::logic_error("zfs: tensor lost tracelessness");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(res.tensor_MHz);
  int lead = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(lead))) {
      lead = i;
    }
  }
  res.d_MHz = 1.5 * es.eigenvalues()(lead);
  res.axis = es.eigenvectors().col(lead);
  double rest[2];
  int k = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != lead) rest[k++] = es.eigenvalues()(i);
  }
  res.e_MHz = 0.5 * std::abs(rest[0] - rest[1]);
  return res;
}

HyperfineResult hyperfine_tensor(const ScalarGrid3D& spin_density,
                                 const NucleusSite& nucleus, double spin) {
  if (spin <= 0.0) throw std::invalid_argument("hyperfine: spin must be > 0");
  const ScalarGrid3D& g = spin_density;
  const Eigen::Vector3d upper =
      g.origin_A + (Eigen::Vector3d(g.dims[0] - 1, g.dims[1] - 1, g.dims[2] - 1)
                        .cwiseProduct(g.spacing_A));
  for (int a = 0; a < 3; ++a) {
    if (nucleus.position_A(a) < g.origin_A(a) ||
        nucleus.position_A(a) > upper(a)) {
      throw std::invalid_argument("hyperfine: nucleus outside grid");
    }
  }

  HyperfineResult res;
  double total = 0.0;
  for (double v : g.values) total += std::abs(v);
  total *= g.voxel_A3();
  if (total == 0.0) return res;
  if (boundary_mass(g) > 1e-3 * total) {
    throw std::invalid_argument("hyperfine: density not contained in grid");
  }

  const double n_at_nucleus_A3 = tricubic(g, nucleus.position_A);
  res.contact_MHz = 2.0 * MU0_SI / 3.0 * G_FREE * MUB_J_PER_T *
                    nucleus.gn_mun_J_per_T * (n_at_nucleus_A3 * 1e30) / spin /
                    H_JS / 1e6;

  const double scale = dipole_scale_MHz_A3(nucleus.gn_mun_J_per_T) / spin;
  const double core2 = 0.25 * g.spacing_A.minCoeff() * g.spacing_A.minCoeff();
  Kahan acc[6];
  double k[6];
  for (int ix = 0; ix < g.dims[0]; ++ix)
    for (int iy = 0; iy < g.dims[1]; ++iy)
      for (int iz = 0; iz < g.dims[2]; ++iz) {
        const double w = g.at(ix, iy, iz);
        if (w == 0.0) continue;
        const Eigen::Vector3d u = g.position(ix, iy, iz) - nucleus.position_A;
        if (u.squaredNorm() < core2) continue;
        zfs_kernel(u, k);
        // hyperfine kernel is (3 r_a r_b - r^2 d_ab)/r^5, the negative
        for (int c = 0; c < 6; ++c) acc[c].add(-w * k[c]);
      }
  double comps[6];
  for (int c = 0; c < 6; ++c) comps[c] = scale * g.voxel_A3() * acc[c].sum;
  res.dipolar_MHz = assemble_symmetric(comps);
  res.tensor_MHz =
      res.contact_MHz * Eigen::Matrix3d::Identity() + res.dipolar_MHz;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(res.dipolar_MHz);
  const Eigen::Vector3d ev = es.eigenvalues();
  int unique = 0;
  double best = std::abs(ev(1) - ev(2));
  double pair_gap = best;
  for (int i = 1; i < 3; ++i) {
    const double gap = std::abs(ev((i + 1) % 3) - ev((i + 2) % 3));
    if (gap < pair_gap) {
      pair_gap = gap;
      unique = i;
    }
  }
  const double span = std::max(std::abs(ev(unique)), 1e-12);
  if (pair_gap <= 0.01 * span || res.dipolar_MHz.norm() < 1e-12) {
    res.axial = true;
    const double b = 0.5 * ev(unique);
    res.a_parallel_MHz = res.contact_MHz + 2.0 * b;
    res.a_perp_MHz = res.contact_MHz - b;
  }
  return res;
}

Eigen::Matrix3d point_dipole_hyperfine(const Eigen::Vector3d& r_A,
                                       double gn_mun_J_per_T) {
  const double d = r_A.norm();
  if (d < 1e-12) throw std::invalid_argument("point dipole: r must be nonzero");
  const Eigen::Vector3d u = r_A / d;
  return dipole_scale_MHz_A3(gn_mun_J_per_T) / (d * d * d) *
         (3.0 * u * u.transpose() - Eigen::Matrix3d::Identity());
}

double quadrupole_coupling(double v_zz_V_per_A2, double q_barn) {
  const double q_m2 = q_barn * 1e-28;
  const double v_zz_SI = v_zz_V_per_A2 * 1e20;
  return 3.0 * E_CHARGE_C * q_m2 * v_zz_SI / (4.0 * H_JS) / 1e6;
}

}  // namespace nv
