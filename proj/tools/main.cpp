#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nv/config.hpp"
#include "nv/excited.hpp"
#include "nv/grids.hpp"
#include "nv/ground.hpp"
#include "nv/lineshape.hpp"
#include "nv/presets.hpp"
#include "nv/pump.hpp"
#include "nv/rates.hpp"
#include "nv/singlets.hpp"
#include "nv/thermo.hpp"
#include "nv/units.hpp"
#include "nv/vibronic.hpp"

namespace {

using nlohmann::json;
using namespace nv;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10e", v);
  return buf;
}

// Routes result files to an output directory, or to stdout with file
// separators when no target is given.
class Emitter {
 public:
  explicit Emitter(const RunConfig& rc)
      : rc_(rc), hash_(inputs_hash(rc)), dir_(rc.out_path) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
    echo();
  }

  const std::string& hash() const { return hash_; }

  void csv(const std::string& name, const std::vector<std::string>& columns,
           const std::vector<std::vector<std::string>>& rows) {
    std::ofstream file;
    std::ostream& out = open(name + ".csv", file);
    out << "# command: " << rc_.command << "\n";
    out << "# inputs_hash: " << hash_ << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << row[i];
      }
      out << "\n";
    }
  }

  void summary(const std::string& name, json j) {
    j["command"] = rc_.command;
    j["inputs_hash"] = hash_;
    std::ofstream file;
    std::ostream& out = open(name + ".json", file);
    out << j.dump(2) << "\n";
  }

 private:
  void echo() {
    json doc = {{"inputs_hash", hash_},
                {"config", json::parse(emit_config(rc_))}};
    std::ofstream file;
    std::ostream& out = open("inputs.json", file);
    out << doc.dump(2) << "\n";
  }

  std::ostream& open(const std::string& filename, std::ofstream& file) {
    if (dir_.empty()) {
      std::cout << "## file: " << filename << "\n";
      return std::cout;
    }
    file.open(dir_ / filename);
    if (!file) {
      throw std::runtime_error("cannot write " + (dir_ / filename).string());
    }
    return file;
  }

  const RunConfig& rc_;
  std::string hash_;
  std::filesystem::path dir_;
  std::vector<std::ofstream> streams_;
};

Eigen::Vector3d axis_from_name(const std::string& name) {
  if (name == "z" || name == "111") return Eigen::Vector3d::UnitZ();
  if (name == "x") return Eigen::Vector3d::UnitX();
  if (name == "y") return Eigen::Vector3d::UnitY();
  if (name.size() == 3 &&
      name.find_first_not_of("01") == std::string::npos) {
    const Eigen::Vector3d cubic(name[0] - '0', name[1] - '0', name[2] - '0');
    return (nv_frame_rotation() * cubic).normalized();
  }
  throw ConfigError("unknown axis: " + name);
}

Eigen::Vector3d cubic_axis(const std::string& name) {
  if (name.size() != 3 || name.find_first_not_of("01") != std::string::npos) {
    throw ConfigError("unknown stress axis: " + name);
  }
  const Eigen::Vector3d v(name[0] - '0', name[1] - '0', name[2] - '0');
  if (v.norm() == 0.0) throw ConfigError("unknown stress axis: " + name);
  return v.normalized();
}

std::vector<OdmrLine> merged_lines(std::vector<OdmrLine> lines,
                                   double tol_MHz) {
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    return a.frequency_MHz < b.frequency_MHz;
  });
  std::vector<OdmrLine> out;
  for (const auto& l : lines) {
    if (!out.empty() &&
        l.frequency_MHz - out.back().frequency_MHz < tol_MHz) {
      OdmrLine& m = out.back();
      const double w = m.weight + l.weight;
      m.frequency_MHz =
          (m.frequency_MHz * m.weight + l.frequency_MHz * l.weight) / w;
      m.weight = w;
    } else {
      out.push_back(l);
    }
  }
  return out;
}

void run_odmr(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  GroundStateParams g;
  g.d_gs_MHz = p.at("ground").at("d_gs_MHz").get<double>();
  if (p.at("ground").at("with_n14").get<bool>()) {
    Nucleus n = Nucleus::n14();
    const double a_par = p.at("ground").at("a_par_MHz").get<double>();
    const double a_perp = p.at("ground").at("a_perp_MHz").get<double>();
    n.a_MHz = axial_tensor((a_par + 2.0 * a_perp) / 3.0, (a_par - a_perp) / 3.0);
    n.cq_MHz = p.at("ground").at("quadrupole_MHz").get<double>();
    g.nuclei = {n};
  }

  const json& f = p.at("field");
  const Eigen::Vector3d axis = axis_from_name(f.at("b_axis").get<std::string>());
  const int points = f.at("b_points").get<int>();
  if (points < 1) throw ConfigError("field.b_points must be >= 1");
  const double b0 = f.at("b_min_mT").get<double>();
  const double b1 = f.at("b_max_mT").get<double>();

  FieldConfig base;
  base.e_V_per_cm = Eigen::Vector3d(f.at("e_x_V_per_cm").get<double>(),
                                    f.at("e_y_V_per_cm").get<double>(),
                                    f.at("e_z_V_per_cm").get<double>());
  const double gpa = p.at("stress").at("gpa").get<double>();
  if (gpa != 0.0) {
    const Eigen::Vector3d n = cubic_axis(p.at("stress").at("axis").get<std::string>());
    base.stress_GPa = gpa * n * n.transpose();
    base.tensor_frame = Frame::Cubic;
  }
  const double min_weight = p.at("output").at("min_weight").get<double>();

  std::vector<std::vector<std::string>> rows;
  json first_point = json::array();
  for (int i = 0; i < points; ++i) {
    FieldConfig fc = base;
    const double b = points == 1 ? b0 : b0 + (b1 - b0) * i / (points - 1);
    fc.b_mT = b * axis;
    const auto h = build_ground_hamiltonian(g, fc);
    const auto lines = merged_lines(odmr_transitions(h, g, min_weight), 0.01);
    for (const auto& l : lines) {
      rows.push_back({fmt(b), fmt(l.frequency_MHz), fmt(l.weight)});
      if (i == 0) {
        first_point.push_back(
            {{"frequency_MHz", l.frequency_MHz}, {"weight", l.weight}});
      }
    }
  }
  em.csv("odmr_lines", {"b_mT", "frequency_MHz", "weight"}, rows);
  em.summary("odmr_summary", {{"lines_at_first_point", first_point},
                              {"d_gs_MHz", g.d_gs_MHz}});
}

void run_ple(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  ExcitedStateParams ep;
  ep.lambda_z_MHz = p.at("excited").at("lambda_z_MHz").get<double>();
  ep.d_es_MHz = p.at("excited").at("d_es_MHz").get<double>();
  ep.d_a1a2_MHz = p.at("excited").at("d_a1a2_MHz").get<double>();
  ep.d_e12exy_MHz = p.at("excited").at("d_e12exy_MHz").get<double>();

  const json& s = p.at("strain");
  Eigen::Matrix3d strain = Eigen::Matrix3d::Zero();
  const double v = s.at("exx_minus_eyy_MHz").get<double>();
  strain(0, 0) = v;
  strain(1, 1) = -v;
  strain(0, 1) = strain(1, 0) = s.at("exy_MHz").get<double>();
  strain(0, 2) = strain(2, 0) = s.at("exz_MHz").get<double>();
  strain(1, 2) = strain(2, 1) = s.at("eyz_MHz").get<double>();
  strain(2, 2) = s.at("ezz_MHz").get<double>();

  const json& e = p.at("efield");
  const Eigen::Vector3d efield(e.at("x_MV_per_m").get<double>(),
                               e.at("y_MV_per_m").get<double>(),
                               e.at("z_MV_per_m").get<double>());
  const double t_K = p.at("excited").at("t_K").get<double>();

  const auto h = build_excited_hamiltonian(ep, strain, efield, t_K);
  const auto lines = ple_lines(h, {0.0, 0.0, 1.0, 1.0, 0.0, 0.0});

  std::vector<std::vector<std::string>> rows;
  json offsets = json::array();
  for (const auto& l : lines) {
    rows.push_back({fmt(l.offset_MHz), fmt(l.intensity)});
    offsets.push_back(l.offset_MHz);
  }
  em.csv("ple_lines", {"offset_MHz", "intensity"}, rows);
  em.summary("ple_summary", {{"offsets_MHz", offsets}});
}

DJTParams djt_from_json(const json& j) {
  DJTParams p;
  p.e_jt_meV = j.at("e_jt_meV").get<double>();
  p.delta_jt_meV = j.at("delta_jt_meV").get<double>();
  p.hbar_omega_meV = j.at("hbar_omega_meV").get<double>();
  p.n_max = j.at("n_max").get<int>();
  return p;
}

void require_converged(const VibronicSolution& s) {
  if (!s.converged) {
    throw std::runtime_error("vibronic solve not converged at this n_max");
  }
}

void run_vibronic(const RunConfig& rc, Emitter& em) {
  const DJTParams p = djt_from_json(rc.params.at("djt"));
  const auto h = build_djt_hamiltonian(p);
  const VibronicSolution s = solve_vibronic(h, p);
  require_converged(s);
  const double ham_p = ham_factor(s);

  const int want = rc.params.at("output").at("levels").get<int>();
  std::vector<std::vector<std::string>> rows;
  const int n = std::min<int>(want, static_cast<int>(s.energies_meV.size()));
  for (int i = 0; i < n; ++i) {
    rows.push_back({std::to_string(i), fmt(s.energies_meV(i)),
                    vibronic_symmetry_name(s.labels[i]),
                    std::to_string(s.partner[i])});
  }
  em.csv("vibronic_levels", {"level", "energy_meV", "label", "partner"}, rows);

  const JtCouplings c = p.couplings();
  em.summary("vibronic_summary",
             {{"p", ham_p},
              {"axial_so_quenched_MHz", ham_p * 15780.0},
              {"linear_coupling_meV", c.linear_meV},
              {"quadratic_coupling_meV", c.quadratic_meV},
              {"ground_energy_meV", s.ground_energy_meV}});
}

std::vector<PhononMode> modes_from_json(const json& arr) {
  std::vector<PhononMode> modes;
  for (const auto& m : arr) {
    PhononMode mode;
    mode.hbar_omega_meV = m.at("hbar_omega_meV").get<double>();
    mode.huang_rhys = m.at("huang_rhys").get<double>();
    const std::string sym = m.at("symmetry").get<std::string>();
    if (sym == "a1") {
      mode.symmetry = ModeSymmetry::A1;
    } else if (sym == "e") {
      mode.symmetry = ModeSymmetry::E;
    } else {
      throw ConfigError("mode symmetry must be a1 or e, got: " + sym);
    }
    modes.push_back(mode);
  }
  return modes;
}

void run_pl(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  const auto modes = modes_from_json(p.at("modes"));
  const double sigma = p.at("sigma_meV").get<double>();
  const double zpl = p.at("zpl_eV").get<double>();
  const SpectralFunction f = spectral_function(modes, sigma);
  const Spectrum emis =
      emission_spectrum(zpl, f, p.at("photon_cubed").get<bool>());

  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < emis.energy_eV.size(); ++i) {
    rows.push_back({fmt(emis.energy_eV(i)), fmt(emis.density(i))});
  }
  em.csv("pl_emission", {"energy_eV", "density_per_eV"}, rows);

  if (p.at("absorption").at("enabled").get<bool>()) {
    std::vector<PhononMode> a1_modes;
    for (const auto& m : modes) {
      if (m.symmetry == ModeSymmetry::A1) a1_modes.push_back(m);
    }
    const std::string policy = p.at("absorption").at("policy").get<std::string>();
    const SidebandPolicy sp = policy == "mirror"
                                  ? SidebandPolicy::MirrorOfEmission
                                  : SidebandPolicy::SymmetricModesOnly;
    const SpectralFunction fa = a1_modes.empty() || sp == SidebandPolicy::MirrorOfEmission
                                    ? f
                                    : spectral_function(a1_modes, sigma);
    const Spectrum abs = absorption_spectrum(zpl, fa, f, sp);
    std::vector<std::vector<std::string>> arows;
    for (int i = 0; i < abs.energy_eV.size(); ++i) {
      arows.push_back({fmt(abs.energy_eV(i)), fmt(abs.density(i))});
    }
    em.csv("pl_absorption", {"energy_eV", "density_per_eV"}, arows);
  }

  const double s_total = total_huang_rhys(modes);
  const double n_refr = p.at("lifetime").at("n_refractive").get<double>();
  const double tau_ns = p.at("lifetime").at("tau_ns").get<double>();
  const double mu = dipole_from_lifetime(n_refr, zpl, tau_ns);
  em.summary("pl_summary",
             {{"s_total", s_total},
              {"zpl_fraction", debye_waller(s_total)},
              {"comb_zero_line_weight", f.zero_line_weight()},
              {"first_moment_meV", f.first_moment()},
              {"dipole_e_nm", mu},
              {"lifetime_roundtrip_ns", radiative_lifetime_ns(n_refr, zpl, mu)}});
}

PJTParams pjt_from_json(const json& j) {
  PJTParams p;
  p.gap_meV = j.at("gap_meV").get<double>();
  p.pjt_coupling_meV = j.at("pjt_coupling_meV").get<double>();
  p.djt_coupling_meV = j.at("djt_coupling_meV").get<double>();
  p.hbar_omega_meV = j.at("hbar_omega_meV").get<double>();
  p.mixing = j.at("mixing").get<double>();
  p.n_max = j.at("n_max").get<int>();
  return p;
}

void run_isc(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  const json& r = p.at("rates");

  auto branch_spectral = [&](const char* key) {
    return spectral_function(modes_from_json(p.at(key).at("modes")),
                             p.at(key).at("sigma_meV").get<double>());
  };

  // Triplet branch.
  const DJTParams djt = djt_from_json(p.at("djt"));
  const VibronicSolution ts = solve_vibronic(build_djt_hamiltonian(djt), djt);
  require_converged(ts);
  const TripletIscCoefficients tc = triplet_isc_coefficients(ts);
  IscInputs up;
  up.lambda_perp_MHz = r.at("lambda_perp_MHz").get<double>();
  up.gap_upper_meV = r.at("gap_upper_meV").get<double>();
  up.hbar_omega_e_meV = djt.hbar_omega_meV;
  up.f = branch_spectral("spectral_upper");
  const UpperRates upper = upper_branch_rates(up, tc);

  // Shelf branch.
  const PJTParams pjt = pjt_from_json(p.at("pjt"));
  const VibronicSolution ss = solve_pjt(pjt);
  require_converged(ss);
  const auto levels = singlet_isc_decomposition(ss, 160.0);
  IscInputs low;
  low.c_squared = r.at("c_squared").get<double>();
  low.gap_lower_meV = r.at("gap_lower_meV").get<double>();
  low.hbar_omega_e_meV = pjt.hbar_omega_meV;
  low.f = branch_spectral("spectral_lower");
  low.lambda_z_MHz = 100.0;
  low.lambda_perp_MHz = r.at("perp_over_z").get<double>() * low.lambda_z_MHz;
  low = calibrate_lambda_z(levels, low, r.at("tau0_ns").get<double>(),
                           r.at("perp_over_z").get<double>());

  const json& t = p.at("temperature");
  const int points = t.at("points").get<int>();
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < points; ++i) {
    const double t_K =
        points == 1 ? t.at("min_K").get<double>()
                    : t.at("min_K").get<double>() +
                          (t.at("max_K").get<double>() -
                           t.at("min_K").get<double>()) *
                              i / (points - 1);
    const ShelfLifetime life = singlet_lifetime_vs_T(levels, low, t_K);
    rows.push_back({fmt(t_K), fmt(life.tau_ns), fmt(life.ms0_share)});
  }
  em.csv("isc_lifetime", {"t_K", "tau_ns", "ms0_share"}, rows);

  const ShelfLifetime life0 = singlet_lifetime_vs_T(levels, low, 0.0);
  em.summary("isc_summary",
             {{"gamma_a1_MHz", upper.a1_MHz},
              {"gamma_e12_MHz", upper.e12_MHz},
              {"gamma_a2_MHz", upper.a2_MHz},
              {"a2_over_a1", upper.a2_MHz / upper.a1_MHz},
              {"lambda_z_calibrated_MHz", low.lambda_z_MHz},
              {"tau0_ns", life0.tau_ns},
              {"selectivity_ms0", life0.ms0_share}});
}

void run_pump(const RunConfig& rc, Emitter& em) {
  const json& r = rc.params.at("rates");
  LevelScheme s;
  s.pump_MHz = r.at("pump_MHz").get<double>();
  s.radiative_MHz = r.at("radiative_MHz").get<double>();
  s.isc_e0_MHz = r.at("isc_e0_MHz").get<double>();
  s.isc_e1_MHz = r.at("isc_e1_MHz").get<double>();
  s.singlet_internal_MHz = r.at("singlet_internal_MHz").get<double>();
  s.shelf_z_MHz = r.at("shelf_z_MHz").get<double>();
  s.shelf_perp_MHz = r.at("shelf_perp_MHz").get<double>();
  s.mw_mixing_MHz = r.at("mw_mixing_MHz").get<double>();
  s.ionization_scale = r.at("ionization_scale").get<double>();
  s.auger_recombination_ns = r.at("auger_recombination_ns").get<double>();
  s.direct_recombination_ns = r.at("direct_recombination_ns").get<double>();

  LevelScheme no_mw = s;
  no_mw.mw_mixing_MHz = 0.0;
  const Eigen::MatrixXd m = build_rate_matrix(no_mw);

  const json& ro = rc.params.at("readout");
  const int points = ro.at("points").get<int>();
  const double t_max = ro.at("transient_ns").get<double>();
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(points, 0.0, t_max);
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(PUMP_LEVELS);
  p0(LVL_G0) = p0(LVL_GP) = p0(LVL_GM) = 1.0 / 3.0;
  const Eigen::MatrixXd pops = transient(m, p0, t);
  const Eigen::VectorXd pl = pl_signal(pops, s.radiative_MHz);

  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < points; ++i) {
    std::vector<std::string> row = {fmt(t(i))};
    for (int k = 0; k < PUMP_LEVELS; ++k) row.push_back(fmt(pops(k, i)));
    row.push_back(fmt(pl(i)));
    rows.push_back(row);
  }
  em.csv("pump_transient",
         {"t_ns", "g0", "g_plus", "g_minus", "e0", "e_plus", "e_minus",
          "s_upper", "s_shelf", "pl_MHz"},
         rows);

  const Eigen::VectorXd steady = steady_state(m);
  const double ground =
      steady(LVL_G0) + steady(LVL_GP) + steady(LVL_GM);
  const double window = ro.at("window_ns").get<double>();
  json summary = {
      {"steady",
       {{"g0", steady(LVL_G0)},
        {"g_plus", steady(LVL_GP)},
        {"g_minus", steady(LVL_GM)},
        {"e0", steady(LVL_E0)},
        {"e_plus", steady(LVL_EP)},
        {"e_minus", steady(LVL_EM)},
        {"s_upper", steady(LVL_SA)},
        {"s_shelf", steady(LVL_SE)}}},
      {"ground_ms0_polarization", steady(LVL_G0) / ground},
      {"odmr_contrast", odmr_contrast(s, window)},
      {"readout_window_ns", window}};
  const PdmrResult pdmr = pdmr_observables(s);
  summary["pdmr"] = {{"photocurrent_MHz", pdmr.photocurrent_MHz},
                     {"contrast", pdmr.contrast},
                     {"auger_share", pdmr.auger_share}};
  em.summary("pump_summary", summary);
}

void run_zfs(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  const json& g = p.at("grid");
  const ScalarGrid3D base = make_cubic_grid(g.at("half_extent_A").get<double>(),
                                            g.at("points").get<int>());
  std::vector<ScalarGrid3D> orbitals;
  for (const auto& lobe : p.at("lobes")) {
    ScalarGrid3D orb = base;
    add_gaussian_amplitude(orb,
                           Eigen::Vector3d(lobe.at("x_A").get<double>(),
                                           lobe.at("y_A").get<double>(),
                                           lobe.at("z_A").get<double>()),
                           lobe.at("width_A").get<double>());
    orbitals.push_back(std::move(orb));
  }
  if (orbitals.size() < 2) throw ConfigError("zfs needs at least two lobes");
  std::vector<OrbitalPair> pairs;
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    for (std::size_t j = i + 1; j < orbitals.size(); ++j) {
      pairs.push_back({orbitals[i], orbitals[j], +1});
    }
  }
  const std::string method = p.at("method").get<std::string>();
  if (method != "fft" && method != "direct") {
    throw ConfigError("zfs method must be fft or direct");
  }
  const ZfsResult res = zfs_tensor(
      pairs, p.at("spin").get<double>(),
      method == "fft" ? ZfsMethod::Fft : ZfsMethod::Direct);

  json tensor = json::array();
  for (int i = 0; i < 3; ++i) {
    tensor.push_back({res.tensor_MHz(i, 0), res.tensor_MHz(i, 1),
                      res.tensor_MHz(i, 2)});
  }
  em.summary("zfs_summary",
             {{"tensor_MHz", tensor},
              {"d_MHz", res.d_MHz},
              {"e_MHz", res.e_MHz},
              {"axis", {res.axis.x(), res.axis.y(), res.axis.z()}}});
}

void run_hyperfine(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  const json& g = p.at("grid");
  ScalarGrid3D density = make_cubic_grid(g.at("half_extent_A").get<double>(),
                                         g.at("points").get<int>());
  for (const auto& blob : p.at("density")) {
    add_gaussian_density(density,
                         Eigen::Vector3d(blob.at("x_A").get<double>(),
                                         blob.at("y_A").get<double>(),
                                         blob.at("z_A").get<double>()),
                         blob.at("width_A").get<double>(),
                         blob.at("electrons").get<double>());
  }
  NucleusSite site;
  site.position_A = Eigen::Vector3d(p.at("nucleus").at("x_A").get<double>(),
                                    p.at("nucleus").at("y_A").get<double>(),
                                    p.at("nucleus").at("z_A").get<double>());
  site.gn_mun_J_per_T = p.at("nucleus").at("gn_mun_J_per_T").get<double>();
  const HyperfineResult res =
      hyperfine_tensor(density, site, p.at("spin").get<double>());

  json tensor = json::array();
  for (int i = 0; i < 3; ++i) {
    tensor.push_back({res.tensor_MHz(i, 0), res.tensor_MHz(i, 1),
                      res.tensor_MHz(i, 2)});
  }
  em.summary("hyperfine_summary", {{"contact_MHz", res.contact_MHz},
                                   {"tensor_MHz", tensor},
                                   {"axial", res.axial},
                                   {"a_parallel_MHz", res.a_parallel_MHz},
                                   {"a_perp_MHz", res.a_perp_MHz},
                                   {"contact_model", "valence-only"}});
}

void run_thermo(const RunConfig& rc, Emitter& em) {
  const json& p = rc.params;
  HostModel host;
  host.gap_eV = p.at("host").at("gap_eV").get<double>();
  host.donor_cm3 = p.at("host").at("donor_cm3").get<double>();
  host.acceptor_cm3 = p.at("host").at("acceptor_cm3").get<double>();
  host.n_c_cm3 = p.at("host").at("n_c_cm3").get<double>();
  host.n_v_cm3 = p.at("host").at("n_v_cm3").get<double>();

  ChemicalPotentials mu;
  for (const auto& [atom, val] : p.at("mu").items()) {
    mu[atom] = val.get<double>();
  }

  std::vector<DefectSpecies> species;
  for (const auto& sj : p.at("species")) {
    DefectSpecies d;
    d.name = sj.at("name").get<std::string>();
    d.site_density_cm3 = sj.at("site_density_cm3").get<double>();
    d.degeneracy = sj.at("degeneracy").get<double>();
    for (const auto& [atom, count] : sj.at("stoichiometry").items()) {
      d.stoichiometry[atom] = count.get<int>();
    }
    for (const auto& st : sj.at("states")) {
      d.states.push_back({st.at("q").get<int>(),
                          st.at("total_energy_eV").get<double>(),
                          st.at("correction_eV").get<double>()});
    }
    species.push_back(d);
  }

  const int points = p.at("scan_points").get<int>();
  std::vector<std::string> cols = {"fermi_eV"};
  for (const auto& d : species) {
    for (const auto& st : d.states) {
      cols.push_back(d.name + "_q" + std::to_string(st.q) + "_eV");
    }
  }
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < points; ++i) {
    const double ef = host.gap_eV * i / (points - 1);
    std::vector<std::string> row = {fmt(ef)};
    for (const auto& d : species) {
      for (const auto& st : d.states) {
        row.push_back(fmt(formation_energy(d, host, mu, st.q, ef)));
      }
    }
    rows.push_back(row);
  }
  em.csv("thermo_formation", cols, rows);

  const double t_K = p.at("temperature_K").get<double>();
  const FermiSolution sol = solve_fermi_level(species, host, mu, t_K);
  json conc = json::object();
  for (const auto& [name, qmap] : sol.concentrations_cm3) {
    json per = json::object();
    for (const auto& [q, n] : qmap) per["q" + std::to_string(q)] = n;
    conc[name] = per;
  }
  json summary = {{"fermi_eV", sol.fermi_eV},
                  {"residual_cm3", sol.residual_cm3},
                  {"temperature_K", t_K},
                  {"concentrations_cm3", conc}};

  const auto find = [&species](const std::string& name) -> const DefectSpecies* {
    for (const auto& d : species) {
      if (d.name == name) return &d;
    }
    return nullptr;
  };
  const DefectSpecies* v = find("V");
  const DefectSpecies* v2 = find("V2");
  const DefectSpecies* ns = find("Ns");
  const DefectSpecies* nvd = find("NV");
  if (v && v2) {
    summary["reaction_v_v_to_v2_eV"] =
        reaction_energy({{v2, 0, 0.0}}, {{v, 0, 0.0}, {v, 0, 0.0}}, host, mu);
  }
  if (v && ns && nvd) {
    summary["reaction_ns_v_to_nv_eV"] =
        reaction_energy({{nvd, 0, 0.0}}, {{ns, 0, 0.0}, {v, 0, 0.0}}, host, mu);
  }
  em.summary("thermo_summary", summary);
}

void dispatch(const RunConfig& rc) {
  Emitter em(rc);
  if (rc.command == "odmr") return run_odmr(rc, em);
  if (rc.command == "ple") return run_ple(rc, em);
  if (rc.command == "vibronic") return run_vibronic(rc, em);
  if (rc.command == "pl") return run_pl(rc, em);
  if (rc.command == "isc") return run_isc(rc, em);
  if (rc.command == "pump") return run_pump(rc, em);
  if (rc.command == "zfs") return run_zfs(rc, em);
  if (rc.command == "hyperfine") return run_hyperfine(rc, em);
  if (rc.command == "thermo") return run_thermo(rc, em);
  throw ConfigError("unknown command: " + rc.command);
}

struct CommonFlags {
  std::string preset;
  std::vector<std::string> sets;
  std::string out;
  std::string format = "csv";
  double b_mT = 0.0;
  bool b_given = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale magneto-optical model of the diamond NV center"};
  app.require_subcommand(1);

  std::map<std::string, CommonFlags> flags;
  const std::map<std::string, std::string> descriptions = {
      {"odmr", "ground-state spin resonance lines vs field, strain, stress"},
      {"ple", "excited-state fine-structure lines"},
      {"vibronic", "orbital-doublet vibronic levels and quenching factor"},
      {"pl", "phonon-sideband emission and absorption spectra"},
      {"isc", "intersystem-crossing rates and shelf lifetime vs temperature"},
      {"pump", "optical pump loop: transients, readout contrast"},
      {"zfs", "spin-spin zero-field-splitting tensor on a grid"},
      {"hyperfine", "hyperfine tensor from a model spin density"},
      {"thermo", "formation energies, concentrations, Fermi-level solve"}};

  for (const auto& name : nv::known_commands()) {
    auto* sub = app.add_subcommand(name, descriptions.at(name));
    CommonFlags& f = flags[name];
    sub->add_option("--preset,-p", f.preset, "named parameter preset");
    sub->add_option("--set,-s", f.sets, "dot-path override key=value");
    sub->add_option("--out,-o", f.out, "output directory");
    sub->add_option("--format,-f", f.format, "csv or json summaries")
        ->check(CLI::IsMember({"csv", "json"}));
    if (name == "odmr") {
      sub->add_option("--B", f.b_mT, "axial magnetic field in mT")
          ->each([&f](const std::string&) { f.b_given = true; });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  CommonFlags f = flags[name];
  if (f.b_given) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "field.b_min_mT=%.17g", f.b_mT);
    f.sets.push_back(buf);
    std::snprintf(buf, sizeof(buf), "field.b_max_mT=%.17g", f.b_mT);
    f.sets.push_back(buf);
  }

  try {
    const nv::RunConfig rc =
        nv::make_run_config(name, f.preset, f.sets, f.out, f.format);
    dispatch(rc);
    return 0;
  } catch (const nv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << name << " failed: " << e.what() << "\n";
    return 3;
  }
}
