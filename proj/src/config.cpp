#include "nv/config.hpp"

#include <cstdint>
#include <cstdio>

#include "nv/presets.hpp"

namespace nv {

using nlohmann::json;

namespace {

json modes_json(const std::vector<PhononMode>& modes) {
  json arr = json::array();
  for (const auto& m : modes) {
    arr.push_back({{"hbar_omega_meV", m.hbar_omega_meV},
                   {"huang_rhys", m.huang_rhys},
                   {"symmetry", m.symmetry == ModeSymmetry::A1 ? "a1" : "e"}});
  }
  return arr;
}

json djt_json(const DJTParams& p) {
  return {{"e_jt_meV", p.e_jt_meV},
          {"delta_jt_meV", p.delta_jt_meV},
          {"hbar_omega_meV", p.hbar_omega_meV},
          {"n_max", p.n_max}};
}

json pjt_json(const PJTParams& p) {
  return {{"gap_meV", p.gap_meV},
          {"pjt_coupling_meV", p.pjt_coupling_meV},
          {"djt_coupling_meV", p.djt_coupling_meV},
          {"hbar_omega_meV", p.hbar_omega_meV},
          {"mixing", p.mixing},
          {"n_max", p.n_max}};
}

json pump_json(const LevelScheme& s) {
  return {{"pump_MHz", s.pump_MHz},
          {"radiative_MHz", s.radiative_MHz},
          {"isc_e0_MHz", s.isc_e0_MHz},
          {"isc_e1_MHz", s.isc_e1_MHz},
          {"singlet_internal_MHz", s.singlet_internal_MHz},
          {"shelf_z_MHz", s.shelf_z_MHz},
          {"shelf_perp_MHz", s.shelf_perp_MHz},
          {"mw_mixing_MHz", s.mw_mixing_MHz},
          {"ionization_scale", s.ionization_scale},
          {"auger_recombination_ns", s.auger_recombination_ns},
          {"direct_recombination_ns", s.direct_recombination_ns}};
}

json thermo_json(const presets::ThermoPreset& t) {
  json species = json::array();
  for (const auto& d : t.species) {
    json states = json::array();
    for (const auto& s : d.states) {
      states.push_back({{"q", s.q},
                        {"total_energy_eV", s.total_energy_eV},
                        {"correction_eV", s.correction_eV}});
    }
    json stoich = json::object();
    for (const auto& [atom, count] : d.stoichiometry) stoich[atom] = count;
    species.push_back({{"name", d.name},
                       {"site_density_cm3", d.site_density_cm3},
                       {"degeneracy", d.degeneracy},
                       {"stoichiometry", stoich},
                       {"states", states}});
  }
  json mu = json::object();
  for (const auto& [atom, val] : t.mu) mu[atom] = val;
  return {{"species", species},
          {"host",
           {{"gap_eV", t.host.gap_eV},
            {"donor_cm3", t.host.donor_cm3},
            {"acceptor_cm3", t.host.acceptor_cm3},
            {"n_c_cm3", t.host.n_c_cm3},
            {"n_v_cm3", t.host.n_v_cm3}}},
          {"mu", mu},
          {"temperature_K", 1100.0},
          {"scan_points", 55}};
}

json odmr_defaults() {
  const GroundStateParams g = presets::ground();
  const Nucleus n = Nucleus::n14();
  return {{"ground",
           {{"d_gs_MHz", g.d_gs_MHz},
            {"with_n14", false},
            {"a_par_MHz", n.a_MHz(2, 2)},
            {"a_perp_MHz", n.a_MHz(0, 0)},
            {"quadrupole_MHz", n.cq_MHz}}},
          {"field",
           {{"b_min_mT", 0.0},
            {"b_max_mT", 0.0},
            {"b_points", 1},
            {"b_axis", "z"},
            {"e_x_V_per_cm", 0.0},
            {"e_y_V_per_cm", 0.0},
            {"e_z_V_per_cm", 0.0}}},
          {"stress", {{"gpa", 0.0}, {"axis", "001"}}},
          {"output", {{"min_weight", 1e-4}}}};
}

json ple_defaults() {
  const ExcitedStateParams p = presets::excited();
  return {{"excited",
           {{"lambda_z_MHz", p.lambda_z_MHz},
            {"d_es_MHz", p.d_es_MHz},
            {"d_a1a2_MHz", p.d_a1a2_MHz},
            {"d_e12exy_MHz", p.d_e12exy_MHz},
            {"t_K", 0.0}}},
          {"strain",
           {{"exx_minus_eyy_MHz", 0.0},
            {"exy_MHz", 0.0},
            {"exz_MHz", 0.0},
            {"eyz_MHz", 0.0},
            {"ezz_MHz", 0.0}}},
          {"efield",
           {{"x_MV_per_m", 0.0}, {"y_MV_per_m", 0.0}, {"z_MV_per_m", 0.0}}}};
}

json vibronic_defaults() {
  return {{"djt", djt_json(presets::triplet_djt())},
          {"output", {{"levels", 8}}}};
}

json pl_defaults() {
  return {{"zpl_eV", presets::ZPL_EV},
          {"sigma_meV", presets::emission_sigma_meV()},
          {"modes", modes_json(presets::emission_modes())},
          {"photon_cubed", true},
          {"lifetime",
           {{"n_refractive", presets::REFRACTIVE_INDEX},
            {"tau_ns", presets::TRIPLET_LIFETIME_NS}}},
          {"absorption", {{"enabled", false}, {"policy", "mirror"}}}};
}

json isc_defaults() {
  const IscInputs upper = presets::isc_upper();
  const IscInputs lower = presets::isc_lower();
  return {{"djt", djt_json(presets::triplet_djt())},
          {"pjt", pjt_json(presets::singlet_pjt())},
          {"spectral_upper",
           {{"modes", modes_json(presets::isc_modes())},
            {"sigma_meV", presets::isc_sigma_meV()}}},
          {"spectral_lower",
           {{"modes", modes_json(presets::isc_lower_modes())},
            {"sigma_meV", presets::isc_sigma_meV()}}},
          {"rates",
           {{"lambda_perp_MHz", upper.lambda_perp_MHz},
            {"c_squared", lower.c_squared},
            {"gap_upper_meV", upper.gap_upper_meV},
            {"gap_lower_meV", lower.gap_lower_meV},
            {"tau0_ns", presets::SHELF_LIFETIME_0K_NS},
            {"perp_over_z", presets::LOWER_PERP_OVER_Z}}},
          {"temperature", {{"min_K", 0.0}, {"max_K", 300.0}, {"points", 7}}}};
}

json pump_defaults() {
  return {{"rates", pump_json(presets::pump())},
          {"readout",
           {{"window_ns", 300.0}, {"transient_ns", 1000.0}, {"points", 400}}}};
}

json zfs_defaults() {
  // Lobe width must stay a few grid steps wide or the sampled orbitals fail
  // their normalization guard.
  return {{"grid", {{"half_extent_A", 3.0}, {"points", 41}}},
          {"lobes",
           json::array({{{"x_A", 0.0}, {"y_A", 0.0}, {"z_A", 1.0}, {"width_A", 0.35}},
                        {{"x_A", 0.0}, {"y_A", 0.0}, {"z_A", -1.0}, {"width_A", 0.35}}})},
          {"spin", 1.0},
          {"method", "fft"}};
}

json hyperfine_defaults() {
  return {{"grid", {{"half_extent_A", 4.0}, {"points", 41}}},
          {"density",
           json::array({{{"x_A", 0.0},
                         {"y_A", 0.0},
                         {"z_A", 1.6},
                         {"width_A", 0.3},
                         {"electrons", 2.0}}})},
          {"nucleus",
           {{"x_A", 0.0},
            {"y_A", 0.0},
            {"z_A", 0.0},
            {"gn_mun_J_per_T", 7.0941e-27}}},
          {"spin", 1.0}};
}

json thermo_defaults() { return thermo_json(presets::thermo()); }

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {
      "odmr", "ple", "vibronic", "pl", "isc",
      "pump", "zfs", "hyperfine", "thermo"};
  return cmds;
}

const std::vector<std::string>& known_presets() {
  static const std::vector<std::string> names = {
      "paper-ground", "paper-excited", "paper-djt",
      "paper-singlet", "paper-pump",   "paper-pl",
      "paper-thermo",  "paper-zfs",    "paper-hyperfine"};
  return names;
}

json command_defaults(const std::string& command) {
  if (command == "odmr") return odmr_defaults();
  if (command == "ple") return ple_defaults();
  if (command == "vibronic") return vibronic_defaults();
  if (command == "pl") return pl_defaults();
  if (command == "isc") return isc_defaults();
  if (command == "pump") return pump_defaults();
  if (command == "zfs") return zfs_defaults();
  if (command == "hyperfine") return hyperfine_defaults();
  if (command == "thermo") return thermo_defaults();
  throw ConfigError("unknown command: " + command);
}

json preset_overlay(const std::string& preset, const std::string& command) {
  json overlay;
  if (preset == "paper-ground") {
    json ground = odmr_defaults().at("ground");
    ground["with_n14"] = true;
    overlay = {{"ground", ground}};
  } else if (preset == "paper-excited") {
    overlay = {{"excited", ple_defaults().at("excited")}};
  } else if (preset == "paper-djt") {
    overlay = {{"djt", djt_json(presets::triplet_djt())}};
  } else if (preset == "paper-singlet") {
    overlay = {{"pjt", pjt_json(presets::singlet_pjt())}};
  } else if (preset == "paper-pump") {
    overlay = {{"rates", pump_json(presets::pump())}};
  } else if (preset == "paper-pl") {
    overlay = {{"modes", modes_json(presets::emission_modes())},
               {"sigma_meV", presets::emission_sigma_meV()}};
  } else if (preset == "paper-thermo") {
    overlay = thermo_json(presets::thermo());
  } else if (preset == "paper-zfs") {
    overlay = zfs_defaults();
  } else if (preset == "paper-hyperfine") {
    overlay = hyperfine_defaults();
  } else {
    std::string names;
    for (const auto& n : known_presets()) names += " " + n;
    throw ConfigError("unknown preset: " + preset + " (known:" + names + ")");
  }
  validate_params(overlay, command_defaults(command), "");
  return overlay;
}

namespace {

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return true;
  if (a.is_string() && b.is_string()) return true;
  if (a.is_boolean() && b.is_boolean()) return true;
  if (a.is_array() && b.is_array()) return true;
  if (a.is_object() && b.is_object()) return true;
  return false;
}

void merge_overlay(json& base, const json& overlay) {
  for (const auto& [key, val] : overlay.items()) {
    if (val.is_object() && base.contains(key) && base.at(key).is_object()) {
      merge_overlay(base[key], val);
    } else {
      base[key] = val;
    }
  }
}

}  // namespace

void validate_params(const json& user, const json& schema,
                     const std::string& path) {
  if (!user.is_object()) {
    throw ConfigError("expected object at '" + (path.empty() ? "." : path) +
                      "'");
  }
  for (const auto& [key, val] : user.items()) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!schema.contains(key)) {
      throw ConfigError("unknown key: " + here);
    }
    const json& ref = schema.at(key);
    if (!same_kind(val, ref)) {
      throw ConfigError("type mismatch at: " + here);
    }
    if (ref.is_object()) {
      validate_params(val, ref, here);
    } else if (ref.is_array() && !ref.empty() && ref.at(0).is_object()) {
      for (std::size_t i = 0; i < val.size(); ++i) {
        if (!val.at(i).is_object()) {
          throw ConfigError("type mismatch at: " + here + "[" +
                            std::to_string(i) + "]");
        }
        validate_params(val.at(i), ref.at(0),
                        here + "[" + std::to_string(i) + "]");
      }
    }
  }
}

namespace {

void apply_set(json& params, const json& schema, const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override needs key=value: " + entry);
  }
  const std::string dot_path = entry.substr(0, eq);
  const std::string value = entry.substr(eq + 1);

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = dot_path.find('.', start);
    if (dot == std::string::npos) {
      parts.push_back(dot_path.substr(start));
      break;
    }
    parts.push_back(dot_path.substr(start, dot - start));
    start = dot + 1;
  }

  const json* ref = &schema;
  json* node = &params;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty() || !ref->is_object() || !ref->contains(parts[i])) {
      throw ConfigError("unknown key: " + dot_path);
    }
    ref = &ref->at(parts[i]);
    node = &(*node)[parts[i]];
    if (i + 1 < parts.size() && !ref->is_object()) {
      throw ConfigError("unknown key: " + dot_path);
    }
  }
  if (ref->is_object() || ref->is_array()) {
    throw ConfigError("cannot set a non-scalar key: " + dot_path);
  }

  try {
    if (ref->is_number_integer()) {
      std::size_t used = 0;
      const long long v = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      *node = v;
    } else if (ref->is_number()) {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      *node = v;
    } else if (ref->is_boolean()) {
      if (value == "true" || value == "1") {
        *node = true;
      } else if (value == "false" || value == "0") {
        *node = false;
      } else {
        throw std::invalid_argument(value);
      }
    } else {
      *node = value;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad value for " + dot_path + ": " + value);
  }
}

RunConfig finish(const std::string& command, const std::string& preset,
                 const json& user_params, const std::vector<std::string>& sets,
                 const std::string& out_path, const std::string& format) {
  RunConfig rc;
  rc.command = command;
  rc.params = command_defaults(command);
  if (!preset.empty()) {
    merge_overlay(rc.params, preset_overlay(preset, command));
  }
  if (!user_params.is_null()) {
    validate_params(user_params, rc.params, "");
    merge_overlay(rc.params, user_params);
  }
  for (const auto& s : sets) {
    apply_set(rc.params, command_defaults(command), s);
  }
  rc.out_path = out_path;
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be csv or json, got: " + format);
  }
  rc.format = format;
  return rc;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> allowed = {"command", "preset",
                                                   "params", "out", "format"};
  for (const auto& [key, val] : doc.items()) {
    (void)val;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == key;
    if (!ok) throw ConfigError("unknown key: " + key);
  }
  if (!doc.contains("command") || !doc.at("command").is_string()) {
    throw ConfigError("config needs a command name");
  }
  return finish(doc.at("command").get<std::string>(),
                doc.value("preset", std::string{}),
                doc.contains("params") ? doc.at("params") : json{},
                {}, doc.value("out", std::string{}),
                doc.value("format", std::string{"csv"}));
}

RunConfig make_run_config(const std::string& command, const std::string& preset,
                          const std::vector<std::string>& sets,
                          const std::string& out_path,
                          const std::string& format) {
  return finish(command, preset, json{}, sets, out_path, format);
}

std::string emit_config(const RunConfig& rc) {
  const json doc = {{"command", rc.command},
                    {"format", rc.format},
                    {"out", rc.out_path},
                    {"params", rc.params}};
  return doc.dump(2) + "\n";
}

std::string inputs_hash(const RunConfig& rc) {
  const std::string text = emit_config(rc);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nv
