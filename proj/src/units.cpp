#include "nv/units.hpp"

#include <array>

namespace nv {

namespace {

bool energy_like(Unit u) {
  return u == Unit::MHz || u == Unit::GHz || u == Unit::meV || u == Unit::eV ||
         u == Unit::K || u == Unit::mT;
}

double to_mhz_factor(Unit u, double g) {
  switch (u) {
    case Unit::MHz: return 1.0;
    case Unit::GHz: return 1e3;
    case Unit::meV: return MHZ_PER_MEV;
    case Unit::eV:  return MHZ_PER_MEV * 1e3;
    case Unit::K:   return KB_MHZ_PER_K;
    case Unit::mT:  return g * MUB_MHZ_PER_MT;
    case Unit::GPa: break;
  }
  throw std::invalid_argument("unit has no energy equivalent");
}

}  // namespace

double convert(double value, Unit from, Unit to, double g) {
  if (from == to) return value;
  if (!energy_like(from) || !energy_like(to)) {
    throw std::invalid_argument(std::string("cannot convert ") + unit_name(from) +
                                " to " + unit_name(to));
  }
  return value * to_mhz_factor(from, g) / to_mhz_factor(to, g);
}

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::MHz: return "MHz";
    case Unit::GHz: return "GHz";
    case Unit::meV: return "meV";
    case Unit::eV:  return "eV";
    case Unit::K:   return "K";
    case Unit::mT:  return "mT";
    case Unit::GPa: return "GPa";
  }
  return "?";
}

Unit unit_from_name(const std::string& name) {
  static const std::array<std::pair<const char*, Unit>, 7> table = {{
      {"MHz", Unit::MHz}, {"GHz", Unit::GHz}, {"meV", Unit::meV},
      {"eV", Unit::eV}, {"K", Unit::K}, {"mT", Unit::mT}, {"GPa", Unit::GPa},
  }};
  for (const auto& [n, u] : table) {
    if (name == n) return u;
  }
  throw std::invalid_argument("unknown unit name: " + name);
}

}  // namespace nv
