#include "rydgate/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "rydgate/errors.hpp"

#ifndef RYDGATE_VERSION
#define RYDGATE_VERSION "0.0.0"
#endif

namespace rydgate {

namespace {

using constants::kAtomicMass;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Real parse_real(std::string_view key, const std::string& text) {
  if (text == "inf") return std::numeric_limits<Real>::infinity();
  Real v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty() || std::isnan(v)) {
    throw ConfigError("'" + std::string(key) + "': not a number: '" + text + "'");
  }
  return v;
}

long parse_int(std::string_view key, const std::string& text) {
  long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("'" + std::string(key) + "': not an integer: '" + text + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("'" + std::string(key) + "': expected true or false, got '" + text + "'");
}

// Comma-separated values, or start:stop:count for an evenly spaced grid.
std::vector<Real> parse_list(std::string_view key, const std::string& text) {
  std::vector<Real> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("'" + std::string(key) + "': expected start:stop:count");
    const Real a = parse_real(key, parts[0]), b = parse_real(key, parts[1]);
    const long n = parse_int(key, parts[2]);
    if (n < 1) throw ConfigError("'" + std::string(key) + "': count must be positive");
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * static_cast<Real>(i) / (n - 1));
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(parse_real(key, part));
  return out;
}

std::string fmt(Real v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt_list(const std::vector<Real>& values, Real scale = 1.0) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += fmt(values[i] / scale);
  }
  return s;
}

std::vector<Real> scaled(std::vector<Real> v, Real scale) {
  for (auto& x : v) x *= scale;
  return v;
}

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<bool(const ExperimentConfig&)> applies = [](const ExperimentConfig&) { return true; };
};

template <typename T>
T& detail_of(ExperimentConfig& c, std::string_view key) {
  if (auto* d = std::get_if<T>(&c.pulse.detail)) return *d;
  throw ConfigError("'" + std::string(key) + "' does not apply to pulse family " +
                    std::string(to_string(c.pulse.family())));
}

bool has_gaussian(const ExperimentConfig& c) {
  const auto f = c.pulse.family();
  return f == PulseFamily::Gaussian || f == PulseFamily::GaussianRamped || f == PulseFamily::DCRAB;
}

Real& gaussian_amplitude(ExperimentConfig& c, std::string_view key) {
  if (auto* g = std::get_if<GaussianShape>(&c.pulse.detail)) return g->amplitude;
  if (auto* g = std::get_if<GaussianRampedShape>(&c.pulse.detail)) return g->amplitude;
  return detail_of<DCRABBasis>(c, key).seed.amplitude;
}

Real& gaussian_width(ExperimentConfig& c, std::string_view key) {
  if (auto* g = std::get_if<GaussianShape>(&c.pulse.detail)) return g->width;
  if (auto* g = std::get_if<GaussianRampedShape>(&c.pulse.detail)) return g->width;
  return detail_of<DCRABBasis>(c, key).seed.width;
}

Field real_field(std::string key, Real ExperimentConfig::*member) {
  return {key, [member, key](ExperimentConfig& c, const std::string& v) { c.*member = parse_real(key, v); },
          [member](const ExperimentConfig& c) { return fmt(c.*member); }};
}

// Field stored in SI but written in the unit named by the key.
Field unit_field(std::string key, Real scale, std::function<Real&(ExperimentConfig&)> ref) {
  return {key, [=](ExperimentConfig& c, const std::string& v) { ref(c) = parse_real(key, v) * scale; },
          [=](const ExperimentConfig& c) { return fmt(ref(const_cast<ExperimentConfig&>(c)) / scale); }};
}

Field list_field(std::string key, Real scale, std::vector<Real> ExperimentConfig::*member) {
  return {key, [=](ExperimentConfig& c, const std::string& v) { c.*member = scaled(parse_list(key, v), scale); },
          [=](const ExperimentConfig& c) { return fmt_list(c.*member, scale); }};
}

Field pulse_field(std::string key, std::function<Real&(ExperimentConfig&, std::string_view)> ref,
                  std::function<bool(const ExperimentConfig&)> applies) {
  return {key, [=](ExperimentConfig& c, const std::string& v) { ref(c, key) = parse_real(key, v); },
          [=](const ExperimentConfig& c) { return fmt(ref(const_cast<ExperimentConfig&>(c), key)); }, applies};
}

template <typename T>
std::function<bool(const ExperimentConfig&)> family_is() {
  return [](const ExperimentConfig& c) { return std::holds_alternative<T>(c.pulse.detail); };
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"mode", [](ExperimentConfig& c, const std::string& v) { c.mode = parse_mode(v); },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.mode)); }});
    f.push_back({"seed",
                 [](ExperimentConfig& c, const std::string& v) {
                   const long s = parse_int("seed", v);
                   if (s < 0) throw ConfigError("'seed' must be non-negative");
                   c.seed = static_cast<std::uint64_t>(s);
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.seed); }});

    f.push_back(unit_field("omega0_over_2pi_MHz", 1e6, [](ExperimentConfig& c) -> Real& { return c.system.omega0_over_2pi; }));
    f.push_back(unit_field("trap_x_kHz", 1e3, [](ExperimentConfig& c) -> Real& { return c.system.trap_over_2pi[0]; }));
    f.push_back(unit_field("trap_y_kHz", 1e3, [](ExperimentConfig& c) -> Real& { return c.system.trap_over_2pi[1]; }));
    f.push_back(unit_field("trap_z_kHz", 1e3, [](ExperimentConfig& c) -> Real& { return c.system.trap_over_2pi[2]; }));
    f.push_back(unit_field("lifetime_us", 1e-6, [](ExperimentConfig& c) -> Real& { return c.system.lifetime; }));
    f.push_back(unit_field("wavelength_nm", 1e-9, [](ExperimentConfig& c) -> Real& { return c.system.wavelength; }));
    f.push_back(unit_field("c6_over_h_GHz_um6", 1e9 * 1e-36, [](ExperimentConfig& c) -> Real& { return c.system.c6_over_h; }));
    f.push_back(unit_field("distance_um", 1e-6, [](ExperimentConfig& c) -> Real& { return c.system.distance; }));
    f.push_back(unit_field("mass_u", kAtomicMass, [](ExperimentConfig& c) -> Real& { return c.system.mass; }));
    f.push_back(unit_field("temperature_uK", 1e-6, [](ExperimentConfig& c) -> Real& { return c.system.temperature; }));
    f.push_back({"V_over_Omega0",
                 [](ExperimentConfig& c, const std::string& v) {
                   if (v == "derived") {
                     c.blockade.reset();
                   } else {
                     c.blockade = parse_real("V_over_Omega0", v);
                   }
                 },
                 [](const ExperimentConfig& c) { return c.blockade ? fmt(*c.blockade) : std::string("derived"); }});

    f.push_back({"family",
                 [](ExperimentConfig& c, const std::string& v) {
                   switch (parse_family(v)) {
                     case PulseFamily::DeltaJump:
                       c.pulse.detail = DeltaJumpShape{};
                       break;
                     case PulseFamily::Triangle:
                       c.pulse.detail = TriangleShape{};
                       break;
                     case PulseFamily::Gaussian:
                       c.pulse.detail = GaussianShape{};
                       break;
                     case PulseFamily::GaussianRamped:
                       c.pulse.detail = GaussianRampedShape{};
                       break;
                     case PulseFamily::DCRAB:
                       c.pulse.detail = DCRABBasis{};
                       break;
                   }
                 },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.pulse.family())); }});
    const auto always = [](const ExperimentConfig&) { return true; };
    f.push_back(pulse_field("tau", [](ExperimentConfig& c, std::string_view) -> Real& { return c.pulse.tau; }, always));
    f.push_back(pulse_field("delta0", [](ExperimentConfig& c, std::string_view) -> Real& { return c.pulse.delta0; }, always));
    f.push_back(pulse_field("omega_scale", [](ExperimentConfig& c, std::string_view) -> Real& { return c.pulse.omega_scale; },
                            always));
    f.push_back(pulse_field(
        "phase", [](ExperimentConfig& c, std::string_view k) -> Real& { return detail_of<DeltaJumpShape>(c, k).phase; },
        family_is<DeltaJumpShape>()));
    f.push_back(pulse_field(
        "height", [](ExperimentConfig& c, std::string_view k) -> Real& { return detail_of<TriangleShape>(c, k).height; },
        family_is<TriangleShape>()));
    f.push_back(pulse_field(
        "base", [](ExperimentConfig& c, std::string_view k) -> Real& { return detail_of<TriangleShape>(c, k).base; },
        family_is<TriangleShape>()));
    f.push_back(pulse_field("amplitude", gaussian_amplitude, has_gaussian));
    f.push_back(pulse_field("width", gaussian_width, has_gaussian));
    f.push_back(pulse_field(
        "kappa", [](ExperimentConfig& c, std::string_view k) -> Real& { return detail_of<GaussianRampedShape>(c, k).kappa; },
        family_is<GaussianRampedShape>()));
    f.push_back({"dcrab_frequencies",
                 [](ExperimentConfig& c, const std::string& v) {
                   detail_of<DCRABBasis>(c, "dcrab_frequencies").frequencies = parse_list("dcrab_frequencies", v);
                 },
                 [](const ExperimentConfig& c) { return fmt_list(std::get<DCRABBasis>(c.pulse.detail).frequencies); },
                 family_is<DCRABBasis>()});
    f.push_back({"dcrab_amplitudes",
                 [](ExperimentConfig& c, const std::string& v) {
                   detail_of<DCRABBasis>(c, "dcrab_amplitudes").amplitudes = parse_list("dcrab_amplitudes", v);
                 },
                 [](const ExperimentConfig& c) { return fmt_list(std::get<DCRABBasis>(c.pulse.detail).amplitudes); },
                 family_is<DCRABBasis>()});
    f.push_back(pulse_field(
        "dcrab_max_frequency",
        [](ExperimentConfig& c, std::string_view k) -> Real& { return detail_of<DCRABBasis>(c, k).max_frequency; },
        family_is<DCRABBasis>()));
    f.push_back({"dcrab_superiterations",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.dcrab_superiterations = static_cast<int>(parse_int("dcrab_superiterations", v));
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.dcrab_superiterations); }});

    f.push_back({"objective", [](ExperimentConfig& c, const std::string& v) { c.objective = parse_objective(v); },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.objective)); }});
    f.push_back(real_field("threshold", &ExperimentConfig::threshold));
    f.push_back(real_field("phase_tolerance", &ExperimentConfig::phase_tolerance));
    f.push_back(real_field("tau_resolution", &ExperimentConfig::tau_resolution));
    f.push_back(real_field("tau_lower", &ExperimentConfig::tau_lower));
    f.push_back({"restarts",
                 [](ExperimentConfig& c, const std::string& v) { c.restarts = static_cast<int>(parse_int("restarts", v)); },
                 [](const ExperimentConfig& c) { return std::to_string(c.restarts); }});
    f.push_back({"max_evaluations",
                 [](ExperimentConfig& c, const std::string& v) { c.max_evaluations = parse_int("max_evaluations", v); },
                 [](const ExperimentConfig& c) { return std::to_string(c.max_evaluations); }});
    f.push_back({"fixed",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.fixed.clear();
                   if (!v.empty()) c.fixed = split(v, ',');
                 },
                 [](const ExperimentConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.fixed.size(); ++i) s += (i ? ", " : "") + c.fixed[i];
                   return s;
                 }});

    f.push_back({"sweep_variable", [](ExperimentConfig& c, const std::string& v) { c.sweep_variable = v; },
                 [](const ExperimentConfig& c) { return c.sweep_variable; }});
    f.push_back(list_field("sweep_grid", 1.0, &ExperimentConfig::sweep_grid));

    f.push_back(list_field("temperatures_uK", 1e-6, &ExperimentConfig::temperatures));
    f.push_back({"budget_full",
                 [](ExperimentConfig& c, const std::string& v) { c.budget_full = parse_bool("budget_full", v); },
                 [](const ExperimentConfig& c) { return std::string(c.budget_full ? "true" : "false"); }});
    f.push_back(list_field("fig5a_grid_per_s", 1.0, &ExperimentConfig::fig5a_grid));
    f.push_back(list_field("fig5b_grid_kHz", 1e3, &ExperimentConfig::fig5b_grid));
    f.push_back(list_field("fig5c_grid_kHz", 1e3, &ExperimentConfig::fig5c_grid));
    f.push_back(list_field("fig5_temperatures_uK", 1e-6, &ExperimentConfig::fig5_temperatures));

    f.push_back({"figures",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.figures.clear();
                   if (v.empty()) return;
                   for (const auto& s : split(v, ',')) c.figures.push_back(parse_figure(s));
                 },
                 [](const ExperimentConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.figures.size(); ++i) {
                     s += (i ? ", " : "") + std::string(to_string(c.figures[i]));
                   }
                   return s;
                 }});

    f.push_back(unit_field("rtol", 1.0, [](ExperimentConfig& c) -> Real& { return c.simulation.integrator.rtol; }));
    f.push_back(unit_field("atol", 1.0, [](ExperimentConfig& c) -> Real& { return c.simulation.integrator.atol; }));
    f.push_back({"dense_intervals",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.simulation.integrator.dense_intervals = static_cast<int>(parse_int("dense_intervals", v));
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.simulation.integrator.dense_intervals); }});
    f.push_back(unit_field("thermal_tail", 1.0, [](ExperimentConfig& c) -> Real& { return c.simulation.thermal_tail; }));
    auto int_field = [](std::string key, int MechanismOptions::*member) {
      return Field{key,
                   [=](ExperimentConfig& c, const std::string& v) {
                     c.mechanism.*member = static_cast<int>(parse_int(key, v));
                   },
                   [=](const ExperimentConfig& c) { return std::to_string(c.mechanism.*member); }};
    };
    f.push_back(int_field("fock_z", &MechanismOptions::z_fock));
    f.push_back(int_field("fock_x", &MechanismOptions::x_fock));
    f.push_back(int_field("fock_full_x", &MechanismOptions::full_x_fock));
    f.push_back(int_field("fock_max", &MechanismOptions::max_fock));
    f.push_back(int_field("vdw_order", &MechanismOptions::vdw_order));
    f.push_back(int_field("fock_probe_increment", &MechanismOptions::probe_increment));
    f.push_back(unit_field("fock_probe_tolerance", 1.0,
                           [](ExperimentConfig& c) -> Real& { return c.mechanism.probe_tolerance; }));
    f.push_back({"fock_probe",
                 [](ExperimentConfig& c, const std::string& v) { c.mechanism.probe = parse_bool("fock_probe", v); },
                 [](const ExperimentConfig& c) { return std::string(c.mechanism.probe ? "true" : "false"); }});
    f.push_back({"absorb_recoil_shift",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.mechanism.absorb_recoil_shift = parse_bool("absorb_recoil_shift", v);
                 },
                 [](const ExperimentConfig& c) { return std::string(c.mechanism.absorb_recoil_shift ? "true" : "false"); }});
    return f;
  }();
  return table;
}

constexpr std::string_view kBoundsPrefix = "bounds_";

void validate(ExperimentConfig& c) {
  c.system.validate();
  if (c.pulse.tau <= 0.0) throw ConfigError("'tau' must be positive");
  if (c.pulse.omega_scale < 0.0 || c.pulse.omega_scale > 1.0) throw ConfigError("'omega_scale' must lie in [0, 1]");
  if (const auto* g = std::get_if<GaussianRampedShape>(&c.pulse.detail); g && g->kappa <= 0.0) {
    throw ConfigError("'kappa' must be positive");
  }
  if (const auto* b = std::get_if<DCRABBasis>(&c.pulse.detail)) {
    if (b->frequencies.size() != b->amplitudes.size()) {
      throw ConfigError("'dcrab_frequencies' and 'dcrab_amplitudes' differ in length");
    }
    for (Real fq : b->frequencies) {
      if (fq <= 0.0 || fq > b->max_frequency) throw ConfigError("dCRAB frequency outside (0, dcrab_max_frequency]");
    }
  }
  if (c.blockade && !(*c.blockade > 0.0)) throw ConfigError("'V_over_Omega0' must be positive");
  if (!(c.threshold > 0.0)) throw ConfigError("'threshold' must be positive");
  if (!(c.phase_tolerance > 0.0)) throw ConfigError("'phase_tolerance' must be positive");
  if (!(c.tau_resolution > 0.0)) throw ConfigError("'tau_resolution' must be positive");
  if (c.restarts < 0) throw ConfigError("'restarts' must be non-negative");
  if (c.max_evaluations < 1) throw ConfigError("'max_evaluations' must be positive");
  if (c.dcrab_superiterations < 0) throw ConfigError("'dcrab_superiterations' must be non-negative");
  if (c.dcrab_superiterations > 0 && c.pulse.family() != PulseFamily::DCRAB) {
    throw ConfigError("'dcrab_superiterations' needs family = dcrab");
  }
  const auto names = parameter_names(c.pulse);
  auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  for (const auto& n : c.fixed) {
    if (!known(n)) throw ConfigError("'fixed': unknown parameter '" + n + "'");
  }
  for (const auto& [n, b] : c.bounds) {
    if (!known(n)) throw ConfigError("'" + std::string(kBoundsPrefix) + n + "': unknown parameter");
    if (!(b.first < b.second)) throw ConfigError("'" + std::string(kBoundsPrefix) + n + "': lower bound not below upper");
  }
  if (c.mode == Mode::Sweep) {
    if (c.sweep_grid.empty()) throw ConfigError("sweep mode needs a non-empty 'sweep_grid'");
    if (c.sweep_variable != "blockade" && !known(c.sweep_variable)) {
      throw ConfigError("'sweep_variable': unknown parameter '" + c.sweep_variable + "'");
    }
  }
  if (c.mode == Mode::Budget && c.temperatures.empty()) throw ConfigError("budget mode needs 'temperatures_uK'");
  for (Real t : c.temperatures) {
    if (t < 0.0) throw ConfigError("temperatures must be non-negative");
  }
  for (Real t : c.fig5_temperatures) {
    if (t < 0.0) throw ConfigError("temperatures must be non-negative");
  }
  for (FigureId fig : c.figures) {
    const bool sweep_fig = fig == FigureId::Fig2d || fig == FigureId::Fig3 || fig == FigureId::Fig4;
    if (sweep_fig && c.mode != Mode::Sweep) {
      throw ConfigError("figure " + std::string(to_string(fig)) + " needs sweep mode");
    }
    if (!sweep_fig && c.mode != Mode::Budget) {
      throw ConfigError("figure " + std::string(to_string(fig)) + " needs budget mode");
    }
    const std::vector<Real>* grid = fig == FigureId::Fig5a   ? &c.fig5a_grid
                                    : fig == FigureId::Fig5b ? &c.fig5b_grid
                                    : fig == FigureId::Fig5c ? &c.fig5c_grid
                                                             : nullptr;
    if (grid && grid->empty()) throw ConfigError("figure " + std::string(to_string(fig)) + " has an empty grid");
  }
  const auto& m = c.mechanism;
  if (m.z_fock < 1 || m.x_fock < 1 || m.full_x_fock < 1 || m.max_fock < 1 || m.probe_increment < 1) {
    throw ConfigError("Fock ladder sizes must be positive");
  }
  if (m.vdw_order < 1) throw ConfigError("'vdw_order' must be positive");
  if (!(c.simulation.integrator.rtol > 0.0) || !(c.simulation.integrator.atol > 0.0)) {
    throw ConfigError("integrator tolerances must be positive");
  }
  if (c.simulation.integrator.dense_intervals < 2 || c.simulation.integrator.dense_intervals % 2) {
    throw ConfigError("'dense_intervals' must be even and at least 2");
  }
}

ExperimentConfig apply_entries(ExperimentConfig c, const std::vector<std::pair<std::string, std::string>>& entries) {
  std::map<std::string, std::string> values;
  for (const auto& [k, v] : entries) values[k] = v;

  // The family decides which pulse keys exist, so it goes first; kappa_ns
  // needs the Rabi frequency, so it goes last.
  if (auto it = values.find("family"); it != values.end()) {
    const auto f = std::find_if(fields().begin(), fields().end(), [](const Field& x) { return x.key == "family"; });
    try {
      f->set(c, it->second);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("'family': ") + e.what());
    }
  }
  for (const auto& f : fields()) {
    if (f.key == "family") continue;
    const auto it = values.find(f.key);
    if (it == values.end()) continue;
    if (!f.applies(c)) {
      throw ConfigError("'" + f.key + "' does not apply to pulse family " + std::string(to_string(c.pulse.family())));
    }
    try {
      f.set(c, it->second);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("'" + f.key + "': " + e.what());
    }
  }
  for (const auto& [k, v] : values) {
    const bool known = std::any_of(fields().begin(), fields().end(), [&](const Field& f) { return f.key == k; });
    if (known) continue;
    if (k == "kappa_ns") {
      auto* g = std::get_if<GaussianRampedShape>(&c.pulse.detail);
      if (!g) throw ConfigError("'kappa_ns' does not apply to pulse family " + std::string(to_string(c.pulse.family())));
      if (values.count("kappa")) throw ConfigError("'kappa' and 'kappa_ns' are exclusive");
      g->kappa = parse_real(k, v) * 1e-9 * c.system.omega0();
    } else if (k.rfind(kBoundsPrefix, 0) == 0) {
      const auto parts = split(v, ',');
      if (parts.size() != 2) throw ConfigError("'" + k + "': expected 'lower, upper'");
      const std::string name = k.substr(kBoundsPrefix.size());
      std::erase_if(c.bounds, [&](const auto& b) { return b.first == name; });
      c.bounds.push_back({name, {parse_real(k, parts[0]), parse_real(k, parts[1])}});
    } else if (k == "generator") {
      // version line of an output header
    } else {
      throw ConfigError("unknown key '" + k + "'");
    }
  }
  validate(c);
  return c;
}

std::vector<std::pair<std::string, std::string>> tokenize(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    for (const auto& [k, v] : out) {
      if (k == key) throw ConfigError("line " + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Simulate:
      return "simulate";
    case Mode::Optimize:
      return "optimize";
    case Mode::Sweep:
      return "sweep";
    case Mode::Budget:
      return "budget";
  }
  return "?";
}

std::string_view to_string(FigureId figure) {
  switch (figure) {
    case FigureId::Fig2d:
      return "fig2d";
    case FigureId::Fig3:
      return "fig3";
    case FigureId::Fig4:
      return "fig4";
    case FigureId::Fig5a:
      return "fig5a";
    case FigureId::Fig5b:
      return "fig5b";
    case FigureId::Fig5c:
      return "fig5c";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (auto m : {Mode::Simulate, Mode::Optimize, Mode::Sweep, Mode::Budget}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("unknown mode '" + std::string(text) + "'");
}

FigureId parse_figure(std::string_view text) {
  for (auto f : {FigureId::Fig2d, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5a, FigureId::Fig5b, FigureId::Fig5c}) {
    if (to_string(f) == text) return f;
  }
  throw ConfigError("unknown figure '" + std::string(text) + "'");
}

Real ExperimentConfig::effective_blockade() const {
  return blockade ? *blockade : to_dimensionless(system).blockade;
}

OptimizationProblem ExperimentConfig::problem() const {
  OptimizationProblem p;
  p.objective = objective;
  p.initial = pulse;
  p.blockade = effective_blockade();
  p.fixed = fixed;
  p.bounds = bounds;
  p.threshold = threshold;
  p.phase_tolerance = phase_tolerance;
  p.tau_resolution = tau_resolution;
  p.tau_lower = tau_lower;
  p.restarts = restarts;
  p.max_evaluations = max_evaluations;
  return p;
}

MechanismOptions ExperimentConfig::mechanism_options() const {
  MechanismOptions m = mechanism;
  m.simulation = simulation;
  return m;
}

ExperimentConfig parse_config(std::string_view text) { return parse_config(text, {}); }

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  auto entries = tokenize(text);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
    const std::string key = trim(std::string_view(o).substr(0, eq));
    const std::string value = trim(std::string_view(o).substr(eq + 1));
    std::erase_if(entries, [&](const auto& e) { return e.first == key; });
    entries.emplace_back(key, value);
  }
  return apply_entries(ExperimentConfig{}, entries);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string resolved_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    if (!f.applies(config)) continue;
    out += f.key + " = " + f.get(config) + "\n";
  }
  for (const auto& [name, b] : config.bounds) {
    out += std::string(kBoundsPrefix) + name + " = " + fmt(b.first) + ", " + fmt(b.second) + "\n";
  }
  return out;
}

std::string output_header(const ExperimentConfig& config) {
  std::string out = "# generator = rydgate " + std::string(version()) + "\n";
  for (const auto& line : split(resolved_config(config), '\n')) {
    if (!line.empty()) out += "# " + line + "\n";
  }
  return out;
}

ExperimentConfig parse_output_header(std::string_view text) {
  std::string body;
  for (const auto& line : split(text, '\n')) {
    if (line.rfind("# ", 0) != 0) break;
    body += line.substr(2) + "\n";
  }
  return parse_config(body);
}

std::string_view version() { return RYDGATE_VERSION; }

}  // namespace rydgate
