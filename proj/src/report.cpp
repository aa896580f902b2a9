#include "rydgate/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rydgate/errors.hpp"

namespace rydgate {

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* r = std::get_if<Real>(&c)) {
    if (std::isnan(*r)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *r);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* r = std::get_if<Real>(&c)) {
    if (!std::isfinite(*r)) return nullptr;
    return *r;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

long long flag(bool b) { return b ? 1 : 0; }

const char* kStates[4] = {"00", "01", "10", "11"};

std::vector<Cell> rydberg_cells(const OptimizationResult& r) {
  const auto& g = r.evaluation.gate;
  return {g.rydberg_time[1], g.rydberg_time[2], g.rydberg_time[3], g.mean_rydberg_time};
}

Table sweep_figure(const std::string& value_column, const std::vector<SweepPoint>& points) {
  Table t{"", {value_column, "feasible", "tau", "T_r01", "T_r10", "T_r11", "T_r_mean", "T_rr", "infidelity"}, {}};
  for (const auto& p : points) {
    const auto& g = p.result.evaluation.gate;
    t.add({p.value, flag(p.result.feasible), p.result.tau(), g.rydberg_time[1], g.rydberg_time[2], g.rydberg_time[3],
           g.mean_rydberg_time, g.double_rydberg_time, p.result.infidelity()});
  }
  return t;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the columns of " + name);
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& table, const std::string& header) {
  std::string out = header;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& table, const ExperimentConfig& config) {
  nlohmann::ordered_json meta;
  meta["generator"] = "rydgate " + std::string(version());
  std::string resolved = resolved_config(config);
  std::size_t start = 0;
  while (start < resolved.size()) {
    const auto end = resolved.find('\n', start);
    const std::string line = resolved.substr(start, end - start);
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) meta[line.substr(0, eq)] = line.substr(eq + 3);
    start = end == std::string::npos ? resolved.size() : end + 1;
  }
  nlohmann::ordered_json j;
  j["metadata"] = meta;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_table(const Table& table, const ExperimentConfig& config,
                                               const std::filesystem::path& dir, bool json) {
  if (table.rows.empty()) throw std::invalid_argument("no rows for " + table.name + "; nothing written");
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    written.push_back(path);
  };
  put(dir / (table.name + ".csv"), to_csv(table, output_header(config)));
  if (json) put(dir / (table.name + ".json"), to_json(table, config));
  return written;
}

Table gate_table(const GateResult& gate) {
  Table t{"gate",
          {"state", "amplitude_re", "amplitude_im", "phase", "T_r", "surviving_norm", "leakage"},
          {}};
  const Real phase[4] = {0.0, gate.phi01, gate.phi10, gate.phi11};
  for (int a = 0; a < 4; ++a) {
    t.add({std::string(kStates[a]), gate.amplitude[a].real(), gate.amplitude[a].imag(), phase[a],
           gate.rydberg_time[a], gate.surviving_norm[a], gate.leakage[a]});
  }
  return t;
}

Table optimization_table(const OptimizationResult& r) {
  Table t{"optimize", {"feasible", "tau", "infidelity", "bell_infidelity", "max_leakage", "phase_error", "T_r01",
                       "T_r10", "T_r11", "T_r_mean", "T_rr", "evaluations"},
          {}};
  for (const auto& n : r.names) t.columns.push_back(n);
  const auto& g = r.evaluation.gate;
  std::vector<Cell> row{flag(r.feasible), r.tau(), r.infidelity(), r.evaluation.bell_infidelity,
                        r.evaluation.max_leakage, r.evaluation.phase_error, g.rydberg_time[1], g.rydberg_time[2],
                        g.rydberg_time[3], g.mean_rydberg_time, g.double_rydberg_time,
                        static_cast<long long>(r.evaluations)};
  for (Real v : r.parameters) row.push_back(v);
  t.add(std::move(row));
  return t;
}

Table trace_table(const OptimizationResult& r) {
  Table t{"trace", {"evaluation", "objective"}, {}};
  std::size_t width = 0;
  for (const auto& p : r.trace) width = std::max(width, p.parameters.size());
  for (std::size_t i = 0; i < width; ++i) {
    t.columns.push_back(i < r.names.size() ? r.names[i] : "p" + std::to_string(i));
  }
  for (const auto& p : r.trace) {
    std::vector<Cell> row{static_cast<long long>(p.evaluation), p.objective};
    for (std::size_t i = 0; i < width; ++i) {
      row.push_back(i < p.parameters.size() ? Cell{p.parameters[i]} : Cell{std::nan("")});
    }
    t.add(std::move(row));
  }
  return t;
}

Table sweep_table(const std::string& variable, const std::vector<SweepPoint>& points) {
  Table t{"sweep", {variable, "feasible", "tau", "infidelity", "phase_error", "T_r01", "T_r10", "T_r11", "T_r_mean",
                    "T_rr", "evaluations"},
          {}};
  if (points.empty()) return t;
  for (const auto& n : points.front().result.names) t.columns.push_back(n);
  for (const auto& p : points) {
    std::vector<Cell> row{p.value, flag(p.result.feasible), p.result.tau(), p.result.infidelity(),
                          p.result.evaluation.phase_error};
    for (auto& c : rydberg_cells(p.result)) row.push_back(c);
    row.push_back(p.result.evaluation.gate.double_rydberg_time);
    row.push_back(static_cast<long long>(p.result.evaluations));
    for (std::size_t i = 0; i + 11 < t.columns.size(); ++i) {
      row.push_back(i < p.result.parameters.size() ? Cell{p.result.parameters[i]} : Cell{std::nan("")});
    }
    t.add(std::move(row));
  }
  return t;
}

Table budget_table(const ErrorBudget& b) {
  Table t{"budget", {"mechanism", "temperature_uK", "analytic_bell", "numeric_bell", "numeric_avg", "converged"}, {}};
  for (std::size_t k = 0; k < b.temperatures.size(); ++k) {
    const Real t_uK = b.temperatures[k] * 1e6;
    Real analytic_sum = 0.0;
    for (const auto& e : b.entries) {
      if (e.temperature != b.temperatures[k]) continue;
      t.add({std::string(to_string(e.mechanism)), t_uK, e.analytic_bell, e.numeric_bell, e.numeric_avg,
             flag(e.converged)});
      analytic_sum += e.analytic_bell;
    }
    t.add({std::string("summed"), t_uK, analytic_sum, b.summed_bell[k], b.summed_avg[k], flag(true)});
  }
  if (b.has_full) t.add({std::string("full"), 0.0, std::nan(""), b.full_bell, b.full_avg, flag(true)});
  return t;
}

Table figure_table(FigureId figure, const std::string& variable, const std::vector<SweepPoint>& points) {
  if (points.empty()) throw std::invalid_argument("empty result set for " + std::string(to_string(figure)));
  std::string expected, column;
  switch (figure) {
    case FigureId::Fig2d:
      expected = "blockade";
      column = "V_over_Omega0";
      break;
    case FigureId::Fig3:
      expected = column = "width";
      break;
    case FigureId::Fig4:
      expected = column = "kappa";
      break;
    default:
      throw std::invalid_argument(std::string(to_string(figure)) + " is not an optimizer sweep figure");
  }
  if (variable != expected) {
    throw std::invalid_argument(std::string(to_string(figure)) + " needs a sweep over " + expected + ", got " + variable);
  }
  Table t = sweep_figure(column, points);
  t.name = std::string(to_string(figure));
  return t;
}

Table figure_table(FigureId figure, Mechanism mechanism, const std::vector<MechanismSweepPoint>& points) {
  if (points.empty()) throw std::invalid_argument("empty result set for " + std::string(to_string(figure)));
  Table t;
  t.name = std::string(to_string(figure));
  switch (figure) {
    case FigureId::Fig5a:
      if (mechanism != Mechanism::Decay) throw std::invalid_argument("fig5a needs a decay sweep");
      t.columns = {"gamma_per_s", "gamma_times_50us", "numeric_bell", "analytic_bell", "converged"};
      for (const auto& p : points) {
        t.add({p.value, p.value * 50e-6, p.numeric_bell, p.analytic_bell, flag(p.converged)});
      }
      return t;
    case FigureId::Fig5b:
    case FigureId::Fig5c: {
      const bool recoil = figure == FigureId::Fig5b;
      if (mechanism != (recoil ? Mechanism::Recoil : Mechanism::Vdw)) {
        throw std::invalid_argument(t.name + (recoil ? " needs a recoil sweep" : " needs a vdw sweep"));
      }
      t.columns = {recoil ? "trap_z_kHz" : "trap_x_kHz", "temperature_uK", "numeric_bell", "analytic_bell",
                   "converged"};
      for (const auto& p : points) {
        t.add({p.value * 1e-3, p.temperature * 1e6, p.numeric_bell, p.analytic_bell, flag(p.converged)});
      }
      return t;
    }
    default:
      throw std::invalid_argument(t.name + " is not a mechanism sweep figure");
  }
}

}  // namespace rydgate
