#include "ifdyn/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "ifdyn/io.hpp"

namespace ifdyn {

namespace {

// n and seed share one slot type on 64-bit targets.
static_assert(std::is_same_v<std::size_t, std::uint64_t>);
using Slot = std::variant<double*, int*, std::size_t*, bool*, std::string*>;

// Serialization order follows this table.
std::vector<std::pair<std::string, Slot>> slots(RunConfig& c) {
  ScenarioParams& s = c.scenario_params;
  Params& p = c.params;
  StepConfig& t = c.step;
  return {
      {"scenario", &c.scenario},
      {"n", &s.n},
      {"amplitude", &s.amplitude},
      {"wavenumber", &s.wavenumber},
      {"radius", &s.radius},
      {"omega0", &s.omega0},
      {"omega_amplitude", &s.omega_amplitude},
      {"noise", &s.noise},
      {"seed", &s.seed},
      {"a_rho", &p.a_rho},
      {"g", &p.g},
      {"rho2", &p.rho2},
      {"epsilon", &p.epsilon},
      {"solver_tol", &p.solver_tol},
      {"solver_max_iter", &p.solver_max_iter},
      {"filter_threshold", &p.filter_threshold},
      {"uniformity_tol", &p.uniformity_tol},
      {"allow_kelvin_helmholtz", &p.allow_kelvin_helmholtz},
      {"dt", &t.dt},
      {"t_end", &t.t_end},
      {"cfl_safety", &t.cfl_safety},
      {"adaptive", &t.adaptive},
      {"abort_arc_chord", &t.abort_arc_chord},
      {"abort_min_sigma", &t.abort_min_sigma},
      {"output_stride", &t.output_stride},
      {"snapshot_stride", &t.snapshot_stride},
      {"energy_k", &t.energy_k},
      {"energy_p", &t.energy_p},
      {"out_dir", &c.out_dir},
  };
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& v, const std::string& key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

void assign(const Slot& slot, const std::string& key, const std::string& v) {
  std::visit(
      [&](auto* target) {
        using T = std::remove_pointer_t<decltype(target)>;
        if constexpr (std::is_same_v<T, std::string>) {
          *target = v;
        } else if constexpr (std::is_same_v<T, bool>) {
          if (v == "true" || v == "1") *target = true;
          else if (v == "false" || v == "0") *target = false;
          else throw ConfigError("config: '" + key + "' expects true/false, got '" + v + "'");
        } else if constexpr (std::is_same_v<T, double>) {
          char* end = nullptr;
          const double d = std::strtod(v.c_str(), &end);
          if (v.empty() || end != v.c_str() + v.size()) throw ConfigError("config: '" + key + "' expects a real, got '" + v + "'");
          *target = d;
        } else {
          *target = parse_integer<T>(v, key);
        }
      },
      slot);
}

std::string render(const Slot& slot) {
  return std::visit(
      [](auto* target) -> std::string {
        using T = std::remove_pointer_t<decltype(target)>;
        if constexpr (std::is_same_v<T, std::string>) return *target;
        else if constexpr (std::is_same_v<T, bool>) return *target ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_real(*target);
        else return std::to_string(*target);
      },
      slot);
}

}  // namespace

void RunConfig::validate() const {
  if (!Grid::valid_size(scenario_params.n)) throw ConfigError("config: n must be a power of two and at least 16");
  params.validate();
  step.validate();
  if (static_cast<std::size_t>(step.energy_k) > scenario_params.n / 4) throw ConfigError("config: energy_k exceeds n/4");
  bool known = false;
  for (const auto& name : scenario_names()) known = known || name == scenario;
  if (!known) throw ConfigError("config: unknown scenario '" + scenario + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, Slot> table;
  for (auto& [k, s] : slots(cfg)) table.emplace(k, s);
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    assign(it->second, key, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& config) {
  RunConfig copy = config;
  std::string out;
  for (const auto& [key, slot] : slots(copy)) out += key + " = " + render(slot) + "\n";
  return out;
}

}  // namespace ifdyn
