#include "demonbox/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "demonbox/errors.hpp"
#include "demonbox/textio.hpp"
#include "demonbox/version.hpp"

namespace demonbox {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeyHandler {
  Setter set;
  Getter get;
};

// single ordered registry: parsing, validation messages and manifests all
// agree on the key set
const std::vector<std::pair<std::string, KeyHandler>>& registry() {
  static const std::vector<std::pair<std::string, KeyHandler>> reg = [] {
    std::vector<std::pair<std::string, KeyHandler>> r;
    auto add_str = [&r](const char* k, std::string RunConfig::* f) {
      r.push_back({k,
                   {[f](RunConfig& c, const std::string& v) {
                      // quoted form covers empty strings in manifests
                      if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
                        c.*f = v.substr(1, v.size() - 2);
                      else
                        c.*f = v;
                    },
                    [f](const RunConfig& c) { return c.*f; }}});
    };
    auto add_int = [&r](const char* k, int RunConfig::* f) {
      r.push_back(
          {k,
           {[f, k](RunConfig& c, const std::string& v) {
              const long long n = parse_int(v);
              if (n < -2147483648LL || n > 2147483647LL)
                throw ConfigError(std::string(k) + " out of range");
              c.*f = static_cast<int>(n);
            },
            [f](const RunConfig& c) { return fmt_int(c.*f); }}});
    };
    auto add_dbl = [&r](const char* k, double RunConfig::* f) {
      r.push_back({k,
                   {[f](RunConfig& c, const std::string& v) {
                      c.*f = parse_double(v);
                    },
                    [f](const RunConfig& c) {
                      return std::isinf(c.*f) ? std::string("infinite")
                                              : fmt_double(c.*f);
                    }}});
    };
    auto add_bool = [&r](const char* k, bool RunConfig::* f) {
      r.push_back({k,
                   {[f](RunConfig& c, const std::string& v) {
                      c.*f = parse_bool(v);
                    },
                    [f](const RunConfig& c) {
                      return c.*f ? "true" : "false";
                    }}});
    };

    add_str("version", &RunConfig::version);
    add_int("half_sites", &RunConfig::half_sites);
    add_dbl("upsilon0", &RunConfig::upsilon0);
    add_dbl("kappa_r", &RunConfig::kappa_r);
    add_dbl("kappa_d", &RunConfig::kappa_d);
    add_str("initial", &RunConfig::initial);
    add_dbl("beta", &RunConfig::beta);
    add_dbl("tau_max", &RunConfig::tau_max);
    add_int("tau_steps", &RunConfig::tau_steps);
    add_dbl("box_length", &RunConfig::box_length);
    add_dbl("hbar", &RunConfig::hbar);
    add_int("series_terms", &RunConfig::series_terms);
    add_dbl("p_ref", &RunConfig::p_ref);
    add_dbl("p_uv", &RunConfig::p_uv);
    add_dbl("v0", &RunConfig::v0);
    add_str("integral_mode", &RunConfig::integral_mode);
    add_dbl("e_min", &RunConfig::e_min);
    add_dbl("e_max", &RunConfig::e_max);
    add_str("betas", &RunConfig::betas);
    add_dbl("greens_energy", &RunConfig::greens_energy);
    add_int("greens_points", &RunConfig::greens_points);
    add_dbl("dispersion_tol", &RunConfig::dispersion_tol);
    add_int("threads", &RunConfig::threads);
    add_str("out_dir", &RunConfig::out_dir);
    add_bool("write_density", &RunConfig::write_density);
    add_bool("write_eigensystem", &RunConfig::write_eigensystem);
    add_str("sweep_failures", &RunConfig::sweep_failures);
    return r;
  }();
  return reg;
}

const KeyHandler* find_key(const std::string& k) {
  for (const auto& [name, handler] : registry())
    if (name == k) return &handler;
  return nullptr;
}

}  // namespace

RunConfig::RunConfig() : version(kVersion) {}

void RunConfig::validate() const {
  lattice().validate();
  container().validate();
  activation().validate();
  if (initial != "boltzmann" && initial != "uniform")
    throw ConfigError("config: initial must be boltzmann or uniform");
  if (!std::isfinite(beta)) throw ConfigError("config: beta must be finite");
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max))
    throw ConfigError("config: tau_max must be finite and >= 0");
  if (tau_steps < 1) throw ConfigError("config: tau_steps must be >= 1");
  if (integral_mode != "exact" && integral_mode != "approx")
    throw ConfigError("config: integral_mode must be exact or approx");
  if (!(e_min > 0.0) || !(e_max > e_min))
    throw ConfigError("config: need 0 < e_min < e_max");
  if (greens_points < 2)
    throw ConfigError("config: greens_points must be >= 2");
  if (!(dispersion_tol > 0.0))
    throw ConfigError("config: dispersion_tol must be > 0");
  if (threads < 0) throw ConfigError("config: threads must be >= 0");
  if (out_dir.empty()) throw ConfigError("config: out_dir must be nonempty");
  beta_list();
}

LatticeConfig RunConfig::lattice() const {
  LatticeConfig l;
  l.half_sites = half_sites;
  l.upsilon0 = upsilon0;
  l.kappa_r = kappa_r;
  l.kappa_d = kappa_d;
  return l;
}

ContainerSpec RunConfig::container() const {
  ContainerSpec s;
  s.box_length = box_length;
  s.hbar = hbar;
  s.series_terms = series_terms;
  return s;
}

ActivationSpec RunConfig::activation() const {
  ActivationSpec a;
  a.p_ref = p_ref;
  a.p_uv = p_uv;
  a.strength = v0;
  return a;
}

InitialStateSpec RunConfig::initial_spec() const {
  if (initial == "uniform") return InitialStateSpec::uniform();
  return InitialStateSpec::boltzmann(beta);
}

IntegralMode RunConfig::mode() const {
  return integral_mode == "approx" ? IntegralMode::approx
                                   : IntegralMode::exact;
}

std::vector<double> RunConfig::beta_list() const {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(betas);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("config: empty entry in betas list");
    out.push_back(parse_double(item));
  }
  if (out.empty()) throw ConfigError("config: betas list is empty");
  return out;
}

std::vector<double> RunConfig::time_grid() const {
  return uniform_time_grid(tau_max, tau_steps);
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + fmt_int(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + fmt_int(lineno) +
                        ": empty key or value");
    const KeyHandler* handler = find_key(key);
    if (!handler)
      throw ConfigError("config line " + fmt_int(lineno) + ": unknown key '" +
                        key + "'");
    if (const auto it = seen.find(key); it != seen.end())
      throw ConfigError("config line " + fmt_int(lineno) + ": key '" + key +
                        "' already set on line " + fmt_int(it->second));
    seen[key] = lineno;
    try {
      handler->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + fmt_int(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void apply_config_value(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  const KeyHandler* handler = find_key(key);
  if (!handler) throw ConfigError("unknown config key '" + key + "'");
  handler->set(cfg, value);
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string manifest_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& [name, handler] : registry()) {
    const std::string v = handler.get(cfg);
    out += name;
    out += " = ";
    out += v.empty() ? "\"\"" : v;
    out += '\n';
  }
  return out;
}

}  // namespace demonbox
