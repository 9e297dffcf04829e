// Copyright 2026 The geomdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geomdd/config.hpp"

#include <algorithm>
#include <cmath>

#include "geomdd/dd.hpp"
#include "geomdd/errors.hpp"
#include "geomdd/evolve.hpp"
#include "geomdd/geometric.hpp"
#include "geomdd/siv_model.hpp"

namespace geomdd::cli {

using nlohmann::json;

namespace {

json opt_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Line of the first occurrence of "key" in the source text, 0 if absent.
int find_line(const std::string& text, const std::string& key) {
  if (text.empty()) return 0;
  const std::size_t pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

std::string leaf(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(dot + 1);
}

// Copies `user` onto `base`, rejecting keys `base` does not have.
void merge(json& base, const json& user, const std::string& prefix) {
  if (!user.is_object()) throw ConfigError("'" + (prefix.empty() ? "<root>" : prefix) + "': expected an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown key '" + path + "'");
    json& slot = base[it.key()];
    if (slot.is_object())
      merge(slot, it.value(), path);
    else
      slot = it.value();
  }
}

class Reader {
 public:
  explicit Reader(const json& root) : root_(root) {}

  const json& at(const std::string& path) const {
    const json* node = &root_;
    std::size_t start = 0;
    while (true) {
      const std::size_t dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!node->is_object() || !node->contains(key)) throw ConfigError("missing key '" + path + "'");
      node = &(*node)[key];
      if (dot == std::string::npos) return *node;
      start = dot + 1;
    }
  }

  double num(const std::string& path) const {
    const json& v = at(path);
    if (!v.is_number()) throw ConfigError("'" + path + "': expected a number");
    return v.get<double>();
  }
  int integer(const std::string& path) const {
    const json& v = at(path);
    if (!v.is_number_integer()) throw ConfigError("'" + path + "': expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& path) const {
    const json& v = at(path);
    if (!v.is_boolean()) throw ConfigError("'" + path + "': expected true or false");
    return v.get<bool>();
  }
  std::string str(const std::string& path) const {
    const json& v = at(path);
    if (!v.is_string()) throw ConfigError("'" + path + "': expected a string");
    return v.get<std::string>();
  }
  std::optional<double> opt_num(const std::string& path) const {
    const json& v = at(path);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw ConfigError("'" + path + "': expected a number or null");
    return v.get<double>();
  }
  std::vector<unsigned> uints(const std::string& path) const {
    const json& v = at(path);
    if (!v.is_array()) throw ConfigError("'" + path + "': expected an array");
    std::vector<unsigned> out;
    for (const auto& e : v) {
      if (!e.is_number_unsigned()) throw ConfigError("'" + path + "': expected non-negative integers");
      out.push_back(e.get<unsigned>());
    }
    return out;
  }
  std::vector<std::string> strs(const std::string& path) const {
    const json& v = at(path);
    if (!v.is_array()) throw ConfigError("'" + path + "': expected an array");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError("'" + path + "': expected strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

 private:
  const json& root_;
};

ExperimentConfig read_typed(const json& j) {
  const Reader r(j);
  ExperimentConfig c;
  c.experiment = r.str("experiment");
  c.output = r.str("output");

  auto& p = c.physical;
  p.omega_mhz = r.num("physical.omega_mhz");
  p.g_mhz = r.num("physical.g_mhz");
  p.delta1_mhz = r.num("physical.delta1_mhz");
  p.delta2_mhz = r.num("physical.delta2_mhz");
  p.delta_mhz = r.num("physical.delta_mhz");
  p.lambda1_mhz = r.num("physical.lambda1_mhz");
  p.lambda2_mhz = r.num("physical.lambda2_mhz");
  p.n_max = r.integer("physical.n_max");

  auto& g = c.gate;
  g.name = r.str("gate.name");
  g.model = r.str("gate.model");
  g.profile = r.str("gate.profile");
  g.theta0 = r.num("gate.theta0");
  g.phi0 = r.num("gate.phi0");
  g.phase_variant = r.str("gate.phase_variant");
  g.initial_index = r.integer("gate.initial_index");

  c.dd.sequence = r.str("dd.sequence");
  c.dd.family = r.str("dd.family");
  c.dd.periods = r.integer("dd.periods");
  c.dd.mode = r.str("dd.mode");

  c.noise.g1_khz = r.opt_num("noise.g1_khz");
  c.noise.g2_khz = r.opt_num("noise.g2_khz");
  c.noise.env_initial = r.str("noise.env_initial");
  c.noise.coupling = r.str("noise.coupling");

  c.sim.dt_us = r.num("sim.dt_us");
  c.sim.steps_per_period = r.integer("sim.steps_per_period");
  c.sim.integrator = r.str("sim.integrator");
  c.sim.samples = r.integer("sim.samples");

  c.compare.qubits = r.integer("compare.qubits");
  c.compare.periods = r.num("compare.periods");
  c.compare.with_noise = r.boolean("compare.with_noise");

  c.sweep.points = r.integer("sweep.points");
  c.sweep.scale_max = r.num("sweep.scale_max");
  c.sweep.decades = r.num("sweep.decades");
  const int threads = r.integer("sweep.threads");
  if (threads < 0) throw ConfigError("'sweep.threads': must be >= 0");
  c.sweep.threads = static_cast<unsigned>(threads);

  auto& s = c.dd_scaling;
  s.tau_min_us = r.num("dd_scaling.tau_min_us");
  s.tau_max_us = r.num("dd_scaling.tau_max_us");
  s.points = r.integer("dd_scaling.points");
  s.seeds = r.uints("dd_scaling.seeds");
  s.coupling_mhz = r.num("dd_scaling.coupling_mhz");
  s.env_mhz = r.num("dd_scaling.env_mhz");
  s.orders = r.strs("dd_scaling.orders");

  auto& w = c.waveguide;
  w.length_um = r.num("waveguide.length_um");
  w.width_nm = r.num("waveguide.width_nm");
  w.height_nm = r.num("waveguide.height_nm");
  w.youngs_gpa = r.num("waveguide.youngs_gpa");
  w.poisson = r.num("waveguide.poisson");
  w.density_kg_m3 = r.num("waveguide.density_kg_m3");
  w.d_phz = r.num("waveguide.d_phz");
  w.xi = r.num("waveguide.xi");
  w.mode_ghz = r.num("waveguide.mode_ghz");
  return c;
}

// Reruns a string-to-enum parser, turning its error into a ConfigError.
template <typename F>
void check_choice(const std::string& key, const std::string& value, F parse) {
  try {
    parse(value);
  } catch (const Error& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

void check_one_of(const std::string& key, const std::string& value,
                  const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), value) != allowed.end()) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ConfigError("'" + key + "': '" + value + "' is not one of {" + list + "}");
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("'" + key + "': " + what);
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  const auto& p = c.physical;
  const auto& g = c.gate;
  const auto& s = c.dd_scaling;
  const auto& w = c.waveguide;
  json j;
  j["experiment"] = c.experiment;
  j["output"] = c.output;
  j["physical"] = {{"omega_mhz", p.omega_mhz},     {"g_mhz", p.g_mhz},
                   {"delta1_mhz", p.delta1_mhz},   {"delta2_mhz", p.delta2_mhz},
                   {"delta_mhz", p.delta_mhz},     {"lambda1_mhz", p.lambda1_mhz},
                   {"lambda2_mhz", p.lambda2_mhz}, {"n_max", p.n_max}};
  j["gate"] = {{"name", g.name},     {"model", g.model},
               {"profile", g.profile}, {"theta0", g.theta0},
               {"phi0", g.phi0},     {"phase_variant", g.phase_variant},
               {"initial_index", g.initial_index}};
  j["dd"] = {{"sequence", c.dd.sequence},
             {"family", c.dd.family},
             {"periods", c.dd.periods},
             {"mode", c.dd.mode}};
  j["noise"] = {{"g1_khz", opt_to_json(c.noise.g1_khz)},
                {"g2_khz", opt_to_json(c.noise.g2_khz)},
                {"env_initial", c.noise.env_initial},
                {"coupling", c.noise.coupling}};
  j["sim"] = {{"dt_us", c.sim.dt_us},
              {"steps_per_period", c.sim.steps_per_period},
              {"integrator", c.sim.integrator},
              {"samples", c.sim.samples}};
  j["compare"] = {{"qubits", c.compare.qubits},
                  {"periods", c.compare.periods},
                  {"with_noise", c.compare.with_noise}};
  j["sweep"] = {{"points", c.sweep.points},
                {"scale_max", c.sweep.scale_max},
                {"decades", c.sweep.decades},
                {"threads", c.sweep.threads}};
  j["dd_scaling"] = {{"tau_min_us", s.tau_min_us}, {"tau_max_us", s.tau_max_us},
                     {"points", s.points},         {"seeds", s.seeds},
                     {"coupling_mhz", s.coupling_mhz}, {"env_mhz", s.env_mhz},
                     {"orders", s.orders}};
  j["waveguide"] = {{"length_um", w.length_um},   {"width_nm", w.width_nm},
                    {"height_nm", w.height_nm},   {"youngs_gpa", w.youngs_gpa},
                    {"poisson", w.poisson},       {"density_kg_m3", w.density_kg_m3},
                    {"d_phz", w.d_phz},           {"xi", w.xi},
                    {"mode_ghz", w.mode_ghz}};
  return j;
}

ExperimentConfig from_json(const json& j) {
  json doc = to_json(ExperimentConfig{});
  merge(doc, j, "");
  return read_typed(doc);
}

ExperimentConfig load_config(const std::string& text, const std::vector<std::string>& overrides,
                             const std::string& source) {
  json doc = to_json(ExperimentConfig{});
  std::string path_in_error;
  try {
    if (!text.empty()) {
      json user;
      try {
        user = json::parse(text);
      } catch (const json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
        const std::size_t nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
        const std::size_t col = nl == std::string::npos || pos == 0 ? pos + 1 : pos - nl;
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": invalid JSON");
      }
      merge(doc, user, "");
    }
    for (const auto& o : overrides) {
      const std::size_t eq = o.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set " + o + ": expected key=value");
      const std::string key = o.substr(0, eq);
      const std::string raw = o.substr(eq + 1);
      json value = json::parse(raw, nullptr, false);
      if (value.is_discarded()) value = raw;
      json patch = value;
      std::size_t end = key.size();
      while (true) {
        const std::size_t dot = key.rfind('.', end - 1);
        const std::size_t start = dot == std::string::npos ? 0 : dot + 1;
        patch = json{{key.substr(start, end - start), patch}};
        if (dot == std::string::npos) break;
        end = dot;
      }
      try {
        merge(doc, patch, "");
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("--set ") + key + ": " + e.what());
      }
    }
    ExperimentConfig c = read_typed(doc);
    validate(c);
    return c;
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind(source + ":", 0) == 0 || msg.rfind("--set", 0) == 0) throw;
    // Messages start with 'a.b.c'; point at the line holding c when present.
    const std::size_t q1 = msg.find('\'');
    const std::size_t q2 = q1 == std::string::npos ? q1 : msg.find('\'', q1 + 1);
    int line = 0;
    if (q2 != std::string::npos) line = find_line(text, leaf(msg.substr(q1 + 1, q2 - q1 - 1)));
    if (line > 0) throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
    throw ConfigError(source + ": " + msg);
  }
}

void validate(const ExperimentConfig& c) {
  check_one_of("experiment", c.experiment,
               {"compare-models", "gate-fidelity", "robustness-sweep", "dd-scaling", "waveguide-g"});
  require(!c.output.empty(), "output", "must not be empty");

  const auto& p = c.physical;
  for (const auto& [k, v] : {std::pair{"physical.omega_mhz", p.omega_mhz},
                             {"physical.g_mhz", p.g_mhz},
                             {"physical.delta1_mhz", p.delta1_mhz},
                             {"physical.delta2_mhz", p.delta2_mhz},
                             {"physical.delta_mhz", p.delta_mhz}})
    require(std::isfinite(v) && v >= 0.0, k, "must be finite and >= 0");
  require(p.delta1_mhz > 0.0 && p.delta_mhz > 0.0, "physical.delta_mhz",
          "delta and delta1 must be positive");
  require(std::isfinite(p.lambda1_mhz) && std::isfinite(p.lambda2_mhz) && p.lambda1_mhz != 0.0 &&
              p.lambda2_mhz != 0.0,
          "physical.lambda1_mhz", "lambda detunings must be finite and nonzero");
  require(p.n_max >= 1 && p.n_max <= 20, "physical.n_max", "must be in [1, 20]");

  const auto& g = c.gate;
  check_one_of("gate.name", g.name, {"phase", "not", "iswap"});
  check_one_of("gate.model", g.model, {"logical", "four-level"});
  require(!(g.name == "iswap" && g.model == "four-level"), "gate.model",
          "iswap runs on the effective two-qubit model only");
  check_choice("gate.profile", g.profile, geometric::profile_from_string);
  check_choice("gate.phase_variant", g.phase_variant, geometric::phase_variant_from_string);
  require(std::isfinite(g.theta0) && g.theta0 > 0.0 && g.theta0 < geomdd::qops::kPi, "gate.theta0",
          "must lie strictly between 0 and pi");
  require(std::isfinite(g.phi0), "gate.phi0", "must be finite");
  require(g.initial_index >= -1 && g.initial_index <= 3, "gate.initial_index",
          "must be -1 (default) or a logical basis index");
  require(g.initial_index <= 1 || g.name == "iswap", "gate.initial_index",
          "one-qubit gates have logical indices 0 and 1");

  check_choice("dd.sequence", c.dd.sequence, dd::sequence_from_string);
  require(c.dd.sequence != "ZXZX", "dd.sequence",
          "gate runs use the XY ladder; ZXZX is only used by dd-scaling");
  check_choice("dd.family", c.dd.family, dd::family_from_string);
  check_choice("dd.mode", c.dd.mode, dd::mode_from_string);
  require(c.dd.periods >= 1 && c.dd.periods <= 1000, "dd.periods", "must be in [1, 1000]");

  for (const auto& [k, v] : {std::pair{"noise.g1_khz", c.noise.g1_khz}, {"noise.g2_khz", c.noise.g2_khz}})
    require(!v || (std::isfinite(*v) && *v >= 0.0), k, "must be null or finite and >= 0");
  check_choice("noise.env_initial", c.noise.env_initial, evolve::env_from_string);
  check_choice("noise.coupling", c.noise.coupling, evolve::coupling_from_string);

  require(std::isfinite(c.sim.dt_us) && c.sim.dt_us >= 0.0, "sim.dt_us", "must be >= 0 (0 = automatic)");
  require(c.sim.steps_per_period >= 50, "sim.steps_per_period", "must be >= 50");
  check_choice("sim.integrator", c.sim.integrator, evolve::integrator_from_string);
  require(c.sim.samples >= 2, "sim.samples", "must be >= 2");

  require(c.compare.qubits == 1 || c.compare.qubits == 2, "compare.qubits", "must be 1 or 2");
  require(std::isfinite(c.compare.periods) && c.compare.periods > 0.0, "compare.periods", "must be positive");

  require(c.sweep.points >= 2, "sweep.points", "must be >= 2");
  require(std::isfinite(c.sweep.scale_max) && c.sweep.scale_max > 0.0, "sweep.scale_max",
          "grid bounds must be positive");
  require(std::isfinite(c.sweep.decades) && c.sweep.decades > 0.0, "sweep.decades", "must be positive");

  const auto& s = c.dd_scaling;
  require(s.tau_min_us > 0.0 && s.tau_max_us > s.tau_min_us, "dd_scaling.tau_min_us",
          "need 0 < tau_min_us < tau_max_us");
  require(s.tau_max_us / s.tau_min_us >= 100.0 * (1.0 - 1e-12), "dd_scaling.tau_max_us",
          "tau range must span at least two decades");
  require(s.points >= 3, "dd_scaling.points", "must be >= 3");
  require(!s.seeds.empty(), "dd_scaling.seeds", "must not be empty");
  require(std::isfinite(s.coupling_mhz) && s.coupling_mhz >= 0.0, "dd_scaling.coupling_mhz", "must be >= 0");
  require(std::isfinite(s.env_mhz) && s.env_mhz >= 0.0, "dd_scaling.env_mhz", "must be >= 0");
  require(!s.orders.empty(), "dd_scaling.orders", "must not be empty");
  for (const auto& o : s.orders) check_choice("dd_scaling.orders", o, dd::order_from_string);

  const auto& w = c.waveguide;
  siv::WaveguideParams wp;
  wp.length = w.length_um * 1e-6;
  wp.cross_section = w.width_nm * 1e-9 * w.height_nm * 1e-9;
  wp.youngs_modulus = w.youngs_gpa * 1e9;
  wp.poisson_ratio = w.poisson;
  wp.mass_density = w.density_kg_m3;
  wp.strain_sensitivity = 2.0 * qops::kPi * w.d_phz * 1e15;
  wp.coupling_profile = w.xi;
  check_choice("waveguide.length_um", "", [&wp](const std::string&) { wp.validate(); });
  require(std::isfinite(w.mode_ghz) && w.mode_ghz > 0.0, "waveguide.mode_ghz", "must be positive");
}

}  // namespace geomdd::cli
