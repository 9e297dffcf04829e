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

// Experiment configuration: one JSON document, frequencies given as f/2pi
// with the unit in the key name (omega_mhz = 10 means 2 pi x 10 MHz).

#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace geomdd::cli {

struct PhysicalConfig {
  double omega_mhz = 10.0;
  double g_mhz = 5.0;
  double delta1_mhz = 100.0;
  double delta2_mhz = 500.0;
  double delta_mhz = 100.0;
  // Two-qubit detunings of each SiV from the shared mode.
  double lambda1_mhz = 10.0;
  double lambda2_mhz = 10.0;
  int n_max = 2;
  bool operator==(const PhysicalConfig&) const = default;
};

struct GateConfig {
  std::string name = "not";       // phase | not | iswap
  std::string model = "logical";  // logical | four-level (iswap is always logical)
  std::string profile = "sine-ramp";
  double theta0 = 1.5707963267948966;
  double phi0 = 0.0;
  std::string phase_variant = "south-pole";
  int initial_index = -1;
  bool operator==(const GateConfig&) const = default;
};

struct DDConfig {
  std::string sequence = "XY12";  // highest level run; lower XY levels come along
  std::string family = "repeated";
  int periods = 7;
  std::string mode = "toggled";
  bool operator==(const DDConfig&) const = default;
};

struct NoiseConfig {
  // Unset means 40 kHz for one-qubit gates and 1 kHz for iSWAP.
  std::optional<double> g1_khz;
  std::optional<double> g2_khz;
  std::string env_initial = "ground";
  std::string coupling = "relative";
  bool operator==(const NoiseConfig&) const = default;
};

struct SimSection {
  double dt_us = 0.0;
  int steps_per_period = 1000;
  std::string integrator = "rk4";
  int samples = 201;
  bool operator==(const SimSection&) const = default;
};

struct CompareConfig {
  int qubits = 1;
  // Window length in effective Rabi (or exchange) periods.
  double periods = 1.0;
  // Two-qubit only: also run the noisy exchange with and without DD.
  bool with_noise = true;
  bool operator==(const CompareConfig&) const = default;
};

struct SweepConfig {
  int points = 11;
  // Largest noise as a multiple of the default value.
  double scale_max = 2.0;
  // Decades spanned by the nonzero log-spaced points below scale_max.
  double decades = 1.0;
  unsigned threads = 0;
  bool operator==(const SweepConfig&) const = default;
};

struct DDScalingConfig {
  double tau_min_us = 1e-4;
  double tau_max_us = 1e-2;
  int points = 9;
  std::vector<unsigned> seeds{1, 2, 3, 4, 5};
  // Operator norms of each random B_a and of H_e, as f/2pi.
  double coupling_mhz = 1.0;
  double env_mhz = 1.0;
  std::vector<std::string> orders{"ZXZX", "XY4"};
  bool operator==(const DDScalingConfig&) const = default;
};

struct WaveguideConfig {
  double length_um = 80.0;
  double width_nm = 80.0;
  double height_nm = 80.0;
  double youngs_gpa = 1050.0;
  double poisson = 0.2;
  double density_kg_m3 = 3500.0;
  double d_phz = 1.0;
  double xi = 1.0;
  // Compression mode frequency; the default sits at the SiV orbital splitting.
  double mode_ghz = 46.0;
  bool operator==(const WaveguideConfig&) const = default;
};

struct ExperimentConfig {
  std::string experiment = "gate-fidelity";
  std::string output = "geomdd-out";
  PhysicalConfig physical;
  GateConfig gate;
  DDConfig dd;
  NoiseConfig noise;
  SimSection sim;
  CompareConfig compare;
  SweepConfig sweep;
  DDScalingConfig dd_scaling;
  WaveguideConfig waveguide;
  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& c);
// Strict: unknown keys and wrong types raise ConfigError naming the key.
ExperimentConfig from_json(const nlohmann::json& j);

// Parses `text` (may be empty for all defaults), applies key=value
// overrides with dotted keys, then validates. Errors carry line numbers
// from `text` where one can be found.
ExperimentConfig load_config(const std::string& text, const std::vector<std::string>& overrides,
                             const std::string& source = "<config>");

// Throws ConfigError on out-of-range or inconsistent settings.
void validate(const ExperimentConfig& c);

}  // namespace geomdd::cli
