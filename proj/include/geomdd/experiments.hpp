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

// Experiments behind the command-line runner. Each one has a compute step
// returning plain data and a command that writes CSV files and a manifest.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "geomdd/config.hpp"
#include "geomdd/dd.hpp"
#include "geomdd/evolve.hpp"

namespace geomdd::cli {

// A CSV table; cells are already formatted.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

// Fixed-precision formatting shared by every CSV.
std::string format_number(double v);

// Resolved inputs. Noise values left unset fall back to 40 kHz for one
// qubit and 1 kHz for two.
evolve::GateSpec gate_spec(const ExperimentConfig& c);
evolve::NoiseParams gate_noise(const ExperimentConfig& c, int qubits);
evolve::SimConfig sim_config(const ExperimentConfig& c);
// none, XY4, ... up to dd.sequence.
std::vector<dd::DDSequence> dd_ladder(const ExperimentConfig& c);
// 0 followed by points - 1 log-spaced multiples ending at scale_max.
std::vector<double> sweep_scales(const SweepConfig& s);

struct CompareResult {
  int qubits = 1;
  Table populations;
  double max_abs_dev = 0.0;
  // Two-qubit noisy run: deviation of P01, P10 from the noiseless exchange.
  bool has_noise_variant = false;
  Table noisy;
  double noisy_dev_none = 0.0;
  double noisy_dev_dd = 0.0;
  evolve::RunDiagnostics diag;
  std::vector<std::string> warnings;
};

CompareResult compare_models(const ExperimentConfig& c);

std::vector<evolve::FidelityReport> gate_ladder(const ExperimentConfig& c);

struct SweepResult {
  std::vector<double> scales;
  std::vector<std::string> labels;
  std::vector<evolve::SweepSurface> surfaces;  // aligned with labels; [0] is "none"
  // min over protected levels and cells of F_protected - F_none.
  double min_margin = 0.0;
  // Largest increase of F_none along either axis (0 when non-increasing).
  double max_unprotected_rise = 0.0;
  evolve::RunDiagnostics diag;
};

SweepResult robustness_sweep(const ExperimentConfig& c);

struct ScalingSeries {
  std::string order;
  unsigned seed = 0;
  std::vector<double> taus;
  std::vector<double> errors;
  double slope = 0.0;
};

// Random B_a and H_e, each Hermitian with the configured operator norm.
std::vector<ScalingSeries> dd_scaling(const ExperimentConfig& c);

struct WaveguideResult {
  double velocity = 0.0;    // m/s
  double wavenumber = 0.0;  // 1/m
  double g = 0.0;           // rad/s
};

WaveguideResult waveguide_g(const ExperimentConfig& c);

struct Artifact {
  std::string file;
  std::string figure;
  std::string description;
};

// Runs c.experiment, writes its files under `out` (created if missing)
// along with config.json and manifest.json. Returns the warnings raised.
std::vector<std::string> run_experiment(const ExperimentConfig& c, const std::filesystem::path& out);

}  // namespace geomdd::cli
