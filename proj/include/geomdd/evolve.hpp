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

// Time evolution of gates coupled to a one-qubit environment.
//
// The environment qubit is always the last tensor factor. Its coupling is
// H(t) x I + G1 I x S + G2' C(t) x S with S = sigma_x + sigma_y + sigma_z,
// where C(t) is the designed gate Hamiltonian and H(t) the applied one
// (they differ only when decoupling pulses toggle the control).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geomdd/dd.hpp"
#include "geomdd/geometric.hpp"
#include "geomdd/qops.hpp"
#include "geomdd/siv_model.hpp"

namespace geomdd::evolve {

using qops::Mat;
using qops::Vec;

enum class EnvInitial { Ground, Mixed, Plus };

std::string to_string(EnvInitial e);
EnvInitial env_from_string(const std::string& s);

// How G2 turns into the dimensionless factor in front of C(t) x S.
enum class CouplingConvention {
  // G2 divided by the gate's reference drive rate.
  Relative,
  // The numeric value of G2 in rad/us used directly.
  Literal,
};

std::string to_string(CouplingConvention c);
CouplingConvention coupling_from_string(const std::string& s);

struct NoiseParams {
  double g1 = 0.0;  // rad/us
  double g2 = 0.0;  // rad/us
  EnvInitial env_initial = EnvInitial::Ground;
  CouplingConvention coupling = CouplingConvention::Relative;

  void validate() const;
  double multiplier(double reference_rate) const;
  bool operator==(const NoiseParams&) const = default;
};

Mat environment_state(EnvInitial e);
// sigma_x + sigma_y + sigma_z.
Mat environment_coupling();

enum class Integrator { RK4, ExpmMidpoint };

std::string to_string(Integrator i);
Integrator integrator_from_string(const std::string& s);

struct SimConfig {
  // Fixed step; 0 picks (2 pi / max frequency) / steps_per_period.
  double dt = 0.0;
  int steps_per_period = 1000;
  Integrator integrator = Integrator::RK4;
  int n_max = 2;
  // Evenly spaced samples recorded over the run, both ends included.
  int samples = 201;
  qops::Tolerances tol{};

  // Throws ValidationError when dt exceeds a fiftieth of the fastest period.
  double resolve_dt(double max_frequency) const;
  bool operator==(const SimConfig& o) const {
    return dt == o.dt && steps_per_period == o.steps_per_period && integrator == o.integrator &&
           n_max == o.n_max && samples == o.samples;
  }
};

// H(t). The second argument is a time strictly inside the smooth piece the
// step belongs to, so piecewise definitions pick the right side at
// boundaries. Plain evaluation passes t twice.
struct TimeDependentOperator {
  qops::HilbertSpace space{std::vector<int>{1}};
  std::function<Mat(double t, double anchor)> eval;
  std::vector<double> breakpoints;
  // Fastest rate present in rad/us: spectral width plus any explicit
  // oscillation frequencies.
  double max_frequency = 0.0;

  Mat operator()(double t) const { return eval(t, t); }
};

TimeDependentOperator constant_operator(const qops::ComplexOperator& h);

// Full construction with a separate coupling operator.
TimeDependentOperator compose_total(const TimeDependentOperator& control,
                                    const TimeDependentOperator& coupling, double g1,
                                    double g2_factor);
// Coupling through the system Hamiltonian itself.
TimeDependentOperator compose_total(const TimeDependentOperator& h_sys, const NoiseParams& noise,
                                    double reference_rate);

struct Event {
  double time = 0.0;
  Mat unitary;
};

struct PropagationDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  long long steps = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<qops::DensityMatrix> states;
  PropagationDiagnostics diag;
};

// Integrates rho' = -i [H, rho] over [sample_times.front(), back()],
// applying rho -> U rho U^dagger at each event time (before the sample
// taken at that time).
Trajectory propagate_liouville(const TimeDependentOperator& h, const qops::DensityMatrix& rho0,
                               const std::vector<double>& sample_times,
                               const std::vector<Event>& events, const SimConfig& cfg);

struct StateTrajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  long long steps = 0;
};

StateTrajectory propagate_state(const TimeDependentOperator& h, const Vec& psi0,
                                const std::vector<double>& sample_times,
                                const std::vector<Event>& events, const SimConfig& cfg);

// Propagator from t0 to t1 including events.
Mat propagate_unitary(const TimeDependentOperator& h, double t0, double t1,
                      const std::vector<Event>& events, const SimConfig& cfg);

std::vector<double> linspace(double a, double b, int n);

enum class GateModel { Logical1Q, Logical2Q, FourLevel };

std::string to_string(GateModel m);
GateModel model_from_string(const std::string& s);

struct GateSpec {
  geometric::PathSchedule schedule;
  GateModel model = GateModel::Logical1Q;
  // Drive rate the relative noise convention divides by; 0 uses the peak
  // |Omega| of the schedule.
  double reference_rate = 0.0;
  dd::InjectionMode mode = dd::InjectionMode::Toggled;
  // Four-level model only.
  siv::PhononParams phonon{siv::mhz(5.0), siv::mhz(100.0), siv::mhz(500.0), 2};
  double raman_delta = siv::mhz(100.0);
  // Logical basis index of the initial state; -1 picks |0>_L or |01>_L.
  int initial_index = -1;
};

int qubit_count(GateModel m);

struct RunDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  double min_eigenvalue = 0.0;
  double max_population_error = 0.0;

  void merge(const RunDiagnostics& o);
};

struct FidelityReport {
  std::string gate_label;
  std::string dd_label;
  NoiseParams noise;
  double duration = 0.0;
  std::vector<double> times;
  std::vector<std::string> population_labels;
  // populations[k][i]: logical state k at times[i].
  std::vector<std::vector<double>> populations;
  std::vector<double> leakage_trace;
  // Overlap with the noiseless trajectory carrying the same pulses.
  std::vector<double> fidelity_trace;
  double final_fidelity = 0.0;
  double leakage = 0.0;
  RunDiagnostics diag;
  std::vector<std::string> warnings;
};

// Noiseless propagator of the system (pulses included) over [0, T].
Mat noiseless_unitary(const GateSpec& spec, const dd::DDSequence& seq, const SimConfig& cfg);

// Target unitary lifted to the system space of the model.
Mat target_on_system(const GateSpec& spec);

FidelityReport run_gate(const GateSpec& spec, const dd::DDSequence& seq, const NoiseParams& noise,
                        const SimConfig& cfg);

struct SweepSurface {
  std::vector<double> g1_values;
  std::vector<double> g2_values;
  // fidelity[i][j] at (g1_values[i], g2_values[j]).
  std::vector<std::vector<double>> fidelity;
  RunDiagnostics diag;
};

// Cells run on `threads` workers (0 = hardware concurrency); results are
// placed by index so the surface does not depend on scheduling.
SweepSurface sweep(const GateSpec& spec, const dd::DDSequence& seq,
                   const std::vector<double>& g1_values, const std::vector<double>& g2_values,
                   const NoiseParams& base, const SimConfig& cfg, unsigned threads = 0);

}  // namespace geomdd::evolve
