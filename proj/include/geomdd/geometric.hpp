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

// Bloch-sphere path programs and the control fields that realize them.
//
// A path (theta(t), phi(t)) describes the auxiliary state
// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>. The logical Hamiltonian
//
//   H = Delta (|1><1| - |0><0|) + (Omega/2)|1><0| + h.c.,
//   Omega = i e^{i phi} (theta' + i cos(theta) sin(theta) phi'),
//   Delta = -sin(theta)^2 phi' / 2,
//
// carries that state along the path with no dynamical phase, so a closed
// path yields U(T) = exp(-i gamma n.sigma) with gamma half the enclosed
// solid angle and n the starting point of the path.

#pragma once

#include <array>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "geomdd/qops.hpp"
#include "geomdd/siv_model.hpp"

namespace geomdd::geometric {

using qops::cplx;
using qops::Mat;

enum class ThetaProfile { Linear, SineRamp };

std::string to_string(ThetaProfile p);
ThetaProfile profile_from_string(const std::string& s);

// theta and phi move together along a common shape u(s), s in [0, 1]:
// u = s for Linear, u = s - sin(2 pi s) / (2 pi) for SineRamp.
struct PathSegment {
  double duration = 0.0;
  double theta_start = 0.0;
  double theta_end = 0.0;
  double phi_value = 0.0;
  // When set, phi ramps from phi_value to phi_end within the segment.
  std::optional<double> phi_end;
  ThetaProfile profile = ThetaProfile::SineRamp;

  double phi_final() const { return phi_end.value_or(phi_value); }
  bool operator==(const PathSegment&) const = default;
};

// A discontinuous change of phi at a segment boundary. Boundary i sits
// between segments i - 1 and i; boundary == segments.size() closes the
// loop at t = T.
struct PhiJump {
  std::size_t boundary = 0;
  double delta_phi = 0.0;
  bool operator==(const PhiJump&) const = default;
};

struct PathSchedule {
  std::string label;
  std::vector<PathSegment> segments;
  std::vector<PhiJump> phi_jumps;

  double duration() const;
  // Segment start times followed by T.
  std::vector<double> boundaries() const;
  bool operator==(const PathSchedule&) const = default;
};

enum class JumpRule {
  PolesOnly,  // every jump must sit where sin(theta) = 0
  Anywhere,
};

// Throws ValidationError on bad segments, discontinuous theta, jumps that do
// not account for the change of phi, or a path that does not close.
void validate_schedule(const PathSchedule& s, JumpRule rule = JumpRule::PolesOnly);

struct PathPoint {
  double theta = 0.0;
  double phi = 0.0;
  double theta_dot = 0.0;
  double phi_dot = 0.0;
};

PathPoint path_point(const PathSchedule& s, double t);
// Index of the segment containing t; segments are half-open [start, end)
// except the last, which includes T.
std::size_t segment_index(const PathSchedule& s, double t);
// Evaluates segment k's formula at t, which may sit on either end of it.
// Propagators use this to take one-sided limits at boundaries.
PathPoint path_point_in(const PathSchedule& s, std::size_t k, double t);

struct ControlField {
  cplx omega{0.0, 0.0};
  double detuning = 0.0;
};

ControlField control_fields(const PathSchedule& s, double t);
ControlField control_fields_in(const PathSchedule& s, std::size_t k, double t);
// 2x2 logical Hamiltonian for one control sample.
Mat logical_hamiltonian(const ControlField& c);

// Peak |Omega| sampled on a fine grid.
double peak_rate(const PathSchedule& s, int samples_per_segment = 512);

struct ScheduleOptions {
  // Drive ceiling; every built-in schedule reaches it exactly once per segment.
  double omega_max = siv::mhz(0.5);
  ThetaProfile profile = ThetaProfile::SineRamp;
};

// Time needed to sweep |dtheta| at the drive ceiling.
double segment_duration(double dtheta, const ScheduleOptions& opt);

enum class PhaseGateVariant {
  // Pole-to-pole halves: the loop passes the south pole, where the phi jump
  // of pi/4 sits, giving gamma = pi/4 about z.
  SouthPole,
  // Half-integrals of pi/2 taken literally. The jump then lands on the
  // equator, which no finite Hamiltonian can follow; kept for comparison.
  PrintedIntegrals,
};

std::string to_string(PhaseGateVariant v);
PhaseGateVariant phase_variant_from_string(const std::string& s);

PathSchedule schedule_phase_gate(double phi0, const ScheduleOptions& opt = {},
                                 PhaseGateVariant variant = PhaseGateVariant::SouthPole);
PathSchedule schedule_not_gate(double theta0, const ScheduleOptions& opt = {});
PathSchedule schedule_iswap(const ScheduleOptions& opt = {});

// Half the solid angle enclosed by the path, jumps included.
double geometric_phase(const PathSchedule& s);

struct GateTarget {
  double gamma = 0.0;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  int qubit_count = 1;

  void validate() const;
};

// Target built from the schedule's phase and starting point.
GateTarget gate_target(const PathSchedule& s, int qubit_count);

// exp(-i gamma n.sigma); for two qubits it acts on the {|01>, |10>} block of
// the basis |00>, |01>, |10>, |11> and leaves |00>, |11> alone.
qops::ComplexOperator target_unitary(const GateTarget& target);

// Gamma (mod pi) read off a 2x2 unitary from its action on the eigenstates
// of n.sigma.
double extract_gamma(const Mat& u, const std::array<double, 3>& axis);

// Unit Bloch vector at (theta, phi).
std::array<double, 3> bloch_axis(double theta, double phi);

nlohmann::json schedule_to_json(const PathSchedule& s);
PathSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace geomdd::geometric
