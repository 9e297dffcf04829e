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

#include "geomdd/geometric.hpp"

#include <algorithm>
#include <cmath>

#include "geomdd/errors.hpp"

namespace geomdd::geometric {

using qops::kI;
using qops::kPi;

namespace {

constexpr double kContinuityTol = 1e-9;

double wrap_pi(double x) {
  // Into (-pi, pi].
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y <= 0.0) y += 2.0 * kPi;
  return y - kPi;
}

struct Shape {
  double u;
  double du;  // du/ds
};

Shape shape(ThetaProfile p, double s) {
  if (p == ThetaProfile::Linear) return {s, 1.0};
  const double sn = std::sin(kPi * s);
  return {s - std::sin(2.0 * kPi * s) / (2.0 * kPi), 2.0 * sn * sn};
}

double jumps_at(const PathSchedule& s, std::size_t boundary) {
  double total = 0.0;
  for (const auto& j : s.phi_jumps)
    if (j.boundary == boundary) total += j.delta_phi;
  return total;
}

std::size_t segment_at(const PathSchedule& s, double t) {
  const double T = s.duration();
  const double slack = 1e-12 * std::max(T, 1.0);
  if (s.segments.empty()) throw ValidationError("schedule has no segments");
  if (t < -slack || t > T + slack) throw ValidationError("t lies outside the schedule");
  double start = 0.0;
  for (std::size_t k = 0; k < s.segments.size(); ++k) {
    const double end = start + s.segments[k].duration;
    if (t < end) return k;
    start = end;
  }
  return s.segments.size() - 1;
}

}  // namespace

std::string to_string(ThetaProfile p) { return p == ThetaProfile::Linear ? "linear" : "sine-ramp"; }

ThetaProfile profile_from_string(const std::string& s) {
  if (s == "linear") return ThetaProfile::Linear;
  if (s == "sine-ramp") return ThetaProfile::SineRamp;
  throw ValidationError("unknown theta profile '" + s + "'");
}

std::string to_string(PhaseGateVariant v) {
  return v == PhaseGateVariant::SouthPole ? "south-pole" : "printed-integrals";
}

PhaseGateVariant phase_variant_from_string(const std::string& s) {
  if (s == "south-pole") return PhaseGateVariant::SouthPole;
  if (s == "printed-integrals") return PhaseGateVariant::PrintedIntegrals;
  throw ValidationError("unknown phase-gate variant '" + s + "'");
}

double PathSchedule::duration() const {
  double t = 0.0;
  for (const auto& seg : segments) t += seg.duration;
  return t;
}

std::vector<double> PathSchedule::boundaries() const {
  std::vector<double> b{0.0};
  double t = 0.0;
  for (const auto& seg : segments) {
    t += seg.duration;
    b.push_back(t);
  }
  return b;
}

void validate_schedule(const PathSchedule& s, JumpRule rule) {
  const std::size_t n = s.segments.size();
  if (n == 0) throw ValidationError("schedule has no segments");
  for (std::size_t k = 0; k < n; ++k) {
    const auto& seg = s.segments[k];
    const std::string where = "segment " + std::to_string(k) + ": ";
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
      throw ValidationError(where + "duration must be positive");
    for (double th : {seg.theta_start, seg.theta_end})
      if (!(th >= -kContinuityTol && th <= kPi + kContinuityTol))
        throw ValidationError(where + "theta outside [0, pi]");
    if (!std::isfinite(seg.phi_value) || !std::isfinite(seg.phi_final()))
      throw ValidationError(where + "phi is not finite");
  }
  for (const auto& j : s.phi_jumps) {
    if (j.boundary == 0 || j.boundary > n)
      throw ValidationError("phi jump at invalid boundary " + std::to_string(j.boundary));
    const double th = s.segments[j.boundary - 1].theta_end;
    if (rule == JumpRule::PolesOnly && std::abs(std::sin(th)) > kContinuityTol)
      throw ValidationError("phi jump at boundary " + std::to_string(j.boundary) +
                            " is not at a pole");
  }
  for (std::size_t b = 1; b <= n; ++b) {
    const auto& prev = s.segments[b - 1];
    const auto& next = s.segments[b % n];
    const std::string where = b == n ? "loop closure: " : "boundary " + std::to_string(b) + ": ";
    if (std::abs(prev.theta_end - next.theta_start) > kContinuityTol)
      throw ValidationError(where + "theta is discontinuous");
    const double mismatch = wrap_pi(next.phi_value - prev.phi_final() - jumps_at(s, b));
    // At a pole phi is a gauge choice, but it must still be declared.
    if (std::abs(mismatch) > kContinuityTol)
      throw ValidationError(where + "phi change is not covered by a declared jump");
  }
}

std::size_t segment_index(const PathSchedule& s, double t) { return segment_at(s, t); }

PathPoint path_point(const PathSchedule& s, double t) { return path_point_in(s, segment_at(s, t), t); }

PathPoint path_point_in(const PathSchedule& s, std::size_t k, double t) {
  if (k >= s.segments.size()) throw ValidationError("segment index out of range");
  double start = 0.0;
  for (std::size_t i = 0; i < k; ++i) start += s.segments[i].duration;
  const auto& seg = s.segments[k];
  const double sfrac = std::clamp((t - start) / seg.duration, 0.0, 1.0);
  const Shape sh = shape(seg.profile, sfrac);
  const double dth = seg.theta_end - seg.theta_start;
  const double dph = seg.phi_final() - seg.phi_value;
  PathPoint p;
  p.theta = seg.theta_start + dth * sh.u;
  p.phi = seg.phi_value + dph * sh.u;
  p.theta_dot = dth * sh.du / seg.duration;
  p.phi_dot = dph * sh.du / seg.duration;
  return p;
}

ControlField control_fields(const PathSchedule& s, double t) {
  return control_fields_in(s, segment_at(s, t), t);
}

ControlField control_fields_in(const PathSchedule& s, std::size_t k, double t) {
  const PathPoint p = path_point_in(s, k, t);
  const double c = std::cos(p.theta);
  const double sn = std::sin(p.theta);
  ControlField f;
  f.omega = kI * std::exp(kI * p.phi) * (p.theta_dot + kI * c * sn * p.phi_dot);
  f.detuning = -0.5 * sn * sn * p.phi_dot;
  return f;
}

Mat logical_hamiltonian(const ControlField& c) {
  Mat h(2, 2);
  h(0, 0) = -c.detuning;
  h(1, 1) = c.detuning;
  h(1, 0) = 0.5 * c.omega;
  h(0, 1) = 0.5 * std::conj(c.omega);
  return h;
}

double peak_rate(const PathSchedule& s, int samples_per_segment) {
  double peak = 0.0;
  double start = 0.0;
  for (const auto& seg : s.segments) {
    for (int i = 0; i <= samples_per_segment; ++i) {
      // Sample strictly inside the segment so the lookup stays on it.
      const double f = (i + 0.5) / (samples_per_segment + 1.0);
      const ControlField c = control_fields(s, start + f * seg.duration);
      peak = std::max(peak, std::hypot(std::abs(c.omega), 2.0 * c.detuning));
    }
    start += seg.duration;
  }
  return peak;
}

double segment_duration(double dtheta, const ScheduleOptions& opt) {
  if (!(opt.omega_max > 0.0)) throw ValidationError("omega_max must be positive");
  // Peak theta' is |dtheta|/d for a linear ramp and 2|dtheta|/d for sine.
  const double peak_factor = opt.profile == ThetaProfile::Linear ? 1.0 : 2.0;
  return peak_factor * std::abs(dtheta) / opt.omega_max;
}

namespace {

PathSegment make_segment(double th0, double th1, double phi, const ScheduleOptions& opt) {
  PathSegment seg;
  seg.theta_start = th0;
  seg.theta_end = th1;
  seg.phi_value = phi;
  seg.profile = opt.profile;
  seg.duration = segment_duration(th1 - th0, opt);
  return seg;
}

}  // namespace

PathSchedule schedule_phase_gate(double phi0, const ScheduleOptions& opt,
                                 PhaseGateVariant variant) {
  PathSchedule s;
  s.label = "phase";
  const double turn = variant == PhaseGateVariant::SouthPole ? kPi : kPi / 2.0;
  s.segments.push_back(make_segment(0.0, turn, phi0, opt));
  s.segments.push_back(make_segment(turn, 0.0, phi0 + kPi / 4.0, opt));
  s.phi_jumps = {{1, kPi / 4.0}, {2, -kPi / 4.0}};
  validate_schedule(s, variant == PhaseGateVariant::SouthPole ? JumpRule::PolesOnly
                                                              : JumpRule::Anywhere);
  return s;
}

PathSchedule schedule_not_gate(double theta0, const ScheduleOptions& opt) {
  if (!(theta0 > 0.0 && theta0 < kPi))
    throw ValidationError("schedule_not_gate: theta0 must lie strictly between the poles");
  PathSchedule s;
  s.label = "not";
  // Down to the south pole, up a meridian a quarter turn away, back down.
  s.segments.push_back(make_segment(theta0, kPi, 0.0, opt));
  s.segments.push_back(make_segment(kPi, 0.0, -kPi / 2.0, opt));
  s.segments.push_back(make_segment(0.0, theta0, 0.0, opt));
  s.phi_jumps = {{1, -kPi / 2.0}, {2, kPi / 2.0}};
  validate_schedule(s);
  return s;
}

PathSchedule schedule_iswap(const ScheduleOptions& opt) {
  PathSchedule s;
  s.label = "iswap";
  const double theta0 = kPi / 2.0;
  s.segments.push_back(make_segment(theta0, kPi, kPi, opt));
  s.segments.push_back(make_segment(kPi, 0.0, 1.5 * kPi, opt));
  s.segments.push_back(make_segment(0.0, theta0, kPi, opt));
  s.phi_jumps = {{1, kPi / 2.0}, {2, -kPi / 2.0}};
  validate_schedule(s);
  return s;
}

double geometric_phase(const PathSchedule& s) {
  validate_schedule(s, JumpRule::Anywhere);
  double gamma = 0.0;
  for (const auto& seg : s.segments) {
    const double dph = seg.phi_final() - seg.phi_value;
    if (dph == 0.0) continue;
    // theta and phi share one shape, so the line integral is closed form.
    const double dth = seg.theta_end - seg.theta_start;
    const double mean_cos = std::abs(dth) < 1e-12
                                ? std::cos(seg.theta_start)
                                : (std::sin(seg.theta_end) - std::sin(seg.theta_start)) / dth;
    gamma += 0.5 * dph * (1.0 - mean_cos);
  }
  for (const auto& j : s.phi_jumps) {
    const double th = s.segments[j.boundary - 1].theta_end;
    gamma += 0.5 * (1.0 - std::cos(th)) * j.delta_phi;
  }
  return gamma;
}

std::array<double, 3> bloch_axis(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void GateTarget::validate() const {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(n - 1.0) > 1e-12) throw ValidationError("GateTarget: axis is not a unit vector");
  if (qubit_count != 1 && qubit_count != 2)
    throw ValidationError("GateTarget: qubit_count must be 1 or 2");
}

GateTarget gate_target(const PathSchedule& s, int qubit_count) {
  GateTarget g;
  g.gamma = geometric_phase(s);
  g.axis = bloch_axis(s.segments.front().theta_start, s.segments.front().phi_value);
  g.qubit_count = qubit_count;
  g.validate();
  return g;
}

qops::ComplexOperator target_unitary(const GateTarget& target) {
  target.validate();
  const Mat ns = target.axis[0] * qops::pauli_x() + target.axis[1] * qops::pauli_y() +
                 target.axis[2] * qops::pauli_z();
  // n.sigma squares to one, so the exponential is a cosine/sine pair.
  const Mat u = std::cos(target.gamma) * qops::eye(2) - kI * std::sin(target.gamma) * ns;
  if (target.qubit_count == 1) return qops::ComplexOperator(qops::HilbertSpace({2}), u);
  Mat u4 = qops::eye(4);
  u4.block(1, 1, 2, 2) = u;
  return qops::ComplexOperator(qops::HilbertSpace({2, 2}), u4);
}

double extract_gamma(const Mat& u, const std::array<double, 3>& axis) {
  if (u.rows() != 2 || u.cols() != 2) throw DimensionError("extract_gamma needs a 2x2 unitary");
  const double theta = std::acos(std::clamp(axis[2], -1.0, 1.0));
  const double phi = std::atan2(axis[1], axis[0]);
  qops::Vec up(2), down(2);
  up << std::cos(theta / 2.0), std::sin(theta / 2.0) * std::exp(kI * phi);
  down << -std::sin(theta / 2.0) * std::exp(-kI * phi), std::cos(theta / 2.0);
  const cplx a = up.dot(u * up);
  const cplx b = down.dot(u * down);
  return 0.5 * std::arg(b / a);
}

nlohmann::json schedule_to_json(const PathSchedule& s) {
  nlohmann::json j;
  j["label"] = s.label;
  j["segments"] = nlohmann::json::array();
  for (const auto& seg : s.segments) {
    nlohmann::json js{{"duration_us", seg.duration},
                      {"theta_start", seg.theta_start},
                      {"theta_end", seg.theta_end},
                      {"phi", seg.phi_value},
                      {"profile", to_string(seg.profile)}};
    if (seg.phi_end) js["phi_end"] = *seg.phi_end;
    j["segments"].push_back(js);
  }
  j["phi_jumps"] = nlohmann::json::array();
  for (const auto& jp : s.phi_jumps)
    j["phi_jumps"].push_back({{"boundary", jp.boundary}, {"delta_phi", jp.delta_phi}});
  return j;
}

PathSchedule schedule_from_json(const nlohmann::json& j) {
  PathSchedule s;
  try {
    s.label = j.value("label", std::string{});
    for (const auto& js : j.at("segments")) {
      PathSegment seg;
      seg.duration = js.at("duration_us").get<double>();
      seg.theta_start = js.at("theta_start").get<double>();
      seg.theta_end = js.at("theta_end").get<double>();
      seg.phi_value = js.at("phi").get<double>();
      if (js.contains("phi_end")) seg.phi_end = js.at("phi_end").get<double>();
      seg.profile = profile_from_string(js.value("profile", std::string("sine-ramp")));
      s.segments.push_back(seg);
    }
    if (j.contains("phi_jumps"))
      for (const auto& jp : j.at("phi_jumps"))
        s.phi_jumps.push_back({jp.at("boundary").get<std::size_t>(), jp.at("delta_phi").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("schedule JSON: ") + e.what());
  }
  validate_schedule(s, JumpRule::Anywhere);
  return s;
}

}  // namespace geomdd::geometric
