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

#include "geomdd/dd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geomdd/errors.hpp"

namespace geomdd::dd {

using qops::cplx;
using qops::kI;

char to_char(PulseAxis a) {
  switch (a) {
    case PulseAxis::X:
      return 'x';
    case PulseAxis::Y:
      return 'y';
    case PulseAxis::Z:
      return 'z';
  }
  return '?';
}

std::string to_string(SequenceLabel l) {
  switch (l) {
    case SequenceLabel::None:
      return "none";
    case SequenceLabel::XY4:
      return "XY4";
    case SequenceLabel::XY8:
      return "XY8";
    case SequenceLabel::XY12:
      return "XY12";
    case SequenceLabel::ZXZX:
      return "ZXZX";
  }
  return "?";
}

SequenceLabel sequence_from_string(const std::string& s) {
  for (auto l : {SequenceLabel::None, SequenceLabel::XY4, SequenceLabel::XY8, SequenceLabel::XY12,
                 SequenceLabel::ZXZX})
    if (to_string(l) == s) return l;
  throw ValidationError("unknown DD sequence '" + s + "'");
}

std::string to_string(XYFamily f) { return f == XYFamily::Repeated ? "repeated" : "standard"; }

XYFamily family_from_string(const std::string& s) {
  if (s == "repeated") return XYFamily::Repeated;
  if (s == "standard") return XYFamily::Standard;
  throw ValidationError("unknown XY family '" + s + "'");
}

std::string to_string(InjectionMode m) { return m == InjectionMode::Naive ? "naive" : "toggled"; }

InjectionMode mode_from_string(const std::string& s) {
  if (s == "naive") return InjectionMode::Naive;
  if (s == "toggled") return InjectionMode::Toggled;
  throw ValidationError("unknown injection mode '" + s + "'");
}

std::string to_string(DecouplingOrder o) { return o == DecouplingOrder::ZXZX ? "ZXZX" : "XY4"; }

DecouplingOrder order_from_string(const std::string& s) {
  if (s == "ZXZX") return DecouplingOrder::ZXZX;
  if (s == "XY4") return DecouplingOrder::XY4;
  throw ValidationError("unknown decoupling order '" + s + "'");
}

Mat pauli(PulseAxis a) {
  switch (a) {
    case PulseAxis::X:
      return qops::pauli_x();
    case PulseAxis::Y:
      return qops::pauli_y();
    case PulseAxis::Z:
      return qops::pauli_z();
  }
  return qops::eye(2);
}

Mat pulse_unitary(PulseAxis a) { return -kI * pauli(a); }

void LogicalEmbedding::validate() const {
  if (dim < 2 || index0 < 0 || index1 < 0 || index0 >= dim || index1 >= dim || index0 == index1)
    throw DimensionError("LogicalEmbedding: indices must be distinct and inside the space");
}

Mat embed_block(const Mat& op2, const LogicalEmbedding& emb) {
  emb.validate();
  if (op2.rows() != 2 || op2.cols() != 2) throw DimensionError("embed_block needs a 2x2 operator");
  Mat m = Mat::Zero(emb.dim, emb.dim);
  const int idx[2] = {emb.index0, emb.index1};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(idx[r], idx[c]) = op2(r, c);
  return m;
}

Mat embed_unitary(const Mat& u2, const LogicalEmbedding& emb) {
  Mat m = embed_block(u2, emb);
  for (int i = 0; i < emb.dim; ++i)
    if (i != emb.index0 && i != emb.index1) m(i, i) = 1.0;
  return m;
}

Mat pulse_unitary(PulseAxis a, const LogicalEmbedding& emb) {
  return embed_unitary(pulse_unitary(a), emb);
}

Mat sequence_product(const DDSequence& seq) {
  Mat p = qops::eye(2);
  for (const auto& pulse : seq.pulses) p = pulse_unitary(pulse.axis) * p;
  return p;
}

void DDSequence::validate() const {
  if (periods < 1) throw ValidationError("DDSequence: periods must be >= 1");
  double last = 0.0;
  for (const auto& p : pulses) {
    if (!(p.time_fraction > last && p.time_fraction < 1.0))
      throw ValidationError("DDSequence: fractions must increase strictly inside (0, 1)");
    last = p.time_fraction;
  }
  const Mat prod = sequence_product(*this);
  const cplx phase = std::abs(prod(0, 0)) > 0.5 ? prod(0, 0) / std::abs(prod(0, 0)) : cplx(1.0);
  if (std::abs(prod(0, 0)) <= 0.5 || (prod * std::conj(phase) - qops::eye(2)).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("DDSequence: pulses do not multiply to the identity");
}

DDSequence make_sequence(SequenceLabel label, int periods, XYFamily family) {
  if (periods < 1) throw ValidationError("make_sequence: periods must be >= 1");
  using A = PulseAxis;
  const std::vector<A> xy4{A::X, A::Y, A::X, A::Y};
  const std::vector<A> yx4{A::Y, A::X, A::Y, A::X};
  std::vector<A> cycle;
  auto append = [&cycle](const std::vector<A>& v) { cycle.insert(cycle.end(), v.begin(), v.end()); };
  switch (label) {
    case SequenceLabel::None:
      break;
    case SequenceLabel::XY4:
      append(xy4);
      break;
    case SequenceLabel::XY8:
      append(xy4);
      append(family == XYFamily::Repeated ? xy4 : yx4);
      break;
    case SequenceLabel::XY12:
      append(xy4);
      append(family == XYFamily::Repeated ? xy4 : yx4);
      append(xy4);
      break;
    case SequenceLabel::ZXZX:
      // Z f X f Z f X f read right to left: X acts first.
      cycle = {A::X, A::Z, A::X, A::Z};
      break;
  }
  DDSequence seq;
  seq.label = label;
  seq.family = family;
  seq.periods = periods;
  const std::size_t n = cycle.size() * static_cast<std::size_t>(periods);
  for (std::size_t k = 0; k < n; ++k)
    seq.pulses.push_back({(2.0 * k + 1.0) / (2.0 * n), cycle[k % cycle.size()]});
  seq.validate();
  return seq;
}

std::size_t InjectionPlan::interval_at(double anchor) const {
  std::size_t k = 0;
  while (k < events.size() && events[k].time <= anchor) ++k;
  return k;
}

Mat InjectionPlan::control(const Mat& h_design, double anchor) const {
  if (mode == InjectionMode::Naive || events.empty()) return h_design;
  const Mat& q = frames[interval_at(anchor)];
  if (h_design.rows() != q.rows())
    throw DimensionError("InjectionPlan::control: frame and Hamiltonian sizes differ");
  return q * h_design * q.adjoint();
}

InjectionPlan inject(double duration, const DDSequence& seq, InjectionMode mode,
                     const std::vector<double>& boundaries) {
  if (!(duration > 0.0)) throw ValidationError("inject: duration must be positive");
  seq.validate();
  InjectionPlan plan;
  plan.mode = mode;
  plan.duration = duration;
  plan.frames.push_back(qops::eye(2));
  const double eps = 1e-9 * duration;
  for (const auto& p : seq.pulses) {
    double t = p.time_fraction * duration;
    for (double b : boundaries) {
      if (std::abs(t - b) <= 1e-12 * duration) {
        std::ostringstream os;
        os << "pulse " << to_char(p.axis) << " at t=" << t << " sits on a schedule boundary; moved by "
           << eps;
        plan.warnings.push_back(os.str());
        t += eps;
        break;
      }
    }
    if (!plan.events.empty() && !(t > plan.events.back().time))
      throw ValidationError("inject: overlapping pulse events");
    if (!(t < duration)) throw ValidationError("inject: pulse pushed past the end of the window");
    plan.events.push_back({t, p.axis});
    plan.frames.push_back(pulse_unitary(p.axis) * plan.frames.back());
  }
  return plan;
}

std::string events_to_csv(const InjectionPlan& plan) {
  std::ostringstream os;
  os.precision(17);
  os << "time_us,axis\n";
  for (const auto& e : plan.events) os << e.time << "," << to_char(e.axis) << "\n";
  return os.str();
}

namespace {

std::array<PulseAxis, 4> order_axes(DecouplingOrder order) {
  if (order == DecouplingOrder::ZXZX) return {PulseAxis::X, PulseAxis::Z, PulseAxis::X, PulseAxis::Z};
  return {PulseAxis::X, PulseAxis::Y, PulseAxis::X, PulseAxis::Y};
}

void check_env(const std::array<Mat, 3>& b, const Mat& h_env) {
  for (const auto& m : b)
    if (m.rows() != 2 || m.cols() != 2)
      throw DimensionError("decoupling: environment couplings must be 2x2");
  if (h_env.rows() != 2 || h_env.cols() != 2)
    throw DimensionError("decoupling: environment Hamiltonian must be 2x2");
}

}  // namespace

Mat decoupling_propagator(double tau, const std::array<Mat, 3>& b, const Mat& h_env,
                          DecouplingOrder order) {
  if (!(tau > 0.0)) throw ValidationError("decoupling: tau must be positive");
  check_env(b, h_env);
  const Mat h = qops::kron(qops::pauli_x(), b[0]) + qops::kron(qops::pauli_y(), b[1]) +
                qops::kron(qops::pauli_z(), b[2]) + qops::kron(qops::eye(2), h_env);
  const Mat f = qops::expm(-kI * tau * h);
  Mat u = qops::eye(4);
  for (PulseAxis a : order_axes(order)) u = qops::kron(pulse_unitary(a), qops::eye(2)) * f * u;
  return u;
}

double decoupling_error(double tau, const std::array<Mat, 3>& b, const Mat& h_env,
                        DecouplingOrder order) {
  const Mat u = decoupling_propagator(tau, b, h_env, order);
  Mat p = qops::eye(2);
  for (PulseAxis a : order_axes(order)) p = pulse_unitary(a) * p;
  const Mat ref = p(0, 0) * qops::kron(qops::eye(2), qops::expm(-kI * (4.0 * tau) * h_env));
  return qops::operator_norm(u - ref);
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("fit_loglog: need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw ValidationError("fit_loglog: x must be positive");
    if (!(y[i] >= floor))
      throw NumericalError("fit_loglog: value below the round-off floor, cannot fit");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("fit_loglog: x values are all equal");
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace geomdd::dd
