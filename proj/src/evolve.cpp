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

#include "geomdd/evolve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "geomdd/errors.hpp"

namespace geomdd::evolve {

using qops::cplx;
using qops::kI;
using qops::kPi;

std::string to_string(EnvInitial e) {
  switch (e) {
    case EnvInitial::Ground:
      return "ground";
    case EnvInitial::Mixed:
      return "mixed";
    case EnvInitial::Plus:
      return "plus";
  }
  return "?";
}

EnvInitial env_from_string(const std::string& s) {
  if (s == "ground") return EnvInitial::Ground;
  if (s == "mixed") return EnvInitial::Mixed;
  if (s == "plus") return EnvInitial::Plus;
  throw ValidationError("unknown environment state '" + s + "'");
}

std::string to_string(CouplingConvention c) {
  return c == CouplingConvention::Relative ? "relative" : "literal";
}

CouplingConvention coupling_from_string(const std::string& s) {
  if (s == "relative") return CouplingConvention::Relative;
  if (s == "literal") return CouplingConvention::Literal;
  throw ValidationError("unknown coupling convention '" + s + "'");
}

std::string to_string(Integrator i) { return i == Integrator::RK4 ? "rk4" : "expm-midpoint"; }

Integrator integrator_from_string(const std::string& s) {
  if (s == "rk4") return Integrator::RK4;
  if (s == "expm-midpoint") return Integrator::ExpmMidpoint;
  throw ValidationError("unknown integrator '" + s + "'");
}

std::string to_string(GateModel m) {
  switch (m) {
    case GateModel::Logical1Q:
      return "logical";
    case GateModel::Logical2Q:
      return "logical2";
    case GateModel::FourLevel:
      return "four-level";
  }
  return "?";
}

GateModel model_from_string(const std::string& s) {
  if (s == "logical") return GateModel::Logical1Q;
  if (s == "logical2") return GateModel::Logical2Q;
  if (s == "four-level") return GateModel::FourLevel;
  throw ValidationError("unknown gate model '" + s + "'");
}

int qubit_count(GateModel m) { return m == GateModel::Logical2Q ? 2 : 1; }

void NoiseParams::validate() const {
  if (!(g1 >= 0.0) || !(g2 >= 0.0)) throw ValidationError("NoiseParams: G1 and G2 must be >= 0");
}

double NoiseParams::multiplier(double reference_rate) const {
  if (coupling == CouplingConvention::Literal) return g2;
  if (g2 == 0.0) return 0.0;
  if (!(reference_rate > 0.0))
    throw ValidationError("relative noise convention needs a positive reference rate");
  return g2 / reference_rate;
}

Mat environment_state(EnvInitial e) {
  switch (e) {
    case EnvInitial::Ground:
      return qops::outer(2, 0, 0);
    case EnvInitial::Mixed:
      return 0.5 * qops::eye(2);
    case EnvInitial::Plus:
      return Mat::Constant(2, 2, 0.5);
  }
  return qops::outer(2, 0, 0);
}

Mat environment_coupling() { return qops::pauli_x() + qops::pauli_y() + qops::pauli_z(); }

double SimConfig::resolve_dt(double max_frequency) const {
  if (max_frequency <= 0.0) return dt > 0.0 ? dt : std::numeric_limits<double>::infinity();
  const double period = 2.0 * kPi / max_frequency;
  if (dt > 0.0) {
    if (dt > period / 50.0)
      throw ValidationError("dt = " + std::to_string(dt) + " exceeds 1/50 of the fastest period " +
                            std::to_string(period));
    return dt;
  }
  if (steps_per_period < 50) throw ValidationError("steps_per_period must be >= 50");
  return period / steps_per_period;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw ValidationError("linspace needs at least two points");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

TimeDependentOperator constant_operator(const qops::ComplexOperator& h) {
  TimeDependentOperator op;
  op.space = h.space();
  const Mat m = h.matrix();
  op.eval = [m](double, double) { return m; };
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  op.max_frequency = ev.size() ? ev.maxCoeff() - ev.minCoeff() : 0.0;
  return op;
}

TimeDependentOperator compose_total(const TimeDependentOperator& control,
                                    const TimeDependentOperator& coupling, double g1,
                                    double g2_factor) {
  if (control.space != coupling.space)
    throw DimensionError("compose_total: control and coupling act on different spaces");
  TimeDependentOperator total;
  total.space = control.space.concat(qops::HilbertSpace({2}));
  const Mat s = environment_coupling();
  const Mat i2 = qops::eye(2);
  const Mat env_term = g1 * qops::kron(qops::eye(control.space.total()), s);
  auto ctrl = control.eval;
  auto coup = coupling.eval;
  total.eval = [=](double t, double anchor) {
    Mat h = qops::kron(ctrl(t, anchor), i2);
    if (g1 != 0.0) h += env_term;
    if (g2_factor != 0.0) h += g2_factor * qops::kron(coup(t, anchor), s);
    return h;
  };
  total.breakpoints = control.breakpoints;
  total.breakpoints.insert(total.breakpoints.end(), coupling.breakpoints.begin(),
                           coupling.breakpoints.end());
  // Spectral width of S is 2 sqrt(3).
  total.max_frequency = control.max_frequency + 2.0 * std::sqrt(3.0) * g1 +
                        std::sqrt(3.0) * std::abs(g2_factor) * coupling.max_frequency;
  return total;
}

TimeDependentOperator compose_total(const TimeDependentOperator& h_sys, const NoiseParams& noise,
                                    double reference_rate) {
  noise.validate();
  return compose_total(h_sys, h_sys, noise.g1, noise.multiplier(reference_rate));
}

namespace {

struct Grid {
  std::vector<double> points;
  double tol = 0.0;
};

Grid build_grid(const TimeDependentOperator& h, const std::vector<double>& samples,
                const std::vector<Event>& events) {
  if (samples.size() < 2) throw ValidationError("need at least two sample times");
  if (!std::is_sorted(samples.begin(), samples.end()))
    throw ValidationError("sample times must be sorted");
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].time < events[i - 1].time) throw ValidationError("events must be sorted by time");
  const double t0 = samples.front();
  const double t1 = samples.back();
  if (!(t1 > t0)) throw ValidationError("sample window is empty");
  Grid g;
  g.tol = 1e-12 * std::max(1.0, std::abs(t1 - t0));
  std::vector<double> p = samples;
  for (double b : h.breakpoints)
    if (b > t0 && b < t1) p.push_back(b);
  for (const auto& e : events)
    if (e.time >= t0 && e.time <= t1) p.push_back(e.time);
  std::sort(p.begin(), p.end());
  for (double x : p)
    if (g.points.empty() || x - g.points.back() > g.tol) g.points.push_back(x);
  return g;
}

// Fixed-step integration shared by the state, density-matrix and
// propagator drivers. `deriv(H, x)` gives dx/dt, `apply(U, x)` applies a
// unitary, `sample(i, x)` records output and `check(x)` runs after every
// grid interval.
template <class State, class Deriv, class Apply, class Sample, class Check>
long long integrate(const TimeDependentOperator& h, State& x, const std::vector<double>& samples,
                    const std::vector<Event>& events, const SimConfig& cfg, Deriv deriv,
                    Apply apply, Sample sample, Check check) {
  if (!h.eval) throw ValidationError("time-dependent operator has no evaluator");
  const Grid grid = build_grid(h, samples, events);
  const double dt = cfg.resolve_dt(h.max_frequency);
  const double t0 = samples.front();
  std::size_t ev = 0;
  while (ev < events.size() && events[ev].time < t0 - grid.tol) ++ev;
  std::size_t si = 0;
  long long steps = 0;
  const auto& pts = grid.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double p = pts[i];
    while (ev < events.size() && events[ev].time <= p + grid.tol) {
      x = apply(events[ev].unitary, x);
      ++ev;
    }
    while (si < samples.size() && samples[si] <= p + grid.tol) {
      sample(si, x);
      ++si;
    }
    if (i + 1 == pts.size()) break;
    const double q = pts[i + 1];
    const double len = q - p;
    const long long n = std::max<long long>(1, static_cast<long long>(std::ceil(len / dt - 1e-9)));
    const double hs = len / static_cast<double>(n);
    const double anchor = 0.5 * (p + q);
    if (cfg.integrator == Integrator::RK4) {
      Mat ha = h.eval(p, anchor);
      for (long long k = 0; k < n; ++k) {
        const double t = p + hs * static_cast<double>(k);
        const double tb = k + 1 == n ? q : t + hs;
        const Mat hm = h.eval(t + 0.5 * hs, anchor);
        const Mat hb = h.eval(tb, anchor);
        const State k1 = deriv(ha, x);
        const State k2 = deriv(hm, State(x + (0.5 * hs) * k1));
        const State k3 = deriv(hm, State(x + (0.5 * hs) * k2));
        const State k4 = deriv(hb, State(x + hs * k3));
        x += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ha = hb;
      }
    } else {
      for (long long k = 0; k < n; ++k) {
        const double t = p + hs * static_cast<double>(k);
        const Mat u = qops::expm(-kI * hs * h.eval(t + 0.5 * hs, anchor));
        x = apply(u, x);
      }
    }
    steps += n;
    if (!x.allFinite()) throw NumericalError("propagation produced non-finite values");
    check(x);
  }
  return steps;
}

}  // namespace

Trajectory propagate_liouville(const TimeDependentOperator& h, const qops::DensityMatrix& rho0,
                               const std::vector<double>& sample_times,
                               const std::vector<Event>& events, const SimConfig& cfg) {
  if (rho0.space() != h.space)
    throw DimensionError("propagate_liouville: state and Hamiltonian spaces differ");
  Trajectory tr;
  tr.times = sample_times;
  Mat rho = rho0.matrix();
  const cplx tr0 = rho.trace();
  auto check = [&](const Mat& r) {
    tr.diag.max_trace_drift = std::max(tr.diag.max_trace_drift, std::abs(r.trace() - tr0));
    tr.diag.max_hermiticity_drift =
        std::max(tr.diag.max_hermiticity_drift, (r - r.adjoint()).cwiseAbs().maxCoeff());
  };
  check(rho);
  tr.diag.steps = integrate(
      h, rho, sample_times, events, cfg,
      [](const Mat& hh, const Mat& r) -> Mat {
        Mat c = hh * r;
        c -= r * hh;
        return -kI * c;
      },
      [](const Mat& u, const Mat& r) -> Mat { return u * r * u.adjoint(); },
      [&](std::size_t, const Mat& r) {
        check(r);
        tr.states.push_back(qops::DensityMatrix::unchecked(h.space, r));
      },
      check);
  return tr;
}

StateTrajectory propagate_state(const TimeDependentOperator& h, const Vec& psi0,
                                const std::vector<double>& sample_times,
                                const std::vector<Event>& events, const SimConfig& cfg) {
  if (psi0.size() != h.space.total())
    throw DimensionError("propagate_state: state and Hamiltonian sizes differ");
  StateTrajectory tr;
  tr.times = sample_times;
  Vec psi = psi0;
  tr.steps = integrate(
      h, psi, sample_times, events, cfg,
      [](const Mat& hh, const Vec& v) -> Vec { return -kI * (hh * v); },
      [](const Mat& u, const Vec& v) -> Vec { return u * v; },
      [&](std::size_t, const Vec& v) { tr.states.push_back(v); }, [](const Vec&) {});
  return tr;
}

Mat propagate_unitary(const TimeDependentOperator& h, double t0, double t1,
                      const std::vector<Event>& events, const SimConfig& cfg) {
  Mat u = Mat::Identity(h.space.total(), h.space.total());
  integrate(
      h, u, {t0, t1}, events, cfg, [](const Mat& hh, const Mat& x) -> Mat { return -kI * (hh * x); },
      [](const Mat& p, const Mat& x) -> Mat { return p * x; }, [](std::size_t, const Mat&) {},
      [](const Mat&) {});
  return u;
}

void RunDiagnostics::merge(const RunDiagnostics& o) {
  max_trace_drift = std::max(max_trace_drift, o.max_trace_drift);
  max_hermiticity_drift = std::max(max_hermiticity_drift, o.max_hermiticity_drift);
  min_eigenvalue = std::min(min_eigenvalue, o.min_eigenvalue);
  max_population_error = std::max(max_population_error, o.max_population_error);
}

namespace {

// Everything run_gate needs about one model: the designed Hamiltonian on
// the system, where the logical qubit lives, and how fast things move.
struct SystemModel {
  qops::HilbertSpace space{std::vector<int>{1}};
  dd::LogicalEmbedding emb;
  std::function<Mat(double, double)> design;
  double max_frequency = 0.0;
  // Basis indices reported as populations, with labels.
  std::vector<int> tracked;
  std::vector<std::string> labels;
  int initial = 0;
};

SystemModel build_model(const GateSpec& spec) {
  const geometric::PathSchedule sched = spec.schedule;
  geometric::validate_schedule(sched, geometric::JumpRule::Anywhere);
  const double peak = geometric::peak_rate(sched);
  SystemModel m;
  auto logical = [sched](double t, double anchor) {
    const std::size_t k = geometric::segment_index(sched, anchor);
    return geometric::logical_hamiltonian(geometric::control_fields_in(sched, k, t));
  };
  switch (spec.model) {
    case GateModel::Logical1Q: {
      m.space = qops::HilbertSpace({2});
      m.emb = {2, 0, 1};
      m.design = logical;
      m.max_frequency = peak;
      m.tracked = {0, 1};
      m.labels = {"P0", "P1"};
      const int init = spec.initial_index < 0 ? 0 : spec.initial_index;
      if (init > 1) throw ValidationError("initial_index must be 0 or 1 for one qubit");
      m.initial = init;
      break;
    }
    case GateModel::Logical2Q: {
      m.space = qops::HilbertSpace({2, 2});
      m.emb = {4, 1, 2};
      const dd::LogicalEmbedding emb = m.emb;
      m.design = [logical, emb](double t, double anchor) {
        return dd::embed_block(logical(t, anchor), emb);
      };
      m.max_frequency = peak;
      m.tracked = {0, 1, 2, 3};
      m.labels = {"P00", "P01", "P10", "P11"};
      const int init = spec.initial_index < 0 ? 1 : spec.initial_index;
      if (init > 3) throw ValidationError("initial_index must be in 0..3 for two qubits");
      m.initial = init;
      break;
    }
    case GateModel::FourLevel: {
      for (const auto& seg : sched.segments)
        if (seg.phi_end)
          throw ValidationError("four-level model supports piecewise-constant phi only");
      const siv::PhononParams ph = spec.phonon;
      ph.validate(true);
      const double delta = spec.raman_delta;
      const int nf = ph.n_max + 1;
      m.space = qops::HilbertSpace({4, nf});
      const auto li = siv::logical_indices(ph.n_max);
      m.emb = {4 * nf, li[0], li[1]};
      m.design = [sched, ph, delta](double t, double anchor) {
        const std::size_t k = geometric::segment_index(sched, anchor);
        const cplx oc = geometric::control_fields_in(sched, k, t).omega;
        const cplx om = siv::raman_for_logical_control(oc, ph, delta);
        return siv::build_four_level_hamiltonian(t, om, ph, delta).matrix();
      };
      const double raman_peak = std::abs(siv::raman_for_logical_control(peak, ph, delta));
      m.max_frequency = std::max({std::abs(ph.delta_big1), std::abs(ph.delta_big2), std::abs(delta)}) +
                        raman_peak + 2.0 * ph.g * std::sqrt(static_cast<double>(ph.n_max));
      m.tracked = {li[0], li[1]};
      m.labels = {"P0", "P1"};
      const int init = spec.initial_index < 0 ? 0 : spec.initial_index;
      if (init > 1) throw ValidationError("initial_index must be 0 or 1 for one qubit");
      m.initial = li[init];
      break;
    }
  }
  return m;
}

TimeDependentOperator design_operator(const SystemModel& m, const geometric::PathSchedule& s) {
  TimeDependentOperator op;
  op.space = m.space;
  op.eval = m.design;
  const auto b = s.boundaries();
  op.breakpoints.assign(b.begin() + 1, b.end() - 1);
  op.max_frequency = m.max_frequency;
  return op;
}

TimeDependentOperator applied_operator(const SystemModel& m, const TimeDependentOperator& design,
                                       const dd::InjectionPlan& plan) {
  if (plan.mode == dd::InjectionMode::Naive || plan.events.empty()) return design;
  std::vector<Mat> frames;
  for (const auto& f : plan.frames) frames.push_back(dd::embed_unitary(f, m.emb));
  TimeDependentOperator op = design;
  auto d = design.eval;
  op.eval = [d, frames, plan](double t, double anchor) {
    const Mat& q = frames[plan.interval_at(anchor)];
    return Mat(q * d(t, anchor) * q.adjoint());
  };
  for (const auto& e : plan.events) op.breakpoints.push_back(e.time);
  return op;
}

std::vector<Event> system_events(const SystemModel& m, const dd::InjectionPlan& plan) {
  std::vector<Event> ev;
  for (const auto& e : plan.events)
    ev.push_back({e.time, dd::pulse_unitary(e.axis, m.emb)});
  return ev;
}

}  // namespace

Mat target_on_system(const GateSpec& spec) {
  const SystemModel m = build_model(spec);
  const geometric::GateTarget g = geometric::gate_target(spec.schedule, qubit_count(spec.model));
  const Mat u = geometric::target_unitary(g).matrix();
  if (spec.model == GateModel::Logical2Q) return u;
  return dd::embed_unitary(u, m.emb);
}

Mat noiseless_unitary(const GateSpec& spec, const dd::DDSequence& seq, const SimConfig& cfg) {
  const SystemModel m = build_model(spec);
  const double T = spec.schedule.duration();
  const dd::InjectionPlan plan = dd::inject(T, seq, spec.mode, spec.schedule.boundaries());
  const TimeDependentOperator design = design_operator(m, spec.schedule);
  const TimeDependentOperator applied = applied_operator(m, design, plan);
  return propagate_unitary(applied, 0.0, T, system_events(m, plan), cfg);
}

FidelityReport run_gate(const GateSpec& spec, const dd::DDSequence& seq, const NoiseParams& noise,
                        const SimConfig& cfg) {
  noise.validate();
  const SystemModel m = build_model(spec);
  const auto& sched = spec.schedule;
  const double T = sched.duration();
  const double ref = spec.reference_rate > 0.0 ? spec.reference_rate : geometric::peak_rate(sched);
  const dd::InjectionPlan plan = dd::inject(T, seq, spec.mode, sched.boundaries());

  const TimeDependentOperator design = design_operator(m, sched);
  const TimeDependentOperator applied = applied_operator(m, design, plan);
  const TimeDependentOperator total =
      compose_total(applied, design, noise.g1, noise.multiplier(ref));

  const std::vector<Event> sys_ev = system_events(m, plan);
  std::vector<Event> full_ev;
  for (const auto& e : sys_ev) full_ev.push_back({e.time, qops::kron(e.unitary, qops::eye(2))});

  const int d = m.space.total();
  Vec psi0 = Vec::Zero(d);
  psi0(m.initial) = 1.0;
  const Mat rho0 = qops::kron(psi0 * psi0.adjoint(), environment_state(noise.env_initial));
  const std::vector<double> samples = linspace(0.0, T, std::max(2, cfg.samples));

  const Trajectory tr = propagate_liouville(
      total, qops::DensityMatrix::unchecked(total.space, rho0), samples, full_ev, cfg);
  const StateTrajectory ref_tr = propagate_state(applied, psi0, samples, sys_ev, cfg);

  FidelityReport rep;
  rep.gate_label = sched.label;
  rep.dd_label = dd::to_string(seq.label);
  rep.noise = noise;
  rep.duration = T;
  rep.times = samples;
  rep.population_labels = m.labels;
  rep.populations.assign(m.tracked.size(), {});
  rep.warnings = plan.warnings;
  rep.diag.max_trace_drift = tr.diag.max_trace_drift;
  rep.diag.max_hermiticity_drift = tr.diag.max_hermiticity_drift;

  std::vector<int> keep(m.space.subsystems());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);
  qops::DensityMatrix rho_sys = qops::DensityMatrix::unchecked(m.space, Mat::Zero(d, d));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rho_sys = qops::partial_trace(tr.states[i], keep);
    const Mat& r = rho_sys.matrix();
    double logical = 0.0;
    for (std::size_t k = 0; k < m.tracked.size(); ++k) {
      const double p = r(m.tracked[k], m.tracked[k]).real();
      rep.populations[k].push_back(p);
      logical += p;
    }
    double leak = 0.0;
    for (int j = 0; j < d; ++j)
      if (std::find(m.tracked.begin(), m.tracked.end(), j) == m.tracked.end()) leak += r(j, j).real();
    rep.leakage_trace.push_back(leak);
    rep.diag.max_population_error =
        std::max(rep.diag.max_population_error, std::abs(logical + leak - 1.0));
    const Vec& v = ref_tr.states[i];
    rep.fidelity_trace.push_back(v.dot(r * v).real() / v.squaredNorm());
  }

  const Vec ideal = target_on_system(spec) * psi0;
  rep.final_fidelity =
      qops::state_fidelity(qops::StateVector::normalize(m.space, ideal), rho_sys, cfg.tol);
  rep.leakage = rep.leakage_trace.back();
  rep.diag.min_eigenvalue =
      std::min(tr.states.back().check().min_eigenvalue, rho_sys.check().min_eigenvalue);
  return rep;
}

SweepSurface sweep(const GateSpec& spec, const dd::DDSequence& seq,
                   const std::vector<double>& g1_values, const std::vector<double>& g2_values,
                   const NoiseParams& base, const SimConfig& cfg, unsigned threads) {
  if (g1_values.empty() || g2_values.empty()) throw ValidationError("sweep: empty range");
  SweepSurface s;
  s.g1_values = g1_values;
  s.g2_values = g2_values;
  const std::size_t n1 = g1_values.size();
  const std::size_t n2 = g2_values.size();
  s.fidelity.assign(n1, std::vector<double>(n2, 0.0));
  std::vector<RunDiagnostics> diags(n1 * n2);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n1 * n2));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t c = next++; c < n1 * n2; c = next++) {
      try {
        NoiseParams n = base;
        n.g1 = g1_values[c / n2];
        n.g2 = g2_values[c % n2];
        const FidelityReport r = run_gate(spec, seq, n, cfg);
        s.fidelity[c / n2][c % n2] = r.final_fidelity;
        diags[c] = r.diag;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  for (const auto& dg : diags) s.diag.merge(dg);
  return s;
}

}  // namespace geomdd::evolve
