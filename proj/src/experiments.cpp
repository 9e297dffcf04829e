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

#include "geomdd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "geomdd/errors.hpp"
#include "geomdd/geometric.hpp"
#include "geomdd/siv_model.hpp"

namespace geomdd::cli {

using nlohmann::json;
using qops::cplx;
using qops::Mat;
using qops::Vec;
using siv::khz;
using siv::mhz;
using siv::to_mhz;

namespace {

siv::PhononParams phonon(const ExperimentConfig& c) {
  const auto& p = c.physical;
  return {mhz(p.g_mhz), mhz(p.delta1_mhz), mhz(p.delta2_mhz), p.n_max};
}

double effective_rate(const ExperimentConfig& c) {
  return std::abs(siv::effective_rabi(mhz(c.physical.omega_mhz), phonon(c), mhz(c.physical.delta_mhz)));
}

double exchange(const ExperimentConfig& c) {
  return siv::exchange_rate(effective_rate(c), mhz(c.physical.lambda1_mhz), mhz(c.physical.lambda2_mhz));
}

evolve::TimeDependentOperator time_operator(const qops::HilbertSpace& space,
                                            std::function<Mat(double)> f, double max_frequency) {
  evolve::TimeDependentOperator op;
  op.space = space;
  op.eval = [f](double t, double) { return f(t); };
  op.max_frequency = max_frequency;
  return op;
}

double population(const Vec& psi, int i) { return std::norm(psi(i)); }

void track_norm(evolve::RunDiagnostics& d, const std::vector<Vec>& states) {
  for (const auto& s : states)
    d.max_population_error = std::max(d.max_population_error, std::abs(s.squaredNorm() - 1.0));
}

struct NoisyExchange {
  std::vector<double> times;
  std::vector<double> ref01, ref10, p01, p10;
  double max_dev = 0.0;
  evolve::RunDiagnostics diag;
  std::vector<std::string> warnings;
};

// Effective exchange over [0, window] with the environment attached, and
// the noiseless run with the same pulses as reference.
NoisyExchange run_noisy_exchange(const evolve::TimeDependentOperator& design, double window,
                                 const dd::DDSequence& seq, const ExperimentConfig& c,
                                 double reference_rate, const evolve::SimConfig& cfg) {
  const dd::LogicalEmbedding emb{4, 1, 2};
  const evolve::NoiseParams noise = gate_noise(c, 2);
  const dd::InjectionPlan plan = dd::inject(window, seq, dd::mode_from_string(c.dd.mode));
  evolve::TimeDependentOperator applied = design;
  if (plan.mode == dd::InjectionMode::Toggled && !plan.events.empty()) {
    std::vector<Mat> frames;
    for (const auto& f : plan.frames) frames.push_back(dd::embed_unitary(f, emb));
    auto d = design.eval;
    applied.eval = [d, frames, plan](double t, double anchor) {
      const Mat& q = frames[plan.interval_at(anchor)];
      return Mat(q * d(t, anchor) * q.adjoint());
    };
    for (const auto& e : plan.events) applied.breakpoints.push_back(e.time);
  }
  std::vector<evolve::Event> sys_ev, full_ev;
  for (const auto& e : plan.events) {
    sys_ev.push_back({e.time, dd::pulse_unitary(e.axis, emb)});
    full_ev.push_back({e.time, qops::kron(sys_ev.back().unitary, qops::eye(2))});
  }
  const evolve::TimeDependentOperator total =
      evolve::compose_total(applied, design, noise.g1, noise.multiplier(reference_rate));

  Vec psi0 = Vec::Zero(4);
  psi0(1) = 1.0;
  const Mat rho0 = qops::kron(psi0 * psi0.adjoint(), evolve::environment_state(noise.env_initial));
  const auto samples = evolve::linspace(0.0, window, std::max(2, cfg.samples));
  const auto tr = evolve::propagate_liouville(
      total, qops::DensityMatrix::unchecked(total.space, rho0), samples, full_ev, cfg);
  const auto ref = evolve::propagate_state(applied, psi0, samples, sys_ev, cfg);

  NoisyExchange r;
  r.times = samples;
  r.warnings = plan.warnings;
  r.diag.max_trace_drift = tr.diag.max_trace_drift;
  r.diag.max_hermiticity_drift = tr.diag.max_hermiticity_drift;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const qops::DensityMatrix red = qops::partial_trace(tr.states[i], {0, 1});
    const Mat& m = red.matrix();
    r.p01.push_back(m(1, 1).real());
    r.p10.push_back(m(2, 2).real());
    r.ref01.push_back(population(ref.states[i], 1));
    r.ref10.push_back(population(ref.states[i], 2));
    r.max_dev = std::max({r.max_dev, std::abs(r.p01.back() - r.ref01.back()),
                          std::abs(r.p10.back() - r.ref10.back())});
    r.diag.max_population_error =
        std::max(r.diag.max_population_error, std::abs(m.trace().real() - 1.0));
    if (i + 1 == samples.size()) r.diag.min_eigenvalue = std::min(tr.states[i].check().min_eigenvalue,
                                                                  red.check().min_eigenvalue);
  }
  return r;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot open " + p.string() + " for writing");
  f << content;
  if (!f) throw Error("failed writing " + p.string());
}

json diag_json(const evolve::RunDiagnostics& d) {
  return {{"max_trace_drift", d.max_trace_drift},
          {"max_hermiticity_drift", d.max_hermiticity_drift},
          {"min_eigenvalue", d.min_eigenvalue},
          {"max_population_error", d.max_population_error}};
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Table::to_csv() const {
  std::string s;
  auto line = [&s](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    s += "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return s;
}

evolve::GateSpec gate_spec(const ExperimentConfig& c) {
  const auto& g = c.gate;
  geometric::ScheduleOptions opt;
  opt.profile = geometric::profile_from_string(g.profile);
  opt.omega_max = effective_rate(c);
  if (!(opt.omega_max > 0.0)) throw ValidationError("gate: effective drive rate is zero (g or omega is 0)");
  evolve::GateSpec spec;
  if (g.name == "iswap") {
    opt.omega_max = exchange(c);
    spec.schedule = geometric::schedule_iswap(opt);
    spec.model = evolve::GateModel::Logical2Q;
  } else {
    spec.schedule = g.name == "not"
                        ? geometric::schedule_not_gate(g.theta0, opt)
                        : geometric::schedule_phase_gate(
                              g.phi0, opt, geometric::phase_variant_from_string(g.phase_variant));
    spec.model = g.model == "four-level" ? evolve::GateModel::FourLevel : evolve::GateModel::Logical1Q;
  }
  spec.reference_rate = opt.omega_max;
  spec.mode = dd::mode_from_string(c.dd.mode);
  spec.phonon = phonon(c);
  spec.raman_delta = mhz(c.physical.delta_mhz);
  spec.initial_index = g.initial_index;
  return spec;
}

evolve::NoiseParams gate_noise(const ExperimentConfig& c, int qubits) {
  const double fallback = qubits == 2 ? 1.0 : 40.0;
  evolve::NoiseParams n;
  n.g1 = khz(c.noise.g1_khz.value_or(fallback));
  n.g2 = khz(c.noise.g2_khz.value_or(fallback));
  n.env_initial = evolve::env_from_string(c.noise.env_initial);
  n.coupling = evolve::coupling_from_string(c.noise.coupling);
  n.validate();
  return n;
}

evolve::SimConfig sim_config(const ExperimentConfig& c) {
  evolve::SimConfig s;
  s.dt = c.sim.dt_us;
  s.steps_per_period = c.sim.steps_per_period;
  s.integrator = evolve::integrator_from_string(c.sim.integrator);
  s.n_max = c.physical.n_max;
  s.samples = c.sim.samples;
  return s;
}

std::vector<dd::DDSequence> dd_ladder(const ExperimentConfig& c) {
  const dd::SequenceLabel top = dd::sequence_from_string(c.dd.sequence);
  const dd::XYFamily fam = dd::family_from_string(c.dd.family);
  std::vector<dd::DDSequence> out{dd::make_sequence(dd::SequenceLabel::None, 1, fam)};
  for (auto l : {dd::SequenceLabel::XY4, dd::SequenceLabel::XY8, dd::SequenceLabel::XY12}) {
    if (static_cast<int>(l) > static_cast<int>(top)) break;
    out.push_back(dd::make_sequence(l, c.dd.periods, fam));
  }
  return out;
}

std::vector<double> sweep_scales(const SweepConfig& s) {
  std::vector<double> out{0.0};
  const int n = s.points - 1;
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 1.0 : static_cast<double>(i) / (n - 1);
    out.push_back(s.scale_max * std::pow(10.0, -s.decades * (1.0 - frac)));
  }
  out.back() = s.scale_max;
  return out;
}

CompareResult compare_models(const ExperimentConfig& c) {
  validate(c);
  const evolve::SimConfig cfg = sim_config(c);
  const siv::PhononParams ph = phonon(c);
  const double delta = mhz(c.physical.delta_mhz);
  const cplx omega = mhz(c.physical.omega_mhz);
  const cplx oeff = siv::effective_rabi(omega, ph, delta);
  const int n = ph.n_max;
  const int nf = n + 1;
  CompareResult r;
  r.qubits = c.compare.qubits;

  if (c.compare.qubits == 1) {
    // Without coupling there is no Rabi period; a 1 us window stands in.
    const double window = c.compare.periods * (std::abs(oeff) > 0.0 ? 2.0 * qops::kPi / std::abs(oeff) : 1.0);
    const double fmax_full = std::max({std::abs(ph.delta_big1), std::abs(ph.delta_big2), std::abs(delta)}) +
                             std::abs(omega) + 2.0 * ph.g * std::sqrt(static_cast<double>(n));
    const auto full = time_operator(
        qops::HilbertSpace({4, nf}),
        [omega, ph, delta](double t) { return siv::build_four_level_hamiltonian(t, omega, ph, delta).matrix(); },
        fmax_full);
    const double det = delta - ph.delta_big1;
    const auto eff = time_operator(
        qops::HilbertSpace({2, nf}),
        [oeff, det, n](double t) { return siv::build_effective_jc(t, oeff, det, n).matrix(); },
        std::abs(det) + std::abs(oeff) * std::sqrt(static_cast<double>(n)));
    const auto li = siv::logical_indices(n);
    Vec f0 = Vec::Zero(4 * nf), e0 = Vec::Zero(2 * nf);
    f0(li[0]) = 1.0;
    e0(li[0]) = 1.0;
    const auto samples = evolve::linspace(0.0, window, std::max(2, cfg.samples));
    const auto tf = evolve::propagate_state(full, f0, samples, {}, cfg);
    const auto te = evolve::propagate_state(eff, e0, samples, {}, cfg);
    track_norm(r.diag, tf.states);
    track_norm(r.diag, te.states);
    r.populations.header = {"t_us", "P0_full", "P1_full", "P0_eff", "P1_eff", "max_abs_dev"};
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double a0 = population(tf.states[i], li[0]), a1 = population(tf.states[i], li[1]);
      const double b0 = population(te.states[i], li[0]), b1 = population(te.states[i], li[1]);
      const double dev = std::max(std::abs(a0 - b0), std::abs(a1 - b1));
      r.max_abs_dev = std::max(r.max_abs_dev, dev);
      r.populations.rows.push_back({format_number(samples[i]), format_number(a0), format_number(a1),
                                    format_number(b0), format_number(b1), format_number(dev)});
    }
    return r;
  }

  const double l1 = mhz(c.physical.lambda1_mhz), l2 = mhz(c.physical.lambda2_mhz);
  const double o_ex = siv::exchange_rate(std::abs(oeff), l1, l2);
  const double window = c.compare.periods * (o_ex > 0.0 ? 2.0 * qops::kPi / o_ex : 1.0);
  const double fmax_full = std::max(std::abs(l1), std::abs(l2)) +
                           2.0 * std::abs(oeff) * std::sqrt(static_cast<double>(n));
  const auto full = time_operator(
      qops::HilbertSpace({2, 2, nf}),
      [oeff, l1, l2, n](double t) { return siv::build_two_siv_shared_mode(t, oeff, oeff, l1, l2, n).matrix(); },
      fmax_full);
  const double aeff = std::abs(oeff);
  siv::build_two_qubit_effective(0.0, aeff, l1, l2, siv::TwoQubitFrame::Lab, &r.warnings);
  const auto eff = time_operator(
      qops::HilbertSpace({2, 2}),
      [aeff, l1, l2](double t) {
        return siv::build_two_qubit_effective(t, aeff, l1, l2, siv::TwoQubitFrame::Lab).matrix();
      },
      o_ex + std::abs(l1 - l2));
  // |01>_L: SiV1 in |1>, SiV2 in |2>, mode empty.
  const int f01 = nf, f10 = 2 * nf;
  Vec f0 = Vec::Zero(4 * nf), e0 = Vec::Zero(4);
  f0(f01) = 1.0;
  e0(1) = 1.0;
  const auto samples = evolve::linspace(0.0, window, std::max(2, cfg.samples));
  const auto tf = evolve::propagate_state(full, f0, samples, {}, cfg);
  const auto te = evolve::propagate_state(eff, e0, samples, {}, cfg);
  track_norm(r.diag, tf.states);
  track_norm(r.diag, te.states);
  r.populations.header = {"t_us", "P01_full", "P10_full", "P01_eff", "P10_eff", "max_abs_dev"};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double a0 = population(tf.states[i], f01), a1 = population(tf.states[i], f10);
    const double b0 = population(te.states[i], 1), b1 = population(te.states[i], 2);
    const double dev = std::max(std::abs(a0 - b0), std::abs(a1 - b1));
    r.max_abs_dev = std::max(r.max_abs_dev, dev);
    r.populations.rows.push_back({format_number(samples[i]), format_number(a0), format_number(a1),
                                  format_number(b0), format_number(b1), format_number(dev)});
  }

  if (c.compare.with_noise) {
    r.has_noise_variant = true;
    dd::SequenceLabel label = dd::sequence_from_string(c.dd.sequence);
    if (label == dd::SequenceLabel::None) label = dd::SequenceLabel::XY4;
    const dd::DDSequence none = dd::make_sequence(dd::SequenceLabel::None);
    const dd::DDSequence seq = dd::make_sequence(label, c.dd.periods, dd::family_from_string(c.dd.family));
    const NoisyExchange a = run_noisy_exchange(eff, window, none, c, o_ex, cfg);
    const NoisyExchange b = run_noisy_exchange(eff, window, seq, c, o_ex, cfg);
    r.noisy_dev_none = a.max_dev;
    r.noisy_dev_dd = b.max_dev;
    r.diag.merge(a.diag);
    r.diag.merge(b.diag);
    r.warnings.insert(r.warnings.end(), b.warnings.begin(), b.warnings.end());
    const std::string tag = dd::to_string(label);
    r.noisy.header = {"t_us",          "P01_ref_none",  "P10_ref_none",  "P01_none",  "P10_none",
                      "P01_ref_" + tag, "P10_ref_" + tag, "P01_" + tag, "P10_" + tag};
    for (std::size_t i = 0; i < a.times.size(); ++i)
      r.noisy.rows.push_back({format_number(a.times[i]), format_number(a.ref01[i]), format_number(a.ref10[i]),
                              format_number(a.p01[i]), format_number(a.p10[i]), format_number(b.ref01[i]),
                              format_number(b.ref10[i]), format_number(b.p01[i]), format_number(b.p10[i])});
  }
  return r;
}

std::vector<evolve::FidelityReport> gate_ladder(const ExperimentConfig& c) {
  validate(c);
  const evolve::GateSpec spec = gate_spec(c);
  const evolve::NoiseParams noise = gate_noise(c, evolve::qubit_count(spec.model));
  const evolve::SimConfig cfg = sim_config(c);
  std::vector<evolve::FidelityReport> out;
  for (const auto& seq : dd_ladder(c)) out.push_back(evolve::run_gate(spec, seq, noise, cfg));
  return out;
}

SweepResult robustness_sweep(const ExperimentConfig& c) {
  validate(c);
  const evolve::GateSpec spec = gate_spec(c);
  const evolve::NoiseParams base = gate_noise(c, evolve::qubit_count(spec.model));
  const evolve::SimConfig cfg = sim_config(c);
  SweepResult r;
  r.scales = sweep_scales(c.sweep);
  std::vector<double> g1s, g2s;
  for (double s : r.scales) {
    g1s.push_back(s * base.g1);
    g2s.push_back(s * base.g2);
  }
  for (const auto& seq : dd_ladder(c)) {
    r.labels.push_back(dd::to_string(seq.label));
    r.surfaces.push_back(evolve::sweep(spec, seq, g1s, g2s, base, cfg, c.sweep.threads));
    r.diag.merge(r.surfaces.back().diag);
  }
  const auto& none = r.surfaces.front().fidelity;
  r.min_margin = r.surfaces.size() > 1 ? 1.0 : 0.0;
  for (std::size_t k = 1; k < r.surfaces.size(); ++k)
    for (std::size_t i = 0; i < g1s.size(); ++i)
      for (std::size_t j = 0; j < g2s.size(); ++j)
        r.min_margin = std::min(r.min_margin, r.surfaces[k].fidelity[i][j] - none[i][j]);
  for (std::size_t i = 0; i < g1s.size(); ++i)
    for (std::size_t j = 0; j < g2s.size(); ++j) {
      if (i > 0) r.max_unprotected_rise = std::max(r.max_unprotected_rise, none[i][j] - none[i - 1][j]);
      if (j > 0) r.max_unprotected_rise = std::max(r.max_unprotected_rise, none[i][j] - none[i][j - 1]);
    }
  return r;
}

std::vector<ScalingSeries> dd_scaling(const ExperimentConfig& c) {
  validate(c);
  const auto& s = c.dd_scaling;
  std::vector<double> taus;
  const double l0 = std::log10(s.tau_min_us), l1 = std::log10(s.tau_max_us);
  for (int i = 0; i < s.points; ++i) taus.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (s.points - 1)));

  // Hermitian 2x2 with Gaussian entries, rescaled to operator norm `norm`.
  auto random_hermitian = [](std::mt19937_64& rng, double norm) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat m(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    Mat h = 0.5 * (m + m.adjoint());
    const double on = qops::operator_norm(h);
    return on > 0.0 ? Mat(h * (norm / on)) : Mat(Mat::Zero(2, 2));
  };

  std::vector<ScalingSeries> out;
  for (const auto& order_name : s.orders) {
    const dd::DecouplingOrder order = dd::order_from_string(order_name);
    for (unsigned seed : s.seeds) {
      std::mt19937_64 rng(seed);
      std::array<Mat, 3> b;
      for (auto& m : b) m = random_hermitian(rng, mhz(s.coupling_mhz));
      const Mat he = random_hermitian(rng, mhz(s.env_mhz));
      ScalingSeries ser;
      ser.order = order_name;
      ser.seed = seed;
      ser.taus = taus;
      for (double tau : taus) ser.errors.push_back(dd::decoupling_error(tau, b, he, order));
      ser.slope = s.coupling_mhz > 0.0 ? dd::fit_loglog(taus, ser.errors).slope : 0.0;
      out.push_back(std::move(ser));
    }
  }
  return out;
}

WaveguideResult waveguide_g(const ExperimentConfig& c) {
  validate(c);
  const auto& w = c.waveguide;
  siv::WaveguideParams p;
  p.length = w.length_um * 1e-6;
  p.cross_section = w.width_nm * 1e-9 * w.height_nm * 1e-9;
  p.youngs_modulus = w.youngs_gpa * 1e9;
  p.poisson_ratio = w.poisson;
  p.mass_density = w.density_kg_m3;
  p.strain_sensitivity = 2.0 * qops::kPi * w.d_phz * 1e15;
  p.coupling_profile = w.xi;
  WaveguideResult r;
  const double omega = 2.0 * qops::kPi * w.mode_ghz * 1e9;
  r.velocity = siv::compression_velocity(p);
  r.wavenumber = omega / r.velocity;
  r.g = siv::waveguide_coupling(p, r.wavenumber, omega);
  return r;
}

std::vector<std::string> run_experiment(const ExperimentConfig& c, const std::filesystem::path& out) {
  validate(c);
  std::filesystem::create_directories(out);
  std::vector<Artifact> files;
  std::vector<std::string> warnings;
  json summary;

  if (c.experiment == "compare-models") {
    const CompareResult r = compare_models(c);
    const std::string tag = r.qubits == 1 ? "1q" : "2q";
    write_file(out / ("compare_models_" + tag + ".csv"), r.populations.to_csv());
    files.push_back({"compare_models_" + tag + ".csv",
                     r.qubits == 1 ? "full vs effective populations, single SiV"
                                   : "shared-mode vs effective populations, two SiVs",
                     "populations over the comparison window"});
    if (r.has_noise_variant) {
      write_file(out / "compare_models_2q_noise.csv", r.noisy.to_csv());
      files.push_back({"compare_models_2q_noise.csv", "noisy two-qubit exchange with and without DD",
                       "reduced populations against noiseless references carrying the same pulses"});
    }
    summary = {{"max_abs_dev", r.max_abs_dev}, {"diagnostics", diag_json(r.diag)}};
    if (r.has_noise_variant) {
      summary["noisy_max_dev_none"] = r.noisy_dev_none;
      summary["noisy_max_dev_dd"] = r.noisy_dev_dd;
    }
    warnings = r.warnings;
  } else if (c.experiment == "gate-fidelity") {
    const auto reps = gate_ladder(c);
    const std::string g = c.gate.name;
    Table fid, pop;
    fid.header = {"t_us"};
    pop.header = {"t_us"};
    for (const auto& r : reps) {
      fid.header.push_back("F_" + r.dd_label);
      for (const auto& l : r.population_labels) pop.header.push_back(l + "_" + r.dd_label);
      pop.header.push_back("leak_" + r.dd_label);
    }
    const auto& times = reps.front().times;
    for (std::size_t i = 0; i < times.size(); ++i) {
      std::vector<std::string> f{format_number(times[i])}, p{format_number(times[i])};
      for (const auto& r : reps) {
        f.push_back(format_number(r.fidelity_trace[i]));
        for (const auto& series : r.populations) p.push_back(format_number(series[i]));
        p.push_back(format_number(r.leakage_trace[i]));
      }
      fid.rows.push_back(std::move(f));
      pop.rows.push_back(std::move(p));
    }
    write_file(out / ("fidelity_" + g + ".csv"), fid.to_csv());
    write_file(out / ("populations_" + g + ".csv"), pop.to_csv());
    files.push_back({"fidelity_" + g + ".csv", "fidelity traces per DD level",
                     "overlap with the noiseless trajectory carrying the same pulses"});
    files.push_back({"populations_" + g + ".csv", "logical populations per DD level",
                     "reduced-state populations and leakage"});
    const evolve::GateSpec spec = gate_spec(c);
    write_file(out / ("schedule_" + g + ".json"), geometric::schedule_to_json(spec.schedule).dump(2) + "\n");
    files.push_back({"schedule_" + g + ".json", "gate path schedule", "segments and phi jumps"});
    const auto ladder = dd_ladder(c);
    const auto plan = dd::inject(spec.schedule.duration(), ladder.back(), spec.mode, spec.schedule.boundaries());
    write_file(out / ("pulses_" + g + ".csv"), dd::events_to_csv(plan));
    files.push_back({"pulses_" + g + ".csv", "pulse times of the highest DD level", "time_us,axis"});
    json levels = json::array();
    evolve::RunDiagnostics d;
    for (const auto& r : reps) {
      levels.push_back({{"dd", r.dd_label}, {"final_fidelity", r.final_fidelity}, {"leakage", r.leakage}});
      d.merge(r.diag);
      warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    }
    const auto& n = reps.front().noise;
    summary = {{"gate", g},
               {"duration_us", reps.front().duration},
               {"G1_MHz", to_mhz(n.g1)},
               {"G2_MHz", to_mhz(n.g2)},
               {"levels", levels},
               {"diagnostics", diag_json(d)}};
  } else if (c.experiment == "robustness-sweep") {
    const SweepResult r = robustness_sweep(c);
    Table t;
    t.header = {"dd", "G1_MHz", "G2_MHz", "F"};
    const auto& g1s = r.surfaces.front().g1_values;
    const auto& g2s = r.surfaces.front().g2_values;
    for (std::size_t k = 0; k < r.surfaces.size(); ++k)
      for (std::size_t i = 0; i < g1s.size(); ++i)
        for (std::size_t j = 0; j < g2s.size(); ++j)
          t.rows.push_back({r.labels[k], format_number(to_mhz(g1s[i])), format_number(to_mhz(g2s[j])),
                            format_number(r.surfaces[k].fidelity[i][j])});
    const std::string name = "robustness_" + c.gate.name + ".csv";
    write_file(out / name, t.to_csv());
    files.push_back({name, "final fidelity over the (G1, G2) grid per DD level", "long format, one row per cell"});
    summary = {{"min_margin", r.min_margin},
               {"max_unprotected_rise", r.max_unprotected_rise},
               {"scales", r.scales},
               {"diagnostics", diag_json(r.diag)}};
  } else if (c.experiment == "dd-scaling") {
    const auto series = dd_scaling(c);
    Table rows, fits;
    rows.header = {"order", "seed", "tau_us", "error_norm"};
    fits.header = {"order", "seed", "slope"};
    json slopes = json::array();
    for (const auto& s : series) {
      for (std::size_t i = 0; i < s.taus.size(); ++i)
        rows.rows.push_back({s.order, std::to_string(s.seed), format_number(s.taus[i]), format_number(s.errors[i])});
      fits.rows.push_back({s.order, std::to_string(s.seed), format_number(s.slope)});
      slopes.push_back({{"order", s.order}, {"seed", s.seed}, {"slope", s.slope}});
    }
    write_file(out / "dd_scaling.csv", rows.to_csv());
    write_file(out / "dd_scaling_fit.csv", fits.to_csv());
    files.push_back({"dd_scaling.csv", "decoupling error against tau", "operator-norm error per order and seed"});
    files.push_back({"dd_scaling_fit.csv", "fitted log-log slopes", "least squares in log space"});
    summary = {{"slopes", slopes}};
  } else {
    const WaveguideResult r = waveguide_g(c);
    Table t;
    t.header = {"mode_GHz", "velocity_m_per_s", "wavenumber_per_um", "g_MHz"};
    t.rows.push_back({format_number(c.waveguide.mode_ghz), format_number(r.velocity),
                      format_number(r.wavenumber * 1e-6), format_number(r.g / (2.0 * qops::kPi) * 1e-6)});
    write_file(out / "waveguide_g.csv", t.to_csv());
    files.push_back({"waveguide_g.csv", "SiV-phonon coupling strength", "g/2pi for one compression mode"});
    summary = {{"g_MHz", r.g / (2.0 * qops::kPi) * 1e-6}};
  }

  write_file(out / "config.json", to_json(c).dump(2) + "\n");
  json manifest;
  manifest["experiment"] = c.experiment;
  manifest["files"] = json::array();
  for (const auto& f : files)
    manifest["files"].push_back({{"file", f.file}, {"figure", f.figure}, {"description", f.description}});
  manifest["summary"] = summary;
  manifest["warnings"] = warnings;
  write_file(out / "manifest.json", manifest.dump(2) + "\n");
  return warnings;
}

}  // namespace geomdd::cli
