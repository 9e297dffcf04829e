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

#include <gtest/gtest.h>

#include <random>

#include "geomdd/dd.hpp"
#include "geomdd/errors.hpp"

namespace geomdd::dd {
namespace {

using qops::cplx;
using qops::kI;
using qops::Vec;

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Mat random_hermitian(std::mt19937_64& rng, double norm) {
  std::normal_distribution<double> nd;
  Mat m(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  Mat h = 0.5 * (m + m.adjoint());
  return h * (norm / qops::operator_norm(h));
}

bool proportional_to_identity(const Mat& p) {
  const cplx ph = p(0, 0) / std::abs(p(0, 0));
  return max_abs(p * std::conj(ph) - qops::eye(static_cast<int>(p.rows()))) < 1e-12;
}

TEST(PulseUnitary, SquaresToMinusIdentity) {
  for (auto a : {PulseAxis::X, PulseAxis::Y, PulseAxis::Z}) {
    const Mat p = pulse_unitary(a);
    EXPECT_LT(max_abs(p * p + qops::eye(2)), 1e-15);
    EXPECT_LT(max_abs(p * p.adjoint() - qops::eye(2)), 1e-14);
  }
}

TEST(PulseUnitary, FollowsPauliAlgebra) {
  // (-i Z)(-i X) = -Z X = -i Y.
  EXPECT_LT(max_abs(pulse_unitary(PulseAxis::Z) * pulse_unitary(PulseAxis::X) - pulse_unitary(PulseAxis::Y)),
            1e-15);
}

TEST(PulseUnitary, EmbeddingLeavesOtherLevelsAlone) {
  const LogicalEmbedding emb{6, 1, 4};
  const Mat p = pulse_unitary(PulseAxis::X, emb);
  EXPECT_LT(max_abs(p * p.adjoint() - qops::eye(6)), 1e-15);
  EXPECT_EQ(p(0, 0), cplx(1.0, 0.0));
  EXPECT_EQ(p(1, 4), -kI);
  EXPECT_EQ(p(4, 1), -kI);
  EXPECT_THROW(pulse_unitary(PulseAxis::X, LogicalEmbedding{3, 1, 1}), DimensionError);
}

TEST(PulseUnitary, ActsAsIdentityOnEnvironment) {
  // Reduced action on the environment factor of P x I is proportional to I.
  const Mat full = qops::kron(pulse_unitary(PulseAxis::Y), qops::eye(2));
  Mat env = Mat::Zero(2, 2);
  for (int s = 0; s < 2; ++s) env += full.block(2 * s, 2 * s, 2, 2);
  EXPECT_LT(max_abs(env - env(0, 0) * qops::eye(2)), 1e-15);
}

TEST(MakeSequence, PulseCountsAndClosure) {
  EXPECT_EQ(make_sequence(SequenceLabel::None).pulses.size(), 0u);
  EXPECT_EQ(make_sequence(SequenceLabel::XY4).pulses.size(), 4u);
  EXPECT_EQ(make_sequence(SequenceLabel::XY8).pulses.size(), 8u);
  EXPECT_EQ(make_sequence(SequenceLabel::XY12).pulses.size(), 12u);
  EXPECT_EQ(make_sequence(SequenceLabel::XY4, 7).pulses.size(), 28u);
  for (auto fam : {XYFamily::Repeated, XYFamily::Standard})
    for (auto l : {SequenceLabel::XY4, SequenceLabel::XY8, SequenceLabel::XY12, SequenceLabel::ZXZX})
      for (int p : {1, 2, 7})
        EXPECT_TRUE(proportional_to_identity(sequence_product(make_sequence(l, p, fam))));
}

TEST(MakeSequence, StandardXY8IsXY4ThenMirror) {
  const DDSequence s = make_sequence(SequenceLabel::XY8, 1, XYFamily::Standard);
  const std::string axes = [&] {
    std::string a;
    for (const auto& p : s.pulses) a += to_char(p.axis);
    return a;
  }();
  EXPECT_EQ(axes, "xyxyyxyx");
  const DDSequence r = make_sequence(SequenceLabel::XY8, 1, XYFamily::Repeated);
  std::string ra;
  for (const auto& p : r.pulses) ra += to_char(p.axis);
  EXPECT_EQ(ra, "xyxyxyxy");
}

TEST(MakeSequence, PulsesAtOddFractions) {
  const DDSequence s = make_sequence(SequenceLabel::XY4, 2);
  for (std::size_t k = 0; k < s.pulses.size(); ++k)
    EXPECT_NEAR(s.pulses[k].time_fraction, (2.0 * k + 1) / 16.0, 1e-15);
  EXPECT_THROW(make_sequence(SequenceLabel::XY4, 0), ValidationError);
}

TEST(DDSequence, ValidateRejectsNonIdentityProduct) {
  DDSequence s = make_sequence(SequenceLabel::XY4);
  s.pulses.pop_back();
  EXPECT_THROW(s.validate(), ValidationError);
  DDSequence unordered = make_sequence(SequenceLabel::XY4);
  std::swap(unordered.pulses[0].time_fraction, unordered.pulses[1].time_fraction);
  EXPECT_THROW(unordered.validate(), ValidationError);
}

TEST(Inject, NoneIsEmpty) {
  const InjectionPlan p = inject(4.0, make_sequence(SequenceLabel::None), InjectionMode::Toggled);
  EXPECT_TRUE(p.events.empty());
  EXPECT_EQ(p.frames.size(), 1u);
  EXPECT_LT(max_abs(p.control(qops::pauli_x(), 1.0) - qops::pauli_x()), 1e-15);
}

TEST(Inject, FramesConjugateControl) {
  const InjectionPlan p = inject(8.0, make_sequence(SequenceLabel::XY4), InjectionMode::Toggled);
  ASSERT_EQ(p.events.size(), 4u);
  EXPECT_NEAR(p.events[0].time, 1.0, 1e-15);
  // After the first X pulse sigma_z flips sign.
  EXPECT_LT(max_abs(p.control(qops::pauli_z(), 0.5) - qops::pauli_z()), 1e-15);
  EXPECT_LT(max_abs(p.control(qops::pauli_z(), 1.5) + qops::pauli_z()), 1e-15);
  const InjectionPlan n = inject(8.0, make_sequence(SequenceLabel::XY4), InjectionMode::Naive);
  EXPECT_LT(max_abs(n.control(qops::pauli_z(), 1.5) - qops::pauli_z()), 1e-15);
}

TEST(Inject, BoundaryCollisionIsShiftedWithWarning) {
  const InjectionPlan p = inject(8.0, make_sequence(SequenceLabel::XY4), InjectionMode::Toggled, {0.0, 3.0, 8.0});
  EXPECT_EQ(p.warnings.size(), 1u);
  EXPECT_GT(p.events[1].time, 3.0);
  EXPECT_LT(p.events[1].time, 3.0 + 1e-7);
}

TEST(Inject, EventsCsv) {
  const InjectionPlan p = inject(8.0, make_sequence(SequenceLabel::XY4), InjectionMode::Toggled);
  EXPECT_EQ(events_to_csv(p), "time_us,axis\n1,x\n3,y\n5,x\n7,y\n");
}

TEST(Inject, NaiveXY4ProtectsIdleQubitCoherence) {
  // Idle qubit, static coupling 0.3 sigma_z x sigma_x to an environment qubit.
  const Mat h = 0.3 * qops::kron(qops::pauli_z(), qops::pauli_x());
  const double T = 4.0;
  Vec psi(4);
  psi << 1.0, 0.0, 1.0, 0.0;
  psi /= std::sqrt(2.0);
  auto coherence = [&](const Mat& u) {
    const Vec out = u * psi;
    const Mat rho = out * out.adjoint();
    return std::abs(rho(0, 2) + rho(1, 3));
  };
  const Mat free = qops::expm(-kI * T * h);
  const InjectionPlan plan = inject(T, make_sequence(SequenceLabel::XY4), InjectionMode::Naive);
  Mat u = qops::eye(4);
  double last = 0.0;
  for (const auto& e : plan.events) {
    u = qops::kron(pulse_unitary(e.axis), qops::eye(2)) * qops::expm(-kI * (e.time - last) * h) * u;
    last = e.time;
  }
  u = qops::expm(-kI * (T - last) * h) * u;
  EXPECT_GT(coherence(u), coherence(free));
  EXPECT_NEAR(coherence(u), 0.5, 1e-12);
}

TEST(DecouplingError, ZeroCouplingVanishes) {
  std::mt19937_64 rng(1);
  const std::array<Mat, 3> b{Mat::Zero(2, 2), Mat::Zero(2, 2), Mat::Zero(2, 2)};
  for (double tau : {1e-3, 0.1, 1.0})
    for (auto o : {DecouplingOrder::ZXZX, DecouplingOrder::XY4})
      EXPECT_LT(decoupling_error(tau, b, random_hermitian(rng, 2.0), o), 1e-12);
}

TEST(DecouplingError, MatchesEightExponentialProduct) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const std::array<Mat, 3> b{random_hermitian(rng, 1.0), random_hermitian(rng, 1.0), random_hermitian(rng, 1.0)};
    const Mat he = random_hermitian(rng, 0.7);
    const double tau = 0.1;
    const Mat h = qops::kron(qops::pauli_x(), b[0]) + qops::kron(qops::pauli_y(), b[1]) +
                  qops::kron(qops::pauli_z(), b[2]) + qops::kron(qops::eye(2), he);
    // Z f X f Z f X f with pulses as exp(-i pi/2 sigma) x I, read right to left.
    const Mat f = qops::expm(-kI * tau * h);
    const Mat px = qops::expm(-kI * (qops::kPi / 2) * qops::kron(qops::pauli_x(), qops::eye(2)));
    const Mat pz = qops::expm(-kI * (qops::kPi / 2) * qops::kron(qops::pauli_z(), qops::eye(2)));
    const Mat brute = pz * f * px * f * pz * f * px * f;
    EXPECT_LT(max_abs(decoupling_propagator(tau, b, he, DecouplingOrder::ZXZX) - brute), 1e-12);
  }
}

TEST(DecouplingError, QuadraticScaling) {
  std::mt19937_64 rng(4);
  const std::array<Mat, 3> b{random_hermitian(rng, 1.0), random_hermitian(rng, 1.0), random_hermitian(rng, 1.0)};
  const Mat he = random_hermitian(rng, 1.0);
  for (auto o : {DecouplingOrder::ZXZX, DecouplingOrder::XY4}) {
    const double ratio = decoupling_error(0.5e-3, b, he, o) / decoupling_error(1e-3, b, he, o);
    EXPECT_NEAR(ratio, 0.25, 0.01);
    std::vector<double> taus, errs;
    for (int i = 0; i <= 8; ++i) {
      taus.push_back(1e-4 * std::pow(10.0, i / 4.0));
      errs.push_back(decoupling_error(taus.back(), b, he, o));
    }
    const double slope = fit_loglog(taus, errs).slope;
    EXPECT_GE(slope, 1.8);
    EXPECT_LE(slope, 2.2);
  }
}

TEST(FitLogLog, ExactPowerLawAndUnderflow) {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  const LogLogFit f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, 3.0, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_THROW(fit_loglog(x, {1.0, 1e-20, 1.0, 1.0}), NumericalError);
  EXPECT_THROW(fit_loglog({1.0}, {1.0}), ValidationError);
}

}  // namespace
}  // namespace geomdd::dd
