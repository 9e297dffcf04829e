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

#include "geomdd/errors.hpp"
#include "geomdd/siv_model.hpp"

namespace geomdd::siv {
namespace {

using qops::kI;
using qops::kPi;
using qops::Mat;

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

PhononParams default_phonon() { return {mhz(5.0), mhz(100.0), mhz(500.0), 2}; }

TEST(GroundEnergies, NoTransverseFieldIsSymmetric) {
  SivParams p{mhz(45.0), mhz(3.0), mhz(1.0), mhz(8.0), 0.0};
  const auto w = ground_energies(p);
  const double d = p.delta();
  EXPECT_NEAR(w[0], -(d + p.omega_b) / 2, 1e-12);
  EXPECT_NEAR(w[3], (d + p.omega_b) / 2, 1e-12);
  EXPECT_NEAR(w[0] + w[3], 0.0, 1e-12);
  EXPECT_NEAR(w[1] + w[2], 0.0, 1e-12);
}

TEST(GroundEnergies, ZeroAxialFieldPairsLevels) {
  SivParams p{mhz(45.0), 0.0, 0.0, 0.0, mhz(2.0)};
  const auto w = ground_energies(p);
  // eta_+ = eta_- here, so the Zeeman pairs stay degenerate.
  EXPECT_NEAR(w[0], w[1], 1e-12);
  EXPECT_NEAR(w[2], w[3], 1e-12);
}

TEST(GroundEnergies, MatchesTranscribedFormulas) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double lso = mhz(45.0 * u(rng)), ux = mhz(u(rng)), uy = mhz(u(rng));
    const double wb = mhz(5.0 * u(rng)), wx = mhz(3.0 * u(rng));
    SivParams p{lso, ux, uy, wb, wx};
    const double d = std::sqrt(lso * lso + 4 * (ux * ux + uy * uy));
    const double ep = 0.5 * wx / (d + wb), em = 0.5 * wx / (d - wb);
    const auto w = ground_energies(p, Omega3Convention::AsPrinted);
    EXPECT_NEAR(w[0], -(d + wb) / 2 - ep * wx / 2, 1e-12);
    EXPECT_NEAR(w[1], -(d - wb) / 2 - em * wx / 2, 1e-12);
    EXPECT_NEAR(w[2], (d - wb) / 2 + ep * wx / 2, 1e-12);
    EXPECT_NEAR(w[3], (d + wb) / 2 + ep * wx / 2, 1e-12);
    EXPECT_NEAR(ground_energies(p, Omega3Convention::PatternConsistent)[2], (d - wb) / 2 + em * wx / 2,
                1e-12);
  }
}

TEST(GroundEnergies, RejectsNonPerturbative) {
  SivParams p{mhz(1.0), 0.0, 0.0, 0.0, mhz(10.0)};
  EXPECT_THROW(ground_energies(p), ValidationError);
}

TEST(RamanRabi, ZeroDrives) {
  DriveParams d;
  d.delta1 = mhz(100.0);
  d.delta = mhz(10.0);
  EXPECT_EQ(raman_rabi(d), cplx(0.0, 0.0));
}

TEST(RamanRabi, EqualRealDrivesWithoutDelta) {
  DriveParams d;
  d.omega_a2 = d.omega_a3 = mhz(3.0);
  d.delta1 = mhz(200.0);
  d.delta = 0.0;
  EXPECT_NEAR(std::abs(raman_rabi(d) + mhz(3.0) * mhz(3.0) / (2.0 * d.delta1)), 0.0, 1e-14);
}

TEST(RamanRabi, MatchesTranscribedFormula) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    DriveParams d;
    d.omega_a2 = cplx(nd(rng), nd(rng));
    d.omega_a3 = cplx(nd(rng), nd(rng));
    d.delta1 = 50.0 + nd(rng);
    d.delta = 3.0 + nd(rng);
    const cplx expect =
        -std::conj(d.omega_a2) * d.omega_a3 * (2 * d.delta1 + d.delta) / (4 * d.delta1 * (d.delta1 + d.delta));
    EXPECT_LT(std::abs(raman_rabi(d) - expect), 1e-14);
  }
}

TEST(DriveParams, WarnsAndRejectsWeakDetuning) {
  DriveParams d;
  d.omega_a2 = mhz(10.0);
  d.delta1 = mhz(80.0);
  EXPECT_EQ(d.validate().size(), 1u);
  d.delta1 = mhz(40.0);
  EXPECT_THROW(d.validate(), ValidationError);
  d.delta1 = mhz(200.0);
  EXPECT_TRUE(d.validate().empty());
}

TEST(EffectiveRabi, DefaultParametersGiveHalfMegahertz) {
  const cplx oe = effective_rabi(mhz(10.0), default_phonon(), mhz(100.0));
  EXPECT_NEAR(oe.real(), mhz(0.5), 1e-12);
  EXPECT_NEAR(oe.imag(), 0.0, 1e-15);
}

TEST(EffectiveRabi, ZeroCouplingAndHomogeneity) {
  PhononParams ph = default_phonon();
  ph.g = 0.0;
  EXPECT_EQ(effective_rabi(mhz(10.0), ph, mhz(100.0)), cplx(0.0, 0.0));
  const PhononParams a = default_phonon();
  PhononParams b = a;
  b.g *= 3.0;
  const cplx om(1.3, -0.4);
  EXPECT_LT(std::abs(effective_rabi(om, b, mhz(70.0)) - 3.0 * effective_rabi(om, a, mhz(70.0))), 1e-12);
  EXPECT_LT(std::abs(effective_rabi(2.0 * om, a, mhz(70.0)) - 2.0 * effective_rabi(om, a, mhz(70.0))), 1e-12);
}

TEST(EffectiveRabi, MatchesTranscribedFormula) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const PhononParams ph{mhz(5 * u(rng)), mhz(100 * u(rng)), mhz(500.0), 2};
    const double delta = mhz(100 * u(rng));
    const cplx om(mhz(10 * u(rng)), mhz(u(rng)));
    const cplx expect = om * ph.g * (ph.delta_big1 + delta) / (2 * ph.delta_big1 * delta);
    EXPECT_LT(std::abs(effective_rabi(om, ph, delta) - expect), 1e-14 * std::abs(expect) + 1e-14);
  }
}

TEST(RamanForLogicalControl, InvertsEffectiveRabi) {
  const PhononParams ph = default_phonon();
  const cplx oc(0.7, -1.9);
  const cplx om = raman_for_logical_control(oc, ph, mhz(100.0));
  // The eliminated element <2,0|H|1,1> is -conj(Omega_eff)/2 for this drive.
  EXPECT_LT(std::abs(-std::conj(effective_rabi(om, ph, mhz(100.0))) - oc), 1e-12);
}

TEST(FourLevel, ZeroDriveZeroCouplingIsZero) {
  PhononParams ph = default_phonon();
  ph.g = 0.0;
  EXPECT_LT(max_abs(build_four_level_hamiltonian(0.37, 0.0, ph, mhz(100.0)).matrix()), 1e-300);
}

TEST(FourLevel, MatrixElementsAtTimeZero) {
  PhononParams ph = default_phonon();
  ph.n_max = 1;
  const cplx om(mhz(10.0), 0.0);
  const Mat h = build_four_level_hamiltonian(0.0, om, ph, mhz(100.0)).matrix();
  // [4] x [2]: |s, n> -> 2 s + n; levels |1>..|4> are s = 0..3.
  EXPECT_LT(std::abs(h(2 * 2 + 0, 0 * 2 + 1) - ph.g), 1e-14);
  EXPECT_LT(std::abs(h(2 * 2 + 0, 1 * 2 + 0) - om / 2.0), 1e-14);
  EXPECT_LT(std::abs(h(3 * 2 + 0, 1 * 2 + 1) - ph.g), 1e-14);
}

TEST(FourLevel, HermitianAtRandomTimes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat h = build_four_level_hamiltonian(u(rng), cplx(3.0, 1.0), default_phonon(), mhz(100.0)).matrix();
    worst = std::max(worst, max_abs(h - h.adjoint()));
  }
  EXPECT_LT(worst, 1e-14);
}

TEST(EffectiveJc, ResonantLogicalBlockIsSigmaX) {
  const Mat h = build_effective_jc(1.7, 2.0, 0.0, 2).matrix();
  const auto li = logical_indices(2);
  EXPECT_NEAR(std::abs(h(li[0], li[1]) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(li[1], li[0]) - 1.0), 0.0, 1e-15);
  EXPECT_LT(std::abs(h(li[0], li[0])) + std::abs(h(li[1], li[1])), 1e-15);
  EXPECT_LT(max_abs(build_effective_jc(1.7, 0.0, 0.3, 2).matrix()), 1e-300);
}

TEST(EffectiveJc, ConservesExcitationNumber) {
  const int nf = 4;
  const Mat n_exc = qops::kron(qops::outer(2, 1, 1), qops::eye(nf)) +
                    qops::kron(qops::eye(2), qops::destroy(nf).adjoint() * qops::destroy(nf));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const Mat h = build_effective_jc(u(rng), cplx(1.1, 0.4), 0.7, nf - 1).matrix();
    EXPECT_LT(max_abs(h * n_exc - n_exc * h), 1e-13);
    EXPECT_LT(max_abs(h - h.adjoint()), 1e-13);
  }
}

TEST(TwoQubitEffective, SymmetricDetuningCollapse) {
  const double oe = mhz(0.5), lam = mhz(10.0);
  for (double t : {0.0, 0.3, 7.0}) {
    const Mat h = build_two_qubit_effective(t, oe, lam, lam).matrix();
    EXPECT_LT(std::abs(h(1, 2) + oe * oe / (4 * lam)), 1e-14);
    EXPECT_LT(std::abs(h(1, 1)) + std::abs(h(2, 2)), 1e-15);
  }
}

TEST(TwoQubitEffective, CouplingIsHalfExchangeRate) {
  const double oe = 1.3, l1 = 20.0, l2 = 35.0;
  for (auto frame : {TwoQubitFrame::Lab, TwoQubitFrame::Rotating, TwoQubitFrame::RotatingAsPrinted}) {
    const Mat h = build_two_qubit_effective(0.4, oe, l1, l2, frame).matrix();
    EXPECT_NEAR(std::abs(h(1, 2)), 0.5 * exchange_rate(oe, l1, l2), 1e-14);
    EXPECT_LT(max_abs(h - h.adjoint()), 1e-14);
  }
  EXPECT_NEAR(exchange_rate(oe, l1, l2), oe * oe * (l1 + l2) / (4 * l1 * l2), 1e-15);
}

TEST(TwoQubitEffective, ZeroDriveIsDiagonal) {
  const Mat h = build_two_qubit_effective(0.2, 0.0, 3.0, 5.0, TwoQubitFrame::Rotating).matrix();
  EXPECT_EQ(h(1, 2), cplx(0.0, 0.0));
  EXPECT_NEAR(h(1, 1).real(), -1.0, 1e-15);
}

TEST(TwoQubitEffective, WarnsOnWeakDetuning) {
  std::vector<std::string> w;
  build_two_qubit_effective(0.0, 1.0, 2.0, 2.0, TwoQubitFrame::Lab, &w);
  EXPECT_EQ(w.size(), 1u);
}

TEST(SharedMode, HermitianAtRandomTimes) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const Mat h = build_two_siv_shared_mode(u(rng), cplx(1.0, 0.2), cplx(0.5, -0.3), 4.0, 6.0, 2).matrix();
    EXPECT_LT(max_abs(h - h.adjoint()), 1e-13);
  }
}

TEST(Waveguide, ZeroProfileGivesZero) {
  WaveguideParams w;
  w.coupling_profile = 0.0;
  EXPECT_EQ(waveguide_coupling(w, 1e7, 1e11), 0.0);
}

TEST(Waveguide, Scalings) {
  const WaveguideParams w;
  const double k = 2e7, om = 3e11;
  WaveguideParams heavy = w;
  heavy.mass_density *= 2.0;
  EXPECT_NEAR(waveguide_coupling(heavy, k, om) / waveguide_coupling(w, k, om), 1.0 / std::sqrt(2.0), 1e-14);
  WaveguideParams wide = w;
  wide.cross_section *= 4.0;
  EXPECT_NEAR(waveguide_coupling(wide, k, om) / waveguide_coupling(w, k, om), 0.5, 1e-14);
}

TEST(Waveguide, ResonantModeGivesMegahertzCoupling) {
  const WaveguideParams w;
  const double omega = 2 * kPi * 46e9;
  const double k = omega / compression_velocity(w);
  const double g_mhz = waveguide_coupling(w, k, omega) / (2 * kPi) / 1e6;
  EXPECT_GE(g_mhz, 1.0);
  EXPECT_LE(g_mhz, 10.0);
  // Independent evaluation of d sqrt(hbar k^2 / (2 rho L A omega)).
  const double expect = 2 * kPi * 1e15 *
                        std::sqrt(1.054571817e-34 * k * k / (2 * 3500.0 * 80e-6 * 80e-9 * 80e-9 * omega)) /
                        (2 * kPi) / 1e6;
  EXPECT_NEAR(g_mhz, expect, 1e-12 * expect);
}

TEST(Waveguide, RejectsBadMaterial) {
  WaveguideParams w;
  w.poisson_ratio = 0.6;
  EXPECT_THROW(w.validate(), ValidationError);
  w = WaveguideParams{};
  w.mass_density = -1.0;
  EXPECT_THROW(compression_velocity(w), ValidationError);
}

}  // namespace
}  // namespace geomdd::siv
