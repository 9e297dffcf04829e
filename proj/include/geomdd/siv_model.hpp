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

// Hamiltonians of driven SiV centers coupled to a phononic waveguide.
//
// Angular frequencies are in rad/us and times in us throughout, so that
// 2*pi*1 MHz is the number 2*pi. Ground levels |1>..|4> map to indices
// 0..3, and a phonon mode truncated at n_max has n_max + 1 levels.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "geomdd/qops.hpp"

namespace geomdd::siv {

using qops::cplx;

// 2*pi*f for f in MHz, giving rad/us.
inline constexpr double mhz(double f) { return 2.0 * qops::kPi * f; }
inline constexpr double khz(double f) { return 2.0 * qops::kPi * f * 1e-3; }
// Inverse of mhz().
inline constexpr double to_mhz(double w) { return w / (2.0 * qops::kPi); }

struct SivParams {
  double lambda_so = 0.0;
  double upsilon_x = 0.0;
  double upsilon_y = 0.0;
  double omega_b = 0.0;
  double omega_x = 0.0;

  double delta() const;
  double eta_plus() const;
  double eta_minus() const;
  // Throws ValidationError when Delta <= 0 or |eta_pm| >= 1.
  void validate() const;
};

// Coefficient used for the eta term of omega_3.
enum class Omega3Convention {
  AsPrinted,          // eta_plus, as in the source formula
  PatternConsistent,  // eta_minus, following the pairing of the other levels
};

std::array<double, 4> ground_energies(const SivParams& p,
                                      Omega3Convention conv = Omega3Convention::AsPrinted);

struct DriveParams {
  cplx omega_a2{0.0, 0.0};
  cplx omega_a3{0.0, 0.0};
  double delta1 = 0.0;
  double delta = 0.0;

  // Throws when |delta1| < 5x the largest Rabi magnitude; returns a warning
  // below 10x.
  std::vector<std::string> validate() const;
};

cplx raman_rabi(const DriveParams& d);

struct PhononParams {
  double g = 0.0;
  double delta_big1 = 0.0;
  double delta_big2 = 0.0;
  int n_max = 2;

  void validate(bool need_detunings) const;
};

cplx effective_rabi(cplx omega, const PhononParams& ph, double delta);

// Raman Rabi frequency whose adiabatically eliminated four-level dynamics
// realize the logical control omega_c, i.e. <2,0|H_eff|1,1> = omega_c / 2.
cplx raman_for_logical_control(cplx omega_c, const PhononParams& ph, double delta);

// Four-level SiV plus phonon mode in the interaction picture,
// space [4] x [n_max + 1].
qops::ComplexOperator build_four_level_hamiltonian(double t, cplx omega, const PhononParams& ph,
                                                   double delta);

// Levels |1>, |2> of one SiV plus phonon mode, space [2] x [n_max + 1].
qops::ComplexOperator build_effective_jc(double t, cplx omega_eff, double detuning, int n_max = 2);

// Flat indices of |0>_L = |1,1> and |1>_L = |2,0> in the JC or four-level
// space (both put the SiV factor first).
std::array<int, 2> logical_indices(int n_max);

enum class TwoQubitFrame {
  Lab,                // time-dependent exchange phase, no diagonal terms
  Rotating,           // exact co-rotating frame, diagonals +-(L1 - L2)/2
  RotatingAsPrinted,  // diagonals (L2 - L1, L1 - L2) on |01>, |10>
};

// Exchange coupling O_eff = omega_eff^2 (L1 + L2) / (4 L1 L2).
double exchange_rate(double omega_eff, double lambda1, double lambda2);

// Logical two-qubit Hamiltonian on [2] x [2] after eliminating the phonon.
// Returns the operator; warnings (weak detuning) are appended when given.
qops::ComplexOperator build_two_qubit_effective(double t, double omega_eff, double lambda1,
                                                double lambda2,
                                                TwoQubitFrame frame = TwoQubitFrame::Lab,
                                                std::vector<std::string>* warnings = nullptr);

// Two SiVs (levels |1>, |2>) sharing one phonon mode,
// space [2] x [2] x [n_max + 1].
qops::ComplexOperator build_two_siv_shared_mode(double t, cplx omega_eff1, cplx omega_eff2,
                                                double lambda1, double lambda2, int n_max = 2);

// Waveguide parameters in SI units; strain_sensitivity is in rad/s.
struct WaveguideParams {
  double length = 80e-6;
  double cross_section = 80e-9 * 80e-9;
  double youngs_modulus = 1050e9;
  double poisson_ratio = 0.2;
  double mass_density = 3500.0;
  double strain_sensitivity = 2.0 * qops::kPi * 1e15;
  double coupling_profile = 1.0;

  void validate() const;
};

inline constexpr double kHbar = 1.054571817e-34;

// Speed of the compression branch, sqrt(E / rho), in m/s.
double compression_velocity(const WaveguideParams& w);
// omega = v k in rad/s.
double compression_mode_frequency(const WaveguideParams& w, double wavenumber);

// Coupling strength in rad/s for one mode.
double waveguide_coupling(const WaveguideParams& w, double wavenumber, double mode_frequency);

}  // namespace geomdd::siv
