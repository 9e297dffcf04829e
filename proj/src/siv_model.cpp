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

#include "geomdd/siv_model.hpp"

#include <algorithm>
#include <cmath>

#include "geomdd/errors.hpp"

namespace geomdd::siv {

using qops::kI;
using qops::Mat;

double SivParams::delta() const {
  return std::sqrt(lambda_so * lambda_so + 4.0 * (upsilon_x * upsilon_x + upsilon_y * upsilon_y));
}

double SivParams::eta_plus() const { return 0.5 * omega_x / (delta() + omega_b); }
double SivParams::eta_minus() const { return 0.5 * omega_x / (delta() - omega_b); }

void SivParams::validate() const {
  const double d = delta();
  if (!(d > 0.0)) throw ValidationError("SivParams: Delta must be positive");
  if (d + omega_b == 0.0 || d - omega_b == 0.0)
    throw ValidationError("SivParams: Delta +- omega_b vanishes");
  if (std::abs(eta_plus()) >= 1.0 || std::abs(eta_minus()) >= 1.0)
    throw ValidationError("SivParams: |eta| >= 1, perturbative energies are not valid");
}

std::array<double, 4> ground_energies(const SivParams& p, Omega3Convention conv) {
  p.validate();
  const double d = p.delta();
  const double ep = p.eta_plus();
  const double em = p.eta_minus();
  const double wx = p.omega_x;
  const double e3 = conv == Omega3Convention::AsPrinted ? ep : em;
  return {-(d + p.omega_b) / 2.0 - ep * wx / 2.0, -(d - p.omega_b) / 2.0 - em * wx / 2.0,
          (d - p.omega_b) / 2.0 + e3 * wx / 2.0, (d + p.omega_b) / 2.0 + ep * wx / 2.0};
}

std::vector<std::string> DriveParams::validate() const {
  std::vector<std::string> warnings;
  const double rabi = std::max(std::abs(omega_a2), std::abs(omega_a3));
  if (rabi == 0.0) return warnings;
  const double ratio = std::abs(delta1) / rabi;
  if (ratio < 5.0)
    throw ValidationError("DriveParams: delta1 must exceed 5x the largest Rabi frequency");
  if (ratio < 10.0) warnings.push_back("DriveParams: delta1 is less than 10x the Rabi frequency");
  return warnings;
}

cplx raman_rabi(const DriveParams& d) {
  if (d.delta1 == 0.0 || d.delta1 + d.delta == 0.0)
    throw ValidationError("raman_rabi: vanishing detuning");
  return -std::conj(d.omega_a2) * d.omega_a3 * (2.0 * d.delta1 + d.delta) /
         (4.0 * d.delta1 * (d.delta1 + d.delta));
}

void PhononParams::validate(bool need_detunings) const {
  if (n_max < 1) throw ValidationError("PhononParams: n_max must be >= 1");
  if (need_detunings && (delta_big1 == 0.0 || delta_big2 == 0.0))
    throw ValidationError("PhononParams: detunings must be nonzero");
}

cplx effective_rabi(cplx omega, const PhononParams& ph, double delta) {
  if (ph.delta_big1 == 0.0 || delta == 0.0)
    throw ValidationError("effective_rabi: vanishing detuning");
  return omega * ph.g * (ph.delta_big1 + delta) / (2.0 * ph.delta_big1 * delta);
}

cplx raman_for_logical_control(cplx omega_c, const PhononParams& ph, double delta) {
  if (ph.g == 0.0) throw ValidationError("raman_for_logical_control: g is zero");
  if (ph.delta_big1 + delta == 0.0)
    throw ValidationError("raman_for_logical_control: vanishing detuning");
  return -std::conj(omega_c) * 2.0 * ph.delta_big1 * delta / (ph.g * (ph.delta_big1 + delta));
}

qops::ComplexOperator build_four_level_hamiltonian(double t, cplx omega, const PhononParams& ph,
                                                   double delta) {
  if (t < 0.0) throw ValidationError("build_four_level_hamiltonian: t must be >= 0");
  ph.validate(false);
  const int nf = ph.n_max + 1;
  const Mat a = qops::destroy(nf);
  const cplx e1 = std::exp(kI * ph.delta_big1 * t);
  const cplx e2 = std::exp(kI * ph.delta_big2 * t);
  const cplx ed = std::exp(kI * delta * t);
  Mat h = ph.g * e1 * qops::kron(qops::outer(4, 2, 0), a) +
          ph.g * e2 * qops::kron(qops::outer(4, 3, 1), a) +
          0.5 * omega * ed * qops::kron(qops::outer(4, 2, 1), qops::eye(nf));
  h += h.adjoint().eval();
  return qops::ComplexOperator(qops::HilbertSpace({4, nf}), std::move(h));
}

qops::ComplexOperator build_effective_jc(double t, cplx omega_eff, double detuning, int n_max) {
  if (t < 0.0) throw ValidationError("build_effective_jc: t must be >= 0");
  if (n_max < 1) throw ValidationError("build_effective_jc: n_max must be >= 1");
  const int nf = n_max + 1;
  const Mat ad = qops::destroy(nf).adjoint();
  Mat h = 0.5 * omega_eff * std::exp(kI * detuning * t) * qops::kron(qops::outer(2, 0, 1), ad);
  h += h.adjoint().eval();
  return qops::ComplexOperator(qops::HilbertSpace({2, nf}), std::move(h));
}

std::array<int, 2> logical_indices(int n_max) { return {1, n_max + 1}; }

double exchange_rate(double omega_eff, double lambda1, double lambda2) {
  if (lambda1 == 0.0 || lambda2 == 0.0) throw ValidationError("exchange_rate: zero detuning");
  return omega_eff * omega_eff * (lambda1 + lambda2) / (4.0 * lambda1 * lambda2);
}

qops::ComplexOperator build_two_qubit_effective(double t, double omega_eff, double lambda1,
                                                double lambda2, TwoQubitFrame frame,
                                                std::vector<std::string>* warnings) {
  if (lambda1 == 0.0 || lambda2 == 0.0)
    throw ValidationError("build_two_qubit_effective: zero detuning");
  if (warnings && omega_eff != 0.0 &&
      std::min(std::abs(lambda1), std::abs(lambda2)) < 5.0 * std::abs(omega_eff))
    warnings->push_back("two-qubit reduction: |Lambda| < 5 |Omega_eff|");
  const double j = 0.5 * exchange_rate(omega_eff, lambda1, lambda2);
  const double dl = lambda1 - lambda2;
  Mat h = Mat::Zero(4, 4);
  // Basis |00>, |01>, |10>, |11>.
  switch (frame) {
    case TwoQubitFrame::Lab:
      h(1, 2) = -j * std::exp(kI * dl * t);
      break;
    case TwoQubitFrame::Rotating:
      h(1, 2) = -j;
      h(1, 1) = 0.5 * dl;
      h(2, 2) = -0.5 * dl;
      break;
    case TwoQubitFrame::RotatingAsPrinted:
      h(1, 2) = -j;
      h(1, 1) = -dl;
      h(2, 2) = dl;
      break;
  }
  h(2, 1) = std::conj(h(1, 2));
  return qops::ComplexOperator(qops::HilbertSpace({2, 2}), std::move(h));
}

qops::ComplexOperator build_two_siv_shared_mode(double t, cplx omega_eff1, cplx omega_eff2,
                                                double lambda1, double lambda2, int n_max) {
  if (t < 0.0) throw ValidationError("build_two_siv_shared_mode: t must be >= 0");
  if (n_max < 1) throw ValidationError("build_two_siv_shared_mode: n_max must be >= 1");
  const int nf = n_max + 1;
  const Mat ad = qops::destroy(nf).adjoint();
  const Mat lower = qops::outer(2, 0, 1);  // |1><2| on one SiV
  const Mat id2 = qops::eye(2);
  Mat h = 0.5 * omega_eff1 * std::exp(kI * lambda1 * t) * qops::kron(qops::kron(lower, id2), ad) +
          0.5 * omega_eff2 * std::exp(kI * lambda2 * t) * qops::kron(qops::kron(id2, lower), ad);
  h += h.adjoint().eval();
  return qops::ComplexOperator(qops::HilbertSpace({2, 2, nf}), std::move(h));
}

void WaveguideParams::validate() const {
  if (!(length > 0.0) || !(cross_section > 0.0) || !(youngs_modulus > 0.0) ||
      !(mass_density > 0.0) || !(strain_sensitivity > 0.0))
    throw ValidationError("WaveguideParams: physical quantities must be positive");
  if (!(poisson_ratio > 0.0 && poisson_ratio < 0.5))
    throw ValidationError("WaveguideParams: Poisson ratio must lie in (0, 0.5)");
  if (coupling_profile < 0.0) throw ValidationError("WaveguideParams: xi must be >= 0");
}

double compression_velocity(const WaveguideParams& w) {
  w.validate();
  return std::sqrt(w.youngs_modulus / w.mass_density);
}

double compression_mode_frequency(const WaveguideParams& w, double wavenumber) {
  if (!(wavenumber > 0.0)) throw ValidationError("wavenumber must be positive");
  return compression_velocity(w) * wavenumber;
}

double waveguide_coupling(const WaveguideParams& w, double wavenumber, double mode_frequency) {
  w.validate();
  if (!(wavenumber > 0.0) || !(mode_frequency > 0.0))
    throw ValidationError("waveguide_coupling: wavenumber and frequency must be positive");
  const double k2 = wavenumber * wavenumber;
  return w.strain_sensitivity *
         std::sqrt(kHbar * k2 /
                   (2.0 * w.mass_density * w.length * w.cross_section * mode_frequency)) *
         w.coupling_profile;
}

}  // namespace geomdd::siv
