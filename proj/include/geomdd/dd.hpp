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

// Dynamical-decoupling sequences made of instantaneous -i sigma pulses.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "geomdd/qops.hpp"

namespace geomdd::dd {

using qops::Mat;

enum class PulseAxis { X, Y, Z };

char to_char(PulseAxis a);

struct DDPulse {
  double time_fraction = 0.0;
  PulseAxis axis = PulseAxis::X;
};

enum class SequenceLabel { None, XY4, XY8, XY12, ZXZX };

std::string to_string(SequenceLabel l);
SequenceLabel sequence_from_string(const std::string& s);

// How XY8 and XY12 are built from the XY4 cycle.
enum class XYFamily {
  Repeated,  // XY8 = XY4 XY4, XY12 = XY4 XY4 XY4
  Standard,  // XY8 = XYXY YXYX, XY12 = XY8 XY4
};

std::string to_string(XYFamily f);
XYFamily family_from_string(const std::string& s);

struct DDSequence {
  SequenceLabel label = SequenceLabel::None;
  XYFamily family = XYFamily::Repeated;
  int periods = 1;
  std::vector<DDPulse> pulses;

  // Checks increasing fractions in (0, 1) and that the pulses multiply to
  // a multiple of the identity.
  void validate() const;
};

// The basic cycle repeated `periods` times across the window, every pulse
// at an odd fraction (2k + 1) / (2N) of it.
DDSequence make_sequence(SequenceLabel label, int periods = 1,
                         XYFamily family = XYFamily::Repeated);

Mat pauli(PulseAxis a);
// -i sigma_axis.
Mat pulse_unitary(PulseAxis a);

// Two basis states of a larger space that carry the logical qubit.
struct LogicalEmbedding {
  int dim = 2;
  int index0 = 0;
  int index1 = 1;

  void validate() const;
};

// -i sigma_axis on the logical pair, identity on every other basis state.
Mat pulse_unitary(PulseAxis a, const LogicalEmbedding& emb);
// Lifts a 2x2 logical operator into the embedding, zero elsewhere.
Mat embed_block(const Mat& op2, const LogicalEmbedding& emb);
// Same lift, identity elsewhere (for unitaries).
Mat embed_unitary(const Mat& u2, const LogicalEmbedding& emb);

// Ordered product of the pulses (latest pulse leftmost).
Mat sequence_product(const DDSequence& seq);

enum class InjectionMode {
  Naive,    // pulses inserted, control left as designed
  Toggled,  // control conjugated by the pulses applied so far
};

std::string to_string(InjectionMode m);
InjectionMode mode_from_string(const std::string& s);

struct PulseEvent {
  double time = 0.0;
  PulseAxis axis = PulseAxis::X;
};

struct InjectionPlan {
  InjectionMode mode = InjectionMode::Toggled;
  double duration = 0.0;
  std::vector<PulseEvent> events;
  // frames[k] is the product of the first k pulses; size events + 1.
  std::vector<Mat> frames;
  std::vector<std::string> warnings;

  // Index of the inter-pulse interval holding `anchor`, a time strictly
  // between two events.
  std::size_t interval_at(double anchor) const;
  // Control to apply in that interval: Q h Q^dagger when toggled.
  Mat control(const Mat& h_design, double anchor) const;
};

// Places the sequence over [0, duration]. Pulses landing on a schedule
// boundary are moved later by 1e-9 of the duration and a warning is kept.
InjectionPlan inject(double duration, const DDSequence& seq, InjectionMode mode,
                     const std::vector<double>& boundaries = {});

// "time_us,axis" rows.
std::string events_to_csv(const InjectionPlan& plan);

enum class DecouplingOrder { ZXZX, XY4 };

std::string to_string(DecouplingOrder o);
DecouplingOrder order_from_string(const std::string& s);

// Qubit coupled to a two-level environment through sum_a sigma_a x B_a plus
// I x H_e. Free evolution for tau then a pulse, four times.
Mat decoupling_propagator(double tau, const std::array<Mat, 3>& b, const Mat& h_env,
                          DecouplingOrder order = DecouplingOrder::ZXZX);

// Operator-norm distance between the pulsed propagator over 4 tau and the
// pure-environment evolution exp(-i 4 tau I x H_e), up to the scalar
// the pulses multiply to.
double decoupling_error(double tau, const std::array<Mat, 3>& b, const Mat& h_env,
                        DecouplingOrder order = DecouplingOrder::ZXZX);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares line through (log x, log y). Fails when any y is below
// `floor`, where round-off would dominate.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                     double floor = 1e-14);

}  // namespace geomdd::dd
