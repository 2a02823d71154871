/*
 * Copyright 2026 The CDL Fleet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CDL_REFERENCE_H_
#define CDL_REFERENCE_H_

#include <array>
#include <string>
#include <vector>

#include "cdl/control.h"

namespace cdl {

// Periodic planar reference path.
//
// kLissajousEllipse with kSinFirst:  x = -amp_x sin t, y = amp_y cos t
// kLissajousEllipse with kCosFirst:  x =  amp_x cos t, y = amp_y sin t
// Both run counter-clockwise with period 2 pi.
//
// kCustomSamples: `x_samples`/`y_samples` are uniform samples over one
// `period` starting at t = 0. They are replaced by their trigonometric
// interpolant, which is smooth and periodic, so all derivatives needed by the
// controller exist.
struct ReferenceSpec {
  enum class Kind { kLissajousEllipse, kCustomSamples };
  enum class Phase { kSinFirst, kCosFirst };

  Kind kind = Kind::kLissajousEllipse;
  double amp_x = 1.0;
  double amp_y = 1.0;
  Phase phase = Phase::kSinFirst;

  double period = 0.0;
  std::vector<double> x_samples;
  std::vector<double> y_samples;
};

// Value and first three time derivatives of one path coordinate.
using PathJet = std::array<double, 4>;

// Evaluator for one ReferenceSpec. Custom sample sets are converted to
// Fourier coefficients once, at construction.
//
// Heading, speed and turn rate follow from the path derivatives:
// theta_r = atan2(y', x'), v_r = |(x', y')|,
// omega_r = (x' y'' - x'' y') / v_r^2, plus their time derivatives.
class Reference {
 public:
  explicit Reference(ReferenceSpec spec);

  ReferenceSample Eval(double t) const;
  void PathJets(double t, PathJet& x, PathJet& y) const;
  double period() const;
  const ReferenceSpec& spec() const { return spec_; }

 private:
  struct Series {
    double mean = 0.0;
    std::vector<double> cos_coeff;  // harmonic k at index k - 1
    std::vector<double> sin_coeff;
  };

  static Series Fit(const std::vector<double>& samples);
  PathJet EvalSeries(const Series& s, double t) const;

  ReferenceSpec spec_;
  Series x_series_;
  Series y_series_;
};

// One-shot convenience; builds a Reference per call.
ReferenceSample EvalReference(const ReferenceSpec& spec, double t);

double ReferencePeriod(const ReferenceSpec& spec);

struct ReferenceScan {
  double min_speed = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
  double omega_min = 0.0;
  double omega_max = 0.0;
};

// Samples one period densely.
ReferenceScan ScanReference(const ReferenceSpec& spec, int samples = 4096);

// Structural problems plus a check that the speed stays positive over the
// whole period (heading and turn rate are singular otherwise).
std::vector<std::string> ValidateReference(const ReferenceSpec& spec);

}  // namespace cdl

#endif  // CDL_REFERENCE_H_
