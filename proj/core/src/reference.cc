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

#include "cdl/reference.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cdl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PathJet SinJet(double amp, double t) {
  const double s = std::sin(t);
  const double c = std::cos(t);
  return {amp * s, amp * c, -amp * s, -amp * c};
}

PathJet CosJet(double amp, double t) {
  const double s = std::sin(t);
  const double c = std::cos(t);
  return {amp * c, -amp * s, -amp * c, amp * s};
}

PathJet Negate(PathJet j) {
  for (double& v : j) v = -v;
  return j;
}

}  // namespace

Reference::Reference(ReferenceSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind == ReferenceSpec::Kind::kCustomSamples) {
    if (spec_.x_samples.size() < 3 ||
        spec_.x_samples.size() != spec_.y_samples.size() ||
        !(spec_.period > 0.0)) {
      throw std::invalid_argument(
          "custom reference needs >= 3 matching x/y samples and period > 0");
    }
    x_series_ = Fit(spec_.x_samples);
    y_series_ = Fit(spec_.y_samples);
  }
}

// The Nyquist term of an even sample count is dropped so the interpolant
// stays real and smooth.
Reference::Series Reference::Fit(const std::vector<double>& samples) {
  const int m = static_cast<int>(samples.size());
  Series s;
  for (double v : samples) s.mean += v;
  s.mean /= m;
  const int harmonics = (m - 1) / 2;
  for (int k = 1; k <= harmonics; ++k) {
    double a = 0.0;
    double b = 0.0;
    for (int i = 0; i < m; ++i) {
      const double phase = kTwoPi * k * i / m;
      a += samples[i] * std::cos(phase);
      b += samples[i] * std::sin(phase);
    }
    s.cos_coeff.push_back(2.0 * a / m);
    s.sin_coeff.push_back(2.0 * b / m);
  }
  return s;
}

PathJet Reference::EvalSeries(const Series& s, double t) const {
  const double w0 = kTwoPi / spec_.period;
  PathJet out{s.mean, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < s.cos_coeff.size(); ++i) {
    const double w = static_cast<double>(i + 1) * w0;
    const double a = s.cos_coeff[i];
    const double b = s.sin_coeff[i];
    const double c = std::cos(w * t);
    const double sn = std::sin(w * t);
    out[0] += a * c + b * sn;
    out[1] += w * (-a * sn + b * c);
    out[2] += w * w * (-a * c - b * sn);
    out[3] += w * w * w * (a * sn - b * c);
  }
  return out;
}

void Reference::PathJets(double t, PathJet& x, PathJet& y) const {
  if (spec_.kind == ReferenceSpec::Kind::kCustomSamples) {
    x = EvalSeries(x_series_, t);
    y = EvalSeries(y_series_, t);
    return;
  }
  if (spec_.phase == ReferenceSpec::Phase::kSinFirst) {
    x = Negate(SinJet(spec_.amp_x, t));
    y = CosJet(spec_.amp_y, t);
  } else {
    x = CosJet(spec_.amp_x, t);
    y = SinJet(spec_.amp_y, t);
  }
}

ReferenceSample Reference::Eval(double t) const {
  PathJet x;
  PathJet y;
  PathJets(t, x, y);
  const double speed_sq = x[1] * x[1] + y[1] * y[1];
  const double speed = std::sqrt(speed_sq);
  const double cross = x[1] * y[2] - x[2] * y[1];
  const double cross_dot = x[1] * y[3] - x[3] * y[1];
  const double along = x[1] * x[2] + y[1] * y[2];

  ReferenceSample r;
  r.x_r = x[0];
  r.y_r = y[0];
  r.theta_r = std::atan2(y[1], x[1]);
  r.v_r = speed;
  r.omega_r = cross / speed_sq;
  r.vdot_r = along / speed;
  r.omegadot_r =
      (cross_dot * speed_sq - 2.0 * cross * along) / (speed_sq * speed_sq);
  return r;
}

double Reference::period() const { return ReferencePeriod(spec_); }

ReferenceSample EvalReference(const ReferenceSpec& spec, double t) {
  return Reference(spec).Eval(t);
}

double ReferencePeriod(const ReferenceSpec& spec) {
  return spec.kind == ReferenceSpec::Kind::kCustomSamples ? spec.period
                                                          : kTwoPi;
}

ReferenceScan ScanReference(const ReferenceSpec& spec, int samples) {
  const Reference ref(spec);
  ReferenceScan scan;
  scan.min_speed = std::numeric_limits<double>::infinity();
  scan.v_min = scan.omega_min = std::numeric_limits<double>::infinity();
  scan.v_max = scan.omega_max = -std::numeric_limits<double>::infinity();
  const double period = ref.period();
  for (int k = 0; k < samples; ++k) {
    const double t = period * k / samples;
    PathJet x;
    PathJet y;
    ref.PathJets(t, x, y);
    const double speed = std::hypot(x[1], y[1]);
    scan.min_speed = std::min(scan.min_speed, speed);
    if (speed > 0.0) {
      const ReferenceSample r = ref.Eval(t);
      scan.v_min = std::min(scan.v_min, r.v_r);
      scan.v_max = std::max(scan.v_max, r.v_r);
      scan.omega_min = std::min(scan.omega_min, r.omega_r);
      scan.omega_max = std::max(scan.omega_max, r.omega_r);
    }
  }
  return scan;
}

std::vector<std::string> ValidateReference(const ReferenceSpec& spec) {
  std::vector<std::string> out;
  if (spec.kind == ReferenceSpec::Kind::kLissajousEllipse) {
    if (!(spec.amp_x != 0.0) || !(spec.amp_y != 0.0) ||
        !std::isfinite(spec.amp_x) || !std::isfinite(spec.amp_y)) {
      out.push_back("ellipse amplitudes must be finite and nonzero");
      return out;
    }
  } else {
    if (!(spec.period > 0.0)) out.push_back("custom period must be > 0");
    if (spec.x_samples.size() != spec.y_samples.size()) {
      out.push_back("custom x and y sample counts differ");
    }
    if (spec.x_samples.size() < 3) {
      out.push_back("custom reference needs at least 3 samples");
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(spec.x_samples.begin(), spec.x_samples.end(), finite) ||
        !std::all_of(spec.y_samples.begin(), spec.y_samples.end(), finite)) {
      out.push_back("custom samples must be finite");
    }
    if (!out.empty()) return out;
  }
  const ReferenceScan scan = ScanReference(spec);
  if (!(scan.min_speed > 1e-6)) {
    out.push_back("reference speed reaches zero (min " +
                  std::to_string(scan.min_speed) +
                  " m/s); heading and turn rate are undefined");
  }
  return out;
}

}  // namespace cdl
