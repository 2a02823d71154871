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

#ifndef CDL_INTEGRATOR_H_
#define CDL_INTEGRATOR_H_

#include <Eigen/Core>

namespace cdl {

// One step reusing an already evaluated first stage k1 = rate(t, x).
template <typename State, typename RateFn>
State Rk4StepWithFirstStage(RateFn&& rate, const State& x, const State& k1,
                            double t, double dt) {
  const double h = 0.5 * dt;
  const State k2 = rate(t + h, State(x + h * k1));
  const State k3 = rate(t + h, State(x + h * k2));
  const State k4 = rate(t + dt, State(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Classical four-stage Runge-Kutta step for x' = f(t, x).
// `rate` is called as rate(t, x) and returns something assignable to State.
template <typename State, typename RateFn>
State Rk4Step(RateFn&& rate, const State& x, double t, double dt) {
  const State k1 = rate(t, x);
  return Rk4StepWithFirstStage(rate, x, k1, t, dt);
}

}  // namespace cdl

#endif  // CDL_INTEGRATOR_H_
