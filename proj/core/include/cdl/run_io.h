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

#ifndef CDL_RUN_IO_H_
#define CDL_RUN_IO_H_

#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdl/fleet.h"

namespace cdl {

inline constexpr const char* kRunLogHeader =
    "t,agent,x,y,theta,v,omega,v_hat,omega_hat,x_r,y_r,theta_r,ex,ey,etheta,"
    "tau_v,tau_w,sat_flag,est_err_v,est_err_w,V_diag";

class RunLogFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row per record, 9 significant digits, agents numbered from 1.
void WriteRunLogCsv(const std::filesystem::path& path,
                    std::span<const AgentRecord> records);

// Inverse of WriteRunLogCsv (values rounded to the written precision).
std::vector<AgentRecord> ReadRunLogCsv(const std::filesystem::path& path);

}  // namespace cdl

#endif  // CDL_RUN_IO_H_
