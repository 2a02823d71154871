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

#ifndef CDL_WEIGHTS_IO_H_
#define CDL_WEIGHTS_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cdl/rbf.h"

namespace cdl {

inline constexpr const char* kWeightsCsvHeader =
    "node_index,center_v,center_w,w_v,w_omega";

// Raised for a weights file that does not follow the CSV schema. The message
// names the offending column and line.
class WeightsFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row per lattice node, values printed with round-trip precision.
void WriteWeightsCsv(const std::filesystem::path& path,
                     const RbfLattice& lattice, const WeightMatrix& weights);

// Reads a weights file and checks it against `lattice` (row count, node
// order and center coordinates). Throws std::runtime_error if the file cannot
// be opened and WeightsFormatError on schema problems.
WeightMatrix ReadWeightsCsv(const std::filesystem::path& path,
                            const RbfLattice& lattice);

// "weights_agent<i>_t<millis>.csv" with a 1-based agent index.
std::string SnapshotFileName(int agent_index0, double t);

// "wbar_agent<i>.csv" with a 1-based agent index.
std::string ConsolidatedFileName(int agent_index0);

}  // namespace cdl

#endif  // CDL_WEIGHTS_IO_H_
