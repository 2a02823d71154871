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

#ifndef CDL_TOOLS_CLI_H_
#define CDL_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace cdl::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kDivergence = 2,
  kIoError = 3,
};

// Entry point of cdl_sim. args[0] is the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cdl::cli

#endif  // CDL_TOOLS_CLI_H_
