/*
 * Copyright 2026 The Beurling Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Batch command-line front end. Each subcommand resolves a JSON configuration
// (defaults, then --config file, then per-key flags), runs one analysis and
// writes a JSON report plus CSV series into the output directory.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "beurling/json_io.hpp"

namespace beurling::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsage = 2 };

std::vector<std::string> subcommands();

/// Default configuration of a subcommand; throws kInvalidParameter if unknown.
json_io::Json default_config(const std::string& subcommand);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beurling::cli
