// Copyright 2026 The exfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXFREE_TOOLS_ARGS_HPP
#define EXFREE_TOOLS_ARGS_HPP

#include <string>
#include <utility>
#include <vector>

namespace exfree::cli {

/// "start:stop:step" (stop included when the step lands on it), "a,b,c", or a single value.
/// All values must be positive. Throws std::invalid_argument.
std::vector<int> parse_range(const std::string &text);

/// Radians. Accepts plain numbers and multiples of pi such as "pi", "-pi/4", "2pi", "3*pi/2".
double parse_angle(const std::string &text);

/// Comma separated reals, e.g. "0.6,0,0,0.8".
std::vector<double> parse_reals(const std::string &text);

/// key=value lines; '#' starts a comment, blank lines are skipped. Throws on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config(const std::string &path);

/// Thread count from EXFREE_THREADS, or 0 (hardware default) when unset or invalid.
int threads_from_env();

}  // namespace exfree::cli

#endif
