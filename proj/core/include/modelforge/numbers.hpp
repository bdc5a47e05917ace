// Copyright 2026 The ModelForge Authors
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

#ifndef MODELFORGE_NUMBERS_HPP_
#define MODELFORGE_NUMBERS_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace modelforge {

// Shortest decimal representation that round-trips to the same 64-bit float.
// Negative zero is normalized to "0".
std::string format_double(double value);

// Strict decimal parse: the whole token must be consumed.
std::optional<double> parse_strict_double(std::string_view token);
std::optional<int> parse_strict_int(std::string_view token);

}  // namespace modelforge

#endif  // MODELFORGE_NUMBERS_HPP_
