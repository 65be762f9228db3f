// Copyright 2026 The EFPE Solver Authors.
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

#ifndef EFPE_FORMAT_HPP_
#define EFPE_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace efpe {

// Locale-independent shortest-general formatting with 17 significant digits,
// enough to round-trip any double.
std::string format_real(double value);

// Locale-independent parse of a whole token; nullopt on any trailing junk.
std::optional<double> parse_real(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace efpe

#endif  // EFPE_FORMAT_HPP_
