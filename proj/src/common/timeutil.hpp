// Copyright 2026 The debatenet Authors.
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

#ifndef DEBATENET_COMMON_TIMEUTIL_HPP_
#define DEBATENET_COMMON_TIMEUTIL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace debatenet {

inline constexpr std::int64_t kSecondsPerWeek = 7 * 24 * 3600;

// Accepts YYYY-MM-DDTHH:MM:SS with optional fractional seconds (truncated)
// and a Z or +HH:MM / -HH:MM suffix; a bare date is midnight UTC. Throws
// Error(kParse) on anything else.
std::int64_t ParseIso8601(std::string_view text);

// Always YYYY-MM-DDTHH:MM:SSZ.
std::string FormatIso8601(std::int64_t seconds);

}  // namespace debatenet

#endif  // DEBATENET_COMMON_TIMEUTIL_HPP_
