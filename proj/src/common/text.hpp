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

#ifndef DEBATENET_COMMON_TEXT_HPP_
#define DEBATENET_COMMON_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

// Simple case folding of UTF-8 text: ASCII, Latin-1, Latin Extended-A, Greek
// and Cyrillic capitals map to their lowercase forms. Other code points and
// malformed bytes pass through unchanged.
std::string FoldCase(std::string_view text);

std::vector<std::string> SplitString(std::string_view text, char sep);

std::string_view Trim(std::string_view text);

}  // namespace debatenet

#endif  // DEBATENET_COMMON_TEXT_HPP_
