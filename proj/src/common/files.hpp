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

#ifndef DEBATENET_COMMON_FILES_HPP_
#define DEBATENET_COMMON_FILES_HPP_

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>

namespace debatenet {

// Writes through a sibling temporary file and renames it into place, so
// readers never observe a partially written artifact.
void WriteFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& writer);

std::string ReadFile(const std::filesystem::path& path);

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

}  // namespace debatenet

#endif  // DEBATENET_COMMON_FILES_HPP_
