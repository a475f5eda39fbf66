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


#ifndef DEBATENET_PIPELINE_MANIFEST_HPP_
#define DEBATENET_PIPELINE_MANIFEST_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace debatenet::pipeline {

#ifndef DEBATENET_VERSION_STRING
#define DEBATENET_VERSION_STRING "0.3.0"
#endif

inline constexpr const char* kToolVersion = DEBATENET_VERSION_STRING;

struct FileDigest {
  std::string path;
  std::string sha256;

  bool operator==(const FileDigest&) const = default;
};

// Provenance record written next to every stage's artifacts.
struct Manifest {
  std::string stage;
  std::string tool_version = kToolVersion;
  std::string created;  // ISO-8601 UTC
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::map<std::string, FileDigest> inputs;  // logical name -> file
  std::map<std::string, std::string> outputs;  // file name -> sha256
};

std::string ManifestToJson(const Manifest& manifest);
// Throws Error(kParse) on malformed manifests.
Manifest ParseManifest(std::string_view text);

// SOURCE_DATE_EPOCH when set, otherwise the current time.
std::string CreationTimestamp();

}  // namespace debatenet::pipeline

#endif  // DEBATENET_PIPELINE_MANIFEST_HPP_
