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

#include "pipeline/manifest.hpp"

#include <chrono>
#include <cstdlib>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/timeutil.hpp"

namespace debatenet::pipeline {

using nlohmann::ordered_json;

std::string ManifestToJson(const Manifest& manifest) {
  ordered_json root;
  root["stage"] = manifest.stage;
  root["tool_version"] = manifest.tool_version;
  root["created"] = manifest.created;
  root["parameters"] = manifest.parameters;
  ordered_json inputs = ordered_json::object();
  for (const auto& [name, digest] : manifest.inputs) {
    inputs[name] = {{"path", digest.path}, {"sha256", digest.sha256}};
  }
  root["inputs"] = inputs;
  ordered_json outputs = ordered_json::object();
  for (const auto& [name, sha] : manifest.outputs) outputs[name] = sha;
  root["outputs"] = outputs;
  return root.dump(2) + "\n";
}

Manifest ParseManifest(std::string_view text) {
  Manifest manifest;
  try {
    const ordered_json root = ordered_json::parse(text);
    manifest.stage = root.at("stage").get<std::string>();
    manifest.tool_version = root.at("tool_version").get<std::string>();
    manifest.created = root.at("created").get<std::string>();
    manifest.parameters = root.at("parameters");
    for (const auto& [name, value] : root.at("inputs").items()) {
      manifest.inputs[name] = {value.at("path").get<std::string>(),
                               value.at("sha256").get<std::string>()};
    }
    for (const auto& [name, value] : root.at("outputs").items()) {
      manifest.outputs[name] = value.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("malformed manifest: {}", e.what()));
  }
  return manifest;
}

std::string CreationTimestamp() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    char* end = nullptr;
    const long long seconds = std::strtoll(epoch, &end, 10);
    if (end != nullptr && *end == '\0') return FormatIso8601(seconds);
  }
  const auto now = std::chrono::system_clock::now();
  return FormatIso8601(
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count());
}

}  // namespace debatenet::pipeline
