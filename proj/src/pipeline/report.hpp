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


#ifndef DEBATENET_PIPELINE_REPORT_HPP_
#define DEBATENET_PIPELINE_REPORT_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace debatenet::pipeline {

enum class Stage;

// Aggregated report: tables, figures, report.json and a plain-text summary,
// as (file name, content) pairs. Reads the upstream stage directories.
std::vector<std::pair<std::string, std::string>> BuildReport(
    const std::function<std::filesystem::path(Stage)>& stage_dir);

}  // namespace debatenet::pipeline

#endif  // DEBATENET_PIPELINE_REPORT_HPP_
