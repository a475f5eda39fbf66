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

#ifndef DEBATENET_COMMON_ERROR_HPP_
#define DEBATENET_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace debatenet {

// Failure categories. The C API maps these one-to-one onto dn_status codes.
enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kIo,
  kData,
  kNumeric,
  kConvergence,
  kDependency,
  kStale,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace debatenet

#endif  // DEBATENET_COMMON_ERROR_HPP_
