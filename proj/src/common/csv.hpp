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

#ifndef DEBATENET_COMMON_CSV_HPP_
#define DEBATENET_COMMON_CSV_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

// Minimal RFC 4180 handling: fields containing a comma, quote or newline are
// quoted on output; quoted fields are accepted on input.
std::string CsvEscape(std::string_view field);

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

// Reads one record. Returns false at end of input.
bool ReadCsvRow(std::istream& in, std::vector<std::string>& fields);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

double ParseDouble(std::string_view text);

}  // namespace debatenet

#endif  // DEBATENET_COMMON_CSV_HPP_
