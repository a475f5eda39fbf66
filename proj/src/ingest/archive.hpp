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

#ifndef DEBATENET_INGEST_ARCHIVE_HPP_
#define DEBATENET_INGEST_ARCHIVE_HPP_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ingest/record.hpp"

namespace debatenet::ingest {

// How "quote" records in an archive are treated.
enum class QuoteMapping { kAsRetweet, kDrop };

struct ParseOptions {
  bool strict = false;
  QuoteMapping quotes = QuoteMapping::kAsRetweet;
};

struct ParseIssue {
  size_t line = 0;  // 1-based
  std::string message;
};

struct ParseResult {
  std::vector<InteractionRecord> records;
  std::vector<ParseIssue> errors;
  size_t dropped_quotes = 0;
};

// Line-delimited JSON records. In lenient mode malformed lines are reported
// and skipped; in strict mode the first one throws Error(kParse).
ParseResult ParseArchive(std::istream& in, const ParseOptions& options = {});

// Inverse of ParseArchive: one JSON object per line, fixed key order.
void SerializeArchive(std::span<const InteractionRecord> records,
                      std::ostream& out);
std::string SerializeRecord(const InteractionRecord& record);

// Seed file: one user id per line, optional tab-separated handle. Blank lines
// and lines starting with '#' are ignored. Throws on duplicates or an empty
// set.
SeedSet ReadSeedSet(std::istream& in);
void WriteSeedSet(const SeedSet& seeds, std::ostream& out);

// JSON object with window_start, window_end (ISO-8601), keywords[] and
// apply_keywords_to ("roots_only" | "all_records").
CorpusFilter ParseCorpusFilter(std::string_view json_text);
std::string CorpusFilterToJson(const CorpusFilter& filter);

// Throws Error(kInvalidArgument) when the filter breaks its invariants.
void ValidateCorpusFilter(const CorpusFilter& filter);

}  // namespace debatenet::ingest

#endif  // DEBATENET_INGEST_ARCHIVE_HPP_
