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

#ifndef DEBATENET_INGEST_FILTERS_HPP_
#define DEBATENET_INGEST_FILTERS_HPP_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ingest/record.hpp"

namespace debatenet::ingest {

// Records with window_start <= created_at < window_end, order preserved.
std::vector<InteractionRecord> FilterWindow(
    std::span<const InteractionRecord> records, std::int64_t window_start,
    std::int64_t window_end);

// Keeps records whose case-folded text contains at least one keyword as a
// substring. With kRootsOnly, replies pass unconditionally and only originals
// and retweets are tested.
std::vector<InteractionRecord> FilterKeywords(
    std::span<const InteractionRecord> records,
    std::span<const std::string> keywords,
    KeywordScope scope = KeywordScope::kAllRecords);

// Window, then keywords (skipped when the keyword list is empty).
std::vector<InteractionRecord> ApplyCorpusFilter(
    std::span<const InteractionRecord> records, const CorpusFilter& filter);

struct SnowballOptions {
  // When non-empty, only these users may be added.
  std::set<std::string> allow;
  // Never added.
  std::set<std::string> deny;
};

// One snowball round: adds every non-seed user that seed users retweeted,
// replied to or mentioned at an average of at least min_weekly_rate times per
// week over `weeks` weeks. Throws Error(kInvalidArgument) on bad rates and
// Error(kData) when the records span less than one week.
SeedSet SnowballExpand(std::span<const InteractionRecord> records,
                       const SeedSet& seeds, double min_weekly_rate,
                       double weeks, const SnowballOptions& options = {});

}  // namespace debatenet::ingest

#endif  // DEBATENET_INGEST_FILTERS_HPP_
