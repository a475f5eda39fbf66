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

#include "ingest/filters.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"
#include "common/timeutil.hpp"

namespace debatenet::ingest {

std::vector<InteractionRecord> FilterWindow(
    std::span<const InteractionRecord> records, std::int64_t window_start,
    std::int64_t window_end) {
  std::vector<InteractionRecord> kept;
  for (const auto& record : records) {
    if (record.created_at >= window_start && record.created_at < window_end) {
      kept.push_back(record);
    }
  }
  return kept;
}

std::vector<InteractionRecord> FilterKeywords(
    std::span<const InteractionRecord> records,
    std::span<const std::string> keywords, KeywordScope scope) {
  std::vector<std::string> folded;
  folded.reserve(keywords.size());
  for (const auto& keyword : keywords) folded.push_back(FoldCase(keyword));

  std::vector<InteractionRecord> kept;
  for (const auto& record : records) {
    if (scope == KeywordScope::kRootsOnly &&
        record.kind == RecordKind::kReply) {
      kept.push_back(record);
      continue;
    }
    const std::string text = FoldCase(record.text);
    const bool match = std::any_of(
        folded.begin(), folded.end(), [&](const std::string& keyword) {
          return text.find(keyword) != std::string::npos;
        });
    if (match) kept.push_back(record);
  }
  return kept;
}

std::vector<InteractionRecord> ApplyCorpusFilter(
    std::span<const InteractionRecord> records, const CorpusFilter& filter) {
  std::vector<InteractionRecord> windowed =
      FilterWindow(records, filter.window_start, filter.window_end);
  if (filter.keywords.empty()) return windowed;
  return FilterKeywords(windowed, filter.keywords, filter.apply_keywords_to);
}

SeedSet SnowballExpand(std::span<const InteractionRecord> records,
                       const SeedSet& seeds, double min_weekly_rate,
                       double weeks, const SnowballOptions& options) {
  if (!(min_weekly_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "snowball: min_weekly_rate must be positive");
  }
  if (!(weeks >= 1.0)) {
    throw Error(ErrorCode::kData,
                fmt::format("snowball: span of {} weeks is shorter than one "
                            "week",
                            weeks));
  }
  if (!records.empty()) {
    const auto [lo, hi] = std::minmax_element(
        records.begin(), records.end(), [](const auto& a, const auto& b) {
          return a.created_at < b.created_at;
        });
    if (hi->created_at - lo->created_at < kSecondsPerWeek) {
      throw Error(ErrorCode::kData,
                  "snowball: records span less than one week");
    }
  }

  std::map<std::string, std::uint64_t> counts;
  auto count = [&](const std::string& target, const std::string& author) {
    if (target == author || seeds.Contains(target)) return;
    ++counts[target];
  };
  for (const auto& record : records) {
    if (!seeds.Contains(record.author_id)) continue;
    if (record.ref_user_id && record.kind != RecordKind::kOriginal) {
      count(*record.ref_user_id, record.author_id);
    }
    for (const auto& mentioned : record.mentions) {
      // A reply's mention of the replied-to author is already counted.
      if (record.ref_user_id && mentioned == *record.ref_user_id) continue;
      count(mentioned, record.author_id);
    }
  }

  SeedSet expanded = seeds;
  for (const auto& [user, n] : counts) {
    if (static_cast<double>(n) / weeks < min_weekly_rate) continue;
    if (options.deny.count(user) > 0) continue;
    if (!options.allow.empty() && options.allow.count(user) == 0) continue;
    expanded.user_ids.insert(user);
  }
  return expanded;
}

}  // namespace debatenet::ingest
