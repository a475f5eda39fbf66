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

#ifndef DEBATENET_INGEST_RECORD_HPP_
#define DEBATENET_INGEST_RECORD_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet::ingest {

enum class RecordKind { kOriginal, kRetweet, kReply };

std::string_view KindName(RecordKind kind);

// One archived post. Retweets and replies carry the referenced tweet and its
// author; originals carry neither.
struct InteractionRecord {
  std::string tweet_id;
  std::string author_id;
  std::int64_t created_at = 0;  // UTC seconds
  RecordKind kind = RecordKind::kOriginal;
  std::optional<std::string> ref_tweet_id;
  std::optional<std::string> ref_user_id;
  std::string text;
  // User ids mentioned in the post. Optional in archives.
  std::vector<std::string> mentions;

  bool operator==(const InteractionRecord&) const = default;
};

// Empty string when the record satisfies the kind/reference invariants,
// otherwise a description of the violation.
std::string ValidateRecord(const InteractionRecord& record);

struct SeedSet {
  std::set<std::string> user_ids;
  std::map<std::string, std::string> handles;

  bool Contains(std::string_view id) const {
    return user_ids.find(std::string(id)) != user_ids.end();
  }
  size_t size() const { return user_ids.size(); }
  bool operator==(const SeedSet&) const = default;
};

enum class KeywordScope { kRootsOnly, kAllRecords };

struct CorpusFilter {
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::vector<std::string> keywords;
  KeywordScope apply_keywords_to = KeywordScope::kRootsOnly;
};

}  // namespace debatenet::ingest

#endif  // DEBATENET_INGEST_RECORD_HPP_
