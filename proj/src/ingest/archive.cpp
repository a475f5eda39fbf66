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

#include "ingest/archive.hpp"

#include <fmt/format.h>

#include <json.hpp>
#include <unordered_set>

#include "common/error.hpp"
#include "common/text.hpp"
#include "common/timeutil.hpp"

namespace debatenet::ingest {

using nlohmann::ordered_json;

std::string_view KindName(RecordKind kind) {
  switch (kind) {
    case RecordKind::kOriginal:
      return "original";
    case RecordKind::kRetweet:
      return "retweet";
    case RecordKind::kReply:
      return "reply";
  }
  return "original";
}

std::string ValidateRecord(const InteractionRecord& record) {
  if (record.tweet_id.empty()) return "empty id";
  if (record.author_id.empty()) return "empty author_id";
  const bool has_refs =
      record.ref_tweet_id.has_value() && record.ref_user_id.has_value();
  const bool has_any_ref =
      record.ref_tweet_id.has_value() || record.ref_user_id.has_value();
  if (record.kind == RecordKind::kOriginal) {
    if (has_any_ref) return "original record must not carry references";
  } else if (!has_refs) {
    return fmt::format("{} record requires ref_tweet_id and ref_user_id",
                       KindName(record.kind));
  }
  return {};
}

namespace {

struct LineOutcome {
  std::optional<InteractionRecord> record;
  bool dropped_quote = false;
};

std::string RequireString(const ordered_json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(fmt::format("missing field '{}'", key));
  if (!it->is_string()) {
    throw std::invalid_argument(fmt::format("field '{}' must be a string", key));
  }
  return it->get<std::string>();
}

std::optional<std::string> OptionalString(const ordered_json& obj,
                                          const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw std::invalid_argument(fmt::format("field '{}' must be a string", key));
  }
  return it->get<std::string>();
}

LineOutcome ParseLine(std::string_view line, const ParseOptions& options) {
  const ordered_json obj = ordered_json::parse(line);
  if (!obj.is_object()) throw std::invalid_argument("record is not an object");
  InteractionRecord record;
  record.tweet_id = RequireString(obj, "id");
  record.author_id = RequireString(obj, "author_id");
  record.created_at = ParseIso8601(RequireString(obj, "created_at"));
  const std::string kind = RequireString(obj, "kind");
  LineOutcome outcome;
  if (kind == "original") {
    record.kind = RecordKind::kOriginal;
  } else if (kind == "retweet") {
    record.kind = RecordKind::kRetweet;
  } else if (kind == "reply") {
    record.kind = RecordKind::kReply;
  } else if (kind == "quote") {
    if (options.quotes == QuoteMapping::kDrop) {
      outcome.dropped_quote = true;
      return outcome;
    }
    record.kind = RecordKind::kRetweet;
  } else {
    throw std::invalid_argument(fmt::format("unknown kind '{}'", kind));
  }
  record.ref_tweet_id = OptionalString(obj, "ref_tweet_id");
  record.ref_user_id = OptionalString(obj, "ref_user_id");
  record.text = OptionalString(obj, "text").value_or("");
  if (const auto it = obj.find("mentions"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw std::invalid_argument("'mentions' must be an array");
    for (const auto& m : *it) {
      if (!m.is_string()) throw std::invalid_argument("mention ids must be strings");
      record.mentions.push_back(m.get<std::string>());
    }
  }
  if (std::string problem = ValidateRecord(record); !problem.empty()) {
    throw std::invalid_argument(problem);
  }
  outcome.record = std::move(record);
  return outcome;
}

}  // namespace

ParseResult ParseArchive(std::istream& in, const ParseOptions& options) {
  ParseResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::string message;
    try {
      LineOutcome outcome = ParseLine(line, options);
      if (outcome.dropped_quote) {
        ++result.dropped_quotes;
        continue;
      }
      if (!seen.insert(outcome.record->tweet_id).second) {
        message = fmt::format("duplicate id '{}'", outcome.record->tweet_id);
      } else {
        result.records.push_back(std::move(*outcome.record));
        continue;
      }
    } catch (const nlohmann::json::exception& e) {
      message = e.what();
    } catch (const std::invalid_argument& e) {
      message = e.what();
    } catch (const Error& e) {
      message = e.what();
    }
    if (options.strict) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: {}", line_no, message));
    }
    result.errors.push_back({line_no, std::move(message)});
  }
  return result;
}

std::string SerializeRecord(const InteractionRecord& record) {
  ordered_json obj;
  obj["id"] = record.tweet_id;
  obj["author_id"] = record.author_id;
  obj["created_at"] = FormatIso8601(record.created_at);
  obj["kind"] = KindName(record.kind);
  if (record.ref_tweet_id) obj["ref_tweet_id"] = *record.ref_tweet_id;
  if (record.ref_user_id) obj["ref_user_id"] = *record.ref_user_id;
  obj["text"] = record.text;
  if (!record.mentions.empty()) obj["mentions"] = record.mentions;
  return obj.dump();
}

void SerializeArchive(std::span<const InteractionRecord> records,
                      std::ostream& out) {
  for (const auto& record : records) out << SerializeRecord(record) << '\n';
}

SeedSet ReadSeedSet(std::istream& in) {
  SeedSet seeds;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const size_t tab = trimmed.find('\t');
    const std::string id(Trim(trimmed.substr(0, tab)));
    if (!seeds.user_ids.insert(id).second) {
      throw Error(ErrorCode::kParse,
                  fmt::format("seed file line {}: duplicate id '{}'", line_no, id));
    }
    if (tab != std::string_view::npos) {
      const std::string handle(Trim(trimmed.substr(tab + 1)));
      if (!handle.empty()) seeds.handles[id] = handle;
    }
  }
  if (seeds.user_ids.empty()) {
    throw Error(ErrorCode::kData, "seed set is empty");
  }
  return seeds;
}

void WriteSeedSet(const SeedSet& seeds, std::ostream& out) {
  for (const auto& id : seeds.user_ids) {
    out << id;
    if (const auto it = seeds.handles.find(id); it != seeds.handles.end()) {
      out << '\t' << it->second;
    }
    out << '\n';
  }
}

void ValidateCorpusFilter(const CorpusFilter& filter) {
  if (filter.window_start >= filter.window_end) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter: window_start must precede window_end");
  }
  for (const auto& keyword : filter.keywords) {
    if (keyword.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "filter: empty keyword");
    }
    if (FoldCase(keyword) != keyword) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("filter: keyword '{}' is not lowercase", keyword));
    }
  }
}

CorpusFilter ParseCorpusFilter(std::string_view json_text) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("filter config: {}", e.what()));
  }
  CorpusFilter filter;
  try {
    filter.window_start =
        ParseIso8601(obj.at("window_start").get<std::string>());
    filter.window_end = ParseIso8601(obj.at("window_end").get<std::string>());
    if (obj.contains("keywords")) {
      filter.keywords = obj.at("keywords").get<std::vector<std::string>>();
    }
    const std::string scope = obj.value("apply_keywords_to", "roots_only");
    if (scope == "roots_only") {
      filter.apply_keywords_to = KeywordScope::kRootsOnly;
    } else if (scope == "all_records") {
      filter.apply_keywords_to = KeywordScope::kAllRecords;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("filter.apply_keywords_to: unknown value '{}'",
                              scope));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("filter config: {}", e.what()));
  }
  ValidateCorpusFilter(filter);
  return filter;
}

std::string CorpusFilterToJson(const CorpusFilter& filter) {
  ordered_json obj;
  obj["window_start"] = FormatIso8601(filter.window_start);
  obj["window_end"] = FormatIso8601(filter.window_end);
  obj["keywords"] = filter.keywords;
  obj["apply_keywords_to"] =
      filter.apply_keywords_to == KeywordScope::kRootsOnly ? "roots_only"
                                                           : "all_records";
  return obj.dump(2);
}

}  // namespace debatenet::ingest
