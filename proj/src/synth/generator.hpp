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


#ifndef DEBATENET_SYNTH_GENERATOR_HPP_
#define DEBATENET_SYNTH_GENERATOR_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "classify/clusters.hpp"
#include "ingest/record.hpp"

namespace debatenet::synth {

// Planted groups. The first three carry opinion labels; outsiders only
// reply and never enter the retweet network.
enum Group : int { kMajority = 0, kMinority = 1, kIntermediate = 2, kOutsider = 3 };
inline constexpr int kGroupCount = 4;
inline constexpr int kOpinionGroups = 3;

// Reply target distribution over the four groups.
using Preference = std::array<double, kGroupCount>;

struct BehaviorType {
  double share = 1.0;
  Preference preference{};
  // Probability of picking a contested thread when the target group has
  // both kinds.
  double contested_affinity = 0.5;
};

struct GroupParams {
  std::uint32_t size = 0;
  std::uint32_t seeds = 0;  // opinion groups only
  double contested_seeds = 0.0;  // share of seeds whose threads are contested
  double activation = 0.0;  // probability a member replies at all
  double mean_replies = 1.0;
  double first_order_fraction = 0.5;
  std::vector<BehaviorType> types;

  Preference MeanPreference() const;
};

struct GeneratorParams {
  std::array<GroupParams, kGroupCount> groups;

  // Retweet block structure: odds of retweeting into group h from group g,
  // before popularity weighting.
  std::array<std::array<double, kOpinionGroups>, kOpinionGroups> affinity{};
  double activity_exponent = 2.5;
  std::uint32_t min_retweets = 6;
  std::uint32_t max_retweets = 400;
  double popularity_exponent = 2.5;
  double seed_boost = 5.0;

  std::uint32_t roots_per_seed = 20;
  double reply_back = 0.0;    // chance the replied-to user answers in kind
  double recent_bias = 0.15;  // geometric decay over recent reply nodes
  double off_topic_fraction = 0.05;

  std::int64_t start = 0;  // UTC seconds
  std::uint32_t weeks = 12;
  std::uint32_t window_first_week = 2;
  std::uint32_t window_last_week = 10;  // exclusive
  std::vector<std::string> keywords;

  std::uint64_t seed = 1;
};

// Throws Error(kInvalidArgument) naming the offending field.
void ValidateParams(const GeneratorParams& params);

// 10k labeled users (65% majority, 25% minority, 10% intermediate) plus
// outsiders; minority activation twice the majority's and a 0.7 minority
// preference for majority targets.
GeneratorParams PolarizedPreset(std::uint64_t seed = 1);

struct GenerationTally {
  std::uint64_t retweets = 0;
  std::uint64_t originals = 0;
  std::uint64_t roots = 0;
  std::uint64_t replies = 0;
  std::uint64_t first_order = 0;
  std::uint64_t reply_backs = 0;
  std::uint64_t self_replies = 0;
  std::uint64_t redirected = 0;  // intents whose target group had no node yet
};

struct SynthCorpus {
  std::vector<ingest::InteractionRecord> records;  // by (created_at, id)
  ingest::SeedSet seeds;
  std::map<std::string, int> group;          // planted group per user
  std::map<std::string, int> behavior_type;  // index into the group's types
  ingest::CorpusFilter filter;               // event window and keywords
  GenerationTally tally;

  // Opinion-group users mapped to labels; outsiders are Unclassified.
  classify::Label TruthLabel(const std::string& user) const;
};

SynthCorpus Generate(const GeneratorParams& params);

std::string ParamsToJson(const GeneratorParams& params);
GeneratorParams ParamsFromJson(std::string_view json_text);

// user_id,label
void WriteTruthCsv(const SynthCorpus& corpus, std::ostream& out);
std::map<std::string, classify::Label> ReadTruthCsv(std::istream& in);

}  // namespace debatenet::synth

#endif  // DEBATENET_SYNTH_GENERATOR_HPP_
