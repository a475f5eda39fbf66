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

#include "synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/random.hpp"
#include "common/timeutil.hpp"

namespace debatenet::synth {

using ingest::InteractionRecord;
using ingest::RecordKind;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, kGroupCount> kGroupNames = {
    "majority", "minority", "intermediate", "outsiders"};

constexpr std::array<std::string_view, 8> kOnTopic = {
    "police report from leipzig tonight",
    "randale in connewitz again",
    "polizei statement on the clashes",
    "what really happened in leipzig",
    "connewitz residents speak out",
    "more randalierer arrested",
    "the polizei response was wrong",
    "leipzig needs an honest debate"};

constexpr std::array<std::string_view, 5> kOffTopic = {
    "nice weather this weekend", "match results tonight",
    "trying a new recipe", "train delayed again", "good morning everyone"};

constexpr std::array<std::string_view, 6> kReplyText = {
    "that is simply not true", "exactly my point", "source?",
    "you should read the full report", "agreed", "this is how it started"};

void CheckProbability(double p, const std::string& field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} must lie in [0, 1], got {}", field, p));
  }
}

// Discrete power law P(k) ~ k^-exponent on [lo, hi] by inverse transform of
// the continuous density, floored.
std::uint32_t PowerLaw(Rng& rng, double exponent, std::uint32_t lo,
                       std::uint32_t hi) {
  const double u = 1.0 - rng.Uniform();
  const double x =
      static_cast<double>(lo) * std::pow(u, -1.0 / (exponent - 1.0));
  return static_cast<std::uint32_t>(
      std::min<double>(std::floor(x), static_cast<double>(hi)));
}

// FNV-1a, so text choices do not depend on the standard library's hash.
std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <typename T>
void Shuffle(Rng& rng, std::vector<T>& items) {
  for (size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.Below(i)]);
  }
}

// Index sampled in proportion to non-negative weights.
size_t Pick(Rng& rng, std::span<const double> cumulative) {
  const double target = rng.Uniform() * cumulative.back();
  const auto it =
      std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min<size_t>(static_cast<size_t>(it - cumulative.begin()),
                          cumulative.size() - 1);
}

}  // namespace

Preference GroupParams::MeanPreference() const {
  Preference mean{};
  for (const BehaviorType& type : types) {
    for (int h = 0; h < kGroupCount; ++h) {
      mean[h] += type.share * type.preference[h];
    }
  }
  return mean;
}

void ValidateParams(const GeneratorParams& params) {
  for (int g = 0; g < kGroupCount; ++g) {
    const GroupParams& group = params.groups[g];
    const std::string name(kGroupNames[g]);
    if (g < kOpinionGroups && group.size < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("groups.{}.size must be >= 1", name));
    }
    if (group.seeds > group.size) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("groups.{}.seeds exceeds the group size", name));
    }
    if (g == kOutsider && group.seeds > 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "groups.outsiders.seeds must be 0");
    }
    CheckProbability(group.activation, "groups." + name + ".activation");
    CheckProbability(group.contested_seeds, "groups." + name + ".contested_seeds");
    CheckProbability(group.first_order_fraction,
                     "groups." + name + ".first_order_fraction");
    if (!(group.mean_replies >= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("groups.{}.mean_replies must be >= 1", name));
    }
    if (group.types.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("groups.{}.types is empty", name));
    }
    double share = 0.0;
    for (size_t t = 0; t < group.types.size(); ++t) {
      const BehaviorType& type = group.types[t];
      CheckProbability(type.share, fmt::format("groups.{}.types[{}].share", name, t));
      CheckProbability(type.contested_affinity,
                       fmt::format("groups.{}.types[{}].contested_affinity", name, t));
      share += type.share;
      double total = 0.0;
      for (int h = 0; h < kGroupCount; ++h) {
        CheckProbability(type.preference[h],
                         fmt::format("groups.{}.types[{}].preference", name, t));
        total += type.preference[h];
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("groups.{}.types[{}].preference sums to {}",
                                name, t, total));
      }
    }
    if (std::abs(share - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("groups.{}.types shares sum to {}", name, share));
    }
  }
  for (int g = 0; g < kOpinionGroups; ++g) {
    double row = 0.0;
    for (int h = 0; h < kOpinionGroups; ++h) {
      if (!(params.affinity[g][h] >= 0.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "affinity entries must be non-negative");
      }
      row += params.affinity[g][h];
    }
    if (!(row > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("affinity row {} is all zero", kGroupNames[g]));
    }
  }
  if (!(params.activity_exponent > 1.0) || !(params.popularity_exponent > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "power-law exponents must exceed 1");
  }
  if (params.min_retweets > params.max_retweets) {
    throw Error(ErrorCode::kInvalidArgument,
                "min_retweets exceeds max_retweets");
  }
  if (!(params.seed_boost > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "seed_boost must be positive");
  }
  CheckProbability(params.reply_back, "reply_back");
  CheckProbability(params.off_topic_fraction, "off_topic_fraction");
  if (!(params.recent_bias > 0.0 && params.recent_bias <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "recent_bias must lie in (0, 1]");
  }
  if (params.weeks < 1 || params.window_first_week >= params.window_last_week ||
      params.window_last_week > params.weeks) {
    throw Error(ErrorCode::kInvalidArgument,
                "event window must be a non-empty week range inside the span");
  }
  if (params.keywords.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "keywords is empty");
  }
  std::uint64_t seeds = 0;
  bool replies = false;
  for (const GroupParams& group : params.groups) {
    seeds += group.seeds;
    replies = replies || (group.activation > 0.0 && group.size > group.seeds);
  }
  if (replies && seeds * params.roots_per_seed == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "replies requested but no seed posts a root");
  }
}

GeneratorParams PolarizedPreset(std::uint64_t seed) {
  GeneratorParams p;
  p.groups[kMajority] = {6500, 30, 0.3, 0.2, 4.0, 0.55,
                         {{0.8, {0.92, 0.03, 0.02, 0.03}, 0.05},
                          {0.2, {0.15, 0.75, 0.05, 0.05}, 0.9}}};
  p.groups[kMinority] = {2500, 12, 1.0, 0.4, 4.5, 0.65,
                         {{1.0, {0.70, 0.20, 0.05, 0.05}, 0.9}}};
  p.groups[kIntermediate] = {1000, 4, 0.5, 0.25, 3.5, 0.5,
                             {{1.0, {0.40, 0.30, 0.20, 0.10}, 0.5}}};
  p.groups[kOutsider] = {3000, 0, 0.0, 0.35, 2.0, 0.6,
                         {{1.0, {0.50, 0.30, 0.10, 0.10}, 0.5}}};
  p.affinity = {{{1.0, 0.1, 0.05}, {0.1, 1.0, 0.05}, {0.25, 0.25, 1.0}}};
  p.min_retweets = 6;
  p.window_first_week = 2;
  p.reply_back = 0.5;
  p.start = ParseIso8601("2019-07-01T00:00:00Z");
  p.keywords = {"leipzig", "connewitz", "polizei", "randal"};
  p.seed = seed;
  return p;
}

classify::Label SynthCorpus::TruthLabel(const std::string& user) const {
  const auto it = group.find(user);
  if (it == group.end() || it->second == kOutsider) {
    return classify::Label::kUnclassified;
  }
  return static_cast<classify::Label>(it->second);
}

namespace {

struct Node {
  std::uint32_t author;
  std::uint32_t root;  // node index of the tree root
  int arena;           // 1 for contested threads
  std::string id;
};

struct Intent {
  std::uint32_t user;
  int target;
  bool first_order;
  bool consumed = false;
};

class Builder {
 public:
  explicit Builder(const GeneratorParams& params)
      : params_(params), rng_(params.seed) {}

  SynthCorpus Run();

 private:
  static constexpr std::int64_t kWeek = kSecondsPerWeek;
  static constexpr std::int64_t kDay = 86400;

  void MakeUsers();
  void MakeRetweets();
  void MakeRoots();
  void MakeReplies();

  std::string OnTopic() {
    return std::string(kOnTopic[rng_.Below(kOnTopic.size())]);
  }
  std::string Text(bool on_topic) {
    return on_topic ? OnTopic()
                    : std::string(kOffTopic[rng_.Below(kOffTopic.size())]);
  }
  std::uint32_t ChooseParent(std::uint32_t user, int target, bool first_order);
  const BehaviorType& TypeOf(std::uint32_t user) const {
    return params_.groups[group_of_[user]].types[type_of_[user]];
  }
  std::uint32_t Emit(std::uint32_t user, std::uint32_t parent, std::int64_t at);

  const GeneratorParams& params_;
  Rng rng_;
  SynthCorpus corpus_;

  std::vector<std::string> ids_;
  std::vector<int> group_of_;
  std::vector<bool> is_seed_;
  std::vector<bool> contested_;
  std::vector<size_t> type_of_;
  std::vector<double> popularity_;
  std::array<std::vector<std::uint32_t>, kGroupCount> members_;

  std::vector<Node> nodes_;
  // Indexed [group][arena]. A root appears in its urn once per tree node, so
  // uniform draws favour large trees.
  std::array<std::array<std::vector<std::uint32_t>, 2>, kOpinionGroups> root_urn_;
  std::vector<std::uint32_t> all_roots_;
  std::array<std::array<std::vector<std::uint32_t>, 2>, kGroupCount> recent_;
  std::uint64_t reply_counter_ = 0;
};

void Builder::MakeUsers() {
  std::uint32_t total = 0;
  for (const GroupParams& g : params_.groups) total += g.size;
  std::vector<std::uint32_t> numbers(total);
  std::iota(numbers.begin(), numbers.end(), 1u);
  Shuffle(rng_, numbers);
  ids_.resize(total);
  group_of_.resize(total);
  is_seed_.assign(total, false);
  contested_.assign(total, false);
  type_of_.assign(total, 0);
  popularity_.resize(total);
  std::uint32_t next = 0;
  for (int g = 0; g < kGroupCount; ++g) {
    const GroupParams& group = params_.groups[g];
    for (std::uint32_t k = 0; k < group.size; ++k, ++next) {
      ids_[next] = fmt::format("u{:06d}", numbers[next]);
      group_of_[next] = g;
      members_[g].push_back(next);
      popularity_[next] =
          g == kOutsider ? 0.0
                         : PowerLaw(rng_, params_.popularity_exponent, 1, 1000000);
      corpus_.group[ids_[next]] = g;
      double draw = rng_.Uniform();
      int type = 0;
      for (size_t t = 0; t + 1 < group.types.size(); ++t) {
        if (draw < group.types[t].share) break;
        draw -= group.types[t].share;
        ++type;
      }
      corpus_.behavior_type[ids_[next]] = type;
      type_of_[next] = static_cast<size_t>(type);
    }
    // Seeds are the most popular members, ties by id.
    std::vector<std::uint32_t> order = members_[g];
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (popularity_[a] != popularity_[b]) return popularity_[a] > popularity_[b];
      return ids_[a] < ids_[b];
    });
    for (std::uint32_t s = 0; s < group.seeds; ++s) {
      const std::uint32_t user = order[s];
      is_seed_[user] = true;
      // Spread contested seeds evenly over the popularity ranking.
      contested_[user] =
          std::floor((s + 1) * group.contested_seeds) > std::floor(s * group.contested_seeds);
      popularity_[user] *= params_.seed_boost;
      corpus_.seeds.user_ids.insert(ids_[user]);
      corpus_.seeds.handles[ids_[user]] =
          fmt::format("{}_{}", kGroupNames[g], s + 1);
    }
  }
}

void Builder::MakeRetweets() {
  std::array<std::vector<double>, kOpinionGroups> cumulative;
  for (int g = 0; g < kOpinionGroups; ++g) {
    double sum = 0.0;
    for (std::uint32_t v : members_[g]) {
      sum += popularity_[v];
      cumulative[g].push_back(sum);
    }
  }
  const std::int64_t span = static_cast<std::int64_t>(params_.weeks) * kWeek;
  std::set<std::string> originals;
  std::uint64_t counter = 0;
  for (int g = 0; g < kOpinionGroups; ++g) {
    const auto& row = params_.affinity[g];
    const std::array<double, kOpinionGroups> row_cumulative = {
        row[0], row[0] + row[1], row[0] + row[1] + row[2]};
    for (std::uint32_t u : members_[g]) {
      const std::uint32_t count =
          PowerLaw(rng_, params_.activity_exponent, params_.min_retweets,
                   params_.max_retweets);
      for (std::uint32_t k = 0; k < count; ++k) {
        const size_t h = Pick(rng_, row_cumulative);
        std::uint32_t v = members_[h][Pick(rng_, cumulative[h])];
        if (v == u) {
          if (members_[h].size() == 1) continue;
          v = members_[h][Pick(rng_, cumulative[h])];
          if (v == u) continue;
        }
        const auto at = params_.start + static_cast<std::int64_t>(
                                            rng_.Below(static_cast<std::uint64_t>(span)));
        const std::int64_t day_start =
            params_.start + (at - params_.start) / kDay * kDay;
        const std::string original =
            fmt::format("o{}d{:03d}", ids_[v], (day_start - params_.start) / kDay);
        // The topic of an original is a pure function of its id, so every
        // retweet of it carries the same text.
        const std::uint64_t digest = Fnv1a(original);
        const bool on_topic =
            static_cast<double>(digest % 10000) >= params_.off_topic_fraction * 10000.0;
        const std::string text =
            on_topic ? std::string(kOnTopic[(digest >> 16) % kOnTopic.size()])
                     : std::string(kOffTopic[(digest >> 16) % kOffTopic.size()]);
        if (originals.insert(original).second) {
          InteractionRecord o;
          o.tweet_id = original;
          o.author_id = ids_[v];
          o.created_at = day_start;
          o.text = text;
          corpus_.records.push_back(std::move(o));
          ++corpus_.tally.originals;
        }
        InteractionRecord rt;
        rt.tweet_id = fmt::format("t{:08d}", ++counter);
        rt.author_id = ids_[u];
        rt.created_at = at;
        rt.kind = RecordKind::kRetweet;
        rt.ref_tweet_id = original;
        rt.ref_user_id = ids_[v];
        rt.text = "RT " + text;
        corpus_.records.push_back(std::move(rt));
        ++corpus_.tally.retweets;
      }
    }
  }
}

void Builder::MakeRoots() {
  const std::int64_t window_start =
      params_.start + static_cast<std::int64_t>(params_.window_first_week) * kWeek;
  const std::int64_t window_len =
      static_cast<std::int64_t>(params_.window_last_week -
                                params_.window_first_week) * kWeek;
  const auto opening = static_cast<std::uint64_t>(window_len / 10);
  std::uint64_t counter = 0;
  for (int g = 0; g < kOpinionGroups; ++g) {
    for (std::uint32_t u : members_[g]) {
      if (!is_seed_[u]) continue;
      for (std::uint32_t k = 0; k < params_.roots_per_seed; ++k) {
        InteractionRecord root;
        root.tweet_id = fmt::format("r{:06d}", ++counter);
        root.author_id = ids_[u];
        root.created_at = window_start + static_cast<std::int64_t>(rng_.Below(opening));
        root.text = OnTopic();
        const auto index = static_cast<std::uint32_t>(nodes_.size());
        const int arena = contested_[u] ? 1 : 0;
        nodes_.push_back({u, index, arena, root.tweet_id});
        root_urn_[g][arena].push_back(index);
        all_roots_.push_back(index);
        corpus_.records.push_back(std::move(root));
        ++corpus_.tally.roots;
      }
    }
  }
}

std::uint32_t Builder::ChooseParent(std::uint32_t user, int target,
                                    bool first_order) {
  const int preferred = rng_.Bernoulli(TypeOf(user).contested_affinity) ? 1 : 0;
  auto arena_of = [&](const std::array<std::vector<std::uint32_t>, 2>& pools) {
    return pools[preferred].empty() ? 1 - preferred : preferred;
  };
  auto from_urn = [&](int g) {
    const auto& list = root_urn_[g][arena_of(root_urn_[g])];
    return list[rng_.Below(list.size())];
  };
  auto from_recent = [&](int g) {
    const auto& list = recent_[g][arena_of(recent_[g])];
    const std::uint64_t back =
        std::min<std::uint64_t>(rng_.Geometric(params_.recent_bias), list.size() - 1);
    return list[list.size() - 1 - back];
  };
  std::uint32_t parent = 0;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const bool has_roots = target < kOpinionGroups &&
                           !(root_urn_[target][0].empty() && root_urn_[target][1].empty());
    const bool has_recent = !(recent_[target][0].empty() && recent_[target][1].empty());
    if ((first_order && has_roots) || (has_roots && !has_recent)) {
      parent = from_urn(target);
    } else if (has_recent) {
      parent = from_recent(target);
    } else {
      parent = all_roots_[rng_.Below(all_roots_.size())];
      if (attempt == 0) ++corpus_.tally.redirected;
    }
    if (nodes_[parent].author != user) break;
  }
  return parent;
}

std::uint32_t Builder::Emit(std::uint32_t user, std::uint32_t parent,
                            std::int64_t at) {
  const Node& p = nodes_[parent];
  InteractionRecord reply;
  reply.tweet_id = fmt::format("p{:07d}", ++reply_counter_);
  reply.author_id = ids_[user];
  reply.created_at = at;
  reply.kind = RecordKind::kReply;
  reply.ref_tweet_id = p.id;
  reply.ref_user_id = ids_[p.author];
  reply.mentions = {ids_[p.author]};
  reply.text = std::string(kReplyText[rng_.Below(kReplyText.size())]);
  if (rng_.Bernoulli(0.5)) reply.text += " " + OnTopic();
  ++corpus_.tally.replies;
  if (p.author == user) ++corpus_.tally.self_replies;
  if (p.root == parent) ++corpus_.tally.first_order;

  const std::uint32_t root = p.root;
  const int arena = p.arena;
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({user, root, arena, reply.tweet_id});
  root_urn_[group_of_[nodes_[root].author]][arena].push_back(root);
  recent_[group_of_[user]][arena].push_back(index);
  corpus_.records.push_back(std::move(reply));
  return index;
}

void Builder::MakeReplies() {
  std::vector<Intent> intents;
  for (int g = 0; g < kGroupCount; ++g) {
    const GroupParams& group = params_.groups[g];
    for (std::uint32_t u : members_[g]) {
      if (is_seed_[u] || !rng_.Bernoulli(group.activation)) continue;
      const Preference& pref = TypeOf(u).preference;
      const std::array<double, kGroupCount> cumulative = {
          pref[0], pref[0] + pref[1], pref[0] + pref[1] + pref[2],
          pref[0] + pref[1] + pref[2] + pref[3]};
      const std::uint64_t count =
          1 + rng_.Geometric(1.0 / group.mean_replies);
      for (std::uint64_t k = 0; k < count; ++k) {
        const int target = static_cast<int>(Pick(rng_, cumulative));
        // Outsiders post no roots, so replies aimed at them are never first
        // order.
        const bool first = target != kOutsider &&
                           rng_.Bernoulli(group.first_order_fraction);
        intents.push_back({u, target, first});
      }
    }
  }
  Shuffle(rng_, intents);

  // Deep intents still pending, per user and target group, for answering.
  std::vector<std::array<std::vector<std::uint32_t>, kGroupCount>> pending(
      ids_.size());
  for (std::uint32_t k = static_cast<std::uint32_t>(intents.size()); k-- > 0;) {
    if (!intents[k].first_order) {
      pending[intents[k].user][intents[k].target].push_back(k);
    }
  }
  auto take_pending = [&](std::uint32_t user, int target) -> bool {
    auto& list = pending[user][target];
    while (!list.empty()) {
      const std::uint32_t k = list.back();
      list.pop_back();
      if (!intents[k].consumed) {
        intents[k].consumed = true;
        return true;
      }
    }
    return false;
  };

  const std::int64_t window_start =
      params_.start + static_cast<std::int64_t>(params_.window_first_week) * kWeek;
  const std::int64_t window_end =
      params_.start + static_cast<std::int64_t>(params_.window_last_week) * kWeek;
  const std::int64_t begin =
      window_start + (window_end - window_start) / 10 + 1;
  const double slot = static_cast<double>(window_end - begin) /
                      (2.0 * static_cast<double>(intents.size() + 1));
  if (!intents.empty() && slot < 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "event window too short for the requested number of replies");
  }
  std::int64_t now = begin;
  for (size_t k = 0; k < intents.size(); ++k) {
    Intent& intent = intents[k];
    if (intent.consumed) continue;
    intent.consumed = true;
    now = std::max(now + 1,
                   begin + static_cast<std::int64_t>(slot * static_cast<double>(k)));
    const std::uint32_t parent =
        ChooseParent(intent.user, intent.target, intent.first_order);
    std::uint32_t last = Emit(intent.user, parent, now);

    // Back-and-forth: the replied-to user may answer, spending one of their
    // own pending intents aimed at the replier's group.
    std::uint32_t speaker = nodes_[parent].author;
    std::uint32_t listener = intent.user;
    for (int turn = 0; turn < 20; ++turn) {
      if (speaker == listener || is_seed_[speaker] ||
          !rng_.Bernoulli(params_.reply_back) ||
          !take_pending(speaker, group_of_[listener])) {
        break;
      }
      last = Emit(speaker, last, ++now);
      ++corpus_.tally.reply_backs;
      std::swap(speaker, listener);
    }
  }
  if (now >= window_end) {
    throw Error(ErrorCode::kInvalidArgument,
                "replies overflow the event window");
  }
}

SynthCorpus Builder::Run() {
  MakeUsers();
  MakeRetweets();
  MakeRoots();
  MakeReplies();
  std::sort(corpus_.records.begin(), corpus_.records.end(),
            [](const InteractionRecord& a, const InteractionRecord& b) {
              if (a.created_at != b.created_at) return a.created_at < b.created_at;
              return a.tweet_id < b.tweet_id;
            });
  corpus_.filter.window_start =
      params_.start + static_cast<std::int64_t>(params_.window_first_week) * kWeek;
  corpus_.filter.window_end =
      params_.start + static_cast<std::int64_t>(params_.window_last_week) * kWeek;
  corpus_.filter.keywords = params_.keywords;
  corpus_.filter.apply_keywords_to = ingest::KeywordScope::kRootsOnly;
  return std::move(corpus_);
}

}  // namespace

SynthCorpus Generate(const GeneratorParams& params) {
  ValidateParams(params);
  return Builder(params).Run();
}

namespace {

ordered_json PreferenceJson(const Preference& p) {
  return ordered_json::array({p[0], p[1], p[2], p[3]});
}

}  // namespace

std::string ParamsToJson(const GeneratorParams& params) {
  ordered_json root;
  ordered_json groups = ordered_json::object();
  for (int g = 0; g < kGroupCount; ++g) {
    const GroupParams& group = params.groups[g];
    ordered_json types = ordered_json::array();
    for (const BehaviorType& t : group.types) {
      types.push_back({{"share", t.share},
                       {"preference", PreferenceJson(t.preference)},
                       {"contested_affinity", t.contested_affinity}});
    }
    groups[std::string(kGroupNames[g])] = {
        {"size", group.size},
        {"seeds", group.seeds},
        {"contested_seeds", group.contested_seeds},
        {"activation", group.activation},
        {"mean_replies", group.mean_replies},
        {"first_order_fraction", group.first_order_fraction},
        {"types", types}};
  }
  root["groups"] = groups;
  ordered_json affinity = ordered_json::array();
  for (const auto& row : params.affinity) {
    affinity.push_back(ordered_json::array({row[0], row[1], row[2]}));
  }
  root["affinity"] = affinity;
  root["activity_exponent"] = params.activity_exponent;
  root["min_retweets"] = params.min_retweets;
  root["max_retweets"] = params.max_retweets;
  root["popularity_exponent"] = params.popularity_exponent;
  root["seed_boost"] = params.seed_boost;
  root["roots_per_seed"] = params.roots_per_seed;
  root["reply_back"] = params.reply_back;
  root["recent_bias"] = params.recent_bias;
  root["off_topic_fraction"] = params.off_topic_fraction;
  root["start"] = FormatIso8601(params.start);
  root["weeks"] = params.weeks;
  root["window_first_week"] = params.window_first_week;
  root["window_last_week"] = params.window_last_week;
  root["keywords"] = params.keywords;
  root["seed"] = params.seed;
  return root.dump(2) + "\n";
}

GeneratorParams ParamsFromJson(std::string_view json_text) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("generator params: {}", e.what()));
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kParse, "generator params must be a JSON object");
  }
  // Missing fields keep the polarized values.
  GeneratorParams p = PolarizedPreset(root.value("seed", std::uint64_t{1}));
  try {
    if (root.contains("groups")) {
      for (int g = 0; g < kGroupCount; ++g) {
        const std::string name(kGroupNames[g]);
        if (!root["groups"].contains(name)) continue;
        const ordered_json& j = root["groups"][name];
        GroupParams& group = p.groups[g];
        group.size = j.value("size", group.size);
        group.seeds = j.value("seeds", group.seeds);
        group.contested_seeds = j.value("contested_seeds", group.contested_seeds);
        group.activation = j.value("activation", group.activation);
        group.mean_replies = j.value("mean_replies", group.mean_replies);
        group.first_order_fraction =
            j.value("first_order_fraction", group.first_order_fraction);
        if (j.contains("types")) {
          group.types.clear();
          for (const ordered_json& t : j["types"]) {
            BehaviorType type;
            type.share = t.at("share").get<double>();
            type.contested_affinity = t.value("contested_affinity", 0.5);
            const auto pref = t.at("preference").get<std::vector<double>>();
            if (pref.size() != kGroupCount) {
              throw Error(ErrorCode::kParse,
                          fmt::format("groups.{}.types preference needs {} "
                                      "entries",
                                      name, kGroupCount));
            }
            std::copy(pref.begin(), pref.end(), type.preference.begin());
            group.types.push_back(type);
          }
        }
      }
    }
    if (root.contains("affinity")) {
      const auto rows = root["affinity"].get<std::vector<std::vector<double>>>();
      if (rows.size() != kOpinionGroups) {
        throw Error(ErrorCode::kParse, "affinity must be 3x3");
      }
      for (int g = 0; g < kOpinionGroups; ++g) {
        if (rows[g].size() != kOpinionGroups) {
          throw Error(ErrorCode::kParse, "affinity must be 3x3");
        }
        for (int h = 0; h < kOpinionGroups; ++h) p.affinity[g][h] = rows[g][h];
      }
    }
    p.activity_exponent = root.value("activity_exponent", p.activity_exponent);
    p.min_retweets = root.value("min_retweets", p.min_retweets);
    p.max_retweets = root.value("max_retweets", p.max_retweets);
    p.popularity_exponent =
        root.value("popularity_exponent", p.popularity_exponent);
    p.seed_boost = root.value("seed_boost", p.seed_boost);
    p.roots_per_seed = root.value("roots_per_seed", p.roots_per_seed);
    p.reply_back = root.value("reply_back", p.reply_back);
    p.recent_bias = root.value("recent_bias", p.recent_bias);
    p.off_topic_fraction = root.value("off_topic_fraction", p.off_topic_fraction);
    if (root.contains("start")) {
      p.start = ParseIso8601(root["start"].get<std::string>());
    }
    p.weeks = root.value("weeks", p.weeks);
    p.window_first_week = root.value("window_first_week", p.window_first_week);
    p.window_last_week = root.value("window_last_week", p.window_last_week);
    if (root.contains("keywords")) {
      p.keywords = root["keywords"].get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("generator params: {}", e.what()));
  }
  ValidateParams(p);
  return p;
}

void WriteTruthCsv(const SynthCorpus& corpus, std::ostream& out) {
  out << "user_id,label\n";
  for (const auto& [user, g] : corpus.group) {
    out << user << ',' << classify::LabelName(corpus.TruthLabel(user)) << '\n';
  }
}

std::map<std::string, classify::Label> ReadTruthCsv(std::istream& in) {
  std::map<std::string, classify::Label> truth;
  std::vector<std::string> fields;
  size_t row = 0;
  while (ReadCsvRow(in, fields)) {
    ++row;
    if (row == 1 && !fields.empty() && fields[0] == "user_id") continue;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParse,
                  fmt::format("truth row {}: expected user_id,label", row));
    }
    truth[fields[0]] = classify::ParseLabel(fields[1]);
  }
  return truth;
}

}  // namespace debatenet::synth
