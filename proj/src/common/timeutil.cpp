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

#include "common/timeutil.hpp"

#include <chrono>
#include <charconv>

#include <fmt/format.h>

#include "common/error.hpp"

namespace debatenet {
namespace {

[[noreturn]] void Fail(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::kParse,
              fmt::format("invalid ISO-8601 timestamp '{}': {}", text, why));
}

int ReadDigits(std::string_view text, size_t pos, size_t count,
               std::string_view whole) {
  if (pos + count > text.size()) Fail(whole, "truncated");
  int value = 0;
  for (size_t i = pos; i < pos + count; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') Fail(whole, "expected digit");
    value = value * 10 + (c - '0');
  }
  return value;
}

void Expect(std::string_view text, size_t pos, char c, std::string_view whole) {
  if (pos >= text.size() || text[pos] != c) {
    Fail(whole, fmt::format("expected '{}' at offset {}", c, pos));
  }
}

}  // namespace

std::int64_t ParseIso8601(std::string_view text) {
  using namespace std::chrono;
  const int y = ReadDigits(text, 0, 4, text);
  Expect(text, 4, '-', text);
  const int mo = ReadDigits(text, 5, 2, text);
  Expect(text, 7, '-', text);
  const int d = ReadDigits(text, 8, 2, text);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) Fail(text, "no such calendar date");
  std::int64_t seconds =
      duration_cast<std::chrono::seconds>(sys_days{ymd}.time_since_epoch())
          .count();
  if (text.size() == 10) return seconds;

  if (text[10] != 'T' && text[10] != ' ') Fail(text, "expected 'T'");
  const int hh = ReadDigits(text, 11, 2, text);
  Expect(text, 13, ':', text);
  const int mm = ReadDigits(text, 14, 2, text);
  Expect(text, 16, ':', text);
  const int ss = ReadDigits(text, 17, 2, text);
  if (hh > 23 || mm > 59 || ss > 60) Fail(text, "time field out of range");
  seconds += hh * 3600 + mm * 60 + ss;

  size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) Fail(text, "empty fraction");
  }
  if (pos == text.size()) Fail(text, "missing UTC offset");
  if (text[pos] == 'Z') {
    if (pos + 1 != text.size()) Fail(text, "trailing characters");
    return seconds;
  }
  if (text[pos] != '+' && text[pos] != '-') Fail(text, "bad UTC offset");
  const int sign = text[pos] == '+' ? 1 : -1;
  const int oh = ReadDigits(text, pos + 1, 2, text);
  Expect(text, pos + 3, ':', text);
  const int om = ReadDigits(text, pos + 4, 2, text);
  if (pos + 6 != text.size()) Fail(text, "trailing characters");
  return seconds - sign * (oh * 3600 + om * 60);
}

std::string FormatIso8601(std::int64_t seconds) {
  using namespace std::chrono;
  const sys_seconds tp{std::chrono::seconds{seconds}};
  const sys_days day_point = floor<days>(tp);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{tp - day_point};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

}  // namespace debatenet
