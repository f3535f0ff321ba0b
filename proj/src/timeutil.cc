// Copyright 2026 The finsent Authors.
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

#include "finsent/timeutil.h"

#include <charconv>
#include <cstdio>

#include "finsent/base.h"
#include "finsent/text.h"

namespace finsent {
namespace {

int ParseFixedInt(std::string_view text, size_t pos, size_t len,
                  std::string_view what) {
  if (pos + len > text.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) +
                     "'");
  }
  int value = 0;
  for (size_t i = pos; i < pos + len; ++i) {
    if (!IsDigit(text[i])) {
      throw ParseError("invalid " + std::string(what) + " '" +
                       std::string(text) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

}  // namespace

Date ParseDate(std::string_view text) {
  text = Trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw ParseError("invalid date '" + std::string(text) +
                     "', expected YYYY-MM-DD");
  }
  const int y = ParseFixedInt(text, 0, 4, "date");
  const int m = ParseFixedInt(text, 5, 2, "date");
  const int d = ParseFixedInt(text, 8, 2, "date");
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw ParseError("invalid date '" + std::string(text) + "'");
  return Date{ymd};
}

std::string FormatDate(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

int YearOf(Date d) {
  return static_cast<int>(std::chrono::year_month_day{d}.year());
}

UtcOffset ParseUtcOffset(std::string_view text) {
  text = Trim(text);
  if (text == "Z" || text == "z" || text == "UTC") return UtcOffset{};
  if (text.size() == 6 && (text[0] == '+' || text[0] == '-') && text[3] == ':') {
    const int h = ParseFixedInt(text, 1, 2, "UTC offset");
    const int m = ParseFixedInt(text, 4, 2, "UTC offset");
    if (h > 23 || m > 59) {
      throw ParseError("invalid UTC offset '" + std::string(text) + "'");
    }
    const int sign = text[0] == '-' ? -1 : 1;
    return UtcOffset{std::chrono::minutes{sign * (h * 60 + m)}};
  }
  throw ParseError("invalid UTC offset '" + std::string(text) +
                   "', expected +HH:MM, -HH:MM or Z");
}

std::string FormatUtcOffset(UtcOffset offset) {
  const long total = offset.value.count();
  const long a = total < 0 ? -total : total;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%c%02ld:%02ld", total < 0 ? '-' : '+', a / 60,
                a % 60);
  return buf;
}

std::chrono::minutes ParseTimeOfDay(std::string_view text) {
  text = Trim(text);
  if (text.size() != 5 || text[2] != ':') {
    throw ParseError("invalid time of day '" + std::string(text) +
                     "', expected HH:MM");
  }
  const int h = ParseFixedInt(text, 0, 2, "time of day");
  const int m = ParseFixedInt(text, 3, 2, "time of day");
  if (h > 23 || m > 59) {
    throw ParseError("invalid time of day '" + std::string(text) + "'");
  }
  return std::chrono::minutes{h * 60 + m};
}

std::string FormatTimeOfDay(std::chrono::minutes m) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%02ld:%02ld",
                static_cast<long>(m.count() / 60), static_cast<long>(m.count() % 60));
  return buf;
}

Instant ParseTimestamp(std::string_view text, UtcOffset default_zone) {
  text = Trim(text);
  if (text.size() < 16 || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':') {
    throw ParseError("invalid timestamp '" + std::string(text) +
                     "', expected ISO 8601");
  }
  const Date day = ParseDate(text.substr(0, 10));
  const int h = ParseFixedInt(text, 11, 2, "timestamp");
  const int mi = ParseFixedInt(text, 14, 2, "timestamp");
  int sec = 0;
  size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    sec = ParseFixedInt(text, pos + 1, 2, "timestamp");
    pos += 3;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && IsDigit(text[pos])) ++pos;
    }
  }
  if (h > 23 || mi > 59 || sec > 60) {
    throw ParseError("invalid timestamp '" + std::string(text) + "'");
  }
  UtcOffset zone = default_zone;
  if (pos < text.size()) zone = ParseUtcOffset(text.substr(pos));
  return std::chrono::time_point_cast<std::chrono::seconds>(day) +
         std::chrono::hours{h} + std::chrono::minutes{mi} +
         std::chrono::seconds{sec} - zone.value;
}

Instant LocalInstant(Date day, std::chrono::minutes time_of_day, UtcOffset zone) {
  return std::chrono::time_point_cast<std::chrono::seconds>(day) + time_of_day -
         zone.value;
}

}  // namespace finsent
