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

#ifndef FINSENT_TIMEUTIL_H_
#define FINSENT_TIMEUTIL_H_

#include <chrono>
#include <string>
#include <string_view>

namespace finsent {

using Date = std::chrono::sys_days;
using Instant = std::chrono::sys_seconds;

// Fixed offset from UTC, e.g. +05:30 for exchange-local time in Mumbai.
struct UtcOffset {
  std::chrono::minutes value{0};
};

Date ParseDate(std::string_view text);  // YYYY-MM-DD
std::string FormatDate(Date d);
int YearOf(Date d);

// "+05:30", "-04:00", "Z" or "UTC".
UtcOffset ParseUtcOffset(std::string_view text);
std::string FormatUtcOffset(UtcOffset offset);

// "HH:MM" as minutes after local midnight.
std::chrono::minutes ParseTimeOfDay(std::string_view text);
std::string FormatTimeOfDay(std::chrono::minutes m);

// ISO 8601 "YYYY-MM-DDTHH:MM[:SS][Z|+HH:MM|-HH:MM]"; a space may replace the
// 'T'. Timestamps without a zone designator are read in `default_zone`.
Instant ParseTimestamp(std::string_view text, UtcOffset default_zone);

// Local wall-clock instant on `day` in `zone`.
Instant LocalInstant(Date day, std::chrono::minutes time_of_day, UtcOffset zone);

}  // namespace finsent

#endif  // FINSENT_TIMEUTIL_H_
