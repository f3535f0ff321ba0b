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

#ifndef FINSENT_SENTINDEX_H_
#define FINSENT_SENTINDEX_H_

#include <chrono>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finsent/base.h"
#include "finsent/timeutil.h"

namespace finsent {

// (pos - neg) / (pos + neg); undefined when pos + neg = 0.
std::optional<double> SentimentS1(uint64_t pos, uint64_t neg);
// (pos - neg) / (pos + neu + neg); undefined when all counts are zero.
std::optional<double> SentimentS2(uint64_t pos, uint64_t neu, uint64_t neg);

// Exchange-local session hours. The defaults are the sentiment windows
// (market 09:30-15:30, after-market 15:30 to the next open); pass 09:15 as
// the open for exchange trading hours instead.
struct SessionHours {
  std::chrono::minutes open{9 * 60 + 30};
  std::chrono::minutes close{15 * 60 + 30};
};

struct TradingSession {
  Date day;
  Instant open;
  Instant close;
};

class TradingCalendar {
 public:
  struct DayOverride {
    Date day;
    std::optional<std::chrono::minutes> open;
    std::optional<std::chrono::minutes> close;
  };

  TradingCalendar() = default;
  // Days may arrive unsorted; duplicates and open >= close are errors.
  TradingCalendar(std::vector<DayOverride> days, SessionHours hours, UtcOffset zone);

  const std::vector<TradingSession>& sessions() const { return sessions_; }
  bool empty() const { return sessions_.empty(); }
  std::optional<size_t> IndexOf(Date day) const;
  UtcOffset zone() const { return zone_; }

 private:
  std::vector<TradingSession> sessions_;
  UtcOffset zone_;
};

// CSV header "date" with optional "open" and "close" (HH:MM) override
// columns; blank overrides use `hours`.
TradingCalendar LoadCalendarCsv(std::istream& in, std::string_view source_name,
                                SessionHours hours, UtcOffset zone);

struct SentimentEvent {
  std::string id;
  Instant timestamp;
  std::string timestamp_text;
  std::string symbol;
  Sentiment label = Sentiment::kNeutral;
};

// CSV header "id,timestamp,symbol,label".
std::vector<SentimentEvent> LoadEventsCsv(std::istream& in,
                                          std::string_view source_name,
                                          UtcOffset default_zone);

enum class Duration : uint8_t { kMarket, kAfterMarket };
std::string_view DurationName(Duration d);
std::optional<Duration> ParseDuration(std::string_view name);

// Index membership per calendar year. An empty constituency admits every
// symbol.
class Constituency {
 public:
  void Add(int year, std::string symbol) { years_[year].insert(std::move(symbol)); }
  bool empty() const { return years_.empty(); }
  bool HasYear(int year) const { return years_.count(year) > 0; }
  bool Contains(int year, const std::string& symbol) const;

 private:
  std::map<int, std::set<std::string>> years_;
};

// CSV header "year,symbol".
Constituency LoadConstituencyCsv(std::istream& in, std::string_view source_name);

enum class EmptyBucketPolicy : uint8_t { kSkip, kZero };

struct SentimentBucket {
  Date day;
  Duration duration = Duration::kMarket;
  uint64_t pos = 0;
  uint64_t neu = 0;
  uint64_t neg = 0;
};

struct SeriesPoint {
  Date day;
  uint64_t pos = 0;
  uint64_t neu = 0;
  uint64_t neg = 0;
  std::optional<double> s1;
  std::optional<double> s2;
};

struct SentimentSeries {
  Duration duration = Duration::kMarket;
  std::vector<SeriesPoint> points;  // days strictly increasing
};

struct ExclusionReport {
  std::map<std::string, size_t> by_symbol;  // out-of-constituency events
  size_t total = 0;
};

struct BucketResult {
  SentimentSeries market;
  SentimentSeries after_market;
  ExclusionReport exclusions;
  size_t included_events = 0;
};

// Window of an instant: MARKET of day i for [open_i, close_i), AFTER_MARKET
// of day i for [close_i, open_{i+1}). Throws ValidationError before the
// first open or at/after the last close.
std::pair<size_t, Duration> AssignWindow(const TradingCalendar& calendar,
                                         Instant t);

// Under kSkip empty buckets are omitted and undefined measures stay empty;
// under kZero every calendar day appears and undefined measures read 0.
BucketResult BucketSeries(std::span<const SentimentEvent> events,
                          const TradingCalendar& calendar,
                          const Constituency& constituency,
                          EmptyBucketPolicy policy);

struct DatedValue {
  Date day;
  double value = 0.0;
  bool operator==(const DatedValue&) const = default;
};

// Trailing mean over the last `window` points; the first window - 1 points
// are omitted.
std::vector<DatedValue> MovingAverage(std::span<const DatedValue> series,
                                      size_t window);

enum class Measure : uint8_t { kS1, kS2 };
std::string_view MeasureName(Measure m);
std::optional<Measure> ParseMeasure(std::string_view name);

// Points where the measure is defined.
std::vector<DatedValue> MeasureValues(const SentimentSeries& series, Measure m);

void WriteSeriesCsv(std::ostream& out, std::span<const SentimentSeries> series,
                    size_t ma_window);

// Reads the rows of one duration back from a series CSV.
SentimentSeries LoadSeriesCsv(std::istream& in, std::string_view source_name,
                              Duration duration);

}  // namespace finsent

#endif  // FINSENT_SENTINDEX_H_
