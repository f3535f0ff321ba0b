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

#include "finsent/sentindex.h"

#include <algorithm>
#include <charconv>
#include <map>

#include "finsent/csv.h"
#include "finsent/text.h"

namespace finsent {
namespace {

uint64_t ParseCount(const std::string& text, const std::string& where) {
  uint64_t v = 0;
  const auto sv = Trim(text);
  auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) {
    throw ParseError(where + ": invalid count '" + text + "'");
  }
  return v;
}

std::optional<double> ParseOptionalDouble(const std::string& text,
                                          const std::string& where) {
  const auto sv = Trim(text);
  if (sv.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) {
    throw ParseError(where + ": invalid number '" + text + "'");
  }
  return v;
}

std::string OptionalCell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::optional<double> SentimentS1(uint64_t pos, uint64_t neg) {
  if (pos + neg == 0) return std::nullopt;
  return (static_cast<double>(pos) - static_cast<double>(neg)) /
         static_cast<double>(pos + neg);
}

std::optional<double> SentimentS2(uint64_t pos, uint64_t neu, uint64_t neg) {
  if (pos + neu + neg == 0) return std::nullopt;
  return (static_cast<double>(pos) - static_cast<double>(neg)) /
         static_cast<double>(pos + neu + neg);
}

TradingCalendar::TradingCalendar(std::vector<DayOverride> days,
                                 SessionHours hours, UtcOffset zone)
    : zone_(zone) {
  std::sort(days.begin(), days.end(),
            [](const DayOverride& a, const DayOverride& b) { return a.day < b.day; });
  for (size_t i = 0; i < days.size(); ++i) {
    const auto& d = days[i];
    if (i > 0 && days[i - 1].day == d.day) {
      throw ValidationError("duplicate trading day " + FormatDate(d.day));
    }
    const auto open = d.open.value_or(hours.open);
    const auto close = d.close.value_or(hours.close);
    if (open >= close) {
      throw ValidationError("session open is not before close on " +
                            FormatDate(d.day));
    }
    sessions_.push_back(TradingSession{d.day, LocalInstant(d.day, open, zone),
                                       LocalInstant(d.day, close, zone)});
  }
}

std::optional<size_t> TradingCalendar::IndexOf(Date day) const {
  auto it = std::lower_bound(
      sessions_.begin(), sessions_.end(), day,
      [](const TradingSession& s, Date d) { return s.day < d; });
  if (it == sessions_.end() || it->day != day) return std::nullopt;
  return static_cast<size_t>(it - sessions_.begin());
}

TradingCalendar LoadCalendarCsv(std::istream& in, std::string_view source_name,
                                SessionHours hours, UtcOffset zone) {
  const CsvTable table = CsvTable::Read(in, source_name);
  const size_t date_col = table.RequireColumn("date");
  const auto open_col = table.ColumnIndex("open");
  const auto close_col = table.ColumnIndex("close");
  std::vector<TradingCalendar::DayOverride> days;
  for (const auto& row : table.rows()) {
    try {
      TradingCalendar::DayOverride d{ParseDate(row.fields[date_col]), {}, {}};
      if (open_col && !Trim(row.fields[*open_col]).empty()) {
        d.open = ParseTimeOfDay(row.fields[*open_col]);
      }
      if (close_col && !Trim(row.fields[*close_col]).empty()) {
        d.close = ParseTimeOfDay(row.fields[*close_col]);
      }
      days.push_back(d);
    } catch (const ParseError& e) {
      throw ParseError(table.Where(row) + ": " + e.what());
    }
  }
  return TradingCalendar(std::move(days), hours, zone);
}

std::vector<SentimentEvent> LoadEventsCsv(std::istream& in,
                                          std::string_view source_name,
                                          UtcOffset default_zone) {
  const CsvTable table = CsvTable::Read(in, source_name);
  const size_t id_col = table.RequireColumn("id");
  const size_t ts_col = table.RequireColumn("timestamp");
  const size_t sym_col = table.RequireColumn("symbol");
  const size_t label_col = table.RequireColumn("label");
  std::vector<SentimentEvent> events;
  events.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    SentimentEvent e;
    e.id = row.fields[id_col];
    e.timestamp_text = std::string(Trim(row.fields[ts_col]));
    try {
      e.timestamp = ParseTimestamp(e.timestamp_text, default_zone);
    } catch (const ParseError& err) {
      throw ParseError(table.Where(row) + ": " + err.what());
    }
    e.symbol = std::string(Trim(row.fields[sym_col]));
    auto label = ParseSentiment(row.fields[label_col]);
    if (!label) {
      throw ParseError(table.Where(row) + ": invalid label '" +
                       row.fields[label_col] + "'");
    }
    e.label = *label;
    events.push_back(std::move(e));
  }
  return events;
}

std::string_view DurationName(Duration d) {
  return d == Duration::kMarket ? "MARKET" : "AFTER_MARKET";
}

std::optional<Duration> ParseDuration(std::string_view name) {
  if (name == "MARKET") return Duration::kMarket;
  if (name == "AFTER_MARKET") return Duration::kAfterMarket;
  return std::nullopt;
}

bool Constituency::Contains(int year, const std::string& symbol) const {
  auto it = years_.find(year);
  return it != years_.end() && it->second.count(symbol) > 0;
}

Constituency LoadConstituencyCsv(std::istream& in, std::string_view source_name) {
  const CsvTable table = CsvTable::Read(in, source_name);
  const size_t year_col = table.RequireColumn("year");
  const size_t sym_col = table.RequireColumn("symbol");
  Constituency c;
  for (const auto& row : table.rows()) {
    const auto y = ParseCount(row.fields[year_col], table.Where(row));
    c.Add(static_cast<int>(y), std::string(Trim(row.fields[sym_col])));
  }
  return c;
}

std::pair<size_t, Duration> AssignWindow(const TradingCalendar& calendar,
                                         Instant t) {
  const auto& sessions = calendar.sessions();
  if (sessions.empty()) throw ValidationError("trading calendar is empty");
  auto it = std::upper_bound(
      sessions.begin(), sessions.end(), t,
      [](Instant x, const TradingSession& s) { return x < s.open; });
  if (it == sessions.begin()) {
    throw ValidationError("event precedes the calendar start " +
                          FormatDate(sessions.front().day));
  }
  const size_t i = static_cast<size_t>(it - sessions.begin()) - 1;
  if (t < sessions[i].close) return {i, Duration::kMarket};
  if (i + 1 == sessions.size()) {
    throw ValidationError(
        "event falls after the last session close; extend the calendar past " +
        FormatDate(sessions.back().day));
  }
  return {i, Duration::kAfterMarket};
}

BucketResult BucketSeries(std::span<const SentimentEvent> events,
                          const TradingCalendar& calendar,
                          const Constituency& constituency,
                          EmptyBucketPolicy policy) {
  const size_t days = calendar.sessions().size();
  std::vector<std::array<uint64_t, kNumSentiments>> market(days), after(days);
  std::vector<char> seen_market(days, 0), seen_after(days, 0);
  BucketResult result;
  for (const auto& e : events) {
    const auto [i, duration] = AssignWindow(calendar, e.timestamp);
    if (!constituency.empty()) {
      const int year = YearOf(calendar.sessions()[i].day);
      if (!constituency.HasYear(year)) {
        throw ValidationError("constituency has no entry for year " +
                              std::to_string(year));
      }
      if (!constituency.Contains(year, e.symbol)) {
        ++result.exclusions.by_symbol[e.symbol];
        ++result.exclusions.total;
        continue;
      }
    }
    ++result.included_events;
    if (duration == Duration::kMarket) {
      ++market[i][SentimentIndex(e.label)];
      seen_market[i] = 1;
    } else {
      ++after[i][SentimentIndex(e.label)];
      seen_after[i] = 1;
    }
  }

  auto build = [&](Duration duration,
                   const std::vector<std::array<uint64_t, kNumSentiments>>& counts,
                   const std::vector<char>& seen) {
    SentimentSeries series;
    series.duration = duration;
    for (size_t i = 0; i < days; ++i) {
      if (!seen[i] && policy == EmptyBucketPolicy::kSkip) continue;
      SeriesPoint p;
      p.day = calendar.sessions()[i].day;
      p.pos = counts[i][SentimentIndex(Sentiment::kPositive)];
      p.neg = counts[i][SentimentIndex(Sentiment::kNegative)];
      p.neu = counts[i][SentimentIndex(Sentiment::kNeutral)];
      p.s1 = SentimentS1(p.pos, p.neg);
      p.s2 = SentimentS2(p.pos, p.neu, p.neg);
      if (policy == EmptyBucketPolicy::kZero) {
        if (!p.s1) p.s1 = 0.0;
        if (!p.s2) p.s2 = 0.0;
      }
      series.points.push_back(p);
    }
    return series;
  };
  result.market = build(Duration::kMarket, market, seen_market);
  result.after_market = build(Duration::kAfterMarket, after, seen_after);
  return result;
}

std::vector<DatedValue> MovingAverage(std::span<const DatedValue> series,
                                      size_t window) {
  if (window == 0) throw ValidationError("moving-average window must be >= 1");
  std::vector<DatedValue> out;
  for (size_t i = window - 1; i < series.size(); ++i) {
    double sum = 0.0;
    for (size_t k = i + 1 - window; k <= i; ++k) sum += series[k].value;
    out.push_back({series[i].day, sum / static_cast<double>(window)});
  }
  return out;
}

std::string_view MeasureName(Measure m) { return m == Measure::kS1 ? "s1" : "s2"; }

std::optional<Measure> ParseMeasure(std::string_view name) {
  if (name == "s1") return Measure::kS1;
  if (name == "s2") return Measure::kS2;
  return std::nullopt;
}

std::vector<DatedValue> MeasureValues(const SentimentSeries& series, Measure m) {
  std::vector<DatedValue> out;
  for (const auto& p : series.points) {
    const auto& v = m == Measure::kS1 ? p.s1 : p.s2;
    if (v) out.push_back({p.day, *v});
  }
  return out;
}

void WriteSeriesCsv(std::ostream& out, std::span<const SentimentSeries> series,
                    size_t ma_window) {
  CsvWriter w(out);
  std::vector<std::string> header = {"date", "duration", "pos", "neu",
                                     "neg",  "s1",       "s2"};
  if (ma_window > 0) {
    header.push_back("s1_ma" + std::to_string(ma_window));
    header.push_back("s2_ma" + std::to_string(ma_window));
  }
  w.WriteRow(header);
  for (const auto& s : series) {
    std::map<Date, double> ma1, ma2;
    if (ma_window > 0) {
      for (const auto& v : MovingAverage(MeasureValues(s, Measure::kS1), ma_window)) {
        ma1[v.day] = v.value;
      }
      for (const auto& v : MovingAverage(MeasureValues(s, Measure::kS2), ma_window)) {
        ma2[v.day] = v.value;
      }
    }
    for (const auto& p : s.points) {
      std::vector<std::string> row = {FormatDate(p.day),
                                      std::string(DurationName(s.duration)),
                                      std::to_string(p.pos),
                                      std::to_string(p.neu),
                                      std::to_string(p.neg),
                                      OptionalCell(p.s1),
                                      OptionalCell(p.s2)};
      if (ma_window > 0) {
        auto a = ma1.find(p.day);
        auto b = ma2.find(p.day);
        row.push_back(a == ma1.end() ? "" : FormatDouble(a->second));
        row.push_back(b == ma2.end() ? "" : FormatDouble(b->second));
      }
      w.WriteRow(row);
    }
  }
}

SentimentSeries LoadSeriesCsv(std::istream& in, std::string_view source_name,
                              Duration duration) {
  const CsvTable table = CsvTable::Read(in, source_name);
  const size_t date_col = table.RequireColumn("date");
  const size_t dur_col = table.RequireColumn("duration");
  const size_t pos_col = table.RequireColumn("pos");
  const size_t neu_col = table.RequireColumn("neu");
  const size_t neg_col = table.RequireColumn("neg");
  const size_t s1_col = table.RequireColumn("s1");
  const size_t s2_col = table.RequireColumn("s2");
  SentimentSeries series;
  series.duration = duration;
  for (const auto& row : table.rows()) {
    const std::string where = table.Where(row);
    auto d = ParseDuration(Trim(row.fields[dur_col]));
    if (!d) throw ParseError(where + ": unknown duration '" + row.fields[dur_col] + "'");
    if (*d != duration) continue;
    SeriesPoint p;
    try {
      p.day = ParseDate(row.fields[date_col]);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    p.pos = ParseCount(row.fields[pos_col], where);
    p.neu = ParseCount(row.fields[neu_col], where);
    p.neg = ParseCount(row.fields[neg_col], where);
    p.s1 = ParseOptionalDouble(row.fields[s1_col], where);
    p.s2 = ParseOptionalDouble(row.fields[s2_col], where);
    if (!series.points.empty() && series.points.back().day >= p.day) {
      throw ParseError(where + ": dates must be strictly increasing per duration");
    }
    series.points.push_back(p);
  }
  return series;
}

}  // namespace finsent
