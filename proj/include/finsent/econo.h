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

#ifndef FINSENT_ECONO_H_
#define FINSENT_ECONO_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finsent/sentindex.h"
#include "finsent/timeutil.h"
#include "json.hpp"

namespace finsent {

struct PriceBar {
  Date day;
  double open = 0.0;
  double close = 0.0;
};

// CSV header "date,open,close". Sorted on return; duplicate days and
// non-positive prices are errors.
std::vector<PriceBar> LoadPricesCsv(std::istream& in, std::string_view source_name);

enum class ReturnKind : uint8_t { kLog, kPct };
std::string_view ReturnKindName(ReturnKind k);
std::optional<ReturnKind> ParseReturnKind(std::string_view name);

// ln(open_next) - ln(close_today).
double AfterMarketLogReturn(const PriceBar& today, const PriceBar& next);
// (open_next - close_today) / close_today.
double AfterMarketPctReturn(const PriceBar& today, const PriceBar& next);

struct ReturnSeries {
  std::vector<DatedValue> values;  // keyed by day i (the close side)
  std::vector<Date> gaps;          // days whose next trading day has no bar
};

// Pairs each bar with the next one. With a calendar, a pair counts only when
// the second bar sits on the next calendar session; otherwise consecutive
// bars are taken as consecutive trading days.
ReturnSeries AfterMarketReturns(std::span<const PriceBar> bars, ReturnKind kind,
                                const TradingCalendar* calendar = nullptr);

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
};

struct RegressionResult {
  std::vector<Coefficient> coefficients;  // intercept first when present
  bool has_intercept = true;
  size_t n_observations = 0;
  size_t df_residual = 0;
  double rss = 0.0;
  double r_squared = 0.0;
  double sigma = 0.0;
  double bic = 0.0;
  std::vector<double> residuals;

  const Coefficient* Find(std::string_view name) const;
};

struct DesignColumn {
  std::string name;
  std::vector<double> values;
};

inline constexpr std::string_view kInterceptName = "(intercept)";

// Least squares with classical standard errors and Student-t tests on
// n - p degrees of freedom. r_squared is centered with an intercept and
// uncentered without. BIC = n ln(RSS/n) + (p + 1) ln n + n (1 + ln 2 pi).
// Throws ComputeError naming any column that lies in the span of the
// columns before it, or when n <= p.
RegressionResult Ols(std::span<const double> y,
                     std::span<const DesignColumn> columns, bool intercept);

// "*" p < 0.1, "**" p < 0.05, "***" p < 0.01.
std::string HypothesisStars(double p);
// "+" p < 0.1, "*" p < 0.05, "**" p < 0.01, "***" p < 0.001.
std::string VarStars(double p);

// d_i = alpha + beta * s_i + e on the inner join by day. Needs >= 30 days.
RegressionResult HypothesisTest(std::span<const DatedValue> returns,
                                std::span<const DatedValue> sentiment);

struct JoinedSeries {
  std::vector<Date> days;
  std::vector<double> left;
  std::vector<double> right;
};

JoinedSeries InnerJoin(std::span<const DatedValue> left,
                       std::span<const DatedValue> right);

struct VarSpec {
  int p1 = 0;  // own lags of d
  int p2 = 0;  // lags of s
  bool intercept = true;
  // First row of the regression sample; defaults to max(p1, p2).
  std::optional<size_t> sample_start;
};

// d(t) on d(t-1..t-p1) and s(t-1..t-p2). Series must be aligned and of
// equal length.
RegressionResult VarFit(std::span<const double> d, std::span<const double> s,
                        const VarSpec& spec);

struct VarScanEntry {
  VarSpec spec;
  RegressionResult result;
  bool significant = false;  // some lag regressor with p < alpha
};

// Every (p1, p2) on the grid except (0, 0), fit on the common sample that
// starts at max(p1_max, p2_max), ranked by ascending BIC.
std::vector<VarScanEntry> VarScan(std::span<const double> d,
                                  std::span<const double> s, int p1_max = 3,
                                  int p2_max = 3, double alpha = 0.1,
                                  bool intercept = true);

nlohmann::json RegressionJson(const RegressionResult& r, bool var_stars);

}  // namespace finsent

#endif  // FINSENT_ECONO_H_
