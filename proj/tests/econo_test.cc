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

#include "finsent/econo.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.h"

namespace finsent {
namespace {

using testing::Gaussian;

PriceBar Bar(const std::string& day, double open, double close) {
  return {ParseDate(day), open, close};
}

std::vector<DatedValue> Dated(const std::vector<double>& v) {
  std::vector<DatedValue> out;
  const Date d0 = ParseDate("2014-01-01");
  for (size_t i = 0; i < v.size(); ++i) out.push_back({d0 + std::chrono::days{i}, v[i]});
  return out;
}

TEST(ReturnsTest, Formulas) {
  EXPECT_EQ(AfterMarketLogReturn(Bar("2014-01-02", 1, 100), Bar("2014-01-03", 100, 1)), 0.0);
  EXPECT_NEAR(AfterMarketLogReturn(Bar("2014-01-02", 1, 100), Bar("2014-01-03", 101, 1)),
              0.00995033085, 1e-10);
  EXPECT_EQ(AfterMarketPctReturn(Bar("2014-01-02", 1, 100), Bar("2014-01-03", 100, 1)), 0.0);
  EXPECT_NEAR(AfterMarketPctReturn(Bar("2014-01-02", 1, 100), Bar("2014-01-03", 101, 1)),
              0.01, 1e-15);
}

TEST(ReturnsTest, TelescopingSum) {
  std::mt19937_64 rng(1);
  std::vector<PriceBar> bars;
  double px = 100.0;
  const Date d0 = ParseDate("2014-01-01");
  for (int i = 0; i < 10; ++i) {
    const double open = px * std::exp(0.01 * Gaussian(rng));
    const double close = open * std::exp(0.01 * Gaussian(rng));
    bars.push_back({d0 + std::chrono::days{i}, open, close});
    px = close;
  }
  const ReturnSeries r = AfterMarketReturns(bars, ReturnKind::kLog);
  ASSERT_EQ(r.values.size(), 9u);
  double total = 0.0;
  for (const auto& v : r.values) total += v.value;
  for (const auto& b : bars) total += std::log(b.close) - std::log(b.open);
  EXPECT_NEAR(total, std::log(bars.back().close) - std::log(bars.front().open), 1e-12);
}

TEST(ReturnsTest, PctWithinTaylorBoundOfLog) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double close = 100.0;
    const double open = close * std::exp(0.02 * Gaussian(rng));
    const PriceBar a = Bar("2014-01-02", 1, close), b = Bar("2014-01-03", open, 1);
    const double pct = AfterMarketPctReturn(a, b);
    const double log = AfterMarketLogReturn(a, b);
    // pct = e^log - 1, so the gap is log^2/2 up to a third-order term.
    EXPECT_LE(std::fabs(pct - log), log * log / 2.0 * (1.0 + std::fabs(log)) + 1e-15);
  }
}

TEST(ReturnsTest, CalendarGapsAreReported) {
  std::istringstream cal_in("date\n2014-01-02\n2014-01-03\n2014-01-06\n2014-01-07\n");
  const TradingCalendar cal =
      LoadCalendarCsv(cal_in, "cal.csv", SessionHours{}, UtcOffset{std::chrono::minutes{330}});
  const std::vector<PriceBar> bars = {Bar("2014-01-02", 10, 10), Bar("2014-01-03", 11, 11),
                                      Bar("2014-01-07", 12, 12)};
  const ReturnSeries r = AfterMarketReturns(bars, ReturnKind::kLog, &cal);
  ASSERT_EQ(r.values.size(), 1u);
  EXPECT_EQ(FormatDate(r.values[0].day), "2014-01-02");
  ASSERT_EQ(r.gaps.size(), 1u);
  EXPECT_EQ(FormatDate(r.gaps[0]), "2014-01-03");
}

TEST(PricesCsvTest, Validation) {
  std::istringstream ok("date,open,close\n2014-01-03,2,2\n2014-01-02,1,1\n");
  const auto bars = LoadPricesCsv(ok, "p.csv");
  EXPECT_EQ(FormatDate(bars[0].day), "2014-01-02");
  std::istringstream dup("date,open,close\n2014-01-02,2,2\n2014-01-02,1,1\n");
  EXPECT_ANY_THROW(LoadPricesCsv(dup, "p.csv"));
  std::istringstream neg("date,open,close\n2014-01-02,-2,2\n");
  EXPECT_ANY_THROW(LoadPricesCsv(neg, "p.csv"));
}

TEST(OlsTest, NoiselessLine) {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i * 0.37 - 2.0);
    y.push_back(2.0 * x.back());
  }
  const std::vector<DesignColumn> cols = {{"x", x}};
  const RegressionResult r = Ols(y, cols, true);
  EXPECT_NEAR(r.Find("x")->estimate, 2.0, 1e-12);
  EXPECT_NEAR(r.Find(kInterceptName)->estimate, 0.0, 1e-12);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_LT(r.Find("x")->p_value, 1e-12);
}

TEST(OlsTest, ConstantRegressorIsRankError) {
  const std::vector<double> y = {1, 2, 3, 4, 5};
  const std::vector<DesignColumn> cols = {{"slope", {2, 2, 2, 2, 2}}};
  try {
    Ols(y, cols, true);
    FAIL();
  } catch (const ComputeError& e) {
    EXPECT_NE(std::string(e.what()).find("slope"), std::string::npos);
  }
  const std::vector<DesignColumn> dup = {{"a", {1, 2, 3, 4, 6}}, {"b", {2, 4, 6, 8, 12}}};
  try {
    Ols(y, dup, false);
    FAIL();
  } catch (const ComputeError& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
  EXPECT_THROW(Ols(std::vector<double>{1, 2}, std::vector<DesignColumn>{{"a", {1, 3}}}, true),
               ComputeError);
}

TEST(OlsTest, MatchesNormalEquationsOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 10 + UniformIndex(rng, 51);
    const size_t k = 1 + UniformIndex(rng, 4);
    const bool intercept = UniformIndex(rng, 2) == 0;
    std::vector<DesignColumn> cols;
    std::vector<std::vector<double>> oracle_cols;
    if (intercept) oracle_cols.push_back(std::vector<double>(n, 1.0));
    for (size_t j = 0; j < k; ++j) {
      DesignColumn c{"x" + std::to_string(j), {}};
      for (size_t i = 0; i < n; ++i) c.values.push_back(Gaussian(rng));
      oracle_cols.push_back(c.values);
      cols.push_back(std::move(c));
    }
    std::vector<double> y;
    for (size_t i = 0; i < n; ++i) {
      double v = Gaussian(rng);
      for (size_t j = 0; j < k; ++j) v += 0.5 * j * cols[j].values[i];
      y.push_back(v);
    }
    const RegressionResult r = Ols(y, cols, intercept);
    const auto o = testing::OlsNormalEquations(y, oracle_cols, intercept);
    ASSERT_EQ(r.coefficients.size(), o.beta.size());
    for (size_t j = 0; j < o.beta.size(); ++j) {
      EXPECT_NEAR(r.coefficients[j].estimate, o.beta[j], 1e-10);
      EXPECT_NEAR(r.coefficients[j].std_error, o.se[j], 1e-10);
    }
    EXPECT_NEAR(r.r_squared, o.r_squared, 1e-10);
    EXPECT_EQ(r.df_residual, n - o.beta.size());
  }
}

TEST(OlsTest, ResidualsOrthogonalToDesign) {
  std::mt19937_64 rng(4);
  std::vector<DesignColumn> cols = {{"a", {}}, {"b", {}}};
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) {
    cols[0].values.push_back(100.0 * Gaussian(rng));
    cols[1].values.push_back(Gaussian(rng));
    y.push_back(3.0 + 0.1 * cols[0].values.back() + Gaussian(rng));
  }
  const RegressionResult r = Ols(y, cols, true);
  double sum = 0.0, scale = 0.0;
  for (double e : r.residuals) sum += e;
  for (const auto& c : cols) {
    double dot = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      dot += r.residuals[i] * c.values[i];
      scale += std::fabs(c.values[i] * y[i]);
    }
    EXPECT_LT(std::fabs(dot), 1e-8 * scale);
  }
  EXPECT_LT(std::fabs(sum), 1e-8 * scale);
}

TEST(OlsTest, BicFormula) {
  const std::vector<double> y = {1, 3, 2, 5, 4, 6};
  const std::vector<DesignColumn> cols = {{"x", {1, 2, 3, 4, 5, 6}}};
  const RegressionResult r = Ols(y, cols, true);
  const double n = 6;
  EXPECT_NEAR(r.bic,
              n * std::log(r.rss / n) + 3 * std::log(n) +
                  n * (1 + std::log(2 * std::numbers::pi)),
              1e-12);
}

TEST(StarsTest, Scales) {
  EXPECT_EQ(HypothesisStars(0.2), "");
  EXPECT_EQ(HypothesisStars(0.07), "*");
  EXPECT_EQ(HypothesisStars(0.03), "**");
  EXPECT_EQ(HypothesisStars(0.001), "***");
  EXPECT_EQ(VarStars(0.07), "+");
  EXPECT_EQ(VarStars(0.03), "*");
  EXPECT_EQ(VarStars(0.005), "**");
  EXPECT_EQ(VarStars(0.0005), "***");
}

TEST(HypothesisTest, PlantedExactSignal) {
  std::mt19937_64 rng(5);
  std::vector<double> s, d;
  for (int i = 0; i < 60; ++i) {
    s.push_back(2.0 * UniformUnit(rng) - 1.0);
    d.push_back(0.002 * s.back());
  }
  const RegressionResult r = HypothesisTest(Dated(d), Dated(s));
  EXPECT_NEAR(r.Find("beta")->estimate, 0.002, 1e-12);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-10);
}

TEST(HypothesisTest, InnerJoinAndMinimumSample) {
  const std::vector<double> v(40, 1.0);
  auto a = Dated(v), b = Dated(v);
  b.erase(b.begin(), b.begin() + 15);
  EXPECT_EQ(InnerJoin(a, b).days.size(), 25u);
  EXPECT_THROW(HypothesisTest(a, b), ComputeError);
}

TEST(HypothesisTest, SentimentScalingAndShift) {
  std::mt19937_64 rng(6);
  std::vector<double> s, d, s_scaled, s_shifted;
  for (int i = 0; i < 80; ++i) {
    s.push_back(Gaussian(rng));
    d.push_back(0.003 * s.back() + 0.004 * Gaussian(rng));
    s_scaled.push_back(4.0 * s.back());
    s_shifted.push_back(s.back() + 0.7);
  }
  const auto base = HypothesisTest(Dated(d), Dated(s));
  const auto scaled = HypothesisTest(Dated(d), Dated(s_scaled));
  const auto shifted = HypothesisTest(Dated(d), Dated(s_shifted));
  EXPECT_NEAR(scaled.Find("beta")->estimate, base.Find("beta")->estimate / 4.0, 1e-12);
  EXPECT_NEAR(scaled.Find("beta")->t_stat, base.Find("beta")->t_stat, 1e-9);
  EXPECT_NEAR(scaled.r_squared, base.r_squared, 1e-12);
  EXPECT_NEAR(shifted.Find("beta")->estimate, base.Find("beta")->estimate, 1e-12);
}

TEST(VarTest, Ar1Recovery) {
  std::mt19937_64 rng(7);
  std::vector<double> d(2000), s(2000);
  for (size_t t = 0; t < d.size(); ++t) {
    d[t] = (t > 0 ? 0.5 * d[t - 1] : 0.0) + Gaussian(rng);
    s[t] = Gaussian(rng);
  }
  const RegressionResult r = VarFit(d, s, VarSpec{1, 0});
  EXPECT_NEAR(r.Find("d(t-1)")->estimate, 0.5, 0.05);
  EXPECT_EQ(r.n_observations, 1999u);
}

TEST(VarTest, PlantedLagExact) {
  std::mt19937_64 rng(8);
  const auto [d, s] = testing::PlantedLagSeries(rng, 100, 2, 0.1, 0.0);
  const RegressionResult r = VarFit(d, s, VarSpec{0, 2});
  EXPECT_NEAR(r.Find("s(t-2)")->estimate, 0.1, 1e-12);
  EXPECT_NEAR(r.Find("s(t-1)")->estimate, 0.0, 1e-12);
  EXPECT_NEAR(r.Find(kInterceptName)->estimate, 0.0, 1e-12);
}

TEST(VarTest, PureArEqualsOlsOnLags) {
  std::mt19937_64 rng(9);
  std::vector<double> d(120), s(120);
  for (auto& v : d) v = Gaussian(rng);
  for (auto& v : s) v = Gaussian(rng);
  const RegressionResult var = VarFit(d, s, VarSpec{2, 0});
  std::vector<double> y(d.begin() + 2, d.end());
  std::vector<DesignColumn> cols = {{"d(t-1)", {}}, {"d(t-2)", {}}};
  for (size_t t = 2; t < d.size(); ++t) {
    cols[0].values.push_back(d[t - 1]);
    cols[1].values.push_back(d[t - 2]);
  }
  const RegressionResult ols = Ols(y, cols, true);
  ASSERT_EQ(var.coefficients.size(), ols.coefficients.size());
  for (size_t j = 0; j < ols.coefficients.size(); ++j) {
    EXPECT_EQ(var.coefficients[j].estimate, ols.coefficients[j].estimate);
    EXPECT_EQ(var.coefficients[j].name, ols.coefficients[j].name);
  }
}

TEST(VarTest, AddingALagNeverRaisesRss) {
  std::mt19937_64 rng(10);
  std::vector<double> d(60), s(60);
  for (auto& v : d) v = Gaussian(rng);
  for (auto& v : s) v = Gaussian(rng);
  for (int p2 = 0; p2 < 3; ++p2) {
    for (int p1 = 0; p1 < 3; ++p1) {
      if (p1 + p2 == 0) continue;
      VarSpec small{p1, p2, true, 3}, bigger{p1 + 1, p2, true, 3};
      const auto a = VarFit(d, s, small), b = VarFit(d, s, bigger);
      EXPECT_LE(b.rss, a.rss + 1e-12);
      EXPECT_EQ(a.n_observations, 57u);
    }
  }
}

TEST(VarTest, ScanCoversGridAndRanksByBic) {
  std::mt19937_64 rng(11);
  const auto [d, s] = testing::PlantedLagSeries(rng, 250, 2, 0.1, 0.02);
  const auto scan = VarScan(d, s);
  ASSERT_EQ(scan.size(), 15u);
  std::set<std::pair<int, int>> specs;
  for (size_t i = 0; i < scan.size(); ++i) {
    specs.insert({scan[i].spec.p1, scan[i].spec.p2});
    EXPECT_EQ(scan[i].result.n_observations, 247u);
    if (i > 0) EXPECT_LE(scan[i - 1].result.bic, scan[i].result.bic);
  }
  EXPECT_EQ(specs.size(), 15u);
  EXPECT_EQ(specs.count({0, 0}), 0u);
  EXPECT_EQ(scan.front().spec.p1, 0);
  EXPECT_EQ(scan.front().spec.p2, 2);
  EXPECT_TRUE(scan.front().significant);
}

TEST(VarTest, InsufficientSampleIsAnError) {
  const std::vector<double> d(5, 1.0), s(5, 2.0);
  EXPECT_THROW(VarFit(d, s, VarSpec{3, 3}), ComputeError);
  EXPECT_THROW(VarFit(d, s, VarSpec{0, 0}), ValidationError);
}

TEST(RegressionJsonTest, Fields) {
  std::vector<double> y = {1, 3, 2, 5, 4, 6};
  const std::vector<DesignColumn> cols = {{"x", {1, 2, 3, 4, 5, 6}}};
  const auto j = RegressionJson(Ols(y, cols, true), false);
  EXPECT_EQ(j.at("n"), 6);
  EXPECT_TRUE(j.contains("bic"));
  EXPECT_EQ(j.at("coefficients").size(), 2u);
  EXPECT_TRUE(j.at("coefficients")[1].contains("stars"));
}

}  // namespace
}  // namespace finsent
