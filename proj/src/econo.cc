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

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "finsent/csv.h"
#include "finsent/stats.h"
#include "finsent/text.h"

namespace finsent {
namespace {

double ParsePrice(const std::string& text, const std::string& where) {
  const auto sv = Trim(text);
  double v = 0.0;
  auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) {
    throw ParseError(where + ": invalid price '" + text + "'");
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(where + ": price must be positive");
  }
  return v;
}

constexpr double kCollinearTol = 1e-10;

}  // namespace

std::vector<PriceBar> LoadPricesCsv(std::istream& in, std::string_view source_name) {
  const CsvTable table = CsvTable::Read(in, source_name);
  const size_t date_col = table.RequireColumn("date");
  const size_t open_col = table.RequireColumn("open");
  const size_t close_col = table.RequireColumn("close");
  std::vector<PriceBar> bars;
  for (const auto& row : table.rows()) {
    const std::string where = table.Where(row);
    PriceBar b;
    try {
      b.day = ParseDate(row.fields[date_col]);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    b.open = ParsePrice(row.fields[open_col], where);
    b.close = ParsePrice(row.fields[close_col], where);
    bars.push_back(b);
  }
  std::sort(bars.begin(), bars.end(),
            [](const PriceBar& a, const PriceBar& b) { return a.day < b.day; });
  for (size_t i = 1; i < bars.size(); ++i) {
    if (bars[i].day == bars[i - 1].day) {
      throw ValidationError(std::string(source_name) + ": duplicate price day " +
                            FormatDate(bars[i].day));
    }
  }
  return bars;
}

std::string_view ReturnKindName(ReturnKind k) {
  return k == ReturnKind::kLog ? "log" : "pct";
}

std::optional<ReturnKind> ParseReturnKind(std::string_view name) {
  if (name == "log") return ReturnKind::kLog;
  if (name == "pct") return ReturnKind::kPct;
  return std::nullopt;
}

double AfterMarketLogReturn(const PriceBar& today, const PriceBar& next) {
  return std::log(next.open) - std::log(today.close);
}

double AfterMarketPctReturn(const PriceBar& today, const PriceBar& next) {
  return (next.open - today.close) / today.close;
}

ReturnSeries AfterMarketReturns(std::span<const PriceBar> bars, ReturnKind kind,
                                const TradingCalendar* calendar) {
  ReturnSeries out;
  for (size_t i = 0; i + 1 < bars.size(); ++i) {
    if (calendar != nullptr) {
      const auto idx = calendar->IndexOf(bars[i].day);
      const bool adjacent = idx && *idx + 1 < calendar->sessions().size() &&
                            calendar->sessions()[*idx + 1].day == bars[i + 1].day;
      if (!adjacent) {
        out.gaps.push_back(bars[i].day);
        continue;
      }
    }
    const double r = kind == ReturnKind::kLog
                         ? AfterMarketLogReturn(bars[i], bars[i + 1])
                         : AfterMarketPctReturn(bars[i], bars[i + 1]);
    out.values.push_back({bars[i].day, r});
  }
  return out;
}

const Coefficient* RegressionResult::Find(std::string_view name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

RegressionResult Ols(std::span<const double> y,
                     std::span<const DesignColumn> columns, bool intercept) {
  const size_t n = y.size();
  const size_t p = columns.size() + (intercept ? 1 : 0);
  if (p == 0) throw ComputeError("regression needs at least one column");
  if (n <= p) {
    throw ComputeError("regression needs more observations (" + std::to_string(n) +
                       ") than parameters (" + std::to_string(p) + ")");
  }
  std::vector<std::string> names;
  Eigen::MatrixXd x(n, p);
  size_t col = 0;
  if (intercept) {
    x.col(col++).setOnes();
    names.emplace_back(kInterceptName);
  }
  for (const auto& c : columns) {
    if (c.values.size() != n) {
      throw ComputeError("design column '" + c.name + "' has " +
                         std::to_string(c.values.size()) + " rows, expected " +
                         std::to_string(n));
    }
    x.col(col++) = Eigen::Map<const Eigen::VectorXd>(c.values.data(), n);
    names.push_back(c.name);
  }
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);

  // Without pivoting, |R_jj| is the norm of column j orthogonal to the
  // columns before it.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  std::vector<std::string> collinear;
  for (size_t j = 0; j < p; ++j) {
    const double norm = x.col(j).norm();
    if (norm == 0.0 || std::fabs(r(j, j)) <= kCollinearTol * norm) {
      collinear.push_back(names[j]);
    }
  }
  if (!collinear.empty()) {
    throw ComputeError("rank-deficient design; collinear column(s): " +
                       Join(collinear, ", "));
  }

  const Eigen::VectorXd beta = qr.solve(yv);
  const Eigen::VectorXd resid = yv - x * beta;
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd xtx_inv = r_inv * r_inv.transpose();

  RegressionResult out;
  out.has_intercept = intercept;
  out.n_observations = n;
  out.df_residual = n - p;
  out.rss = resid.squaredNorm();
  const double df = static_cast<double>(out.df_residual);
  const double sigma2 = out.rss / df;
  out.sigma = std::sqrt(sigma2);
  const double tss = intercept ? (yv.array() - yv.mean()).square().sum()
                               : yv.squaredNorm();
  out.r_squared = tss > 0.0 ? 1.0 - out.rss / tss : 0.0;
  const double nd = static_cast<double>(n);
  out.bic = nd * std::log(out.rss / nd) + static_cast<double>(p + 1) * std::log(nd) +
            nd * (1.0 + std::log(2.0 * std::numbers::pi));
  out.residuals.assign(resid.data(), resid.data() + n);
  for (size_t j = 0; j < p; ++j) {
    Coefficient c;
    c.name = names[j];
    c.estimate = beta(j);
    c.std_error = std::sqrt(sigma2 * xtx_inv(j, j));
    c.t_stat = c.estimate / c.std_error;
    if (std::isnan(c.t_stat)) {
      c.t_stat = 0.0;
      c.p_value = 1.0;
    } else {
      c.p_value = StudentTTwoSidedP(c.t_stat, df);
    }
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

std::string HypothesisStars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::string VarStars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.1) return "+";
  return "";
}

JoinedSeries InnerJoin(std::span<const DatedValue> left,
                       std::span<const DatedValue> right) {
  JoinedSeries out;
  size_t i = 0, j = 0;
  while (i < left.size() && j < right.size()) {
    if (left[i].day < right[j].day) {
      ++i;
    } else if (right[j].day < left[i].day) {
      ++j;
    } else {
      out.days.push_back(left[i].day);
      out.left.push_back(left[i].value);
      out.right.push_back(right[j].value);
      ++i;
      ++j;
    }
  }
  return out;
}

RegressionResult HypothesisTest(std::span<const DatedValue> returns,
                                std::span<const DatedValue> sentiment) {
  const JoinedSeries joined = InnerJoin(returns, sentiment);
  if (joined.days.size() < 30) {
    throw ComputeError("hypothesis test needs at least 30 aligned days, got " +
                       std::to_string(joined.days.size()));
  }
  const DesignColumn col{"beta", joined.right};
  RegressionResult r = Ols(joined.left, std::span(&col, 1), true);
  r.coefficients[0].name = "alpha";
  return r;
}

RegressionResult VarFit(std::span<const double> d, std::span<const double> s,
                        const VarSpec& spec) {
  if (spec.p1 < 0 || spec.p2 < 0 || spec.p1 + spec.p2 < 1) {
    throw ValidationError("VAR spec needs p1, p2 >= 0 and p1 + p2 >= 1");
  }
  if (d.size() != s.size()) {
    throw ValidationError("VAR series must be aligned and of equal length");
  }
  const size_t n = d.size();
  const size_t max_lag = static_cast<size_t>(std::max(spec.p1, spec.p2));
  const size_t start = spec.sample_start.value_or(max_lag);
  if (start < max_lag) {
    throw ValidationError("VAR sample start precedes the largest lag");
  }
  if (n <= max_lag + static_cast<size_t>(spec.p1 + spec.p2) + 2 || start >= n) {
    throw ComputeError("series of length " + std::to_string(n) +
                       " is too short for VAR(" + std::to_string(spec.p1) + "," +
                       std::to_string(spec.p2) + ")");
  }
  std::vector<double> y(d.begin() + start, d.end());
  std::vector<DesignColumn> cols;
  for (int k = 1; k <= spec.p1; ++k) {
    DesignColumn c{"d(t-" + std::to_string(k) + ")", {}};
    for (size_t t = start; t < n; ++t) c.values.push_back(d[t - k]);
    cols.push_back(std::move(c));
  }
  for (int k = 1; k <= spec.p2; ++k) {
    DesignColumn c{"s(t-" + std::to_string(k) + ")", {}};
    for (size_t t = start; t < n; ++t) c.values.push_back(s[t - k]);
    cols.push_back(std::move(c));
  }
  return Ols(y, cols, spec.intercept);
}

std::vector<VarScanEntry> VarScan(std::span<const double> d,
                                  std::span<const double> s, int p1_max,
                                  int p2_max, double alpha, bool intercept) {
  if (p1_max < 0 || p2_max < 0 || p1_max + p2_max < 1) {
    throw ValidationError("VAR scan grid is empty");
  }
  const size_t start = static_cast<size_t>(std::max(p1_max, p2_max));
  std::vector<VarScanEntry> entries;
  for (int p1 = 0; p1 <= p1_max; ++p1) {
    for (int p2 = 0; p2 <= p2_max; ++p2) {
      if (p1 + p2 == 0) continue;
      VarScanEntry e;
      e.spec = VarSpec{p1, p2, intercept, start};
      e.result = VarFit(d, s, e.spec);
      for (const auto& c : e.result.coefficients) {
        if (c.name != kInterceptName && c.p_value < alpha) e.significant = true;
      }
      entries.push_back(std::move(e));
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const VarScanEntry& a, const VarScanEntry& b) {
                     return a.result.bic < b.result.bic;
                   });
  return entries;
}

nlohmann::json RegressionJson(const RegressionResult& r, bool var_stars) {
  nlohmann::json coefs = nlohmann::json::array();
  for (const auto& c : r.coefficients) {
    coefs.push_back({{"name", c.name},
                     {"estimate", c.estimate},
                     {"se", c.std_error},
                     {"t", c.t_stat},
                     {"p", c.p_value},
                     {"stars", var_stars ? VarStars(c.p_value) : HypothesisStars(c.p_value)}});
  }
  return {{"coefficients", std::move(coefs)},
          {"r_squared", r.r_squared},
          {"bic", r.bic},
          {"n", r.n_observations},
          {"df_residual", r.df_residual},
          {"sigma", r.sigma}};
}

}  // namespace finsent
