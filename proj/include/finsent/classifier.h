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

#ifndef FINSENT_CLASSIFIER_H_
#define FINSENT_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finsent/base.h"
#include "finsent/lexicon.h"
#include "finsent/representations.h"
#include "json.hpp"

namespace finsent {

enum class LossKind : uint8_t { kSoftmax, kHinge };

std::string_view LossKindName(LossKind k);
std::optional<LossKind> ParseLossKind(std::string_view name);

struct TrainConfig {
  LossKind loss = LossKind::kHinge;
  double learning_rate = 0.05;
  int epochs = 30;
  double l2 = 1e-4;
  size_t batch_size = 16;
  uint64_t seed = 0;
};

struct LabeledVector {
  SparseVector x;
  Sentiment y = Sentiment::kNeutral;
};

// Three score rows over a fitted space, one per class in Sentiment order.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(LossKind loss, VectorSpace space);

  LossKind loss() const { return loss_; }
  const VectorSpace& space() const { return space_; }
  size_t dimension() const { return space_.dimension(); }

  // Row-major [class][column].
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }
  std::array<double, kNumSentiments>& bias() { return bias_; }
  const std::array<double, kNumSentiments>& bias() const { return bias_; }

  double weight(Sentiment c, size_t col) const {
    return weights_[SentimentIndex(c) * dimension() + col];
  }

  // Raw linear scores w_c . x + b_c. Columns beyond the space are ignored.
  std::array<double, kNumSentiments> Margins(const SparseVector& x) const;

  nlohmann::json ToJson() const;
  // Throws ValidationError when weights and space disagree in dimension.
  static LinearModel FromJson(const nlohmann::json& j);

 private:
  LossKind loss_ = LossKind::kSoftmax;
  VectorSpace space_;
  std::vector<double> weights_;
  std::array<double, kNumSentiments> bias_{};
};

inline constexpr int kModelFormatVersion = 1;

struct Prediction {
  Sentiment label = Sentiment::kPositive;
  // Softmax: class probabilities. Hinge: raw margins.
  std::array<double, kNumSentiments> scores{};
};

Prediction Predict(const LinearModel& model, const SparseVector& x);

// Gradient of Objective with the same layout as the model parameters.
struct Gradient {
  std::vector<double> weights;
  std::array<double, kNumSentiments> bias{};
};

// Mean data loss over the batch plus (l2 / 2) * ||W||^2; the bias is not
// regularized. Softmax uses cross-entropy; hinge uses the one-vs-rest sum of
// squared hinge losses.
double Objective(const LinearModel& model, std::span<const LabeledVector> batch,
                 double l2);
Gradient ObjectiveGradient(const LinearModel& model,
                           std::span<const LabeledVector> batch, double l2);

// Mini-batch gradient descent, deterministic for a fixed seed. Throws
// ComputeError when the data is empty or holds a single class.
LinearModel Train(const VectorSpace& space, std::span<const LabeledVector> data,
                  const TrainConfig& config);

struct ClassMetrics {
  double accuracy = 0.0;  // one-vs-rest binary accuracy
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;  // 2PR / (P + R), 0 when P + R = 0
};

ClassMetrics ComputeClassMetrics(std::span<const Sentiment> gold,
                                 std::span<const Sentiment> predicted,
                                 Sentiment cls);

struct SplitMetrics {
  std::array<ClassMetrics, kNumSentiments> per_class;
  double multiclass_accuracy = 0.0;
  double macro_f1 = 0.0;
  size_t train_size = 0;
  size_t test_size = 0;
};

struct MetricSummary {
  double median = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single split
};

MetricSummary Summarize(std::span<const double> values);

struct EvalReport {
  ReprKind repr = ReprKind::kUBT;
  LossKind loss = LossKind::kHinge;
  uint64_t seed = 0;
  std::vector<SplitMetrics> splits;
  std::array<MetricSummary, kNumSentiments> accuracy;
  std::array<MetricSummary, kNumSentiments> f1;
  MetricSummary multiclass_accuracy;
  MetricSummary macro_f1;
};

struct ProtocolConfig {
  ReprKind repr = ReprKind::kUBT;
  TrainConfig train;
  int splits = 31;
  double train_frac = 0.8;
  uint64_t seed = 0;
};

// Repeated random train/test partitions. Split k draws its partition and
// its training seed from DeriveSeed(seed, k); the space is fit on the
// training part only. Throws ValidationError for fewer than 10 labeled
// sequences.
EvalReport EvaluateProtocol(std::span<const FeatureSequence> corpus,
                            const ProtocolConfig& config);
EvalReport EvaluateProtocol(std::span<const AnnotatedInstance> corpus,
                            const MergedLexicon& lexicon,
                            const ProtocolConfig& config);

nlohmann::json EvalSummaryJson(const EvalReport& report);

}  // namespace finsent

#endif  // FINSENT_CLASSIFIER_H_
