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

#include "finsent/classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "finsent/random.h"

namespace finsent {
namespace {

constexpr int K = kNumSentiments;

std::array<double, K> Softmax(const std::array<double, K>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  std::array<double, K> p;
  double sum = 0.0;
  for (int c = 0; c < K; ++c) {
    p[c] = std::exp(z[c] - m);
    sum += p[c];
  }
  for (auto& v : p) v /= sum;
  return p;
}

// d(loss)/d(margins) and the loss value for one example.
double ExampleLossAndSlope(LossKind loss, const std::array<double, K>& z,
                           Sentiment y, std::array<double, K>* slope) {
  const int yi = SentimentIndex(y);
  if (loss == LossKind::kSoftmax) {
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (int c = 0; c < K; ++c) sum += std::exp(z[c] - m);
    const double log_norm = m + std::log(sum);
    for (int c = 0; c < K; ++c) {
      (*slope)[c] = std::exp(z[c] - log_norm) - (c == yi ? 1.0 : 0.0);
    }
    return log_norm - z[yi];
  }
  double total = 0.0;
  for (int c = 0; c < K; ++c) {
    const double sign = c == yi ? 1.0 : -1.0;
    const double gap = std::max(0.0, 1.0 - sign * z[c]);
    total += gap * gap;
    (*slope)[c] = -2.0 * sign * gap;
  }
  return total;
}

void CheckVector(const SparseVector& x, size_t dim) {
  if (!x.empty() && x.indices.back() >= dim) {
    throw ValidationError("sparse vector column " +
                          std::to_string(x.indices.back()) +
                          " exceeds model dimension " + std::to_string(dim));
  }
}

}  // namespace

std::string_view LossKindName(LossKind k) {
  return k == LossKind::kSoftmax ? "softmax" : "hinge";
}

std::optional<LossKind> ParseLossKind(std::string_view name) {
  if (name == "softmax" || name == "logistic") return LossKind::kSoftmax;
  if (name == "hinge" || name == "svm") return LossKind::kHinge;
  return std::nullopt;
}

LinearModel::LinearModel(LossKind loss, VectorSpace space)
    : loss_(loss),
      space_(std::move(space)),
      weights_(static_cast<size_t>(K) * space_.dimension(), 0.0) {}

std::array<double, K> LinearModel::Margins(const SparseVector& x) const {
  std::array<double, K> z = bias_;
  const size_t dim = dimension();
  for (size_t i = 0; i < x.indices.size(); ++i) {
    const size_t col = x.indices[i];
    if (col >= dim) continue;
    for (int c = 0; c < K; ++c) z[c] += weights_[c * dim + col] * x.values[i];
  }
  return z;
}

nlohmann::json LinearModel::ToJson() const {
  nlohmann::json j;
  j["format"] = "finsent-linear-model";
  j["version"] = kModelFormatVersion;
  j["loss_kind"] = std::string(LossKindName(loss_));
  nlohmann::json classes = nlohmann::json::array();
  for (auto s : kAllSentiments) classes.push_back(std::string(SentimentName(s)));
  j["classes"] = classes;
  j["bias"] = bias_;
  nlohmann::json rows = nlohmann::json::array();
  const size_t dim = dimension();
  for (int c = 0; c < K; ++c) {
    rows.push_back(std::vector<double>(weights_.begin() + c * dim,
                                       weights_.begin() + (c + 1) * dim));
  }
  j["weights"] = std::move(rows);
  j["space"] = space_.ToJson();
  return j;
}

LinearModel LinearModel::FromJson(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw ParseError("unsupported model version " + j.at("version").dump());
    }
    auto loss = ParseLossKind(j.at("loss_kind").get<std::string>());
    if (!loss) throw ParseError("unknown loss_kind " + j.at("loss_kind").dump());
    const auto classes = j.at("classes").get<std::vector<std::string>>();
    if (classes.size() != K) throw ParseError("model must list 3 classes");
    for (int c = 0; c < K; ++c) {
      if (classes[c] != SentimentName(kAllSentiments[c])) {
        throw ParseError("unexpected class order in model file");
      }
    }
    LinearModel model(*loss, VectorSpace::FromJson(j.at("space")));
    const auto bias = j.at("bias").get<std::vector<double>>();
    if (bias.size() != K) throw ParseError("model bias must have 3 entries");
    std::copy(bias.begin(), bias.end(), model.bias_.begin());
    const auto& rows = j.at("weights");
    if (!rows.is_array() || rows.size() != K) {
      throw ParseError("model weights must have 3 rows");
    }
    const size_t dim = model.dimension();
    for (int c = 0; c < K; ++c) {
      const auto row = rows[c].get<std::vector<double>>();
      if (row.size() != dim) {
        throw ValidationError("model/space mismatch: weight row has " +
                              std::to_string(row.size()) +
                              " columns, vector space has " + std::to_string(dim));
      }
      for (size_t i = 0; i < dim; ++i) {
        if (!std::isfinite(row[i])) throw ValidationError("non-finite model weight");
        model.weights_[c * dim + i] = row[i];
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

Prediction Predict(const LinearModel& model, const SparseVector& x) {
  Prediction p;
  const auto z = model.Margins(x);
  p.scores = model.loss() == LossKind::kSoftmax ? Softmax(z) : z;
  int best = 0;
  for (int c = 1; c < K; ++c) {
    if (p.scores[c] > p.scores[best]) best = c;
  }
  p.label = kAllSentiments[best];
  return p;
}

double Objective(const LinearModel& model, std::span<const LabeledVector> batch,
                 double l2) {
  double data = 0.0;
  std::array<double, K> slope;
  for (const auto& ex : batch) {
    data += ExampleLossAndSlope(model.loss(), model.Margins(ex.x), ex.y, &slope);
  }
  if (!batch.empty()) data /= static_cast<double>(batch.size());
  double sq = 0.0;
  for (double w : model.weights()) sq += w * w;
  return data + 0.5 * l2 * sq;
}

Gradient ObjectiveGradient(const LinearModel& model,
                           std::span<const LabeledVector> batch, double l2) {
  const size_t dim = model.dimension();
  Gradient g;
  g.weights.assign(model.weights().size(), 0.0);
  const double scale = batch.empty() ? 0.0 : 1.0 / static_cast<double>(batch.size());
  std::array<double, K> slope;
  for (const auto& ex : batch) {
    CheckVector(ex.x, dim);
    ExampleLossAndSlope(model.loss(), model.Margins(ex.x), ex.y, &slope);
    for (int c = 0; c < K; ++c) {
      const double s = slope[c] * scale;
      g.bias[c] += s;
      for (size_t i = 0; i < ex.x.indices.size(); ++i) {
        g.weights[c * dim + ex.x.indices[i]] += s * ex.x.values[i];
      }
    }
  }
  for (size_t i = 0; i < g.weights.size(); ++i) {
    g.weights[i] += l2 * model.weights()[i];
  }
  return g;
}

LinearModel Train(const VectorSpace& space, std::span<const LabeledVector> data,
                  const TrainConfig& config) {
  if (data.empty()) throw ComputeError("cannot train on empty data");
  if (config.epochs < 0 || config.learning_rate <= 0.0 || config.l2 < 0.0) {
    throw ValidationError("invalid training configuration");
  }
  std::array<size_t, K> counts{};
  for (const auto& ex : data) {
    CheckVector(ex.x, space.dimension());
    ++counts[SentimentIndex(ex.y)];
  }
  if (std::count(counts.begin(), counts.end(), size_t{0}) >= K - 1) {
    throw ComputeError("training data holds a single class");
  }

  LinearModel model(config.loss, space);
  const size_t dim = space.dimension();
  const size_t batch_size = std::max<size_t>(1, config.batch_size);
  const double lr = config.learning_rate;
  const double decay = 1.0 - lr * config.l2;

  std::mt19937_64 rng(config.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});

  // Scratch gradient for the data term; only touched columns are reset.
  std::vector<double> grad(static_cast<size_t>(K) * dim, 0.0);
  std::vector<uint32_t> touched;
  std::vector<char> is_touched(dim, 0);
  std::array<double, K> slope;
  auto& w = model.weights();
  auto& b = model.bias();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Shuffle(order, rng);
    for (size_t start = 0; start < order.size(); start += batch_size) {
      const size_t end = std::min(order.size(), start + batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      std::array<double, K> grad_b{};
      for (size_t k = start; k < end; ++k) {
        const LabeledVector& ex = data[order[k]];
        ExampleLossAndSlope(config.loss, model.Margins(ex.x), ex.y, &slope);
        for (int c = 0; c < K; ++c) {
          const double s = slope[c] * scale;
          if (s == 0.0) continue;
          grad_b[c] += s;
          for (size_t i = 0; i < ex.x.indices.size(); ++i) {
            const uint32_t col = ex.x.indices[i];
            if (!is_touched[col]) {
              is_touched[col] = 1;
              touched.push_back(col);
            }
            grad[c * dim + col] += s * ex.x.values[i];
          }
        }
      }
      if (decay != 1.0) {
        for (double& v : w) v *= decay;
      }
      for (uint32_t col : touched) {
        for (int c = 0; c < K; ++c) {
          w[c * dim + col] -= lr * grad[c * dim + col];
          grad[c * dim + col] = 0.0;
        }
        is_touched[col] = 0;
      }
      touched.clear();
      for (int c = 0; c < K; ++c) b[c] -= lr * grad_b[c];
    }
  }
  for (double v : w) {
    if (!std::isfinite(v)) {
      throw ComputeError("training diverged; lower the learning rate");
    }
  }
  return model;
}

ClassMetrics ComputeClassMetrics(std::span<const Sentiment> gold,
                                 std::span<const Sentiment> predicted,
                                 Sentiment cls) {
  if (gold.size() != predicted.size()) {
    throw ValidationError("gold and predicted label counts differ");
  }
  size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] == cls;
    const bool p = predicted[i] == cls;
    if (g && p) ++tp;
    else if (!g && p) ++fp;
    else if (g && !p) ++fn;
    else ++tn;
  }
  ClassMetrics m;
  const size_t n = gold.size();
  m.accuracy = n == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(n);
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

MetricSummary Summarize(std::span<const double> values) {
  MetricSummary s;
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

EvalReport EvaluateProtocol(std::span<const FeatureSequence> corpus,
                            const ProtocolConfig& config) {
  std::vector<const FeatureSequence*> labeled;
  for (const auto& seq : corpus) {
    if (seq.label) labeled.push_back(&seq);
  }
  if (labeled.size() < 10) {
    throw ValidationError("evaluation needs at least 10 labeled instances, got " +
                          std::to_string(labeled.size()));
  }
  if (config.splits < 1) throw ValidationError("split count must be >= 1");
  if (!(config.train_frac > 0.0 && config.train_frac < 1.0)) {
    throw ValidationError("train fraction must lie in (0, 1)");
  }

  EvalReport report;
  report.repr = config.repr;
  report.loss = config.train.loss;
  report.seed = config.seed;
  const size_t n = labeled.size();
  const size_t n_train = std::clamp<size_t>(
      static_cast<size_t>(std::llround(config.train_frac * static_cast<double>(n))),
      1, n - 1);

  for (int k = 0; k < config.splits; ++k) {
    const uint64_t split_seed = DeriveSeed(config.seed, static_cast<uint64_t>(k));
    std::mt19937_64 rng(split_seed);
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    Shuffle(perm, rng);

    std::vector<FeatureSequence> train_seqs;
    train_seqs.reserve(n_train);
    for (size_t i = 0; i < n_train; ++i) train_seqs.push_back(*labeled[perm[i]]);
    const VectorSpace space = VectorSpace::Fit(config.repr, train_seqs);

    std::vector<LabeledVector> train_data;
    train_data.reserve(n_train);
    for (const auto& seq : train_seqs) {
      train_data.push_back({space.Transform(seq), *seq.label});
    }
    TrainConfig tc = config.train;
    tc.seed = split_seed;
    const LinearModel model = Train(space, train_data, tc);

    std::vector<Sentiment> gold, pred;
    for (size_t i = n_train; i < n; ++i) {
      const FeatureSequence& seq = *labeled[perm[i]];
      gold.push_back(*seq.label);
      pred.push_back(Predict(model, space.Transform(seq)).label);
    }
    SplitMetrics sm;
    sm.train_size = n_train;
    sm.test_size = n - n_train;
    size_t correct = 0;
    for (size_t i = 0; i < gold.size(); ++i) correct += gold[i] == pred[i];
    sm.multiclass_accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
    for (int c = 0; c < K; ++c) {
      sm.per_class[c] = ComputeClassMetrics(gold, pred, kAllSentiments[c]);
      sm.macro_f1 += sm.per_class[c].f1 / K;
    }
    report.splits.push_back(sm);
  }

  std::vector<double> vals;
  auto collect = [&](auto getter) {
    vals.clear();
    for (const auto& s : report.splits) vals.push_back(getter(s));
    return Summarize(vals);
  };
  for (int c = 0; c < K; ++c) {
    report.accuracy[c] = collect([c](const SplitMetrics& s) { return s.per_class[c].accuracy; });
    report.f1[c] = collect([c](const SplitMetrics& s) { return s.per_class[c].f1; });
  }
  report.multiclass_accuracy = collect([](const SplitMetrics& s) { return s.multiclass_accuracy; });
  report.macro_f1 = collect([](const SplitMetrics& s) { return s.macro_f1; });
  return report;
}

EvalReport EvaluateProtocol(std::span<const AnnotatedInstance> corpus,
                            const MergedLexicon& lexicon,
                            const ProtocolConfig& config) {
  std::vector<FeatureSequence> seqs;
  seqs.reserve(corpus.size());
  for (const auto& inst : corpus) seqs.push_back(Annotate(lexicon, inst));
  return EvaluateProtocol(seqs, config);
}

nlohmann::json EvalSummaryJson(const EvalReport& report) {
  auto summary = [](const MetricSummary& m) {
    return nlohmann::json{{"median", m.median}, {"mean", m.mean}, {"sd", m.sd}};
  };
  nlohmann::json per_class = nlohmann::json::object();
  for (int c = 0; c < K; ++c) {
    per_class[std::string(SentimentName(kAllSentiments[c]))] = {
        {"accuracy", summary(report.accuracy[c])}, {"f1", summary(report.f1[c])}};
  }
  nlohmann::json j;
  j["representation"] = std::string(ReprKindName(report.repr));
  j["loss_kind"] = std::string(LossKindName(report.loss));
  j["seed"] = report.seed;
  j["splits"] = report.splits.size();
  j["train_size"] = report.splits.empty() ? 0 : report.splits[0].train_size;
  j["test_size"] = report.splits.empty() ? 0 : report.splits[0].test_size;
  j["per_class"] = std::move(per_class);
  j["multiclass"] = {{"accuracy", summary(report.multiclass_accuracy)},
                     {"macro_f1", summary(report.macro_f1)}};
  return j;
}

}  // namespace finsent
