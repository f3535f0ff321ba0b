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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.h"

namespace finsent {
namespace {

using F = FeatureClass;
using Sent = Sentiment;

// A space with `dim` columns, built from single-literal sequences.
VectorSpace SpaceOfDimension(size_t dim) {
  std::vector<FeatureSequence> corpus;
  for (size_t i = 0; i < dim; ++i) {
    FeatureSequence s;
    s.literals = {static_cast<FeatureClass>(i)};
    s.surface = {"w"};
    corpus.push_back(s);
  }
  return VectorSpace::Fit(ReprKind::kLPS, corpus);
}

SparseVector Dense(const std::vector<double>& v) {
  SparseVector out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      out.indices.push_back(static_cast<uint32_t>(i));
      out.values.push_back(v[i]);
    }
  }
  return out;
}

LinearModel RandomModel(LossKind loss, const VectorSpace& space, std::mt19937_64& rng) {
  LinearModel m(loss, space);
  for (double& w : m.weights()) w = testing::Gaussian(rng);
  for (double& b : m.bias()) b = testing::Gaussian(rng);
  return m;
}

std::vector<LabeledVector> RandomBatch(size_t dim, size_t n, std::mt19937_64& rng) {
  std::vector<LabeledVector> out;
  for (size_t k = 0; k < n; ++k) {
    std::vector<double> x(dim, 0.0);
    for (double& v : x) {
      if (UniformIndex(rng, 2) == 0) v = static_cast<double>(1 + UniformIndex(rng, 3));
    }
    out.push_back({Dense(x), kAllSentiments[UniformIndex(rng, 3)]});
  }
  return out;
}

double RelativeError(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::sqrt(na) + std::sqrt(nb);
  return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

TEST(GradientTest, MatchesCentralDifferences) {
  std::mt19937_64 rng(1);
  for (LossKind loss : {LossKind::kSoftmax, LossKind::kHinge}) {
    for (int trial = 0; trial < 25; ++trial) {
      const VectorSpace space = SpaceOfDimension(2 + UniformIndex(rng, 6));
      LinearModel m = RandomModel(loss, space, rng);
      const auto batch = RandomBatch(space.dimension(), 1 + UniformIndex(rng, 8), rng);
      const double l2 = 0.1 * UniformUnit(rng);
      const Gradient g = ObjectiveGradient(m, batch, l2);
      std::vector<double> analytic = g.weights, numeric;
      analytic.insert(analytic.end(), g.bias.begin(), g.bias.end());
      const double h = 1e-6;
      auto probe = [&](double& param) {
        const double saved = param;
        param = saved + h;
        const double up = Objective(m, batch, l2);
        param = saved - h;
        const double down = Objective(m, batch, l2);
        param = saved;
        numeric.push_back((up - down) / (2 * h));
      };
      for (double& w : m.weights()) probe(w);
      for (double& b : m.bias()) probe(b);
      EXPECT_LT(RelativeError(analytic, numeric), 1e-4) << LossKindName(loss);
    }
  }
}

TEST(PredictTest, ZeroModelTiesToFirstClass) {
  const LinearModel m(LossKind::kSoftmax, SpaceOfDimension(3));
  const Prediction p = Predict(m, SparseVector{});
  EXPECT_EQ(p.label, Sent::kPositive);
  for (double s : p.scores) EXPECT_DOUBLE_EQ(s, 1.0 / 3.0);
}

TEST(PredictTest, HandSetWeights) {
  std::vector<FeatureSequence> corpus(1);
  corpus[0].literals = {F::kUp, F::kDown};
  corpus[0].surface = {"up", "down"};
  const VectorSpace space = VectorSpace::Fit(ReprKind::kUBT, corpus);
  LinearModel m(LossKind::kHinge, space);
  const uint32_t down = *space.IndexOf(FeatureKey::Ngram(std::vector{F::kDown}));
  m.weights()[SentimentIndex(Sent::kNegative) * space.dimension() + down] = 2.0;
  FeatureSequence s;
  s.literals = {F::kDown};
  s.surface = {"down"};
  EXPECT_EQ(Predict(m, space.Transform(s)).label, Sent::kNegative);
}

TEST(PredictTest, SoftmaxScoresOnSimplex) {
  std::mt19937_64 rng(2);
  const VectorSpace space = SpaceOfDimension(6);
  for (int trial = 0; trial < 200; ++trial) {
    const LinearModel m = RandomModel(LossKind::kSoftmax, space, rng);
    const auto batch = RandomBatch(6, 1, rng);
    const auto p = Predict(m, batch[0].x);
    double sum = 0.0;
    for (double s : p.scores) {
      EXPECT_GE(s, 0.0);
      sum += s;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(TrainTest, SeparableToySet) {
  const VectorSpace space = SpaceOfDimension(2);
  const std::vector<LabeledVector> data = {
      {Dense({3, 0}), Sent::kPositive},  {Dense({2, 0.5}), Sent::kPositive},
      {Dense({0, 3}), Sent::kNegative},  {Dense({0.5, 2}), Sent::kNegative},
      {Dense({0.2, 0.2}), Sent::kNeutral}, {Dense({0.1, 0}), Sent::kNeutral}};
  for (LossKind loss : {LossKind::kSoftmax, LossKind::kHinge}) {
    TrainConfig tc;
    tc.loss = loss;
    tc.epochs = 200;
    tc.learning_rate = 0.1;
    tc.l2 = 0.0;
    tc.batch_size = 2;
    const LinearModel m = Train(space, data, tc);
    for (const auto& ex : data) EXPECT_EQ(Predict(m, ex.x).label, ex.y);
  }
}

TEST(TrainTest, IdenticalInputsPredictMajority) {
  const VectorSpace space = SpaceOfDimension(2);
  std::vector<LabeledVector> data;
  for (int i = 0; i < 5; ++i) data.push_back({Dense({1, 1}), Sent::kNegative});
  for (int i = 0; i < 3; ++i) data.push_back({Dense({1, 1}), Sent::kPositive});
  for (int i = 0; i < 2; ++i) data.push_back({Dense({1, 1}), Sent::kNeutral});
  for (LossKind loss : {LossKind::kSoftmax, LossKind::kHinge}) {
    TrainConfig tc;
    tc.loss = loss;
    tc.epochs = 100;
    const LinearModel m = Train(space, data, tc);
    EXPECT_EQ(Predict(m, Dense({1, 1})).label, Sent::kNegative);
  }
}

TEST(TrainTest, SingleClassIsAnError) {
  const VectorSpace space = SpaceOfDimension(2);
  const std::vector<LabeledVector> data = {{Dense({1, 0}), Sent::kNeutral},
                                           {Dense({0, 1}), Sent::kNeutral}};
  EXPECT_THROW(Train(space, data, TrainConfig{}), ComputeError);
  EXPECT_THROW(Train(space, {}, TrainConfig{}), ComputeError);
}

TEST(TrainTest, DeterministicForSeed) {
  std::mt19937_64 rng(4);
  const VectorSpace space = SpaceOfDimension(5);
  const auto data = RandomBatch(5, 60, rng);
  TrainConfig tc;
  tc.seed = 99;
  const LinearModel a = Train(space, data, tc);
  const LinearModel b = Train(space, data, tc);
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_EQ(a.bias(), b.bias());
  tc.seed = 100;
  EXPECT_NE(Train(space, data, tc).weights(), a.weights());
}

TEST(TrainTest, FullBatchObjectiveNonIncreasing) {
  std::mt19937_64 rng(6);
  const VectorSpace space = SpaceOfDimension(5);
  const auto data = RandomBatch(5, 40, rng);
  for (LossKind loss : {LossKind::kSoftmax, LossKind::kHinge}) {
    TrainConfig tc;
    tc.loss = loss;
    tc.learning_rate = 0.01;
    tc.l2 = 0.01;
    tc.batch_size = data.size();
    double previous = INFINITY;
    for (int epochs = 0; epochs <= 30; ++epochs) {
      tc.epochs = epochs;
      const double obj = Objective(Train(space, data, tc), data, tc.l2);
      EXPECT_LE(obj, previous + 1e-12) << "epoch " << epochs;
      previous = obj;
    }
  }
}

TEST(TrainTest, MatchesGridSearchedOptimum) {
  // One feature, three points. Softmax with l2 is invariant to adding a
  // constant to every bias, and its optimum has weights summing to zero,
  // so the grid spans (w0, w1, b0, b1) with w2 = -w0 - w1 and b2 = 0.
  const VectorSpace space = SpaceOfDimension(1);
  const std::vector<LabeledVector> data = {{Dense({1}), Sent::kNegative},
                                           {Dense({2}), Sent::kNeutral},
                                           {Dense({3}), Sent::kPositive}};
  const double l2 = 0.1;
  TrainConfig tc;
  tc.loss = LossKind::kSoftmax;
  tc.epochs = 20000;
  tc.learning_rate = 0.05;
  tc.l2 = l2;
  tc.batch_size = 3;
  const LinearModel trained = Train(space, data, tc);

  LinearModel probe(LossKind::kSoftmax, space);
  double best = INFINITY;
  LinearModel best_model = probe;
  const int steps = 40;
  const double lo = -6.0, step = 0.3;
  for (int i0 = 0; i0 <= steps; ++i0) {
    for (int i1 = 0; i1 <= steps; ++i1) {
      probe.weights()[0] = lo + step * i0;
      probe.weights()[1] = lo + step * i1;
      probe.weights()[2] = -probe.weights()[0] - probe.weights()[1];
      for (int j0 = 0; j0 <= steps; ++j0) {
        for (int j1 = 0; j1 <= steps; ++j1) {
          probe.bias() = {lo + step * j0, lo + step * j1, 0.0};
          const double obj = Objective(probe, data, l2);
          if (obj < best) {
            best = obj;
            best_model = probe;
          }
        }
      }
    }
  }
  // The grid optimum must be interior, otherwise the grid was too small.
  for (double v : {best_model.weights()[0], best_model.weights()[1],
                   best_model.bias()[0], best_model.bias()[1]}) {
    EXPECT_GT(v, lo);
    EXPECT_LT(v, lo + step * steps);
  }
  EXPECT_LE(Objective(trained, data, l2), best + 1e-9);
  for (double x : {0.5, 1.0, 2.0, 3.0, 3.5}) {
    EXPECT_EQ(Predict(trained, Dense({x})).label, Predict(best_model, Dense({x})).label)
        << "x = " << x;
  }
}

TEST(TrainTest, ColumnPermutationLeavesPredictionsUnchanged) {
  std::mt19937_64 rng(8);
  const size_t dim = 6;
  const VectorSpace space = SpaceOfDimension(dim);
  const LinearModel m = RandomModel(LossKind::kHinge, space, rng);
  std::vector<uint32_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0u);
  Shuffle(perm, rng);
  LinearModel permuted = m;
  for (int c = 0; c < kNumSentiments; ++c) {
    for (size_t j = 0; j < dim; ++j) {
      permuted.weights()[c * dim + perm[j]] = m.weights()[c * dim + j];
    }
  }
  for (const auto& ex : RandomBatch(dim, 100, rng)) {
    std::vector<double> moved(dim, 0.0);
    for (size_t i = 0; i < ex.x.nnz(); ++i) moved[perm[ex.x.indices[i]]] = ex.x.values[i];
    EXPECT_EQ(Predict(m, ex.x).label, Predict(permuted, Dense(moved)).label);
  }
}

TEST(ModelTest, JsonRoundTripAndMismatch) {
  std::mt19937_64 rng(10);
  const LinearModel m = RandomModel(LossKind::kSoftmax, SpaceOfDimension(4), rng);
  const LinearModel back = LinearModel::FromJson(m.ToJson());
  EXPECT_EQ(back.weights(), m.weights());
  EXPECT_EQ(back.bias(), m.bias());
  EXPECT_EQ(back.loss(), m.loss());
  nlohmann::json j = m.ToJson();
  j["space"] = SpaceOfDimension(3).ToJson();
  EXPECT_THROW(LinearModel::FromJson(j), ValidationError);
}

TEST(MetricsTest, HandComputedConfusionMatrix) {
  // gold \ pred   pos neg neu
  //   pos          3   1   1
  //   neg          1   2   0
  //   neu          0   1   1
  std::vector<Sent> gold, pred;
  auto add = [&](Sent g, Sent p, int n) {
    for (int i = 0; i < n; ++i) {
      gold.push_back(g);
      pred.push_back(p);
    }
  };
  add(Sent::kPositive, Sent::kPositive, 3);
  add(Sent::kPositive, Sent::kNegative, 1);
  add(Sent::kPositive, Sent::kNeutral, 1);
  add(Sent::kNegative, Sent::kPositive, 1);
  add(Sent::kNegative, Sent::kNegative, 2);
  add(Sent::kNeutral, Sent::kNegative, 1);
  add(Sent::kNeutral, Sent::kNeutral, 1);
  const auto pos = ComputeClassMetrics(gold, pred, Sent::kPositive);
  // tp 3, fp 1, fn 2, tn 4
  EXPECT_DOUBLE_EQ(pos.accuracy, 7.0 / 10.0);
  EXPECT_DOUBLE_EQ(pos.precision, 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(pos.recall, 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(pos.f1, 2.0 * 0.75 * 0.6 / 1.35);
  const auto neu = ComputeClassMetrics(gold, pred, Sent::kNeutral);
  // tp 1, fp 1, fn 1, tn 7
  EXPECT_DOUBLE_EQ(neu.accuracy, 8.0 / 10.0);
  EXPECT_DOUBLE_EQ(neu.f1, 0.5);
  const std::vector<Sent> g2 = {Sent::kPositive}, p2 = {Sent::kNegative};
  EXPECT_EQ(ComputeClassMetrics(g2, p2, Sent::kNeutral).f1, 0.0);
}

TEST(MetricsTest, Summarize) {
  const std::vector<double> v = {3, 1, 2, 10};
  const MetricSummary s = Summarize(v);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.sd, std::sqrt((1.0 + 9.0 + 4.0 + 36.0) / 3.0));
  EXPECT_EQ(Summarize(std::vector<double>{0.7}).sd, 0.0);
}

FeatureSequence Labeled(std::vector<F> literals, Sent y) {
  FeatureSequence s;
  s.literals = std::move(literals);
  s.surface.assign(s.literals.size(), "w");
  s.label = y;
  return s;
}

TEST(ProtocolTest, PerfectlyLearnable) {
  std::mt19937_64 rng(12);
  std::vector<FeatureSequence> corpus;
  const F cue[3] = {F::kPositive, F::kNegative, F::kNeutral};
  for (int i = 0; i < 300; ++i) {
    const int y = static_cast<int>(UniformIndex(rng, 3));
    auto lits = testing::RandomLiterals(rng, 3);
    for (auto& l : lits) {
      if (l == F::kPositive || l == F::kNegative || l == F::kNeutral) l = F::kPlain;
    }
    lits.push_back(cue[y]);
    corpus.push_back(Labeled(lits, kAllSentiments[y]));
  }
  ProtocolConfig pc;
  pc.seed = 1;
  const EvalReport r = EvaluateProtocol(corpus, pc);
  ASSERT_EQ(r.splits.size(), 31u);
  for (int c = 0; c < kNumSentiments; ++c) {
    EXPECT_EQ(r.accuracy[c].median, 1.0);
    EXPECT_EQ(r.f1[c].median, 1.0);
  }
}

TEST(ProtocolTest, RandomLabelsGiveChanceAgreement) {
  std::mt19937_64 rng(14);
  std::vector<FeatureSequence> corpus;
  for (int i = 0; i < 3000; ++i) {
    corpus.push_back(Labeled(testing::RandomLiterals(rng, 2 + UniformIndex(rng, 6)),
                             kAllSentiments[UniformIndex(rng, 3)]));
  }
  ProtocolConfig pc;
  pc.splits = 11;
  pc.train.epochs = 10;
  const EvalReport r = EvaluateProtocol(corpus, pc);
  // The mean of the three one-vs-rest accuracies is (1 + 2A) / 3 for
  // multiclass accuracy A, so chance agreement puts it at 5/9.
  double mean = 0.0;
  for (int c = 0; c < kNumSentiments; ++c) mean += r.accuracy[c].median / 3.0;
  EXPECT_NEAR(mean, 5.0 / 9.0, 0.05);
  EXPECT_NEAR(r.multiclass_accuracy.median, 1.0 / 3.0, 0.05);
}

TEST(ProtocolTest, ReproducibleAndValidated) {
  std::mt19937_64 rng(16);
  const auto corpus = testing::LearnabilityCorpus(rng, 200);
  ProtocolConfig pc;
  pc.splits = 5;
  pc.seed = 77;
  const auto a = EvalSummaryJson(EvaluateProtocol(corpus, pc)).dump();
  const auto b = EvalSummaryJson(EvaluateProtocol(corpus, pc)).dump();
  EXPECT_EQ(a, b);
  const std::vector<FeatureSequence> tiny(corpus.begin(), corpus.begin() + 9);
  EXPECT_THROW(EvaluateProtocol(tiny, pc), ValidationError);
}

}  // namespace
}  // namespace finsent
