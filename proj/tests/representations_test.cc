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

#include "finsent/representations.h"

#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>

#include "oracles.h"

namespace finsent {
namespace {

using F = FeatureClass;

FeatureSequence Seq(std::vector<FeatureClass> literals) {
  FeatureSequence s;
  s.literals = std::move(literals);
  s.surface.assign(s.literals.size(), "w");
  return s;
}

double ValueAt(const VectorSpace& space, const SparseVector& v, FeatureKey key) {
  const auto idx = space.IndexOf(key);
  if (!idx) return 0.0;
  for (size_t i = 0; i < v.nnz(); ++i) {
    if (v.indices[i] == *idx) return v.values[i];
  }
  return 0.0;
}

std::vector<FeatureClass> Gram(std::initializer_list<FeatureClass> g) { return g; }

TEST(UbtTest, SingleSequenceVocabulary) {
  const std::vector<FeatureSequence> corpus = {Seq({F::kTarget, F::kUp})};
  const VectorSpace space = VectorSpace::Fit(ReprKind::kUBT, corpus);
  EXPECT_EQ(space.dimension(), 3u);
  EXPECT_TRUE(space.IndexOf(FeatureKey::Ngram(Gram({F::kTarget}))));
  EXPECT_TRUE(space.IndexOf(FeatureKey::Ngram(Gram({F::kUp}))));
  EXPECT_TRUE(space.IndexOf(FeatureKey::Ngram(Gram({F::kTarget, F::kUp}))));
}

TEST(UbtTest, TermFrequencies) {
  const std::vector<FeatureSequence> corpus = {Seq({F::kUp, F::kUp})};
  const VectorSpace space = VectorSpace::Fit(ReprKind::kUBT, corpus);
  const SparseVector v = space.Transform(Seq({F::kUp, F::kUp}));
  EXPECT_EQ(ValueAt(space, v, FeatureKey::Ngram(Gram({F::kUp}))), 2.0);
  EXPECT_EQ(ValueAt(space, v, FeatureKey::Ngram(Gram({F::kUp, F::kUp}))), 1.0);
}

TEST(UbtTest, UnseenLiteralsGiveEmptyVector) {
  const std::vector<FeatureSequence> corpus = {Seq({F::kUp})};
  const VectorSpace space = VectorSpace::Fit(ReprKind::kUBT, corpus);
  EXPECT_TRUE(space.Transform(Seq({F::kDown, F::kNumber})).empty());
}

TEST(UbtTest, DimensionMatchesSetOfNgrams) {
  const std::vector<FeatureSequence> corpus = {
      Seq({F::kTarget, F::kPositiveIfUp, F::kUp, F::kPlain}),
      Seq({F::kOther, F::kTarget, F::kDown}),
      Seq({F::kTarget, F::kPositiveIfUp, F::kUp, F::kNumber, F::kPlain})};
  std::set<std::vector<FeatureClass>> grams;
  for (const auto& s : corpus) {
    for (const auto& [g, c] : testing::NgramCounts(s.literals)) grams.insert(g);
  }
  EXPECT_EQ(VectorSpace::Fit(ReprKind::kUBT, corpus).dimension(), grams.size());
}

TEST(UbtTest, CountsMatchOracle) {
  std::mt19937_64 rng(5);
  std::vector<FeatureSequence> corpus;
  for (int i = 0; i < 50; ++i) {
    corpus.push_back(Seq(testing::RandomLiterals(rng, UniformIndex(rng, 9))));
  }
  const VectorSpace space = VectorSpace::Fit(ReprKind::kUBT, corpus);
  for (const auto& s : corpus) {
    const SparseVector v = space.Transform(s);
    const auto oracle = testing::NgramCounts(s.literals);
    ASSERT_EQ(v.nnz(), oracle.size());
    for (const auto& [g, c] : oracle) {
      EXPECT_EQ(ValueAt(space, v, FeatureKey::Ngram(g)), c);
    }
    for (size_t i = 1; i < v.nnz(); ++i) EXPECT_LT(v.indices[i - 1], v.indices[i]);
  }
}

TEST(UbtTest, CombinatorialIdentity) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = Seq(testing::RandomLiterals(rng, UniformIndex(rng, 15)));
    if (s.literals.empty()) continue;
    const std::vector<FeatureSequence> corpus = {s};
    const VectorSpace space = VectorSpace::Fit(ReprKind::kUBT, corpus);
    const SparseVector v = space.Transform(s);
    double sums[4] = {0, 0, 0, 0};
    for (size_t i = 0; i < v.nnz(); ++i) {
      sums[space.keys()[v.indices[i]].literals().size()] += v.values[i];
    }
    const double n = static_cast<double>(s.literals.size());
    EXPECT_EQ(sums[1], n);
    EXPECT_EQ(sums[2], n - 1);
    EXPECT_EQ(sums[3], std::max(n - 2, 0.0));
  }
}

TEST(UbtTest, ShuffledCorpusSameVocabulary) {
  std::mt19937_64 rng(21);
  std::vector<FeatureSequence> corpus;
  for (int i = 0; i < 40; ++i) corpus.push_back(Seq(testing::RandomLiterals(rng, 1 + i % 7)));
  const VectorSpace a = VectorSpace::Fit(ReprKind::kUBT, corpus);
  Shuffle(corpus, rng);
  const VectorSpace b = VectorSpace::Fit(ReprKind::kUBT, corpus);
  EXPECT_EQ(a.keys(), b.keys());
}

TEST(LpsTest, SingleSequence) {
  const std::vector<FeatureSequence> corpus = {Seq({F::kTarget, F::kUp})};
  const VectorSpace space = VectorSpace::Fit(ReprKind::kLPS, corpus);
  EXPECT_EQ(space.dimension(), 2u);
  EXPECT_EQ(space.max_len(), 2u);
  EXPECT_TRUE(space.IndexOf(FeatureKey::Positional(0, F::kTarget)));
  EXPECT_TRUE(space.IndexOf(FeatureKey::Positional(1, F::kUp)));
}

TEST(LpsTest, BinaryTruncatedAndBounded) {
  std::mt19937_64 rng(31);
  std::vector<FeatureSequence> corpus;
  for (int i = 0; i < 30; ++i) corpus.push_back(Seq(testing::RandomLiterals(rng, 1 + i % 6)));
  const VectorSpace space = VectorSpace::Fit(ReprKind::kLPS, corpus);
  EXPECT_EQ(space.max_len(), 6u);
  for (int i = 0; i < 100; ++i) {
    const auto s = Seq(testing::RandomLiterals(rng, UniformIndex(rng, 10)));
    size_t truncated = 0;
    const SparseVector v = space.Transform(s, &truncated);
    for (double x : v.values) EXPECT_EQ(x, 1.0);
    EXPECT_LE(v.nnz(), std::min(s.literals.size(), space.max_len()));
    EXPECT_EQ(truncated, s.literals.size() > 6 ? s.literals.size() - 6 : 0);
  }
}

TEST(FeatureKeyTest, PackingRoundTrip) {
  const auto g = FeatureKey::Ngram(Gram({F::kPlain, F::kTarget, F::kPositive}));
  EXPECT_FALSE(g.is_positional());
  EXPECT_EQ(g.literals(), Gram({F::kPlain, F::kTarget, F::kPositive}));
  const auto p = FeatureKey::Positional(17, F::kNegator);
  EXPECT_TRUE(p.is_positional());
  EXPECT_EQ(p.position(), 17u);
  EXPECT_EQ(p.literals(), Gram({F::kNegator}));
  EXPECT_EQ(FeatureKey::FromJson(g.ToJson()), g);
  EXPECT_EQ(FeatureKey::FromJson(p.ToJson()), p);
  EXPECT_NE(FeatureKey::Ngram(Gram({F::kPositive})),
            FeatureKey::Ngram(Gram({F::kPositive, F::kPositive})));
}

TEST(VectorSpaceTest, JsonRoundTrip) {
  std::mt19937_64 rng(41);
  std::vector<FeatureSequence> corpus;
  for (int i = 0; i < 20; ++i) corpus.push_back(Seq(testing::RandomLiterals(rng, 1 + i % 5)));
  for (ReprKind kind : {ReprKind::kUBT, ReprKind::kLPS}) {
    const VectorSpace a = VectorSpace::Fit(kind, corpus);
    const VectorSpace b = VectorSpace::FromJson(a.ToJson());
    EXPECT_EQ(b.kind(), kind);
    EXPECT_EQ(b.keys(), a.keys());
    EXPECT_EQ(b.max_len(), a.max_len());
    for (const auto& s : corpus) EXPECT_EQ(a.Transform(s), b.Transform(s));
  }
}

TEST(VectorSpaceTest, Errors) {
  EXPECT_THROW(VectorSpace::Fit(ReprKind::kUBT, {}), ComputeError);
  nlohmann::json j = VectorSpace::Fit(ReprKind::kUBT, std::vector{Seq({F::kUp})}).ToJson();
  j["version"] = 99;
  EXPECT_THROW(VectorSpace::FromJson(j), ParseError);
}

}  // namespace
}  // namespace finsent
