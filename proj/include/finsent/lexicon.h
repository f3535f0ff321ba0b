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

#ifndef FINSENT_LEXICON_H_
#define FINSENT_LEXICON_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "finsent/base.h"
#include "finsent/gazetteer.h"

namespace finsent {

// Word-level feature literals. The first eight are lexicon classes; Number,
// Target and Other are structural; Plain marks out-of-lexicon tokens.
enum class FeatureClass : uint8_t {
  kPositive = 0,
  kNeutral,
  kNegative,
  kUp,
  kDown,
  kPositiveIfUp,
  kNegativeIfUp,
  kNegator,
  kNumber,
  kTarget,
  kOther,
  kPlain,
};

inline constexpr int kNumFeatureClasses = 12;

std::string_view FeatureClassName(FeatureClass c);
std::optional<FeatureClass> ParseFeatureClass(std::string_view name);
inline bool IsLexiconClass(FeatureClass c) {
  return static_cast<int>(c) < static_cast<int>(FeatureClass::kNumber);
}

// Ordered weakest to strongest where precedence matters.
enum class LexiconSource : uint8_t { kMPQA, kGI, kMALO, kLM, kCustom };

std::string_view LexiconSourceName(LexiconSource s);
std::optional<LexiconSource> ParseLexiconSource(std::string_view name);

struct LexiconEntry {
  std::string word;
  FeatureClass feature = FeatureClass::kPlain;
  LexiconSource source = LexiconSource::kLM;
};

class MergedLexicon {
 public:
  struct Annotation {
    FeatureClass feature;
    LexiconSource source;
  };

  std::optional<FeatureClass> Lookup(const std::string& word) const;
  std::optional<LexiconSource> Provenance(const std::string& word) const;
  size_t size() const { return words_.size(); }
  const std::unordered_map<std::string, Annotation>& words() const {
    return words_;
  }

 private:
  friend struct MergeResult MergeDictionaries(std::span<const LexiconEntry>);
  std::unordered_map<std::string, Annotation> words_;
};

struct MergeResult {
  MergedLexicon lexicon;
  // One line per unresolved tie (equal source and class rank, different
  // class); the earliest entry won.
  std::vector<std::string> warnings;
};

// Resolves overlaps per word: source precedence CUSTOM > LM > {MPQA, GI,
// MALO} first, then class precedence direction-dependency > directionality >
// negation > prior sentiment, then input order. Words are case-folded.
MergeResult MergeDictionaries(std::span<const LexiconEntry> entries);

// TSV with header "word<TAB>feature<TAB>source".
std::vector<LexiconEntry> LoadLexiconTsv(std::istream& in,
                                         std::string_view source_name);
std::vector<LexiconEntry> LoadLexiconFile(const std::string& path);

struct FeatureSequence {
  std::vector<FeatureClass> literals;
  std::vector<std::string> surface;
  std::optional<Sentiment> label;
};

// Integers, decimals and comma-grouped digits ("26", "3.5", "1,200.50").
bool IsNumericLiteral(std::string_view token);

// Maps each token to its literal. No stop-word removal, no stemming.
FeatureSequence Annotate(const MergedLexicon& lexicon,
                         const AnnotatedInstance& instance);

struct LexiconStats {
  std::array<size_t, kNumFeatureClasses> per_class{};
  size_t total = 0;
};

LexiconStats ComputeLexiconStats(const MergedLexicon& lexicon);

}  // namespace finsent

#endif  // FINSENT_LEXICON_H_
