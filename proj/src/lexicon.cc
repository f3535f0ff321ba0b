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

#include "finsent/lexicon.h"

#include <fstream>

#include "finsent/text.h"

namespace finsent {
namespace {

constexpr std::array<std::string_view, kNumFeatureClasses> kFeatureNames = {
    "Positive",     "Neutral",      "Negative", "Up",     "Down",  "PositiveIfUp",
    "NegativeIfUp", "Negator",      "Number",   "Target", "Other", "Plain"};

int SourceRank(LexiconSource s) {
  switch (s) {
    case LexiconSource::kCustom: return 2;
    case LexiconSource::kLM: return 1;
    default: return 0;
  }
}

int ClassRank(FeatureClass c) {
  switch (c) {
    case FeatureClass::kPositiveIfUp:
    case FeatureClass::kNegativeIfUp:
      return 3;
    case FeatureClass::kUp:
    case FeatureClass::kDown:
      return 2;
    case FeatureClass::kNegator:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

std::string_view FeatureClassName(FeatureClass c) {
  return kFeatureNames[static_cast<size_t>(c)];
}

std::optional<FeatureClass> ParseFeatureClass(std::string_view name) {
  for (size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (kFeatureNames[i] == name) return static_cast<FeatureClass>(i);
  }
  return std::nullopt;
}

std::string_view LexiconSourceName(LexiconSource s) {
  switch (s) {
    case LexiconSource::kMPQA: return "MPQA";
    case LexiconSource::kGI: return "GI";
    case LexiconSource::kMALO: return "MALO";
    case LexiconSource::kLM: return "LM";
    case LexiconSource::kCustom: return "CUSTOM";
  }
  return "?";
}

std::optional<LexiconSource> ParseLexiconSource(std::string_view name) {
  for (auto s : {LexiconSource::kMPQA, LexiconSource::kGI, LexiconSource::kMALO,
                 LexiconSource::kLM, LexiconSource::kCustom}) {
    if (LexiconSourceName(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<FeatureClass> MergedLexicon::Lookup(const std::string& word) const {
  auto it = words_.find(word);
  if (it == words_.end()) return std::nullopt;
  return it->second.feature;
}

std::optional<LexiconSource> MergedLexicon::Provenance(
    const std::string& word) const {
  auto it = words_.find(word);
  if (it == words_.end()) return std::nullopt;
  return it->second.source;
}

MergeResult MergeDictionaries(std::span<const LexiconEntry> entries) {
  MergeResult result;
  auto& words = result.lexicon.words_;
  for (const auto& e : entries) {
    if (!IsLexiconClass(e.feature)) {
      throw ValidationError("lexicon entry '" + e.word +
                            "' has structural feature class " +
                            std::string(FeatureClassName(e.feature)));
    }
    const std::string word = FoldCase(Trim(e.word));
    if (word.empty()) throw ValidationError("lexicon entry with empty word");
    auto [it, inserted] =
        words.emplace(word, MergedLexicon::Annotation{e.feature, e.source});
    if (inserted) continue;
    auto& current = it->second;
    const int src_new = SourceRank(e.source);
    const int src_cur = SourceRank(current.source);
    if (src_new != src_cur) {
      if (src_new > src_cur) current = {e.feature, e.source};
      continue;
    }
    const int cls_new = ClassRank(e.feature);
    const int cls_cur = ClassRank(current.feature);
    if (cls_new != cls_cur) {
      if (cls_new > cls_cur) current = {e.feature, e.source};
      continue;
    }
    if (e.feature != current.feature) {
      result.warnings.push_back(
          "lexicon tie for '" + word + "': kept " +
          std::string(FeatureClassName(current.feature)) + " (" +
          std::string(LexiconSourceName(current.source)) + "), dropped " +
          std::string(FeatureClassName(e.feature)) + " (" +
          std::string(LexiconSourceName(e.source)) + ")");
    }
  }
  return result;
}

std::vector<LexiconEntry> LoadLexiconTsv(std::istream& in,
                                         std::string_view source_name) {
  std::vector<LexiconEntry> entries;
  std::string line;
  size_t line_no = 0;
  bool have_header = false;
  const std::string where(source_name);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
      const size_t tab = line.find('\t', start);
      cols.emplace_back(Trim(std::string_view(line).substr(
          start, tab == std::string::npos ? std::string::npos : tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const std::string loc = where + ":" + std::to_string(line_no);
    if (!have_header) {
      if (cols.size() != 3 || FoldCase(cols[0]) != "word" ||
          FoldCase(cols[1]) != "feature" || FoldCase(cols[2]) != "source") {
        throw ParseError(loc + ": expected header 'word<TAB>feature<TAB>source'");
      }
      have_header = true;
      continue;
    }
    if (cols.size() != 3) {
      throw ParseError(loc + ": expected 3 tab-separated columns, found " +
                       std::to_string(cols.size()));
    }
    auto feature = ParseFeatureClass(cols[1]);
    if (!feature) throw ParseError(loc + ": unknown feature '" + cols[1] + "'");
    auto source = ParseLexiconSource(cols[2]);
    if (!source) throw ParseError(loc + ": unknown source '" + cols[2] + "'");
    if (cols[0].empty()) throw ParseError(loc + ": empty word");
    entries.push_back(LexiconEntry{FoldCase(cols[0]), *feature, *source});
  }
  if (!have_header) throw ParseError(where + ": missing header row");
  return entries;
}

std::vector<LexiconEntry> LoadLexiconFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  return LoadLexiconTsv(in, path);
}

bool IsNumericLiteral(std::string_view token) {
  if (token.empty()) return false;
  size_t i = 0;
  size_t lead = 0;
  while (i < token.size() && IsDigit(token[i])) {
    ++i;
    ++lead;
  }
  if (lead == 0) return false;
  if (i < token.size() && token[i] == ',') {
    // comma grouping: 1-3 leading digits followed by ,ddd groups
    if (lead > 3) return false;
    while (i < token.size() && token[i] == ',') {
      if (i + 3 >= token.size()) return false;
      for (size_t k = 1; k <= 3; ++k) {
        if (!IsDigit(token[i + k])) return false;
      }
      i += 4;
      if (i < token.size() && IsDigit(token[i])) return false;
    }
  }
  if (i < token.size() && token[i] == '.') {
    ++i;
    size_t frac = 0;
    while (i < token.size() && IsDigit(token[i])) {
      ++i;
      ++frac;
    }
    if (frac == 0) return false;
  }
  return i == token.size();
}

FeatureSequence Annotate(const MergedLexicon& lexicon,
                         const AnnotatedInstance& instance) {
  FeatureSequence seq;
  seq.label = instance.gold_label;
  seq.literals.reserve(instance.tokens.size());
  seq.surface = instance.tokens;
  for (const auto& token : instance.tokens) {
    if (token == kTargetToken) {
      seq.literals.push_back(FeatureClass::kTarget);
    } else if (token == kOtherToken) {
      seq.literals.push_back(FeatureClass::kOther);
    } else if (IsNumericLiteral(token)) {
      seq.literals.push_back(FeatureClass::kNumber);
    } else if (auto hit = lexicon.Lookup(token)) {
      seq.literals.push_back(*hit);
    } else {
      seq.literals.push_back(FeatureClass::kPlain);
    }
  }
  return seq;
}

LexiconStats ComputeLexiconStats(const MergedLexicon& lexicon) {
  LexiconStats stats;
  for (const auto& [word, ann] : lexicon.words()) {
    ++stats.per_class[static_cast<size_t>(ann.feature)];
    ++stats.total;
  }
  return stats;
}

}  // namespace finsent
