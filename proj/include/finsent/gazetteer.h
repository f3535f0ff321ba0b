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

#ifndef FINSENT_GAZETTEER_H_
#define FINSENT_GAZETTEER_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finsent/base.h"

namespace finsent {

inline constexpr std::string_view kTargetToken = "TARGET";
inline constexpr std::string_view kOtherToken = "OTHER";

struct EntityRecord {
  std::string symbol;
  std::optional<std::string> official_name;
  std::vector<std::string> other_forms;
};

// A recognized entity span in a raw headline. Offsets are byte offsets into
// the UTF-8 headline, end exclusive.
struct EntityMention {
  std::string symbol;
  size_t span_start = 0;
  size_t span_end = 0;
  std::string matched_phrase;

  bool operator==(const EntityMention&) const = default;
};

// One Target/Other view of a headline.
struct AnnotatedInstance {
  std::string headline_id;
  std::string target_symbol;
  std::vector<std::string> tokens;
  std::optional<Sentiment> gold_label;
};

// Phrase dictionary mapping surface forms to entity symbols. Immutable after
// construction; matching walks a byte trie over case-folded phrases.
class EntityDatabase {
 public:
  EntityDatabase() = default;

  // Validates the records: unique symbols, non-empty phrases, and no
  // case-folded phrase shared by two symbols.
  static EntityDatabase FromRecords(std::vector<EntityRecord> records);

  const std::vector<EntityRecord>& records() const { return records_; }
  size_t record_count() const { return records_.size(); }
  // Distinct case-folded matchable phrases; official names are matchable.
  size_t phrase_count() const { return phrase_to_symbol_.size(); }

  const EntityRecord* FindSymbol(std::string_view symbol) const;
  // Symbol owning a phrase (case-insensitive), if any.
  std::optional<std::string> SymbolForPhrase(std::string_view phrase) const;
  const std::map<std::string, std::string>& phrase_table() const {
    return phrase_to_symbol_;
  }

  // Every trie match starting at byte `start` of the folded text, as
  // (end offset, symbol index) pairs in increasing end order.
  void MatchesAt(std::string_view folded, size_t start,
                 std::vector<std::pair<size_t, int32_t>>* out) const;

 private:
  struct Node {
    std::map<unsigned char, int32_t> next;
    int32_t symbol = -1;  // index into records_, -1 when not terminal
  };

  std::vector<EntityRecord> records_;
  std::map<std::string, std::string> phrase_to_symbol_;
  std::vector<Node> trie_{Node{}};
};

// JSON object: symbol -> {"official_name": string|null, "other_forms": [..]}.
EntityDatabase LoadEntityDbJson(std::istream& in, std::string_view source_name);
// Two-column CSV with header "symbol,phrase"; rows for one symbol aggregate.
EntityDatabase LoadEntityDbCsv(std::istream& in, std::string_view source_name);
// Dispatches on the file extension (.csv or JSON otherwise).
EntityDatabase LoadEntityDb(const std::string& path);

// Whole-word, case-insensitive phrase matches. Overlapping candidates are
// resolved longest first, then by earlier start; the result is sorted by
// span_start and pairwise disjoint.
std::vector<EntityMention> Recognize(const EntityDatabase& db,
                                     std::string_view headline);

// One instance per distinct symbol, ordered by first mention. The target's
// mentions become TARGET, all others OTHER, and the remaining text is
// normalized with NormalizeTokens.
std::vector<AnnotatedInstance> ExpandInstances(
    std::string_view headline, std::span<const EntityMention> mentions,
    std::string_view headline_id = {});

}  // namespace finsent

#endif  // FINSENT_GAZETTEER_H_
