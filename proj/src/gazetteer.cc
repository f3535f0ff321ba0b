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

#include "finsent/gazetteer.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "finsent/csv.h"
#include "finsent/text.h"
#include "json.hpp"

namespace finsent {
namespace {

// A span edge at `pos` is admissible unless it would split a run of word
// bytes.
bool IsTokenBoundary(std::string_view text, size_t pos) {
  return pos == 0 || pos >= text.size() ||
         !(IsWordByte(text[pos - 1]) && IsWordByte(text[pos]));
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

EntityDatabase EntityDatabase::FromRecords(std::vector<EntityRecord> records) {
  EntityDatabase db;
  std::set<std::string> symbols;
  for (const auto& r : records) {
    if (Trim(r.symbol).empty()) throw ValidationError("entity with empty symbol");
    if (!symbols.insert(r.symbol).second) {
      throw ValidationError("duplicate entity symbol '" + r.symbol + "'");
    }
  }
  db.records_ = std::move(records);
  for (size_t i = 0; i < db.records_.size(); ++i) {
    const EntityRecord& r = db.records_[i];
    std::vector<std::string> phrases;
    if (r.official_name) phrases.push_back(*r.official_name);
    phrases.insert(phrases.end(), r.other_forms.begin(), r.other_forms.end());
    if (phrases.empty()) {
      throw ValidationError("entity '" + r.symbol + "' has no phrases");
    }
    for (const auto& raw : phrases) {
      const std::string folded = FoldCase(Trim(raw));
      if (folded.empty()) {
        throw ValidationError("entity '" + r.symbol + "' has an empty phrase");
      }
      auto [it, inserted] = db.phrase_to_symbol_.emplace(folded, r.symbol);
      if (!inserted) {
        if (it->second == r.symbol) continue;
        throw ValidationError("phrase '" + std::string(Trim(raw)) +
                              "' is mapped to both '" + it->second + "' and '" +
                              r.symbol + "'");
      }
      int32_t node = 0;
      for (unsigned char c : folded) {
        auto next = db.trie_[node].next.find(c);
        if (next == db.trie_[node].next.end()) {
          const auto idx = static_cast<int32_t>(db.trie_.size());
          db.trie_[node].next.emplace(c, idx);
          db.trie_.emplace_back();
          node = idx;
        } else {
          node = next->second;
        }
      }
      db.trie_[node].symbol = static_cast<int32_t>(i);
    }
  }
  return db;
}

const EntityRecord* EntityDatabase::FindSymbol(std::string_view symbol) const {
  for (const auto& r : records_) {
    if (r.symbol == symbol) return &r;
  }
  return nullptr;
}

std::optional<std::string> EntityDatabase::SymbolForPhrase(
    std::string_view phrase) const {
  auto it = phrase_to_symbol_.find(FoldCase(Trim(phrase)));
  if (it == phrase_to_symbol_.end()) return std::nullopt;
  return it->second;
}

void EntityDatabase::MatchesAt(
    std::string_view folded, size_t start,
    std::vector<std::pair<size_t, int32_t>>* out) const {
  int32_t node = 0;
  for (size_t i = start; i < folded.size(); ++i) {
    const auto& next = trie_[node].next;
    auto it = next.find(static_cast<unsigned char>(folded[i]));
    if (it == next.end()) return;
    node = it->second;
    if (trie_[node].symbol >= 0) out->emplace_back(i + 1, trie_[node].symbol);
  }
}

EntityDatabase LoadEntityDbJson(std::istream& in, std::string_view source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(source_name) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(std::string(source_name) +
                     ": entity database must be a JSON object");
  }
  std::vector<EntityRecord> records;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& entry = it.value();
    const std::string where = std::string(source_name) + ": entity '" + it.key() + "'";
    if (!entry.is_object()) throw ParseError(where + " must be an object");
    EntityRecord record;
    record.symbol = it.key();
    if (auto name = entry.find("official_name"); name != entry.end()) {
      if (name->is_string()) {
        record.official_name = name->get<std::string>();
      } else if (!name->is_null()) {
        throw ParseError(where + ": official_name must be a string or null");
      }
    }
    if (auto forms = entry.find("other_forms"); forms != entry.end()) {
      if (!forms->is_array()) throw ParseError(where + ": other_forms must be an array");
      for (const auto& f : *forms) {
        if (!f.is_string()) throw ParseError(where + ": other_forms entries must be strings");
        record.other_forms.push_back(f.get<std::string>());
      }
    }
    records.push_back(std::move(record));
  }
  return EntityDatabase::FromRecords(std::move(records));
}

EntityDatabase LoadEntityDbCsv(std::istream& in, std::string_view source_name) {
  const CsvTable table = CsvTable::Read(in, source_name);
  const size_t sym_col = table.RequireColumn("symbol");
  const size_t phrase_col = table.RequireColumn("phrase");
  std::vector<EntityRecord> records;
  std::map<std::string, size_t> index;
  for (const auto& row : table.rows()) {
    const std::string symbol(Trim(row.fields[sym_col]));
    if (symbol.empty()) throw ParseError(table.Where(row) + ": empty symbol");
    auto [it, inserted] = index.emplace(symbol, records.size());
    if (inserted) records.push_back(EntityRecord{symbol, std::nullopt, {}});
    records[it->second].other_forms.push_back(row.fields[phrase_col]);
  }
  return EntityDatabase::FromRecords(std::move(records));
}

EntityDatabase LoadEntityDb(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  if (EndsWith(FoldCase(path), ".csv")) return LoadEntityDbCsv(in, path);
  return LoadEntityDbJson(in, path);
}

std::vector<EntityMention> Recognize(const EntityDatabase& db,
                                     std::string_view headline) {
  const std::string folded = FoldCase(headline);
  struct Candidate {
    size_t start;
    size_t end;
    int32_t record;
  };
  std::vector<Candidate> candidates;
  std::vector<std::pair<size_t, int32_t>> ends;
  for (size_t s = 0; s < folded.size(); ++s) {
    if (!IsTokenBoundary(folded, s)) continue;
    ends.clear();
    db.MatchesAt(folded, s, &ends);
    for (const auto& [e, rec] : ends) {
      if (IsTokenBoundary(folded, e)) candidates.push_back({s, e, rec});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              const size_t la = a.end - a.start;
              const size_t lb = b.end - b.start;
              if (la != lb) return la > lb;
              return a.start < b.start;
            });
  std::vector<bool> taken(folded.size(), false);
  std::vector<EntityMention> mentions;
  for (const auto& c : candidates) {
    bool free = true;
    for (size_t i = c.start; i < c.end && free; ++i) free = !taken[i];
    if (!free) continue;
    for (size_t i = c.start; i < c.end; ++i) taken[i] = true;
    mentions.push_back(EntityMention{
        db.records()[c.record].symbol, c.start, c.end,
        std::string(headline.substr(c.start, c.end - c.start))});
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.span_start < b.span_start;
            });
  return mentions;
}

std::vector<AnnotatedInstance> ExpandInstances(
    std::string_view headline, std::span<const EntityMention> mentions,
    std::string_view headline_id) {
  std::vector<EntityMention> sorted(mentions.begin(), mentions.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.span_start < b.span_start;
            });
  std::vector<std::string> order;
  for (const auto& m : sorted) {
    if (m.span_end > headline.size() || m.span_start >= m.span_end) {
      throw ValidationError("mention of '" + m.symbol + "' is out of range");
    }
    if (std::find(order.begin(), order.end(), m.symbol) == order.end()) {
      order.push_back(m.symbol);
    }
  }
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].span_start < sorted[i - 1].span_end) {
      throw ValidationError("overlapping mentions of '" + sorted[i - 1].symbol +
                            "' and '" + sorted[i].symbol + "'");
    }
  }

  // Normalize the text between mentions once; markers are spliced in per
  // target.
  std::vector<std::vector<std::string>> gaps;
  size_t cursor = 0;
  for (const auto& m : sorted) {
    gaps.push_back(NormalizeTokens(headline.substr(cursor, m.span_start - cursor)));
    cursor = m.span_end;
  }
  gaps.push_back(NormalizeTokens(headline.substr(cursor)));

  std::vector<AnnotatedInstance> instances;
  instances.reserve(order.size());
  for (const auto& target : order) {
    AnnotatedInstance inst;
    inst.headline_id = std::string(headline_id);
    inst.target_symbol = target;
    for (size_t i = 0; i < sorted.size(); ++i) {
      inst.tokens.insert(inst.tokens.end(), gaps[i].begin(), gaps[i].end());
      inst.tokens.emplace_back(sorted[i].symbol == target ? kTargetToken
                                                          : kOtherToken);
    }
    inst.tokens.insert(inst.tokens.end(), gaps.back().begin(), gaps.back().end());
    instances.push_back(std::move(inst));
  }
  return instances;
}

}  // namespace finsent
