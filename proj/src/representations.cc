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

#include <algorithm>
#include <set>

namespace finsent {
namespace {

constexpr uint64_t kPositionalBit = uint64_t{1} << 32;

// Emits the packed keys of a sequence, unsorted, with multiplicity.
void CollectKeys(ReprKind kind, const std::vector<FeatureClass>& lits,
                 size_t max_len, std::vector<FeatureKey>* out,
                 size_t* truncated) {
  if (kind == ReprKind::kUBT) {
    for (size_t n = 1; n <= 3; ++n) {
      for (size_t i = 0; i + n <= lits.size(); ++i) {
        out->push_back(FeatureKey::Ngram(
            std::span<const FeatureClass>(lits.data() + i, n)));
      }
    }
    return;
  }
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i >= max_len) {
      if (truncated != nullptr) ++*truncated;
      continue;
    }
    out->push_back(FeatureKey::Positional(static_cast<uint32_t>(i), lits[i]));
  }
}

}  // namespace

std::string_view ReprKindName(ReprKind k) {
  return k == ReprKind::kLPS ? "LPS" : "UBT";
}

std::optional<ReprKind> ParseReprKind(std::string_view name) {
  if (name == "LPS" || name == "lps") return ReprKind::kLPS;
  if (name == "UBT" || name == "ubt") return ReprKind::kUBT;
  return std::nullopt;
}

FeatureKey FeatureKey::Ngram(std::span<const FeatureClass> literals) {
  if (literals.empty() || literals.size() > 3) {
    throw ValidationError("n-gram keys hold 1 to 3 literals");
  }
  uint64_t packed = static_cast<uint64_t>(literals.size()) << 12;
  for (size_t i = 0; i < literals.size(); ++i) {
    packed |= static_cast<uint64_t>(literals[i]) << (8 - 4 * i);
  }
  return FeatureKey(packed);
}

FeatureKey FeatureKey::Positional(uint32_t position, FeatureClass literal) {
  if (position >= (uint32_t{1} << 27)) {
    throw ValidationError("LPS position out of range");
  }
  return FeatureKey(kPositionalBit | (static_cast<uint64_t>(position) << 4) |
                    static_cast<uint64_t>(literal));
}

uint32_t FeatureKey::position() const {
  return static_cast<uint32_t>((packed_ & 0xFFFFFFFFu) >> 4);
}

std::vector<FeatureClass> FeatureKey::literals() const {
  if (is_positional()) return {static_cast<FeatureClass>(packed_ & 0xF)};
  const size_t n = (packed_ >> 12) & 0xF;
  std::vector<FeatureClass> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back(static_cast<FeatureClass>((packed_ >> (8 - 4 * i)) & 0xF));
  }
  return out;
}

nlohmann::json FeatureKey::ToJson() const {
  if (is_positional()) {
    return nlohmann::json::array(
        {position(), std::string(FeatureClassName(literals()[0]))});
  }
  nlohmann::json arr = nlohmann::json::array();
  for (auto c : literals()) arr.push_back(std::string(FeatureClassName(c)));
  return arr;
}

FeatureKey FeatureKey::FromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("vocabulary key must be a non-empty array");
  }
  auto parse_class = [](const nlohmann::json& v) {
    if (!v.is_string()) throw ParseError("vocabulary literal must be a string");
    auto c = ParseFeatureClass(v.get<std::string>());
    if (!c) throw ParseError("unknown literal '" + v.get<std::string>() + "'");
    return *c;
  };
  if (j[0].is_number_integer()) {
    if (j.size() != 2) throw ParseError("LPS key must be [position, literal]");
    return Positional(j[0].get<uint32_t>(), parse_class(j[1]));
  }
  std::vector<FeatureClass> lits;
  for (const auto& v : j) lits.push_back(parse_class(v));
  return Ngram(lits);
}

VectorSpace VectorSpace::Fit(ReprKind kind,
                             std::span<const FeatureSequence> corpus) {
  if (corpus.empty()) throw ComputeError("cannot fit a vector space on an empty corpus");
  VectorSpace space;
  space.kind_ = kind;
  if (kind == ReprKind::kLPS) {
    for (const auto& seq : corpus) {
      space.max_len_ = std::max(space.max_len_, seq.literals.size());
    }
  }
  std::set<FeatureKey> vocab;
  std::vector<FeatureKey> keys;
  for (const auto& seq : corpus) {
    keys.clear();
    CollectKeys(kind, seq.literals, space.max_len_, &keys, nullptr);
    vocab.insert(keys.begin(), keys.end());
  }
  space.keys_.assign(vocab.begin(), vocab.end());
  space.BuildIndex();
  return space;
}

void VectorSpace::BuildIndex() {
  index_.clear();
  index_.reserve(keys_.size());
  for (size_t i = 0; i < keys_.size(); ++i) {
    if (!index_.emplace(keys_[i].packed(), static_cast<uint32_t>(i)).second) {
      throw ValidationError("duplicate vocabulary key");
    }
  }
}

std::optional<uint32_t> VectorSpace::IndexOf(FeatureKey key) const {
  auto it = index_.find(key.packed());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVector VectorSpace::Transform(const FeatureSequence& seq,
                                    size_t* truncated) const {
  std::vector<FeatureKey> keys;
  CollectKeys(kind_, seq.literals, max_len_, &keys, truncated);
  std::vector<uint32_t> cols;
  cols.reserve(keys.size());
  for (const auto& k : keys) {
    if (auto idx = IndexOf(k)) cols.push_back(*idx);
  }
  std::sort(cols.begin(), cols.end());
  SparseVector v;
  for (size_t i = 0; i < cols.size();) {
    size_t j = i;
    while (j < cols.size() && cols[j] == cols[i]) ++j;
    v.indices.push_back(cols[i]);
    v.values.push_back(kind_ == ReprKind::kLPS ? 1.0 : static_cast<double>(j - i));
    i = j;
  }
  return v;
}

nlohmann::json VectorSpace::ToJson() const {
  nlohmann::json vocab = nlohmann::json::array();
  for (const auto& k : keys_) vocab.push_back(k.ToJson());
  nlohmann::json j;
  j["format"] = "finsent-vector-space";
  j["version"] = kSpaceFormatVersion;
  j["kind"] = std::string(ReprKindName(kind_));
  j["max_len"] = max_len_;
  j["vocabulary"] = std::move(vocab);
  return j;
}

VectorSpace VectorSpace::FromJson(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kSpaceFormatVersion) {
      throw ParseError("unsupported vector space version " +
                       j.at("version").dump());
    }
    VectorSpace space;
    auto kind = ParseReprKind(j.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown representation kind " + j.at("kind").dump());
    space.kind_ = *kind;
    space.max_len_ = j.at("max_len").get<size_t>();
    for (const auto& k : j.at("vocabulary")) {
      FeatureKey key = FeatureKey::FromJson(k);
      if (key.is_positional() != (space.kind_ == ReprKind::kLPS)) {
        throw ParseError("vocabulary key does not match representation kind");
      }
      if (key.is_positional() && key.position() >= space.max_len_) {
        throw ParseError("LPS key position beyond max_len");
      }
      space.keys_.push_back(key);
    }
    space.BuildIndex();
    return space;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed vector space: ") + e.what());
  }
}

}  // namespace finsent
