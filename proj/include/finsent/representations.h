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

#ifndef FINSENT_REPRESENTATIONS_H_
#define FINSENT_REPRESENTATIONS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "finsent/lexicon.h"
#include "json.hpp"

namespace finsent {

// LPS: positional one-hot over (position, literal) pairs.
// UBT: term frequencies of literal uni-, bi- and tri-grams.
enum class ReprKind : uint8_t { kLPS, kUBT };

std::string_view ReprKindName(ReprKind k);
std::optional<ReprKind> ParseReprKind(std::string_view name);

// Packed vocabulary key. UBT keys hold the n-gram length in bits 12..15 and
// up to three 4-bit literals; LPS keys set bit 32 and hold position << 4 |
// literal. Packed order is the column order of a fitted space.
class FeatureKey {
 public:
  static FeatureKey Ngram(std::span<const FeatureClass> literals);
  static FeatureKey Positional(uint32_t position, FeatureClass literal);

  bool is_positional() const { return (packed_ >> 32) != 0; }
  uint32_t position() const;
  std::vector<FeatureClass> literals() const;
  uint64_t packed() const { return packed_; }

  nlohmann::json ToJson() const;
  static FeatureKey FromJson(const nlohmann::json& j);

  auto operator<=>(const FeatureKey&) const = default;

 private:
  explicit FeatureKey(uint64_t packed) : packed_(packed) {}
  uint64_t packed_ = 0;
};

// Indices strictly increasing; values strictly positive.
struct SparseVector {
  std::vector<uint32_t> indices;
  std::vector<double> values;

  size_t nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  bool operator==(const SparseVector&) const = default;
};

class VectorSpace {
 public:
  VectorSpace() = default;

  // Throws ComputeError on an empty corpus.
  static VectorSpace Fit(ReprKind kind, std::span<const FeatureSequence> corpus);

  // Unseen keys are dropped. For LPS, positions >= max_len are cut and
  // counted into *truncated when given.
  SparseVector Transform(const FeatureSequence& seq,
                         size_t* truncated = nullptr) const;

  ReprKind kind() const { return kind_; }
  size_t dimension() const { return keys_.size(); }
  size_t max_len() const { return max_len_; }
  const std::vector<FeatureKey>& keys() const { return keys_; }
  std::optional<uint32_t> IndexOf(FeatureKey key) const;

  nlohmann::json ToJson() const;
  static VectorSpace FromJson(const nlohmann::json& j);

 private:
  void BuildIndex();

  ReprKind kind_ = ReprKind::kUBT;
  size_t max_len_ = 0;
  std::vector<FeatureKey> keys_;
  std::unordered_map<uint64_t, uint32_t> index_;
};

inline constexpr int kSpaceFormatVersion = 1;

}  // namespace finsent

#endif  // FINSENT_REPRESENTATIONS_H_
