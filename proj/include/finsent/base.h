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

#ifndef FINSENT_BASE_H_
#define FINSENT_BASE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace finsent {

// Malformed input document. The message carries the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a data invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ill-posed computation (degenerate training data, singular design, short
// samples).
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sentiment classes in canonical order. The order doubles as the argmax
// tie-break and as the row order of model weights.
enum class Sentiment : uint8_t { kPositive = 0, kNegative = 1, kNeutral = 2 };

inline constexpr int kNumSentiments = 3;
inline constexpr std::array<Sentiment, kNumSentiments> kAllSentiments = {
    Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral};

std::string_view SentimentName(Sentiment s);
std::optional<Sentiment> ParseSentiment(std::string_view name);

inline constexpr int SentimentIndex(Sentiment s) { return static_cast<int>(s); }

inline constexpr std::string_view kToolName = "finsent";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace finsent

#endif  // FINSENT_BASE_H_
