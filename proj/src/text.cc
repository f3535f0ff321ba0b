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

#include "finsent/text.h"

#include "finsent/base.h"

namespace finsent {

std::string_view SentimentName(Sentiment s) {
  switch (s) {
    case Sentiment::kPositive: return "positive";
    case Sentiment::kNegative: return "negative";
    case Sentiment::kNeutral: return "neutral";
  }
  return "unknown";
}

std::optional<Sentiment> ParseSentiment(std::string_view name) {
  const std::string folded = FoldCase(Trim(name));
  if (folded == "positive") return Sentiment::kPositive;
  if (folded == "negative") return Sentiment::kNegative;
  if (folded == "neutral") return Sentiment::kNeutral;
  return std::nullopt;
}

std::string FoldCase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = FoldAscii(c);
  return out;
}

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const size_t b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' ||
                            s[i] == '\r')) {
      ++i;
    }
    size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\n' ||
                             s[j] == '\r')) {
      ++j;
    }
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> NormalizeTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (IsWordByte(c)) {
      current.push_back(FoldAscii(c));
      continue;
    }
    const bool between_digits = i > 0 && i + 1 < text.size() &&
                                IsDigit(text[i - 1]) && IsDigit(text[i + 1]);
    if (between_digits && c == '.') {
      current.push_back('.');
    } else if (between_digits && c == ',') {
      // digit grouping, e.g. 1,200
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace finsent
