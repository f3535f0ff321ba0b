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

#ifndef FINSENT_TEXT_H_
#define FINSENT_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace finsent {

// Bytes >= 0x80 count as word characters so UTF-8 letters never split a
// token.
inline bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u >= 0x80;
}

inline bool IsDigit(char c) { return c >= '0' && c <= '9'; }

inline char FoldAscii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string FoldCase(std::string_view s);
std::string_view Trim(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Punctuation and special-character removal followed by whitespace
// tokenization. Output tokens are ASCII-lowercased. A '.' between two digits
// is kept (decimal point) and a ',' between two digits is dropped (digit
// grouping); every other non-word byte separates tokens.
std::vector<std::string> NormalizeTokens(std::string_view text);

}  // namespace finsent

#endif  // FINSENT_TEXT_H_
