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

#ifndef FINSENT_CSV_H_
#define FINSENT_CSV_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace finsent {

// Comma-separated, double-quote escaped, header row mandatory. Lines that
// begin with '#' before the header are treated as comments (run manifests).
class CsvTable {
 public:
  struct Row {
    size_t line = 0;  // 1-based line number of the record start
    std::vector<std::string> fields;
  };

  static CsvTable Read(std::istream& in, std::string_view source_name);
  static CsvTable ReadFile(const std::string& path);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& source() const { return source_; }

  std::optional<size_t> ColumnIndex(std::string_view name) const;
  // Throws ParseError naming the source when the column is missing.
  size_t RequireColumn(std::string_view name) const;

  // "source:line: message"
  std::string Where(const Row& row) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void Comment(std::string_view text);
  void WriteRow(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::string CsvEscape(std::string_view field);

// Shortest round-trippable decimal form, fixed formatting for small
// magnitudes. Output is locale independent.
std::string FormatDouble(double v);

}  // namespace finsent

#endif  // FINSENT_CSV_H_
