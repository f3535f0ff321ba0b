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

#include "finsent/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "finsent/base.h"
#include "finsent/text.h"

namespace finsent {
namespace {

// Reads one record starting at the current position. Returns false at EOF.
bool ReadRecord(std::istream& in, size_t* line, std::vector<std::string>* fields,
                const std::string& source) {
  fields->clear();
  int c = in.peek();
  if (c == EOF) return false;
  const size_t start_line = *line;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  while (true) {
    c = in.get();
    if (c == EOF) {
      if (in_quotes) {
        throw ParseError(source + ":" + std::to_string(start_line) +
                         ": unterminated quoted field");
      }
      fields->push_back(std::move(field));
      return true;
    }
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++*line;
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty() || field_was_quoted) {
        throw ParseError(source + ":" + std::to_string(*line) +
                         ": stray quote inside unquoted field");
      }
      in_quotes = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields->push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (c == '\r') {
      if (in.peek() == '\n') continue;
      ++*line;
      fields->push_back(std::move(field));
      return true;
    } else if (c == '\n') {
      ++*line;
      fields->push_back(std::move(field));
      return true;
    } else {
      field.push_back(static_cast<char>(c));
    }
  }
}

bool IsBlankRecord(const std::vector<std::string>& fields) {
  return fields.size() == 1 && Trim(fields[0]).empty();
}

}  // namespace

CsvTable CsvTable::Read(std::istream& in, std::string_view source_name) {
  CsvTable table;
  table.source_ = std::string(source_name);
  size_t line = 1;
  std::vector<std::string> fields;
  bool have_header = false;
  if (in.peek() == 0xEF) {
    char bom[3] = {};
    in.read(bom, 3);
    if (std::string_view(bom, 3) != "\xEF\xBB\xBF") {
      throw ParseError(table.source_ + ":1: invalid byte order mark");
    }
  }
  while (true) {
    if (!have_header && in.peek() == '#') {
      std::string comment;
      std::getline(in, comment);
      ++line;
      continue;
    }
    const size_t record_line = line;
    if (!ReadRecord(in, &line, &fields, table.source_)) break;
    if (IsBlankRecord(fields)) continue;
    if (!have_header) {
      for (auto& f : fields) f = std::string(Trim(f));
      table.header_ = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != table.header_.size()) {
      throw ParseError(table.source_ + ":" + std::to_string(record_line) +
                       ": expected " + std::to_string(table.header_.size()) +
                       " fields, found " + std::to_string(fields.size()));
    }
    table.rows_.push_back(Row{record_line, fields});
  }
  if (!have_header) {
    throw ParseError(table.source_ + ": missing header row");
  }
  return table;
}

CsvTable CsvTable::ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  return Read(in, path);
}

std::optional<size_t> CsvTable::ColumnIndex(std::string_view name) const {
  for (size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

size_t CsvTable::RequireColumn(std::string_view name) const {
  auto idx = ColumnIndex(name);
  if (!idx) {
    throw ParseError(source_ + ":1: missing required column '" +
                     std::string(name) + "'");
  }
  return *idx;
}

std::string CsvTable::Where(const Row& row) const {
  return source_ + ":" + std::to_string(row.line);
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void CsvWriter::Comment(std::string_view text) { out_ << "# " << text << '\n'; }

void CsvWriter::WriteRow(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << CsvEscape(fields[i]);
  }
  out_ << '\n';
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace finsent
