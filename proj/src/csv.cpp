// Copyright 2026 The starkprobe Authors
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

#include "stark/csv.hpp"

#include <cmath>
#include <cstdio>

#include "stark/errors.hpp"

namespace stark::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string q = "\"";
    for (char ch : *s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_double(std::get<double>(c));
}

Writer::Writer(const std::filesystem::path& path, std::vector<std::string> extra_columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw Error("csv: cannot open " + path.string() + " for writing");
  std::vector<std::string> header = kKeyColumns;
  header.insert(header.end(), extra_columns.begin(), extra_columns.end());
  columns_ = header.size();
  for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
  out_ << '\n';
}

Writer::~Writer() {
  if (out_.is_open()) out_.close();
}

void Writer::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) {
    throw InvalidArgument("csv: row of " + std::to_string(cells.size()) + " cells for " + std::to_string(columns_) +
                          " columns in " + path_.string());
  }
  for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << format_cell(cells[k]);
  out_ << '\n';
  ++rows_;
}

void Writer::close() {
  out_.close();
  if (out_.fail()) throw Error("csv: write to " + path_.string() + " failed");
}

}  // namespace stark::csv
