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

#pragma once

// Minimal CSV writer: snake_case header, doubles at 17 significant digits.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace stark::csv {

using Cell = std::variant<std::string, std::int64_t, double>;

std::string format_double(double v);
std::string format_cell(const Cell& c);

// Every experiment row starts with this tuple.
inline const std::vector<std::string> kKeyColumns = {"formalism", "size", "hopping", "h", "gamma", "t", "seed"};

class Writer {
 public:
  Writer(const std::filesystem::path& path, std::vector<std::string> extra_columns);
  ~Writer();

  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  // Row length must match the header; throws InvalidArgument otherwise.
  void row(const std::vector<Cell>& cells);
  void close();
  std::size_t rows() const { return rows_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace stark::csv
