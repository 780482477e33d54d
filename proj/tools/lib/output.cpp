// Copyright 2026 The schrodsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "experiments.hpp"

namespace schrodsim::cli {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ParameterError("CsvTable: empty header");
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) {
    throw DimensionError("CsvTable: row has " + std::to_string(row.size()) + " values, header has " +
                         std::to_string(header_.size()));
  }
  rows_.push_back(row);
}

std::string CsvTable::render(const std::vector<std::string>& comments) const {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t j = 0; j < header_.size(); ++j) out << (j ? "," : "") << header_[j];
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = 0; j < header_.size(); ++j) {
      const double v = rows_[i][j];
      if (!std::isfinite(v)) {
        throw NumericalError("CsvTable: non-finite value in column '" + header_[j] + "', row " +
                                 std::to_string(i),
                             v);
      }
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path, const std::vector<std::string>& comments) const {
  const std::string text = render(comments);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

}  // namespace schrodsim::cli
