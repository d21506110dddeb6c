// Copyright 2026 The kfou Authors.
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

#ifndef KFOU_IO_HPP_
#define KFOU_IO_HPP_

#include <Eigen/Core>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace kfou {

// Ordered `# key=value` header rows.
using CsvMeta = std::vector<std::pair<std::string, std::string>>;

struct CsvColumn {
  std::string name;
  Eigen::ArrayXd values;
};

// Shortest round-trip decimal form.
std::string format_double(double v);

// Header rows, then a name row, then one row per grid point.
std::string csv_string(const CsvMeta& meta, const Eigen::ArrayXd& x,
                       const std::vector<CsvColumn>& columns);
void write_csv(const std::string& path, const CsvMeta& meta, const Eigen::ArrayXd& x,
               const std::vector<CsvColumn>& columns);

struct CsvTable {
  CsvMeta meta;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

// Reads files written by write_csv as well as bare numeric two-column files.
CsvTable read_csv(const std::string& path);

// The first two columns of a CSV, as (x, density).
std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(const std::string& path);

void write_single_column(const std::string& path, const std::string& name,
                         const std::vector<double>& values);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace kfou

#endif  // KFOU_IO_HPP_
