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

#include "kfou/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kfou/errors.hpp"

namespace kfou {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  return out;
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  if (*b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  return ec == std::errc() && ptr == e;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_string(const CsvMeta& meta, const Eigen::ArrayXd& x,
                       const std::vector<CsvColumn>& columns) {
  std::ostringstream out;
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
  out << 'x';
  for (const auto& c : columns) {
    if (c.values.size() != x.size()) throw Error("column '" + c.name + "' has wrong length");
    out << ',' << c.name;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out << format_double(x(i));
    for (const auto& c : columns) out << ',' << format_double(c.values(i));
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::string& path, const CsvMeta& meta, const Eigen::ArrayXd& x,
               const std::vector<CsvColumn>& columns) {
  write_text(path, csv_string(meta, x, columns));
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos)
        table.meta.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
      continue;
    }
    const auto cells = split(t, ',');
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t i = 0; i < cells.size(); ++i) numeric = numeric && parse_number(cells[i], row[i]);
    if (!numeric) {
      if (table.names.empty() && table.columns.empty()) {
        table.names = cells;
        continue;
      }
      throw ConfigError(path + ":" + std::to_string(lineno) + ": non-numeric row");
    }
    if (table.columns.empty()) table.columns.resize(row.size());
    if (row.size() != table.columns.size())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(table.columns.size()) + " columns");
    for (std::size_t i = 0; i < row.size(); ++i) table.columns[i].push_back(row[i]);
  }
  return table;
}

std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.columns.size() < 2) throw ConfigError(path + ": need at least two columns (x, density)");
  return {std::move(t.columns[0]), std::move(t.columns[1])};
}

void write_single_column(const std::string& path, const std::string& name,
                         const std::vector<double>& values) {
  std::ostringstream out;
  out << name << '\n';
  for (double v : values) out << format_double(v) << '\n';
  write_text(path, out.str());
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_json(const std::string& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace kfou
