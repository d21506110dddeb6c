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

#ifndef KFOU_VALIDATION_HPP_
#define KFOU_VALIDATION_HPP_

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace kfou {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

enum class Suite { Quick, Full };

Suite parse_suite(const std::string& name);
std::string to_string(Suite s);

struct ValidationOptions {
  Suite suite = Suite::Quick;
  std::uint64_t seed = 20260101;
  int threads = 1;
  // Empty runs every check of the suite.
  std::vector<std::string> only;
};

// Names of all checks in run order.
std::vector<std::string> check_names(Suite suite);

ValidationReport run_validation(const ValidationOptions& opts);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace kfou

#endif  // KFOU_VALIDATION_HPP_
