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

#include "kfou/expr_json.hpp"

#include "kfou/errors.hpp"

namespace kfou {

using nlohmann::json;

json to_json(const BasisTerm& term) {
  return std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Delta>) {
          return {{"type", "delta"}, {"weight", t.weight}, {"center", t.center}};
        } else if constexpr (std::is_same_v<T, ExpAbs>) {
          return {{"type", "exp_abs"}, {"coeff", t.coeff},   {"power", t.power},
                  {"sign", t.sign},    {"decay", t.decay},   {"center", t.center}};
        } else if constexpr (std::is_same_v<T, Gauss>) {
          return {{"type", "gauss"}, {"coeff", t.coeff}, {"power", t.power},
                  {"quad", t.quad},  {"lin", t.lin},     {"center", t.center}};
        } else if constexpr (std::is_same_v<T, ErfcExp>) {
          return {{"type", "erfc_exp"}, {"coeff", t.coeff},   {"power", t.power},
                  {"rate", t.rate},     {"slope", t.slope},   {"offset", t.offset},
                  {"center", t.center}};
        } else {
          return {{"type", "step"},
                  {"coeff", t.coeff},
                  {"threshold", t.threshold},
                  {"orientation", t.orientation}};
        }
      },
      term);
}

json to_json(const Expr& e) {
  json arr = json::array();
  for (const auto& t : e.terms()) arr.push_back(to_json(t));
  return arr;
}

BasisTerm term_from_json(const json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "delta") return Delta{j.at("weight").get<double>(), j.at("center").get<double>()};
    if (type == "exp_abs") {
      return ExpAbs{j.at("coeff").get<double>(), j.at("power").get<int>(),
                    j.at("sign").get<bool>(), j.at("decay").get<double>(),
                    j.at("center").get<double>()};
    }
    if (type == "gauss") {
      return Gauss{j.at("coeff").get<double>(), j.at("power").get<int>(),
                   j.at("quad").get<double>(), j.at("lin").get<double>(),
                   j.at("center").get<double>()};
    }
    if (type == "erfc_exp") {
      return ErfcExp{j.at("coeff").get<double>(), j.at("power").get<int>(),
                     j.at("rate").get<double>(),  j.at("slope").get<double>(),
                     j.at("offset").get<double>(), j.at("center").get<double>()};
    }
    if (type == "step") {
      return Step{j.at("coeff").get<double>(), j.at("threshold").get<double>(),
                  j.at("orientation").get<int>()};
    }
    throw ConfigError("unknown term type '" + type + "'");
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed term: ") + ex.what());
  }
}

Expr expr_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expression JSON must be an array of terms");
  std::vector<BasisTerm> terms;
  for (const auto& t : j) terms.push_back(term_from_json(t));
  return Expr(std::move(terms));
}

}  // namespace kfou
