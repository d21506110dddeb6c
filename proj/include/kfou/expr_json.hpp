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

#ifndef KFOU_EXPR_JSON_HPP_
#define KFOU_EXPR_JSON_HPP_

#include <json.hpp>

#include "kfou/term_algebra.hpp"

namespace kfou {

// Expr <-> JSON. The shape is an array of tagged objects:
//   {"type": "delta",    "weight": w, "center": c}
//   {"type": "exp_abs",  "coeff": a, "power": m, "sign": b, "decay": k, "center": c}
//   {"type": "gauss",    "coeff": a, "power": m, "quad": q, "lin": l, "center": c}
//   {"type": "erfc_exp", "coeff": a, "power": m, "rate": r, "slope": p, "offset": o, "center": c}
//   {"type": "step",     "coeff": a, "threshold": x0, "orientation": 1 | -1}
nlohmann::json to_json(const BasisTerm& term);
nlohmann::json to_json(const Expr& e);
BasisTerm term_from_json(const nlohmann::json& j);
Expr expr_from_json(const nlohmann::json& j);

}  // namespace kfou

#endif  // KFOU_EXPR_JSON_HPP_
