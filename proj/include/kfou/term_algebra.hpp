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

#ifndef KFOU_TERM_ALGEBRA_HPP_
#define KFOU_TERM_ALGEBRA_HPP_

#include <Eigen/Core>
#include <string>
#include <variant>
#include <vector>

namespace kfou {

// weight * delta(x - center)
struct Delta {
  double weight = 0.0;
  double center = 0.0;

  bool operator==(const Delta&) const = default;
};

// coeff * s^power * sign(s)^{sign ? 1 : 0} * exp(-decay |s|),  s = x - center
struct ExpAbs {
  double coeff = 0.0;
  int power = 0;
  bool sign = false;
  double decay = 1.0;
  double center = 0.0;

  bool operator==(const ExpAbs&) const = default;
};

// coeff * s^power * exp(quad s^2 + lin s),  s = x - center, quad < 0
struct Gauss {
  double coeff = 0.0;
  int power = 0;
  double quad = -1.0;
  double lin = 0.0;
  double center = 0.0;

  bool operator==(const Gauss&) const = default;
};

// coeff * s^power * exp(rate s) * erfc(slope s + offset),  s = x - center
//
// Stored with erfc rather than Erf: the Erf form of a Gaussian-smoothed
// Laplace profile is a difference of large exponentials, while the erfc form
// is a sum of bounded pieces that can be evaluated through erfcx.
struct ErfcExp {
  double coeff = 0.0;
  int power = 0;
  double rate = 0.0;
  double slope = 1.0;
  double offset = 0.0;
  double center = 0.0;

  bool operator==(const ErfcExp&) const = default;
};

// coeff * Theta(orientation * (x - threshold)), orientation = +1 or -1.
// Theta(0) = 1/2.
struct Step {
  double coeff = 0.0;
  double threshold = 0.0;
  int orientation = 1;

  bool operator==(const Step&) const = default;
};

using BasisTerm = std::variant<Delta, ExpAbs, Gauss, ErfcExp, Step>;

double term_coeff(const BasisTerm& term);
BasisTerm with_coeff(const BasisTerm& term, double coeff);

// Formal linear combination of basis terms, kept in canonical form: sorted,
// identical terms merged, exact zeros dropped.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::vector<BasisTerm> terms);
  Expr(std::initializer_list<BasisTerm> terms);

  const std::vector<BasisTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Expr regular_part() const;
  std::vector<Delta> atoms() const;
  bool has_steps() const;
  bool has_atoms() const { return !atoms().empty(); }

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(double scale);

  bool operator==(const Expr&) const = default;

 private:
  void canonicalize();
  std::vector<BasisTerm> terms_;
};

Expr operator+(Expr a, const Expr& b);
Expr operator-(Expr a, const Expr& b);
Expr operator*(double scale, Expr e);
Expr operator*(Expr e, double scale);

// Distributional derivative. Throws DomainError on Delta or Step terms.
Expr differentiate(const Expr& e);

// evaluate(shift(e, c), x) == evaluate(e, x - c)
Expr shift(const Expr& e, double c);

// Convolution with the centered Gaussian of variance v > 0.
// Accepts Delta, ExpAbs and Gauss terms.
Expr convolve_gaussian(const Expr& e, double variance);

// Decaying solution Q of k^2 Q - Q'' = e, for e built from Delta terms and
// ExpAbs terms of decay k.
Expr screened_inverse(const Expr& e, double k);

// Convolution with the Laplace density (k/2) exp(-k|x|); same domain as
// screened_inverse.
Expr convolve_laplace(const Expr& e, double k);

struct Evaluation {
  double regular = 0.0;
  std::vector<Delta> atoms;
};

double evaluate_term(const BasisTerm& term, double x);
double evaluate_regular(const Expr& e, double x);
Evaluation evaluate(const Expr& e, double x);
Eigen::ArrayXd evaluate_regular(const Expr& e, const Eigen::ArrayXd& x);

// Integral over the real line, atoms included.
double integrate_line(const Expr& e);

// Integral of x^order * e(x) over the line, order in {0, 1, 2}.
double moment(const Expr& e, int order);

// Integral of e over (-inf, x], atoms at x included.
double cumulative(const Expr& e, double x);

std::string describe(const BasisTerm& term);
std::string describe(const Expr& e);

}  // namespace kfou

#endif  // KFOU_TERM_ALGEBRA_HPP_
