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

#ifndef KFOU_SRC_POLY_HPP_
#define KFOU_SRC_POLY_HPP_

#include <cstddef>
#include <vector>

namespace kfou::detail {

// Dense polynomial, coefficient i multiplies s^i.
using Poly = std::vector<double>;

inline double binomial(int n, int j) {
  if (j < 0 || j > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// (n)!! with (-1)!! = 0!! = 1
inline double double_factorial(int n) {
  double r = 1.0;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline Poly scale(Poly p, double c) {
  for (double& v : p) v *= c;
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<double>(i);
  return r;
}

// Antiderivative vanishing at 0.
inline Poly antiderivative(const Poly& p) {
  Poly r(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i] / static_cast<double>(i + 1);
  return r;
}

inline double eval(const Poly& p, double s) {
  double r = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * s + p[i];
  return r;
}

// (s + d)^m expanded in s.
inline Poly binomial_power(double d, int m) {
  Poly r(m + 1, 0.0);
  for (int i = 0; i <= m; ++i) {
    double dp = 1.0;
    for (int j = 0; j < m - i; ++j) dp *= d;
    r[i] = binomial(m, i) * dp;
  }
  return r;
}

// p(c s + d) expanded in s.
inline Poly compose_affine(const Poly& p, double c, double d) {
  Poly r;
  Poly lin{d, c};
  Poly power{1.0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    r = add(r, scale(power, p[i]));
    power = mul(power, lin);
  }
  return r;
}

}  // namespace kfou::detail

#endif  // KFOU_SRC_POLY_HPP_
