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

#include "kfou/term_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "kfou/errors.hpp"
#include "kfou/special.hpp"
#include "poly.hpp"

namespace kfou {

using detail::Poly;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double ipow(double s, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= s;
  return r;
}

// Sort key over everything except the coefficient.
auto key(const Delta& t) { return std::make_tuple(t.center); }
auto key(const ExpAbs& t) { return std::make_tuple(t.center, t.decay, t.power, t.sign); }
auto key(const Gauss& t) { return std::make_tuple(t.center, t.quad, t.lin, t.power); }
auto key(const ErfcExp& t) {
  return std::make_tuple(t.center, t.rate, t.slope, t.offset, t.power);
}
auto key(const Step& t) { return std::make_tuple(t.threshold, t.orientation); }

bool key_less(const BasisTerm& a, const BasisTerm& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  return std::visit(
      [&](const auto& ta) {
        using T = std::decay_t<decltype(ta)>;
        return key(ta) < key(std::get<T>(b));
      },
      a);
}

bool key_equal(const BasisTerm& a, const BasisTerm& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& ta) {
        using T = std::decay_t<decltype(ta)>;
        return key(ta) == key(std::get<T>(b));
      },
      a);
}

void push_poly_gauss(std::vector<BasisTerm>& out, const Poly& p, double scale, double quad,
                     double lin, double center) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    out.push_back(Gauss{scale * p[i], static_cast<int>(i), quad, lin, center});
  }
}

// Joint evaluation of exp(rate s) erfc(z), z = slope s + offset.
double exp_erfc(double rate, double s, double z) {
  if (z > 0.0) return erfcx(z) * std::exp(rate * s - z * z);
  return std::exp(rate * s) * std::erfc(z);
}

// e^{b^2/(4P)} * integral of w^j e^{-P w^2} over the line, j = 0..n
// combined with the binomial shift: integral of s^n e^{-P s^2 + b s}.
double gauss_power_integral(int n, double quad, double lin) {
  const double P = -quad;
  const double mu = lin / (2.0 * P);
  const double pref = std::exp(lin * lin / (4.0 * P));
  double total = 0.0;
  for (int j = 0; j <= n; j += 2) {
    const double mj = std::sqrt(std::numbers::pi / P) * detail::double_factorial(j - 1) /
                      std::pow(2.0 * P, 0.5 * j);
    total += detail::binomial(n, j) * ipow(mu, n - j) * mj;
  }
  return pref * total;
}

// Integral of s^n e^{-P s^2 + b s} over (-inf, X].
double gauss_power_partial(int n, double quad, double lin, double X) {
  const double P = -quad;
  const double mu = lin / (2.0 * P);
  const double Xp = X - mu;
  const double g = std::exp(lin * X - P * X * X);
  const double z = -std::sqrt(P) * Xp;
  std::vector<double> K(n + 1, 0.0);
  const double half_norm = 0.5 * std::sqrt(std::numbers::pi / P);
  K[0] = z > 0.0 ? half_norm * erfcx(z) * g
                 : half_norm * std::erfc(z) * std::exp(lin * lin / (4.0 * P));
  if (n >= 1) K[1] = -g / (2.0 * P);
  for (int i = 2; i <= n; ++i) {
    K[i] = -ipow(Xp, i - 1) * g / (2.0 * P) + (i - 1) / (2.0 * P) * K[i - 2];
  }
  double total = 0.0;
  for (int i = 0; i <= n; ++i) total += detail::binomial(n, i) * ipow(mu, n - i) * K[i];
  return total;
}

// Antiderivative of s^n e^{b s} divided by e^{b s}.
Poly exp_antiderivative_poly(int n, double b) {
  Poly w(n + 1, 0.0);
  double falling = 1.0;
  double bp = b;
  for (int i = 0; i <= n; ++i) {
    w[n - i] = ((i % 2) ? -1.0 : 1.0) * falling / bp;
    falling *= (n - i);
    bp *= b;
  }
  return w;
}

void require_erfc_integrable(const ErfcExp& t) {
  if (t.rate == 0.0 || (t.rate > 0.0) != (t.slope > 0.0)) {
    throw DomainError("erfc term is not integrable over the line");
  }
}

// Integral of s^extra * term(s) over the line in the term's own frame.
double power_integral(const BasisTerm& term, int extra) {
  return std::visit(
      [extra](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Delta>) {
          return extra == 0 ? t.weight : 0.0;
        } else if constexpr (std::is_same_v<T, ExpAbs>) {
          const int n = t.power + extra;
          if ((n + (t.sign ? 1 : 0)) % 2 != 0) return 0.0;
          return t.coeff * 2.0 * detail::factorial(n) / std::pow(t.decay, n + 1);
        } else if constexpr (std::is_same_v<T, Gauss>) {
          return t.coeff * gauss_power_integral(t.power + extra, t.quad, t.lin);
        } else if constexpr (std::is_same_v<T, ErfcExp>) {
          require_erfc_integrable(t);
          const int n = t.power + extra;
          const Poly w = exp_antiderivative_poly(n, t.rate);
          const double quad = -t.slope * t.slope;
          const double lin = t.rate - 2.0 * t.slope * t.offset;
          const double pref = 2.0 * t.slope / kSqrtPi * std::exp(-t.offset * t.offset);
          double total = 0.0;
          for (std::size_t i = 0; i < w.size(); ++i) {
            total += w[i] * gauss_power_integral(static_cast<int>(i), quad, lin);
          }
          return t.coeff * pref * total;
        } else {
          throw DomainError("step terms are integrated collectively");
        }
      },
      term);
}

double term_center(const BasisTerm& term) {
  return std::visit(
      [](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Step>) {
          return t.threshold;
        } else {
          return t.center;
        }
      },
      term);
}

void check_step_balance(const Expr& e) {
  double net[2] = {0.0, 0.0};
  double scale[2] = {0.0, 0.0};
  for (const auto& term : e.terms()) {
    if (const auto* s = std::get_if<Step>(&term)) {
      const int idx = s->orientation > 0 ? 0 : 1;
      net[idx] += s->coeff;
      scale[idx] += std::abs(s->coeff);
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (std::abs(net[i]) > 1e-12 * scale[i]) {
      throw DomainError("step terms do not combine into an integrable function");
    }
  }
}

}  // namespace

double term_coeff(const BasisTerm& term) {
  return std::visit(
      [](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Delta>) {
          return t.weight;
        } else {
          return t.coeff;
        }
      },
      term);
}

BasisTerm with_coeff(const BasisTerm& term, double coeff) {
  return std::visit(
      [coeff](auto t) -> BasisTerm {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Delta>) {
          t.weight = coeff;
        } else {
          t.coeff = coeff;
        }
        return t;
      },
      term);
}

Expr::Expr(std::vector<BasisTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

Expr::Expr(std::initializer_list<BasisTerm> terms) : terms_(terms) { canonicalize(); }

void Expr::canonicalize() {
  for (const auto& t : terms_) {
    if (const auto* e = std::get_if<ExpAbs>(&t)) {
      if (!(e->decay > 0.0) || e->power < 0) throw DomainError("invalid ExpAbs term");
    } else if (const auto* g = std::get_if<Gauss>(&t)) {
      if (!(g->quad < 0.0) || g->power < 0) throw DomainError("invalid Gauss term");
    } else if (const auto* r = std::get_if<ErfcExp>(&t)) {
      if (r->power < 0 || r->slope == 0.0) throw DomainError("invalid ErfcExp term");
    } else if (const auto* s = std::get_if<Step>(&t)) {
      if (s->orientation != 1 && s->orientation != -1) throw DomainError("invalid Step term");
    }
  }
  std::stable_sort(terms_.begin(), terms_.end(), key_less);
  std::vector<BasisTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && key_equal(merged.back(), t)) {
      merged.back() = with_coeff(merged.back(), term_coeff(merged.back()) + term_coeff(t));
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const BasisTerm& t) { return term_coeff(t) == 0.0; });
  terms_ = std::move(merged);
}

Expr Expr::regular_part() const {
  std::vector<BasisTerm> out;
  for (const auto& t : terms_)
    if (!std::holds_alternative<Delta>(t)) out.push_back(t);
  return Expr(std::move(out));
}

std::vector<Delta> Expr::atoms() const {
  std::vector<Delta> out;
  for (const auto& t : terms_)
    if (const auto* d = std::get_if<Delta>(&t)) out.push_back(*d);
  return out;
}

bool Expr::has_steps() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const BasisTerm& t) { return std::holds_alternative<Step>(t); });
}

Expr& Expr::operator+=(const Expr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

Expr& Expr::operator-=(const Expr& other) {
  for (const auto& t : other.terms_) terms_.push_back(with_coeff(t, -term_coeff(t)));
  canonicalize();
  return *this;
}

Expr& Expr::operator*=(double scale) {
  for (auto& t : terms_) t = with_coeff(t, term_coeff(t) * scale);
  canonicalize();
  return *this;
}

Expr operator+(Expr a, const Expr& b) { return a += b; }
Expr operator-(Expr a, const Expr& b) { return a -= b; }
Expr operator*(double scale, Expr e) { return e *= scale; }
Expr operator*(Expr e, double scale) { return e *= scale; }

Expr differentiate(const Expr& e) {
  std::vector<BasisTerm> out;
  for (const auto& term : e.terms()) {
    std::visit(
        [&out](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, Delta>) {
            throw DomainError("derivative of a delta term is not supported");
          } else if constexpr (std::is_same_v<T, Step>) {
            throw DomainError("derivative of a step term is not supported");
          } else if constexpr (std::is_same_v<T, ExpAbs>) {
            if (t.power > 0) {
              out.push_back(ExpAbs{t.coeff * t.power, t.power - 1, t.sign, t.decay, t.center});
            }
            out.push_back(ExpAbs{-t.decay * t.coeff, t.power, !t.sign, t.decay, t.center});
            if (t.sign && t.power == 0) out.push_back(Delta{2.0 * t.coeff, t.center});
          } else if constexpr (std::is_same_v<T, Gauss>) {
            if (t.power > 0) {
              out.push_back(Gauss{t.coeff * t.power, t.power - 1, t.quad, t.lin, t.center});
            }
            out.push_back(Gauss{2.0 * t.quad * t.coeff, t.power + 1, t.quad, t.lin, t.center});
            if (t.lin != 0.0) {
              out.push_back(Gauss{t.lin * t.coeff, t.power, t.quad, t.lin, t.center});
            }
          } else {
            if (t.power > 0) {
              out.push_back(ErfcExp{t.coeff * t.power, t.power - 1, t.rate, t.slope, t.offset,
                                    t.center});
            }
            if (t.rate != 0.0) {
              out.push_back(
                  ErfcExp{t.coeff * t.rate, t.power, t.rate, t.slope, t.offset, t.center});
            }
            const double g = -2.0 * t.slope / kSqrtPi * std::exp(-t.offset * t.offset);
            out.push_back(Gauss{t.coeff * g, t.power, -t.slope * t.slope,
                                t.rate - 2.0 * t.slope * t.offset, t.center});
          }
        },
        term);
  }
  return Expr(std::move(out));
}

Expr shift(const Expr& e, double c) {
  std::vector<BasisTerm> out;
  out.reserve(e.size());
  for (const auto& term : e.terms()) {
    out.push_back(std::visit(
        [c](auto t) -> BasisTerm {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, Step>) {
            t.threshold += c;
          } else {
            t.center += c;
          }
          return t;
        },
        term));
  }
  return Expr(std::move(out));
}

Expr convolve_gaussian(const Expr& e, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("Gaussian variance must be positive");
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * v);
  std::vector<BasisTerm> out;
  for (const auto& term : e.terms()) {
    if (const auto* d = std::get_if<Delta>(&term)) {
      out.push_back(Gauss{d->weight * norm, 0, -1.0 / (2.0 * v), 0.0, d->center});
    } else if (const auto* g = std::get_if<Gauss>(&term)) {
      const double a = g->quad;
      const double b = g->lin;
      const double P = 1.0 / (2.0 * v) - a;
      const double quad = a / (2.0 * P * v);
      const double lin = b / (2.0 * P * v);
      const double pref = g->coeff * norm * std::exp(b * b / (4.0 * P));
      // c(s) = b/(2P) + s/(2Pv); sum_j C(m,j) M_j c^{m-j}
      Poly poly;
      for (int j = 0; j <= g->power; j += 2) {
        const double mj = std::sqrt(std::numbers::pi / P) * detail::double_factorial(j - 1) /
                          std::pow(2.0 * P, 0.5 * j);
        Poly cp{1.0};
        for (int i = 0; i < g->power - j; ++i) {
          cp = detail::mul(cp, Poly{b / (2.0 * P), 1.0 / (2.0 * P * v)});
        }
        poly = detail::add(poly, detail::scale(cp, detail::binomial(g->power, j) * mj));
      }
      push_poly_gauss(out, poly, pref, quad, lin, g->center);
    } else if (const auto* x = std::get_if<ExpAbs>(&term)) {
      const int m = x->power;
      const double k = x->decay;
      // Polynomials in mu = s - k v, then re-expanded in s.
      Poly pe_mu;
      Poly pg_mu;
      std::vector<Poly> g(m + 1);
      // g_j as polynomials in a = -mu.
      for (int j = 0; j <= m; ++j) {
        if (j == 0) {
          g[j] = {};
        } else if (j == 1) {
          g[j] = {v};
        } else {
          Poly aj(j, 0.0);
          aj[j - 1] = v;
          g[j] = detail::add(aj, detail::scale(g[j - 2], (j - 1) * v));
        }
      }
      for (int j = 0; j <= m; ++j) {
        Poly mono(m - j + 1, 0.0);
        mono[m - j] = detail::binomial(m, j);
        if (j % 2 == 0) {
          const double ej = detail::double_factorial(j - 1) * std::pow(v, 0.5 * j);
          pe_mu = detail::add(pe_mu, detail::scale(mono, ej));
        }
        pg_mu = detail::add(pg_mu, detail::mul(mono, detail::compose_affine(g[j], -1.0, 0.0)));
      }
      const Poly pe = detail::compose_affine(pe_mu, 1.0, -k * v);
      const Poly pg = detail::compose_affine(pg_mu, 1.0, -k * v);
      const double eh = 0.5 * std::exp(0.5 * k * k * v);
      const double slope = 1.0 / std::sqrt(2.0 * v);
      const double offset = k * std::sqrt(0.5 * v);
      const double left_sign = ((m % 2) ? -1.0 : 1.0) * (x->sign ? -1.0 : 1.0);
      for (std::size_t i = 0; i < pe.size(); ++i) {
        if (pe[i] == 0.0) continue;
        const double c = x->coeff * eh * pe[i];
        const double flip = (i % 2) ? -1.0 : 1.0;
        out.push_back(ErfcExp{c, static_cast<int>(i), -k, -slope, offset, x->center});
        out.push_back(
            ErfcExp{c * left_sign * flip, static_cast<int>(i), k, slope, offset, x->center});
      }
      for (std::size_t i = 0; i < pg.size(); ++i) {
        if (pg[i] == 0.0) continue;
        const double c = x->coeff * norm * pg[i];
        const double flip = (i % 2) ? -1.0 : 1.0;
        out.push_back(Gauss{c * (1.0 + left_sign * flip), static_cast<int>(i),
                            -1.0 / (2.0 * v), 0.0, x->center});
      }
    } else {
      throw DomainError("Gaussian convolution supports delta, ExpAbs and Gauss terms only");
    }
  }
  return Expr(std::move(out));
}

Expr screened_inverse(const Expr& e, double k) {
  if (!(k > 0.0)) throw DomainError("screening constant must be positive");
  struct Pieces {
    Poly plus;
    Poly minus;
    double weight = 0.0;
  };
  std::map<double, Pieces> by_center;
  for (const auto& term : e.terms()) {
    if (const auto* d = std::get_if<Delta>(&term)) {
      by_center[d->center].weight += d->weight;
    } else if (const auto* x = std::get_if<ExpAbs>(&term)) {
      if (std::abs(x->decay - k) > 1e-14 * k) {
        throw DomainError("screened inverse needs ExpAbs terms with matching decay");
      }
      Poly mono(x->power + 1, 0.0);
      mono[x->power] = x->coeff;
      auto& p = by_center[x->center];
      p.plus = detail::add(p.plus, mono);
      p.minus = detail::add(p.minus, detail::scale(mono, x->sign ? -1.0 : 1.0));
    } else {
      throw DomainError("screened inverse supports delta and ExpAbs terms only");
    }
  }
  const double two_k = 2.0 * k;
  std::vector<BasisTerm> out;
  for (const auto& [center, pc] : by_center) {
    Poly rho_plus;
    Poly rho_minus;
    Poly dp = pc.plus;
    Poly dm = pc.minus;
    double denom = two_k;
    for (int j = 0; !dp.empty() || !dm.empty(); ++j) {
      rho_plus = detail::add(rho_plus, detail::scale(dp, 1.0 / denom));
      rho_minus = detail::add(rho_minus, detail::scale(dm, ((j % 2) ? 1.0 : -1.0) / denom));
      dp = detail::derivative(dp);
      dm = detail::derivative(dm);
      denom *= two_k;
    }
    const double r0p = rho_plus.empty() ? 0.0 : rho_plus[0];
    const double r0m = rho_minus.empty() ? 0.0 : rho_minus[0];
    const double c0 = (r0p - r0m + pc.weight) / two_k;
    Poly a = detail::antiderivative(rho_plus);
    Poly b = detail::antiderivative(rho_minus);
    a[0] += c0;
    b[0] += c0;
    const std::size_t len = std::max(a.size(), b.size());
    a.resize(len, 0.0);
    b.resize(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      const double even = 0.5 * (a[i] + b[i]);
      const double odd = 0.5 * (a[i] - b[i]);
      if (even != 0.0) out.push_back(ExpAbs{even, static_cast<int>(i), false, k, center});
      if (odd != 0.0) out.push_back(ExpAbs{odd, static_cast<int>(i), true, k, center});
    }
  }
  return Expr(std::move(out));
}

Expr convolve_laplace(const Expr& e, double k) { return k * k * screened_inverse(e, k); }

double evaluate_term(const BasisTerm& term, double x) {
  return std::visit(
      [x](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Delta>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ExpAbs>) {
          const double s = x - t.center;
          double v = t.coeff * ipow(s, t.power) * std::exp(-t.decay * std::abs(s));
          if (t.sign) v *= (s > 0.0) - (s < 0.0);
          return v;
        } else if constexpr (std::is_same_v<T, Gauss>) {
          const double s = x - t.center;
          return t.coeff * ipow(s, t.power) * std::exp(s * (t.quad * s + t.lin));
        } else if constexpr (std::is_same_v<T, ErfcExp>) {
          const double s = x - t.center;
          return t.coeff * ipow(s, t.power) * exp_erfc(t.rate, s, t.slope * s + t.offset);
        } else {
          const double s = t.orientation * (x - t.threshold);
          return s > 0.0 ? t.coeff : (s == 0.0 ? 0.5 * t.coeff : 0.0);
        }
      },
      term);
}

double evaluate_regular(const Expr& e, double x) {
  double total = 0.0;
  for (const auto& t : e.terms()) total += evaluate_term(t, x);
  return total;
}

Evaluation evaluate(const Expr& e, double x) {
  return Evaluation{evaluate_regular(e, x), e.atoms()};
}

Eigen::ArrayXd evaluate_regular(const Expr& e, const Eigen::ArrayXd& x) {
  Eigen::ArrayXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = evaluate_regular(e, x(i));
  return out;
}

double moment(const Expr& e, int order) {
  if (order < 0 || order > 2) throw UnsupportedError("moments are available for order 0..2");
  check_step_balance(e);
  double total = 0.0;
  for (const auto& term : e.terms()) {
    if (const auto* s = std::get_if<Step>(&term)) {
      total -= s->orientation * s->coeff * ipow(s->threshold, order + 1) / (order + 1);
      continue;
    }
    const double c = term_center(term);
    for (int i = 0; i <= order; ++i) {
      total += detail::binomial(order, i) * ipow(c, order - i) * power_integral(term, i);
    }
  }
  return total;
}

double integrate_line(const Expr& e) { return moment(e, 0); }

double cumulative(const Expr& e, double x) {
  check_step_balance(e);
  double total = 0.0;
  for (const auto& term : e.terms()) {
    total += std::visit(
        [x](const auto& t) -> double {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, Delta>) {
            return t.center <= x ? t.weight : 0.0;
          } else if constexpr (std::is_same_v<T, Step>) {
            if (t.orientation > 0) return t.coeff * std::max(0.0, x - t.threshold);
            return t.coeff * std::min(x, t.threshold);
          } else if constexpr (std::is_same_v<T, ExpAbs>) {
            const double X = x - t.center;
            const int m = t.power;
            const double k = t.decay;
            // upper tail of u^m e^{-k u} from Y to infinity
            auto upper = [m, k](double Y) {
              double sum = 0.0;
              double term = 1.0 / std::pow(k, m + 1) * detail::factorial(m);
              // term_i = m!/i! Y^i / k^{m-i+1}
              for (int i = 0; i <= m; ++i) {
                sum += term;
                term *= Y * k / (i + 1);
              }
              return std::exp(-k * Y) * sum;
            };
            const double left_sign = ((m + (t.sign ? 1 : 0)) % 2) ? -1.0 : 1.0;
            if (X < 0.0) return t.coeff * left_sign * upper(-X);
            return t.coeff * (left_sign * upper(0.0) + upper(0.0) - upper(X));
          } else if constexpr (std::is_same_v<T, Gauss>) {
            return t.coeff * gauss_power_partial(t.power, t.quad, t.lin, x - t.center);
          } else {
            require_erfc_integrable(t);
            const double X = x - t.center;
            const Poly w = exp_antiderivative_poly(t.power, t.rate);
            const double boundary =
                detail::eval(w, X) * exp_erfc(t.rate, X, t.slope * X + t.offset);
            const double quad = -t.slope * t.slope;
            const double lin = t.rate - 2.0 * t.slope * t.offset;
            const double pref = 2.0 * t.slope / kSqrtPi * std::exp(-t.offset * t.offset);
            double inner = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
              inner += w[i] * gauss_power_partial(static_cast<int>(i), quad, lin, X);
            }
            return t.coeff * (boundary + pref * inner);
          }
        },
        term);
  }
  return total;
}

std::string describe(const BasisTerm& term) {
  std::ostringstream os;
  os.precision(10);
  std::visit(
      [&os](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Delta>) {
          os << t.weight << "*delta(x-" << t.center << ")";
        } else if constexpr (std::is_same_v<T, ExpAbs>) {
          os << t.coeff << "*s^" << t.power << (t.sign ? "*sign(s)" : "") << "*exp(-" << t.decay
             << "|s|) [s=x-" << t.center << "]";
        } else if constexpr (std::is_same_v<T, Gauss>) {
          os << t.coeff << "*s^" << t.power << "*exp(" << t.quad << "s^2+" << t.lin
             << "s) [s=x-" << t.center << "]";
        } else if constexpr (std::is_same_v<T, ErfcExp>) {
          os << t.coeff << "*s^" << t.power << "*exp(" << t.rate << "s)*erfc(" << t.slope
             << "s+" << t.offset << ") [s=x-" << t.center << "]";
        } else {
          os << t.coeff << "*Theta(" << (t.orientation > 0 ? "" : "-") << "(x-" << t.threshold
             << "))";
        }
      },
      term);
  return os.str();
}

std::string describe(const Expr& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& t : e.terms()) {
    if (!out.empty()) out += " + ";
    out += describe(t);
  }
  return out;
}

}  // namespace kfou
