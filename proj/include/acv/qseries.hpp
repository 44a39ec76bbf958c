/*
   Copyright 2026 The acv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ACV_QSERIES_HPP
#define ACV_QSERIES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "acv/ring.hpp"

namespace acv {

/// Exponent of the nome q on the fixed 1/24-integer grid. 1/24 is the
/// least grid that carries both the q^{1/8} theta prefactors and the
/// q^{1/2} level-2 expansions.
class QExp {
 public:
  static constexpr std::int64_t kGrid = 24;

  QExp() : units_(0) {}
  static QExp from_units(std::int64_t u) { return QExp(u); }
  static QExp integer(std::int64_t n) { return QExp(n * kGrid); }
  static QExp fraction(std::int64_t num, std::int64_t den) {
    if (den == 0 || kGrid % den != 0)
      throw std::invalid_argument("QExp: exponent must be a multiple of 1/24");
    return QExp(num * (kGrid / den));
  }
  /// Parses "n" or "p/q" with q | 24.
  static QExp parse(const std::string& s);

  std::int64_t units() const { return units_; }
  bool is_integer() const { return units_ % kGrid == 0; }

  friend QExp operator+(QExp a, QExp b) { return QExp(a.units_ + b.units_); }
  friend QExp operator-(QExp a, QExp b) { return QExp(a.units_ - b.units_); }
  friend bool operator==(QExp a, QExp b) { return a.units_ == b.units_; }
  friend bool operator!=(QExp a, QExp b) { return a.units_ != b.units_; }
  friend bool operator<(QExp a, QExp b) { return a.units_ < b.units_; }
  friend bool operator<=(QExp a, QExp b) { return a.units_ <= b.units_; }
  friend bool operator>(QExp a, QExp b) { return a.units_ > b.units_; }
  friend bool operator>=(QExp a, QExp b) { return a.units_ >= b.units_; }

  double to_double() const { return static_cast<double>(units_) / kGrid; }

  std::string str() const {
    const std::int64_t g = std::gcd(std::llabs(units_), kGrid);
    const std::int64_t num = units_ / g, den = kGrid / g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  explicit QExp(std::int64_t u) : units_(u) {}
  std::int64_t units_;
};

namespace detail {
inline bool coeff_is_zero(const Rational& r) { return r.is_zero(); }
inline bool coeff_is_zero(const GradedPoly& p) { return p.is_zero(); }
inline Rational coeff_scale(const Rational& c, const Rational& r) { return c * r; }
inline GradedPoly coeff_scale(const GradedPoly& c, const Rational& r) { return c.scale(r); }
inline void require_same_ring(const Rational&, const Rational&) {}
inline void require_same_ring(const GradedPoly& a, const GradedPoly& b) {
  if (a.context() != b.context())
    throw std::invalid_argument("QSeries: coefficients from different generator tables");
}
inline Rational coeff_unit_inverse(const Rational& r) { return r.inv(); }
inline GradedPoly coeff_unit_inverse(const GradedPoly& p) { return p.inverse(); }
}  // namespace detail

/// Truncated series in the nome q with exponents on the 1/24 grid and
/// coefficients in one ring (Rational or GradedPoly). All arithmetic is
/// exact and truncated at an inclusive order cap. Negative exponents
/// appear only through explicit construction (shift); arithmetic
/// preserves whatever sign range its inputs have.
template <class C>
class QSeries {
 public:
  QSeries(QExp order_cap, C zero) : cap_(order_cap.units()), zero_(std::move(zero)) {
    if (!detail::coeff_is_zero(zero_))
      throw std::invalid_argument("QSeries: prototype coefficient must be zero");
  }

  static QSeries constant(const C& value, QExp cap, C zero) {
    QSeries s(cap, std::move(zero));
    s.set(QExp::integer(0), value);
    return s;
  }

  static QSeries monomial(QExp e, const C& value, QExp cap, C zero) {
    QSeries s(cap, std::move(zero));
    s.set(e, value);
    return s;
  }

  QExp order_cap() const { return QExp::from_units(cap_); }
  const C& zero_coefficient() const { return zero_; }
  const std::map<std::int64_t, C>& raw_terms() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }

  /// Adds v at exponent e (dropped beyond the cap).
  void add(QExp e, const C& v) {
    if (e.units() > cap_ || detail::coeff_is_zero(v)) return;
    auto [it, inserted] = coef_.emplace(e.units(), v);
    if (!inserted) {
      it->second += v;
      if (detail::coeff_is_zero(it->second)) coef_.erase(it);
    }
  }

  void set(QExp e, const C& v) {
    coef_.erase(e.units());
    add(e, v);
  }

  /// Stored coefficient or zero; querying beyond the truncation order is
  /// an error (the series would have to be rebuilt at a higher order).
  const C& coefficient(QExp e) const {
    if (e.units() > cap_)
      throw std::out_of_range("QSeries: exponent " + e.str() +
                              " beyond truncation order " + order_cap().str() +
                              "; rebuild the series at a higher order");
    const auto it = coef_.find(e.units());
    return it == coef_.end() ? zero_ : it->second;
  }

  std::optional<QExp> lowest() const {
    if (coef_.empty()) return std::nullopt;
    return QExp::from_units(coef_.begin()->first);
  }

  QSeries operator-() const {
    QSeries r(order_cap(), zero_);
    for (const auto& [e, c] : coef_) r.coef_.emplace(e, -c);
    return r;
  }

  QSeries& operator+=(const QSeries& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.coef_) add(QExp::from_units(e), c);
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.coef_) add(QExp::from_units(e), -c);
    return *this;
  }
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    a.require_compatible(b);
    QSeries r(a.order_cap(), a.zero_);
    for (const auto& [ea, ca] : a.coef_) {
      for (const auto& [eb, cb] : b.coef_) {
        if (ea + eb > a.cap_) break;  // b iterated in increasing exponent
        r.add(QExp::from_units(ea + eb), ca * cb);
      }
    }
    return r;
  }

  QSeries scale(const Rational& r) const {
    QSeries out(order_cap(), zero_);
    if (r.is_zero()) return out;
    for (const auto& [e, c] : coef_) out.coef_.emplace(e, detail::coeff_scale(c, r));
    return out;
  }

  QSeries scale_coeff(const C& v) const {
    QSeries out(order_cap(), zero_);
    for (const auto& [e, c] : coef_) out.add(QExp::from_units(e), c * v);
    return out;
  }

  QSeries pow(unsigned e) const {
    QSeries r = constant(unit_coefficient(), order_cap(), zero_);
    QSeries base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return r;
  }

  /// Multiplicative inverse; the constant (exponent-0) coefficient must be
  /// an invertible ring element and no negative exponents may be present.
  QSeries reciprocal() const {
    if (!coef_.empty() && coef_.begin()->first < 0)
      throw std::domain_error("QSeries: reciprocal of a series with negative exponents");
    const C& a0 = coefficient(QExp::integer(0));
    if (detail::coeff_is_zero(a0))
      throw std::domain_error("QSeries: reciprocal requires an invertible constant term");
    const C inv0 = detail::coeff_unit_inverse(a0);
    QSeries r(order_cap(), zero_);
    r.set(QExp::integer(0), inv0);
    // b_e = -a0^{-1} * sum_{0 < f <= e} a_f b_{e-f}, solved in exponent order.
    for (std::int64_t e = 1; e <= cap_; ++e) {
      C acc = zero_;
      bool any = false;
      for (const auto& [f, af] : coef_) {
        if (f <= 0) continue;
        if (f > e) break;
        const auto it = r.coef_.find(e - f);
        if (it == r.coef_.end()) continue;
        acc += af * it->second;
        any = true;
      }
      if (!any || detail::coeff_is_zero(acc)) continue;
      r.coef_.emplace(e, -(inv0 * acc));
    }
    return r;
  }

  /// Multiplies by q^delta. Explicit construction: this is the one place
  /// negative exponents can enter.
  QSeries shift(QExp delta) const {
    QSeries r(QExp::from_units(cap_ + delta.units()), zero_);
    for (const auto& [e, c] : coef_) r.coef_.emplace(e + delta.units(), c);
    return r;
  }

  QSeries truncated(QExp new_cap) const {
    QSeries r(new_cap, zero_);
    for (const auto& [e, c] : coef_) {
      if (e > new_cap.units()) break;
      r.coef_.emplace(e, c);
    }
    return r;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.cap_ == b.cap_ && a.coef_ == b.coef_;
  }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  /// Canonical rendering in increasing exponent order.
  std::string str() const {
    if (coef_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coef_) {
      std::string body = coeff_str(c);
      // A lone leading '-' on a single-term coefficient folds into the sign.
      bool neg = false;
      if (body.size() > 1 && body[0] == '-' && body.find(" + ") == std::string::npos &&
          body.find(" - ") == std::string::npos) {
        neg = true;
        body = body.substr(1);
      }
      if (first) {
        if (neg) os << "-";
        first = false;
      } else {
        os << (neg ? " - " : " + ");
      }
      const QExp qe = QExp::from_units(e);
      std::string qpart;
      if (e != 0) {
        qpart = "q";
        if (qe != QExp::integer(1))
          qpart += qe.is_integer() ? "^" + qe.str() : "^(" + qe.str() + ")";
      }
      if (qpart.empty()) {
        os << wrap_if_sum(body);
      } else if (body == "1") {
        os << qpart;
      } else {
        os << wrap_if_sum(body) << " " << qpart;
      }
    }
    return os.str();
  }

 private:
  explicit QSeries(std::int64_t cap, C zero) : cap_(cap), zero_(std::move(zero)) {}

  void require_compatible(const QSeries& o) const {
    if (cap_ != o.cap_)
      throw std::invalid_argument("QSeries: operands truncated at different orders");
    detail::require_same_ring(zero_, o.zero_);
  }

  C unit_coefficient() const {
    if constexpr (std::is_same_v<C, Rational>) {
      return Rational(1);
    } else {
      return GradedPoly::constant(zero_.context(), Rational(1));
    }
  }

  static std::string coeff_str(const Rational& r) { return r.str(); }
  static std::string coeff_str(const GradedPoly& p) { return p.str(); }
  static std::string wrap_if_sum(const std::string& s) {
    return (s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos)
               ? "(" + s + ")"
               : s;
  }

  std::map<std::int64_t, C> coef_;
  std::int64_t cap_;
  C zero_;
};

using RationalSeries = QSeries<Rational>;
using FormSeries = QSeries<GradedPoly>;

/// exp of a series whose coefficients are all nilpotent (positive-degree
/// polynomials), or which has strictly positive lowest exponent. Finite
/// under the double truncation.
template <class C>
QSeries<C> qs_exp(const QSeries<C>& a) {
  const C& c0 = a.coefficient(QExp::integer(0));
  if constexpr (std::is_same_v<C, Rational>) {
    if (!c0.is_zero())
      throw std::invalid_argument("qs_exp: rational series must have positive lowest exponent");
  } else {
    if (!c0.constant_part().is_zero())
      throw std::invalid_argument("qs_exp: constant coefficient must be nilpotent");
    for (const auto& [e, c] : a.raw_terms()) {
      if (e < 0) throw std::invalid_argument("qs_exp: negative exponents not supported");
      if (!c.constant_part().is_zero() && e == 0)
        throw std::invalid_argument("qs_exp: constant coefficient must be nilpotent");
    }
  }
  if (auto low = a.lowest(); low && low->units() < 0)
    throw std::invalid_argument("qs_exp: negative exponents not supported");

  QSeries<C> one(a.order_cap(), a.zero_coefficient());
  if constexpr (std::is_same_v<C, Rational>) {
    one.set(QExp::integer(0), Rational(1));
  } else {
    one.set(QExp::integer(0), GradedPoly::constant(a.zero_coefficient().context(), Rational(1)));
  }
  QSeries<C> r = one;
  QSeries<C> term = one;
  for (unsigned k = 1;; ++k) {
    term = (term * a).scale(Rational(1, static_cast<long>(k)));
    if (term.is_zero()) break;
    r += term;
  }
  return r;
}

/// Truncated product of per-index factors. The factor for index n must
/// differ from 1 only at exponents >= n/2, so factors beyond n_max cannot
/// touch the truncation window; n_max below that threshold is an error.
template <class C, class F>
QSeries<C> qs_product_form(F&& factor_fn, int n_max, QExp cap, C zero) {
  if (QExp::fraction(n_max + 1, 2) <= cap)
    throw std::invalid_argument(
        "qs_product_form: n_max too small for the requested order (factor " +
        std::to_string(n_max + 1) + " could still contribute)");
  QSeries<C> r(cap, zero);
  if constexpr (std::is_same_v<C, Rational>) {
    r.set(QExp::integer(0), Rational(1));
  } else {
    r.set(QExp::integer(0), GradedPoly::constant(zero.context(), Rational(1)));
  }
  for (int n = 1; n <= n_max; ++n) {
    QSeries<C> f = factor_fn(n);
    QSeries<C> dev = f;
    if constexpr (std::is_same_v<C, Rational>) {
      dev.add(QExp::integer(0), Rational(-1));
    } else {
      dev.add(QExp::integer(0), GradedPoly::constant(zero.context(), Rational(-1)));
    }
    if (auto low = dev.lowest(); low && *low < QExp::fraction(n, 2))
      throw std::invalid_argument("qs_product_form: factor " + std::to_string(n) +
                                  " deviates from 1 below exponent n/2");
    if (QExp::fraction(n, 2) > cap && dev.is_zero()) continue;
    r = r * f;
  }
  return r;
}

/// Promotes a rational-coefficient series into a polynomial ring. The one
/// permitted cross-ring coercion, and it is explicit.
FormSeries promote(const RationalSeries& s, const RingContext& ctx);

struct NumericEval {
  std::complex<double> value;
  double tail_bound;
};

/// Evaluates a rational-coefficient series at tau in the upper half-plane
/// (q = exp(2*pi*i*tau)) in double precision, with a crude tail bound
/// |q|^{cap+1/24} * max|coeff| / (1-|q|).
NumericEval qs_eval_numeric(const RationalSeries& s, std::complex<double> tau);

}  // namespace acv

#endif  // ACV_QSERIES_HPP
