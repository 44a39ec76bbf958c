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

#ifndef ACV_EVEN_SERIES_HPP
#define ACV_EVEN_SERIES_HPP

#include <vector>

#include "acv/qseries.hpp"

namespace acv {

/// Truncated polynomial in t = z^2 with q-series coefficients: the shape
/// of log f(z) for the even per-root factors of a multiplicative genus.
/// Substituting the power sums s_m for t^m turns one of these into the
/// exponent of a symmetric product over Chern roots.
class EvenSeries {
 public:
  EvenSeries(int tmax, QExp order);

  int tmax() const { return static_cast<int>(c_.size()) - 1; }
  QExp order_cap() const { return order_; }

  const RationalSeries& operator[](int k) const { return c_.at(static_cast<size_t>(k)); }
  RationalSeries& operator[](int k) { return c_.at(static_cast<size_t>(k)); }

  static EvenSeries one(int tmax, QExp order);

  /// Constant-in-q polynomial sum c_k t^k.
  static EvenSeries taylor(const std::vector<Rational>& coeffs, int tmax, QExp order);

  EvenSeries& operator+=(const EvenSeries& o);
  EvenSeries& operator-=(const EvenSeries& o);
  friend EvenSeries operator+(EvenSeries a, const EvenSeries& b) { return a += b; }
  friend EvenSeries operator-(EvenSeries a, const EvenSeries& b) { return a -= b; }
  friend EvenSeries operator*(const EvenSeries& a, const EvenSeries& b);

  EvenSeries scale(const RationalSeries& s) const;

  /// log of a series whose t^0 coefficient is exactly 1; finite because
  /// the deviation is t-nilpotent at this truncation.
  EvenSeries log() const;

 private:
  std::vector<RationalSeries> c_;
  QExp order_;
};

}  // namespace acv

#endif  // ACV_EVEN_SERIES_HPP
