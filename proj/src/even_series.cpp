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

#include "acv/even_series.hpp"

namespace acv {

EvenSeries::EvenSeries(int tmax, QExp order) : order_(order) {
  if (tmax < 0) throw std::invalid_argument("EvenSeries: negative degree bound");
  c_.assign(static_cast<size_t>(tmax) + 1, RationalSeries(order, Rational(0)));
}

EvenSeries EvenSeries::one(int tmax, QExp order) {
  EvenSeries s(tmax, order);
  s.c_[0].set(QExp::integer(0), Rational(1));
  return s;
}

EvenSeries EvenSeries::taylor(const std::vector<Rational>& coeffs, int tmax, QExp order) {
  EvenSeries s(tmax, order);
  for (size_t k = 0; k < coeffs.size() && k <= static_cast<size_t>(tmax); ++k)
    s.c_[k].set(QExp::integer(0), coeffs[k]);
  return s;
}

EvenSeries& EvenSeries::operator+=(const EvenSeries& o) {
  if (tmax() != o.tmax() || order_ != o.order_)
    throw std::invalid_argument("EvenSeries: shape mismatch");
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

EvenSeries& EvenSeries::operator-=(const EvenSeries& o) {
  if (tmax() != o.tmax() || order_ != o.order_)
    throw std::invalid_argument("EvenSeries: shape mismatch");
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

EvenSeries operator*(const EvenSeries& a, const EvenSeries& b) {
  if (a.tmax() != b.tmax() || a.order_ != b.order_)
    throw std::invalid_argument("EvenSeries: shape mismatch");
  EvenSeries r(a.tmax(), a.order_);
  for (int i = 0; i <= a.tmax(); ++i) {
    if (a.c_[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j <= a.tmax(); ++j) {
      if (b.c_[static_cast<size_t>(j)].is_zero()) continue;
      r.c_[static_cast<size_t>(i + j)] +=
          a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
    }
  }
  return r;
}

EvenSeries EvenSeries::scale(const RationalSeries& s) const {
  EvenSeries r(tmax(), order_);
  for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] * s;
  return r;
}

EvenSeries EvenSeries::log() const {
  const RationalSeries one_q =
      RationalSeries::constant(Rational(1), order_, Rational(0));
  if (c_[0] != one_q)
    throw std::domain_error("EvenSeries: log requires t^0 coefficient exactly 1");
  EvenSeries u = *this;
  u.c_[0] -= one_q;
  // log(1+u) = sum (-1)^{k+1} u^k / k, u t-nilpotent: k <= tmax.
  EvenSeries r(tmax(), order_);
  EvenSeries p = one(tmax(), order_);
  for (int k = 1; k <= tmax(); ++k) {
    p = p * u;
    EvenSeries term = p;
    for (auto& coeffs : term.c_)
      coeffs = coeffs.scale(Rational((k % 2 == 1) ? 1 : -1, k));
    r += term;
  }
  return r;
}

}  // namespace acv
