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

#include "acv/qseries.hpp"

namespace acv {

QExp QExp::parse(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return QExp::integer(std::stoll(s));
    const std::int64_t num = std::stoll(s.substr(0, slash));
    const std::int64_t den = std::stoll(s.substr(slash + 1));
    return QExp::fraction(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("QExp: cannot parse '" + s + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("QExp: value out of range in '" + s + "'");
  }
}

FormSeries promote(const RationalSeries& s, const RingContext& ctx) {
  FormSeries r(s.order_cap(), GradedPoly(ctx));
  for (const auto& [e, c] : s.raw_terms())
    r.set(QExp::from_units(e), GradedPoly::constant(ctx, c));
  return r;
}

NumericEval qs_eval_numeric(const RationalSeries& s, std::complex<double> tau) {
  if (tau.imag() <= 0.0)
    throw std::invalid_argument("qs_eval_numeric: tau must lie in the upper half-plane");
  const std::complex<double> two_pi_i(0.0, 2.0 * 3.14159265358979323846);
  std::complex<double> sum(0.0, 0.0);
  double max_abs = 1.0;
  for (const auto& [e, c] : s.raw_terms()) {
    const double ex = static_cast<double>(e) / QExp::kGrid;
    sum += c.to_double() * std::exp(two_pi_i * tau * ex);
    max_abs = std::max(max_abs, std::abs(c.to_double()));
  }
  const double absq = std::exp(-2.0 * 3.14159265358979323846 * tau.imag());
  const double tail_exp = (static_cast<double>(s.order_cap().units()) + 1.0) / QExp::kGrid;
  const double tail = std::pow(absq, tail_exp) * max_abs / (1.0 - absq);
  return NumericEval{sum, tail};
}

}  // namespace acv
