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

#include "acv/modforms.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace acv {

namespace {

int ceil_order(QExp order) {
  const auto u = order.units();
  return static_cast<int>((u + QExp::kGrid - 1) / QExp::kGrid);
}

// Conservative factor count for qs_product_form's n/2 rule.
int product_n_max(QExp order) { return 2 * std::max(0, ceil_order(order)) + 2; }

RationalSeries one_series(QExp order) {
  return RationalSeries::constant(Rational(1), order, Rational(0));
}

// sigma_k(n) = sum of k-th powers of divisors.
Rational sigma(int k, long n) {
  Rational acc(0);
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) acc += Rational(d).pow(k);
  return acc;
}

// E(t) = e^z + e^{-z} - 2 = 2 sum_{j>=1} t^j/(2j)!, t = z^2.
EvenSeries exp_pair_block(int tmax, QExp order) {
  std::vector<Rational> coeffs{Rational(0)};
  for (int j = 1; j <= tmax; ++j)
    coeffs.push_back(Rational(2) / factorial(static_cast<unsigned>(2 * j)));
  return EvenSeries::taylor(coeffs, tmax, order);
}

// S(t) = 2 sinh(z/2)/z = sum t^j / (4^j (2j+1)!).
EvenSeries sinh_block(int tmax, QExp order) {
  std::vector<Rational> coeffs;
  for (int j = 0; j <= tmax; ++j)
    coeffs.push_back(Rational(1) /
                     (Rational(4).pow(j) * factorial(static_cast<unsigned>(2 * j + 1))));
  return EvenSeries::taylor(coeffs, tmax, order);
}

// C(t) = cosh(z/2) = sum t^j / (4^j (2j)!).
EvenSeries cosh_block(int tmax, QExp order) {
  std::vector<Rational> coeffs;
  for (int j = 0; j <= tmax; ++j)
    coeffs.push_back(Rational(1) /
                     (Rational(4).pow(j) * factorial(static_cast<unsigned>(2 * j))));
  return EvenSeries::taylor(coeffs, tmax, order);
}

// (1 + s e^z q^a)(1 + s e^{-z} q^a)/(1 + s q^a)^2 = 1 + s q^a E(t)/(1+s q^a)^2.
EvenSeries pair_factor(int sign, QExp a, int tmax, QExp order) {
  EvenSeries f = EvenSeries::one(tmax, order);
  if (a > order) return f;
  RationalSeries base = one_series(order);
  base.add(a, Rational(sign));
  const RationalSeries weight =
      RationalSeries::monomial(a, Rational(sign), order, Rational(0)) *
      base.pow(2).reciprocal();
  f += exp_pair_block(tmax, order).scale(weight);
  return f;
}

// Product over n >= 1 of the per-n pair factors, integer exponents (a = n)
// or half-integer (a = n - 1/2).
EvenSeries pair_product(int sign, bool half_offset, int tmax, QExp order) {
  EvenSeries r = EvenSeries::one(tmax, order);
  for (int n = 1;; ++n) {
    const QExp a = half_offset ? QExp::from_units(QExp::kGrid * n - QExp::kGrid / 2)
                               : QExp::integer(n);
    if (a > order) break;
    r = r * pair_factor(sign, a, tmax, order);
  }
  return r;
}

}  // namespace

RationalSeries phi(QExp order) {
  return qs_product_form<Rational>(
      [&](int n) {
        RationalSeries f = one_series(order);
        f.add(QExp::integer(n), Rational(-1));
        return f;
      },
      product_n_max(order), order, Rational(0));
}

RationalSeries phi_pow(int p, QExp order) {
  if (p < 0) return phi_pow(-p, order).reciprocal();
  return phi(order).pow(static_cast<unsigned>(p));
}

RationalSeries theta_zero(ThetaKind kind, QExp order) {
  if (kind == ThetaKind::kTheta) return RationalSeries(order, Rational(0));
  const int half = QExp::kGrid / 2;
  // Builds prod (1-q^n) * pair(n or n-1/2) as one factor per n.
  const auto factor = [&](int sign, bool half_offset) {
    return [&, sign, half_offset](int n) {
      RationalSeries f = one_series(order);
      f.add(QExp::integer(n), Rational(-1));
      const QExp a = half_offset ? QExp::from_units(QExp::kGrid * n - half)
                                 : QExp::integer(n);
      RationalSeries pair = one_series(order);
      pair.add(a, Rational(2 * sign));
      pair.add(QExp::from_units(2 * a.units()), Rational(1));
      return f * pair;
    };
  };
  const int n_max = product_n_max(order);
  switch (kind) {
    case ThetaKind::kTheta1: {
      RationalSeries body =
          qs_product_form<Rational>(factor(+1, false), n_max, order, Rational(0));
      // 2 q^{1/8} prefactor.
      return body.shift(QExp::fraction(1, 8)).truncated(order).scale(Rational(2));
    }
    case ThetaKind::kTheta2:
      return qs_product_form<Rational>(factor(-1, true), n_max, order, Rational(0));
    case ThetaKind::kTheta3:
      return qs_product_form<Rational>(factor(+1, true), n_max, order, Rational(0));
    default:
      throw std::logic_error("theta_zero: unreachable");
  }
}

RationalSeries theta_prime_zero(QExp order) {
  return phi_pow(3, order).shift(QExp::fraction(1, 8)).truncated(order);
}

FormSeries theta(ThetaKind kind, const GradedPoly& z, QExp order) {
  if (!z.is_zero() && !z.is_homogeneous(2))
    throw std::invalid_argument("theta: argument must be homogeneous of degree 2");
  const RingContext& ctx = z.context();
  const GradedPoly one_p = GradedPoly::constant(ctx, Rational(1));
  const GradedPoly ez = poly_exp(z);
  const GradedPoly emz = poly_exp(-z);
  const GradedPoly eh = poly_exp(z.scale(Rational(1, 2)));
  const GradedPoly emh = poly_exp(z.scale(Rational(-1, 2)));

  const bool plus = (kind == ThetaKind::kTheta1 || kind == ThetaKind::kTheta3);
  const bool half = (kind == ThetaKind::kTheta2 || kind == ThetaKind::kTheta3);
  const Rational sgn = plus ? Rational(1) : Rational(-1);

  FormSeries body = FormSeries::constant(one_p, order, GradedPoly(ctx));
  for (int n = 1; QExp::integer(n) <= order ||
                  (half && QExp::from_units(QExp::kGrid * n - QExp::kGrid / 2) <= order);
       ++n) {
    FormSeries f = FormSeries::constant(one_p, order, GradedPoly(ctx));
    f.add(QExp::integer(n), -one_p);
    const QExp a = half ? QExp::from_units(QExp::kGrid * n - QExp::kGrid / 2)
                        : QExp::integer(n);
    FormSeries pair = FormSeries::constant(one_p, order, GradedPoly(ctx));
    pair.add(a, (ez + emz).scale(sgn));
    pair.add(QExp::from_units(2 * a.units()), one_p);
    body = body * (f * pair);
  }
  if (half) return body;
  const GradedPoly pref = plus ? (eh + emh) : (eh - emh);
  FormSeries out = body.scale_coeff(pref);
  return out.shift(QExp::fraction(1, 8)).truncated(order);
}

RationalSeries eisenstein(int k, QExp order) {
  long weight_sigma;
  Rational scale;
  switch (k) {
    case 2: weight_sigma = 1; scale = Rational(-24); break;
    case 4: weight_sigma = 3; scale = Rational(240); break;
    case 6: weight_sigma = 5; scale = Rational(-504); break;
    default:
      throw std::invalid_argument("eisenstein: weight must be 2, 4 or 6");
  }
  RationalSeries s = one_series(order);
  for (long n = 1; QExp::integer(n) <= order; ++n)
    s.add(QExp::integer(n), scale * sigma(static_cast<int>(weight_sigma), n));
  return s;
}

RationalSeries delta_eps(DeltaEps which, QExp order) {
  const RationalSeries t1 = theta_zero(ThetaKind::kTheta1, order).pow(4);
  const RationalSeries t2 = theta_zero(ThetaKind::kTheta2, order).pow(4);
  const RationalSeries t3 = theta_zero(ThetaKind::kTheta3, order).pow(4);
  switch (which) {
    case DeltaEps::kDelta1: return (t2 + t3).scale(Rational(1, 8));
    case DeltaEps::kEps1: return (t2 * t3).scale(Rational(1, 16));
    case DeltaEps::kDelta2: return (t1 + t3).scale(Rational(-1, 8));
    case DeltaEps::kEps2: return (t1 * t3).scale(Rational(1, 16));
  }
  throw std::logic_error("delta_eps: unreachable");
}

EvenSeries log_theta_normalized(ThetaKind kind, int tmax, QExp order) {
  switch (kind) {
    case ThetaKind::kTheta1:
      return (cosh_block(tmax, order) * pair_product(+1, false, tmax, order)).log();
    case ThetaKind::kTheta2:
      return pair_product(-1, true, tmax, order).log();
    case ThetaKind::kTheta3:
      return pair_product(+1, true, tmax, order).log();
    default:
      throw std::invalid_argument("log_theta_normalized: k must be 1, 2 or 3");
  }
}

EvenSeries log_theta_quotient(ThetaKind kind, int tmax, QExp order) {
  // z NTheta'(0)/NTheta(z) = [S(t) * prod_n (pair factor with -q^n)]^{-1}.
  EvenSeries denom = sinh_block(tmax, order) * pair_product(-1, false, tmax, order);
  EvenSeries base = denom.log();
  for (int k = 0; k <= tmax; ++k) base[k] = -base[k];
  switch (kind) {
    case ThetaKind::kTheta: return base;
    case ThetaKind::kTheta1: return base + log_theta_normalized(ThetaKind::kTheta1, tmax, order);
    case ThetaKind::kTheta2: return base + log_theta_normalized(ThetaKind::kTheta2, tmax, order);
    default:
      throw std::invalid_argument("log_theta_quotient: unsupported kind");
  }
}

namespace {

using Builder = std::function<RationalSeries(QExp)>;

const std::vector<std::pair<std::string, Builder>>& series_registry() {
  static const std::vector<std::pair<std::string, Builder>> reg = {
      {"E2", [](QExp o) { return eisenstein(2, o); }},
      {"E4", [](QExp o) { return eisenstein(4, o); }},
      {"E6", [](QExp o) { return eisenstein(6, o); }},
      {"phi", [](QExp o) { return phi(o); }},
      {"phi8", [](QExp o) { return phi_pow(8, o); }},
      {"phi16", [](QExp o) { return phi_pow(16, o); }},
      {"theta1_0", [](QExp o) { return theta_zero(ThetaKind::kTheta1, o); }},
      {"theta2_0", [](QExp o) { return theta_zero(ThetaKind::kTheta2, o); }},
      {"theta3_0", [](QExp o) { return theta_zero(ThetaKind::kTheta3, o); }},
      {"thetaprime_0", [](QExp o) { return theta_prime_zero(o); }},
      {"delta1", [](QExp o) { return delta_eps(DeltaEps::kDelta1, o); }},
      {"eps1", [](QExp o) { return delta_eps(DeltaEps::kEps1, o); }},
      {"delta2", [](QExp o) { return delta_eps(DeltaEps::kDelta2, o); }},
      {"eps2", [](QExp o) { return delta_eps(DeltaEps::kEps2, o); }},
      {"E4^2*E6", [](QExp o) { return eisenstein(4, o).pow(2) * eisenstein(6, o); }},
      {"E4*E6", [](QExp o) { return eisenstein(4, o) * eisenstein(6, o); }},
      {"E4^2", [](QExp o) { return eisenstein(4, o).pow(2); }},
  };
  return reg;
}

}  // namespace

std::vector<std::string> named_series_list() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : series_registry()) names.push_back(name);
  return names;
}

std::optional<RationalSeries> named_series(const std::string& name, QExp order) {
  for (const auto& [n, fn] : series_registry())
    if (n == name) return fn(order);
  return std::nullopt;
}

namespace {

using Cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

Cx principal_sqrt_tau_over_i(Cx tau) { return std::sqrt(tau / Cx(0.0, 1.0)); }

struct LawSide {
  // f(tau') compared against factor(tau) * g(tau) + shift(tau).
  RationalSeries lhs_series;
  std::function<Cx(Cx)> lhs_tau;
  RationalSeries rhs_series;
  std::function<Cx(Cx)> rhs_factor;
  std::function<Cx(Cx)> rhs_shift = [](Cx) { return Cx(0.0, 0.0); };
};

struct LawDef {
  std::string id;
  std::string description;
  std::vector<LawSide> sides;
};

std::vector<LawDef> law_defs(QExp order) {
  const Cx i(0.0, 1.0);
  const auto S = [](Cx tau) { return -1.0 / tau; };
  const auto T = [](Cx tau) { return tau + 1.0; };
  const auto one = [](Cx) { return Cx(1.0, 0.0); };

  const RationalSeries e2 = eisenstein(2, order);
  const RationalSeries e4 = eisenstein(4, order);
  const RationalSeries e6 = eisenstein(6, order);
  const RationalSeries tp = theta_prime_zero(order);
  const RationalSeries t1 = theta_zero(ThetaKind::kTheta1, order);
  const RationalSeries t2 = theta_zero(ThetaKind::kTheta2, order);
  const RationalSeries t3 = theta_zero(ThetaKind::kTheta3, order);
  const RationalSeries d1 = delta_eps(DeltaEps::kDelta1, order);
  const RationalSeries d2 = delta_eps(DeltaEps::kDelta2, order);
  const RationalSeries p1 = delta_eps(DeltaEps::kEps1, order);
  const RationalSeries p2 = delta_eps(DeltaEps::kEps2, order);

  std::vector<LawDef> laws;
  laws.push_back({"E2",
                  "E2(-1/tau) = tau^2 E2(tau) - 6 sqrt(-1) tau / pi; E2(tau+1) = E2(tau)",
                  {LawSide{e2, S, e2, [](Cx tau) { return tau * tau; },
                           [i](Cx tau) { return -6.0 * i * tau / kPi; }},
                   LawSide{e2, T, e2, one}}});

  laws.push_back({"theta",
                  "theta law checked through its v-derivative at v = 0: "
                  "theta'(0,-1/tau) = -sqrt(-1)(tau/sqrt(-1))^{1/2} tau theta'(0,tau)",
                  {LawSide{tp, S,
                           tp, [i](Cx tau) {
                             return (1.0 / i) * principal_sqrt_tau_over_i(tau) * tau;
                           }},
                   LawSide{tp, T, tp, [i](Cx) { return std::exp(i * kPi / 4.0); }}}});
  laws.push_back({"theta1",
                  "theta1(0,-1/tau) = (tau/sqrt(-1))^{1/2} theta2(0,tau); "
                  "theta1(0,tau+1) = e^{pi i/4} theta1(0,tau)",
                  {LawSide{t1, S, t2, [](Cx tau) { return principal_sqrt_tau_over_i(tau); }},
                   LawSide{t1, T, t1, [i](Cx) { return std::exp(i * kPi / 4.0); }}}});
  laws.push_back({"theta2",
                  "theta2(0,-1/tau) = (tau/sqrt(-1))^{1/2} theta1(0,tau); "
                  "theta2(0,tau+1) = theta3(0,tau)",
                  {LawSide{t2, S, t1, [](Cx tau) { return principal_sqrt_tau_over_i(tau); }},
                   LawSide{t2, T, t3, one}}});
  laws.push_back({"theta3",
                  "theta3(0,-1/tau) = (tau/sqrt(-1))^{1/2} theta3(0,tau); "
                  "theta3(0,tau+1) = theta2(0,tau)",
                  {LawSide{t3, S, t3, [](Cx tau) { return principal_sqrt_tau_over_i(tau); }},
                   LawSide{t3, T, t2, one}}});
  laws.push_back({"thetaprime",
                  "theta'(0,-1/tau) = -sqrt(-1)(tau/sqrt(-1))^{1/2} tau theta'(0,tau); "
                  "theta'(0,tau+1) = e^{pi i/4} theta'(0,tau)",
                  {LawSide{tp, S,
                           tp, [i](Cx tau) {
                             return (1.0 / i) * principal_sqrt_tau_over_i(tau) * tau;
                           }},
                   LawSide{tp, T, tp, [i](Cx) { return std::exp(i * kPi / 4.0); }}}});
  laws.push_back({"delta",
                  "delta2(-1/tau) = tau^2 delta1(tau)",
                  {LawSide{d2, S, d1, [](Cx tau) { return tau * tau; }}}});
  laws.push_back({"eps",
                  "eps2(-1/tau) = tau^4 eps1(tau)",
                  {LawSide{p2, S, p1, [](Cx tau) { return tau * tau * tau * tau; }}}});
  laws.push_back({"E4",
                  "E4(-1/tau) = tau^4 E4(tau); E4(tau+1) = E4(tau)",
                  {LawSide{e4, S, e4, [](Cx tau) { return tau * tau * tau * tau; }},
                   LawSide{e4, T, e4, one}}});
  laws.push_back({"E6",
                  "E6(-1/tau) = tau^6 E6(tau); E6(tau+1) = E6(tau)",
                  {LawSide{e6, S, e6, [](Cx tau) { return std::pow(tau, 6); }},
                   LawSide{e6, T, e6, one}}});
  return laws;
}

}  // namespace

std::vector<TransformLaw> transformation_laws() {
  std::vector<TransformLaw> out;
  for (const auto& law : law_defs(QExp::integer(0)))
    out.push_back({law.id, law.description});
  return out;
}

TransformCheck check_transformation_numeric(const std::string& law_id,
                                            std::complex<double> tau, QExp order,
                                            double tol) {
  if (tau.imag() <= 0.0)
    throw std::invalid_argument("check_transformation_numeric: tau must have Im > 0");
  const auto laws = law_defs(order);
  const LawDef* law = nullptr;
  for (const auto& l : laws)
    if (l.id == law_id) law = &l;
  if (law == nullptr)
    throw std::invalid_argument("check_transformation_numeric: unknown law '" + law_id + "'");

  TransformCheck out;
  out.id = law_id;
  for (const auto& side : law->sides) {
    const Cx tau_l = side.lhs_tau(tau);
    const NumericEval lhs = qs_eval_numeric(side.lhs_series, tau_l);
    const NumericEval rhs = qs_eval_numeric(side.rhs_series, tau);
    const double tail = lhs.tail_bound + std::abs(side.rhs_factor(tau)) * rhs.tail_bound;
    if (tail > tol)
      throw std::domain_error("check_transformation_numeric: truncation tail " +
                              std::to_string(tail) + " exceeds tolerance; raise the q-order");
    const Cx rhs_total = side.rhs_factor(tau) * rhs.value + side.rhs_shift(tau);
    out.residual = std::max(out.residual, std::abs(lhs.value - rhs_total));
    out.tail_bound = std::max(out.tail_bound, tail);
  }
  out.pass = out.residual < tol;
  return out;
}

}  // namespace acv
