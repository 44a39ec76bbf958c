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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "acv/modforms.hpp"

using namespace acv;

namespace {

Rational coeff(const RationalSeries& s, int num, int den = 1) {
  return s.coefficient(QExp::fraction(num, den));
}

// Minimal dense univariate Taylor arithmetic over Rational, independent of
// the engine's series types; the oracle for genus log expansions.
using Taylor = std::vector<Rational>;

Taylor taylor_mul(const Taylor& a, const Taylor& b, size_t n) {
  Taylor r(n + 1, Rational(0));
  for (size_t i = 0; i <= n; ++i)
    for (size_t j = 0; i + j <= n; ++j) {
      if (i < a.size() && j < b.size()) r[i + j] += a[i] * b[j];
    }
  return r;
}

Taylor taylor_inv(const Taylor& a, size_t n) {
  Taylor r(n + 1, Rational(0));
  r[0] = a[0].inv();
  for (size_t k = 1; k <= n; ++k) {
    Rational acc(0);
    for (size_t j = 1; j <= k; ++j)
      if (j < a.size()) acc += a[j] * r[k - j];
    r[k] = -(a[0].inv()) * acc;
  }
  return r;
}

Taylor taylor_log1p(const Taylor& u, size_t n) {  // log(1+u), u[0] = 0
  Taylor r(n + 1, Rational(0));
  Taylor p{Rational(1)};
  for (size_t k = 1; k <= n; ++k) {
    p = taylor_mul(p, u, n);
    const Rational sign = (k % 2 == 1) ? Rational(1, static_cast<long>(k))
                                       : Rational(-1, static_cast<long>(k));
    for (size_t i = 0; i <= n; ++i)
      if (i < p.size()) r[i] += p[i] * sign;
  }
  return r;
}

}  // namespace

TEST_CASE("Eisenstein expansion anchors") {
  const QExp cap = QExp::integer(3);
  const RationalSeries e2 = eisenstein(2, cap);
  CHECK(coeff(e2, 0) == 1);
  CHECK(coeff(e2, 1) == -24);
  CHECK(coeff(e2, 2) == -72);
  CHECK(coeff(e2, 3) == -96);  // -24 sigma_1(3)

  const RationalSeries e4 = eisenstein(4, cap);
  CHECK(coeff(e4, 1) == 240);
  CHECK(coeff(e4, 2) == 2160);
  CHECK(coeff(e4, 3) == 6720);

  const RationalSeries e6 = eisenstein(6, cap);
  CHECK(coeff(e6, 1) == -504);
  CHECK(coeff(e6, 2) == -16632);
  CHECK(coeff(e6, 3) == -122976);

  CHECK_THROWS_AS(eisenstein(8, cap), std::invalid_argument);
}

TEST_CASE("Eisenstein product anchors") {
  const QExp cap = QExp::integer(2);
  const RationalSeries a = eisenstein(4, cap).pow(2) * eisenstein(6, cap);
  CHECK(coeff(a, 1) == -24);
  CHECK(coeff(a, 2) == -196632);

  const RationalSeries b = eisenstein(4, cap) * eisenstein(6, cap);
  CHECK(coeff(b, 1) == -264);
  CHECK(coeff(b, 2) == -135432);

  const RationalSeries c = eisenstein(4, cap).pow(2);
  CHECK(coeff(c, 1) == 480);
  CHECK(coeff(c, 2) == 61920);
}

TEST_CASE("phi power anchors") {
  const QExp cap = QExp::integer(2);
  const RationalSeries p16 = phi_pow(16, cap);
  CHECK(coeff(p16, 1) == -16);
  CHECK(coeff(p16, 2) == 104);
  const RationalSeries p8 = phi_pow(8, cap);
  CHECK(coeff(p8, 1) == -8);
  CHECK(coeff(p8, 2) == 20);
}

TEST_CASE("theta constants against their classical sum expansions") {
  const QExp cap = QExp::integer(5);
  // theta1(0)/(2 q^{1/8}) = sum q^{n(n+1)/2} (triangular numbers)
  const RationalSeries t1 = theta_zero(ThetaKind::kTheta1, cap);
  RationalSeries t1_oracle(cap, Rational(0));
  for (long n = 0; n <= 10; ++n) {
    const long tri = n * (n + 1) / 2;
    const QExp e = QExp::from_units(3 + tri * QExp::kGrid);
    if (e > cap) continue;
    t1_oracle.add(e, Rational(2));
  }
  CHECK(t1 == t1_oracle);

  // theta2(0) = sum (-1)^n q^{n^2/2}, theta3(0) = sum q^{n^2/2}
  const RationalSeries t2 = theta_zero(ThetaKind::kTheta2, cap);
  const RationalSeries t3 = theta_zero(ThetaKind::kTheta3, cap);
  RationalSeries t2_oracle(cap, Rational(0));
  RationalSeries t3_oracle(cap, Rational(0));
  t2_oracle.add(QExp::integer(0), Rational(1));
  t3_oracle.add(QExp::integer(0), Rational(1));
  for (long n = 1; n <= 20; ++n) {
    const QExp e = QExp::from_units(n * n * (QExp::kGrid / 2));
    if (e > cap) continue;
    t2_oracle.add(e, Rational(n % 2 == 0 ? 2 : -2));
    t3_oracle.add(e, Rational(2));
  }
  CHECK(t2 == t2_oracle);
  CHECK(t3 == t3_oracle);

  CHECK(theta_zero(ThetaKind::kTheta, cap).is_zero());
}

TEST_CASE("theta_prime_zero is q^{1/8} phi^3") {
  const QExp cap = QExp::integer(4);
  const RationalSeries tp = theta_prime_zero(cap);
  CHECK(tp.lowest() == QExp::fraction(1, 8));
  CHECK(tp.coefficient(QExp::fraction(1, 8)) == 1);
  // phi^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}: 1 - 3q + 5q^3 - ...
  CHECK(tp.coefficient(QExp::from_units(3 + QExp::kGrid)) == -3);
  CHECK(tp.coefficient(QExp::from_units(3 + 2 * QExp::kGrid)) == 0);
  CHECK(tp.coefficient(QExp::from_units(3 + 3 * QExp::kGrid)) == 5);
}

TEST_CASE("Jacobi certificate: theta1 theta2 theta3 (0) = 2 q^{1/8} phi^3") {
  const QExp cap = QExp::integer(8);
  const RationalSeries lhs = theta_zero(ThetaKind::kTheta1, cap) *
                             theta_zero(ThetaKind::kTheta2, cap) *
                             theta_zero(ThetaKind::kTheta3, cap);
  const RationalSeries rhs = theta_prime_zero(cap).scale(Rational(2));
  CHECK(lhs == rhs);
}

TEST_CASE("Jacobi certificate: (theta1^8 + theta2^8 + theta3^8)/2 = E4") {
  const QExp cap = QExp::integer(6);
  const RationalSeries lhs = (theta_zero(ThetaKind::kTheta1, cap).pow(8) +
                              theta_zero(ThetaKind::kTheta2, cap).pow(8) +
                              theta_zero(ThetaKind::kTheta3, cap).pow(8))
                                 .scale(Rational(1, 2));
  CHECK(lhs == eisenstein(4, cap));
}

TEST_CASE("delta/eps Fourier anchors") {
  const QExp cap = QExp::integer(2);
  const RationalSeries d1 = delta_eps(DeltaEps::kDelta1, cap);
  CHECK(coeff(d1, 0) == Rational(1, 4));
  CHECK(coeff(d1, 1) == 6);
  CHECK(coeff(d1, 2) == 6);

  const RationalSeries e1 = delta_eps(DeltaEps::kEps1, cap);
  CHECK(coeff(e1, 0) == Rational(1, 16));
  CHECK(coeff(e1, 1) == -1);
  CHECK(coeff(e1, 2) == 7);

  const RationalSeries d2 = delta_eps(DeltaEps::kDelta2, cap).scale(Rational(8));
  CHECK(coeff(d2, 0) == -1);
  CHECK(coeff(d2, 1, 2) == -24);
  CHECK(coeff(d2, 1) == -24);
  CHECK(coeff(d2, 3, 2) == -96);

  const RationalSeries e2s = delta_eps(DeltaEps::kEps2, cap);
  CHECK(coeff(e2s, 1, 2) == 1);
  CHECK(coeff(e2s, 1) == 8);
  CHECK(coeff(e2s, 3, 2) == 28);
}

TEST_CASE("genus log blocks match the independent Taylor oracle") {
  const int tmax = 3;
  const size_t n = 3;
  // S(t) = 2 sinh(z/2)/z, C(t) = cosh(z/2) in t = z^2
  Taylor sinh_t, cosh_t;
  for (size_t j = 0; j <= n; ++j) {
    sinh_t.push_back(Rational(1) /
                     (Rational(4).pow(static_cast<long>(j)) *
                      factorial(static_cast<unsigned>(2 * j + 1))));
    cosh_t.push_back(Rational(1) /
                     (Rational(4).pow(static_cast<long>(j)) *
                      factorial(static_cast<unsigned>(2 * j))));
  }
  // log((z/2)/sinh(z/2)) = -log S
  Taylor u = sinh_t;
  u[0] = Rational(0);
  const Taylor logS = taylor_log1p(u, n);
  CHECK(logS[1] == Rational(1, 24));
  CHECK(logS[2] == Rational(-1, 2880));
  CHECK(logS[3] == Rational(1, 181440));

  const EvenSeries a = log_theta_quotient(ThetaKind::kTheta, tmax, QExp::integer(0));
  for (int k = 1; k <= tmax; ++k)
    CHECK(a[k].coefficient(QExp::integer(0)) == -logS[static_cast<size_t>(k)]);

  // log((z/2)/tanh(z/2)) = log C - log S
  const Taylor quot = taylor_mul(cosh_t, taylor_inv(sinh_t, n), n);
  Taylor uq = quot;
  uq[0] = Rational(0);
  const Taylor logL = taylor_log1p(uq, n);
  CHECK(logL[1] == Rational(1, 12));
  CHECK(logL[2] == Rational(-7, 1440));
  const EvenSeries l = log_theta_quotient(ThetaKind::kTheta1, tmax, QExp::integer(0));
  for (int k = 1; k <= tmax; ++k)
    CHECK(l[k].coefficient(QExp::integer(0)) == logL[static_cast<size_t>(k)]);
}

TEST_CASE("nilpotent-argument theta at q-order 0 reduces to 2 sinh(z/2)") {
  auto ctx = make_ring_context({{"x", 2}}, 8);
  const GradedPoly x = GradedPoly::generator(ctx, "x");
  const FormSeries t = theta(ThetaKind::kTheta, x, QExp::integer(1));
  // coefficient at q^{1/8}: e^{x/2} - e^{-x/2} = x + x^3/24 + ...
  const GradedPoly lead = t.coefficient(QExp::fraction(1, 8));
  CHECK(lead.component(2) == x);
  CHECK(lead.component(6) == (x * x * x).scale(Rational(1, 24)));
  CHECK_THROWS_AS(theta(ThetaKind::kTheta, x * x, QExp::integer(1)),
                  std::invalid_argument);
}

TEST_CASE("theta with nilpotent argument against the exp-log route") {
  auto ctx = make_ring_context({{"x", 2}}, 8);
  const GradedPoly x = GradedPoly::generator(ctx, "x");
  const QExp cap = QExp::integer(3);
  // For a single root z = x: s_m := x^{2m}. The log route gives
  // NTheta_k(x)/NTheta_k(0) = exp(sum_m u_{k,m} x^{2m}).
  for (const ThetaKind kind : {ThetaKind::kTheta1, ThetaKind::kTheta2, ThetaKind::kTheta3}) {
    const EvenSeries logs = log_theta_normalized(kind, 2, cap);
    FormSeries arg(cap, GradedPoly(ctx));
    for (int m = 1; m <= 2; ++m)
      for (const auto& [e, c] : logs[m].raw_terms())
        arg.add(QExp::from_units(e), x.pow(static_cast<unsigned>(2 * m)).scale(c));
    const FormSeries via_log =
        promote(theta_zero(kind, cap), ctx) * qs_exp(arg);
    CHECK(via_log == theta(kind, x, cap));
  }
}

TEST_CASE("transformation laws hold numerically at the default samples") {
  const QExp order = QExp::integer(48);
  const double tol = 1e-9;
  const std::vector<std::complex<double>> taus = {{0.0, 2.0}, {1.0, 2.0}, {0.5, 2.0}};
  for (const auto& law : transformation_laws()) {
    for (const auto& tau : taus) {
      const TransformCheck c = check_transformation_numeric(law.id, tau, order, tol);
      INFO(law.id, " at tau=(", tau.real(), ",", tau.imag(), ") residual ", c.residual);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("transformation checks refuse when the tail bound exceeds tolerance") {
  CHECK_THROWS_AS(
      check_transformation_numeric("E4", {0.0, 0.1}, QExp::integer(6), 1e-9),
      std::domain_error);
  CHECK_THROWS_AS(check_transformation_numeric("no_such_law", {0.0, 2.0},
                                               QExp::integer(6), 1e-9),
                  std::invalid_argument);
}

TEST_CASE("named series registry") {
  const auto names = named_series_list();
  CHECK(std::find(names.begin(), names.end(), "E4^2*E6") != names.end());
  CHECK(named_series("E2", QExp::integer(2)).has_value());
  CHECK(!named_series("nope", QExp::integer(2)).has_value());
  CHECK(named_series("E4^2*E6", QExp::integer(2))->str() == "1 - 24 q - 196632 q^2");
}
