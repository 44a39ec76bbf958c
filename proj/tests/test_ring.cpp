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

#include <random>

#include "acv/ring.hpp"

using namespace acv;

namespace {

RingContext small_ring() {
  return make_ring_context({{"c", 2}, {"s1", 4}, {"s2", 8}}, 12);
}

GradedPoly gen(const RingContext& ctx, const char* name) {
  return GradedPoly::generator(ctx, name);
}

GradedPoly random_poly(const RingContext& ctx, std::mt19937& rng, int max_terms = 6) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expo(0, 2);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  GradedPoly p(ctx);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ExpVec e(static_cast<size_t>(ctx->size()), 0u);
    for (auto& x : e) x = static_cast<unsigned>(expo(rng));
    if (ctx->term_degree(e) > ctx->degree_cap()) continue;
    p += GradedPoly::monomial(ctx, e, Rational(num(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(6, 3).str() == "2");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(1, 3) * Rational(3, 7)) == Rational(1, 7));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational::from_string("-22/7") == Rational(-22, 7));
  CHECK(Rational::from_string("5") == Rational(5));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1).inv() / Rational(0), std::domain_error);
  // big values stay exact
  Rational big = Rational(1, 3).pow(40);
  CHECK((big * Rational(3).pow(40)) == Rational(1));
  CHECK(factorial(12) == Rational(479001600));
}

TEST_CASE("make_ring_context validates its input") {
  CHECK_NOTHROW(make_ring_context({{"c", 2}, {"s1", 4}}, 14));
  CHECK_THROWS_AS(make_ring_context({{"s1", 4}, {"s1", 8}}, 12), std::invalid_argument);
  CHECK_THROWS_AS(make_ring_context({{"c", 3}}, 14), std::invalid_argument);
  CHECK_THROWS_AS(make_ring_context({{"c", 2}}, 13), std::invalid_argument);
  CHECK_THROWS_AS(make_ring_context({{"big", 16}}, 14), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic truncates at the degree cap") {
  auto ctx = small_ring();
  const GradedPoly c = gen(ctx, "c");
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly one = GradedPoly::constant(ctx, Rational(1));

  CHECK((c * c).str() == "c^2");
  CHECK(s1.pow(4).is_zero());  // degree 16 > cap 12
  CHECK(((one + s1) * (one - s1)) == (one - s1 * s1));
  CHECK((c.pow(6) * c).str() == "0");  // degree 14 > cap 12

  auto other = small_ring();
  CHECK_THROWS_AS(gen(ctx, "c") + gen(other, "c"), std::invalid_argument);
}

TEST_CASE("poly_exp terminates by nilpotency and matches hand values") {
  auto ctx = small_ring();
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly s2 = gen(ctx, "s2");
  const GradedPoly zero(ctx);
  const GradedPoly one = GradedPoly::constant(ctx, Rational(1));

  CHECK(poly_exp(zero) == one);
  const GradedPoly es1 = poly_exp(s1);
  CHECK(es1 == one + s1 + (s1 * s1).scale(Rational(1, 2)) +
                   (s1 * s1 * s1).scale(Rational(1, 6)));
  // exp(s1 + s2) degree-8 component: s2 + s1^2/2 (multinomial oracle).
  const GradedPoly c8 = poly_exp(s1 + s2).component(8);
  CHECK(c8 == s2 + (s1 * s1).scale(Rational(1, 2)));
  CHECK_THROWS_AS(poly_exp(one), std::invalid_argument);
}

TEST_CASE("poly_expm1_over computes (exp(s a)-1)/a") {
  auto ctx = small_ring();
  const GradedPoly s1 = gen(ctx, "s1");
  // (e^{s1/24}-1)/s1 = 1/24 + s1/(24^2 2!) + s1^2/(24^3 3!) + s1^3/(24^4 4!)
  const GradedPoly e = poly_expm1_over(s1, Rational(1, 24));
  const GradedPoly expect = GradedPoly::constant(ctx, Rational(1, 24)) +
                            s1.scale(Rational(1, 1152)) +
                            (s1 * s1).scale(Rational(1, 82944)) +
                            (s1 * s1 * s1).scale(Rational(1, 7962624));
  CHECK(e == expect);
  // identity: a * expm1_over(a, s) = exp(s a) - 1
  const GradedPoly lhs = s1 * e;
  const GradedPoly rhs = poly_exp(s1.scale(Rational(1, 24))) -
                         GradedPoly::constant(ctx, Rational(1));
  CHECK(lhs == rhs);
}

TEST_CASE("component extraction partitions a polynomial") {
  auto ctx = small_ring();
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly one = GradedPoly::constant(ctx, Rational(1));
  const GradedPoly p = one + s1 + s1 * s1;
  CHECK(p.component(8) == s1 * s1);
  CHECK(p.component(0) == one);
  CHECK(p.component(6).is_zero());

  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    const GradedPoly a = random_poly(ctx, rng);
    GradedPoly sum(ctx);
    for (int d = 0; d <= ctx->degree_cap(); d += 2) sum += a.component(d);
    CHECK(sum == a);
    // idempotence and linearity on its own output
    CHECK(a.component(4).component(4) == a.component(4));
  }
}

TEST_CASE("substitute is a degree-checked ring homomorphism") {
  auto ctx = make_ring_context({{"c", 2}, {"s1", 4}, {"g1i", 4}, {"g1j", 4}}, 12);
  const GradedPoly c = gen(ctx, "c");
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly g1i = gen(ctx, "g1i");
  const GradedPoly g1j = gen(ctx, "g1j");

  // encodes A = 0
  const GradedPoly a_class = s1 - c * c - g1i - g1j;
  const GradedPoly subst = a_class.substitute({{"s1", c * c + g1i + g1j}});
  CHECK(subst.is_zero());

  // encodes c2(W) = 0
  const GradedPoly a2 = -g1i - g1j;
  CHECK(a2.substitute({{"g1i", GradedPoly(ctx)}, {"g1j", GradedPoly(ctx)}}).is_zero());

  // degree-inhomogeneous binding rejected
  CHECK_THROWS_AS(s1.substitute({{"s1", c}}), std::invalid_argument);
  CHECK_THROWS_AS(s1.substitute({{"s1", c * c + c}}), std::invalid_argument);

  // homomorphism on random pairs
  std::mt19937 rng(11);
  const std::map<std::string, GradedPoly> bind{{"s1", c * c + g1i}};
  for (int i = 0; i < 100; ++i) {
    const GradedPoly a = random_poly(ctx, rng);
    const GradedPoly b = random_poly(ctx, rng);
    CHECK((a * b).substitute(bind) == a.substitute(bind) * b.substitute(bind));
    CHECK((a + b).substitute(bind) == a.substitute(bind) + b.substitute(bind));
  }
}

TEST_CASE("ring axioms hold exactly on random triples") {
  auto ctx = small_ring();
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const GradedPoly a = random_poly(ctx, rng);
    const GradedPoly b = random_poly(ctx, rng);
    const GradedPoly c = random_poly(ctx, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("truncation behaves as an ideal quotient") {
  // Multiplying in a bigger ring and truncating equals truncated multiply.
  auto big = make_ring_context({{"c", 2}, {"s1", 4}, {"s2", 8}}, 24);
  auto small = small_ring();
  std::mt19937 rng(17);
  const auto truncate_to = [&](const GradedPoly& p) {
    GradedPoly out(small);
    for (const auto& [e, coeff] : p.terms()) {
      if (small->term_degree(e) <= small->degree_cap())
        out += GradedPoly::monomial(small, e, coeff);
    }
    return out;
  };
  for (int i = 0; i < 100; ++i) {
    const GradedPoly a = random_poly(big, rng);
    const GradedPoly b = random_poly(big, rng);
    CHECK(truncate_to(a * b) == truncate_to(a) * truncate_to(b));
  }
}

TEST_CASE("poly_exp is a homomorphism on nilpotent arguments") {
  auto ctx = small_ring();
  std::mt19937 rng(19);
  for (int i = 0; i < 100; ++i) {
    GradedPoly a = random_poly(ctx, rng);
    GradedPoly b = random_poly(ctx, rng);
    a -= GradedPoly::constant(ctx, a.constant_part());
    b -= GradedPoly::constant(ctx, b.constant_part());
    CHECK(poly_exp(a + b) == poly_exp(a) * poly_exp(b));
  }
}

TEST_CASE("newton_convert applies Newton's identities and round-trips") {
  auto ctx = make_ring_context({{"s1", 4}, {"s2", 8}, {"s3", 12}}, 12);
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly s2 = gen(ctx, "s2");
  const GradedPoly s3 = gen(ctx, "s3");

  const auto p2e = newton_convert(NewtonDirection::kPowerToElementary, {s1, s2}, 7);
  CHECK(p2e[0] == s1);
  CHECK(p2e[1] == (s1 * s1 - s2).scale(Rational(1, 2)));

  CHECK_THROWS_AS(newton_convert(NewtonDirection::kPowerToElementary, {s1, s2, s3}, 2),
                  std::invalid_argument);

  for (const int nvars : {5, 6, 7, 8}) {
    const auto e = newton_convert(NewtonDirection::kPowerToElementary, {s1, s2, s3}, nvars);
    const auto back = newton_convert(NewtonDirection::kElementaryToPower, e, nvars);
    CHECK(back[0] == s1);
    CHECK(back[1] == s2);
    CHECK(back[2] == s3);
  }
}

TEST_CASE("canonical rendering is graded-lex with p/q coefficients") {
  auto ctx = small_ring();
  const GradedPoly c = gen(ctx, "c");
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly p =
      s1.scale(Rational(-1, 24)) + GradedPoly::constant(ctx, Rational(1)) + c * c;
  CHECK(p.str() == "1 + c^2 - 1/24 s1");
  CHECK(GradedPoly(ctx).str() == "0");
  CHECK((c * c * s1).scale(Rational(5, 2)).str() == "5/2 c^2 s1");
}

TEST_CASE("unit polynomials invert") {
  auto ctx = small_ring();
  const GradedPoly s1 = gen(ctx, "s1");
  const GradedPoly one = GradedPoly::constant(ctx, Rational(1));
  const GradedPoly u = GradedPoly::constant(ctx, Rational(2)) + s1;
  CHECK(u * u.inverse() == one);
  CHECK_THROWS_AS(s1.inverse(), std::domain_error);
}
