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

#include "acv/charforms.hpp"

#include <sstream>

namespace acv {

namespace {

// exp(sum over m of coeffs[m] * gens[m]) as a q-series of forms.
FormSeries exp_even_series(const EvenSeries& logs, const std::vector<GradedPoly>& gens,
                           const RingContext& ctx, QExp order) {
  FormSeries arg(order, GradedPoly(ctx));
  for (int m = 1; m <= logs.tmax() && m <= static_cast<int>(gens.size()); ++m) {
    for (const auto& [e, coeff] : logs[m].raw_terms())
      arg.add(QExp::from_units(e), gens[static_cast<size_t>(m - 1)].scale(coeff));
  }
  return qs_exp(arg);
}

}  // namespace

ManifoldContext ManifoldContext::make(int dimension, Structure structure, int e8_bundles,
                                      std::optional<int> cap_override) {
  if (dimension != 10 && dimension != 12 && dimension != 14)
    throw std::invalid_argument("ManifoldContext: dimension must be 10, 12 or 14");
  if (e8_bundles < 0 || e8_bundles > 2)
    throw std::invalid_argument("ManifoldContext: e8_bundles must be 0, 1 or 2");
  const int cap = cap_override.value_or(dimension);
  if (cap < 4 || cap % 2 != 0 || cap > dimension)
    throw std::invalid_argument("ManifoldContext: cap override must be even, >= 4, <= dimension");
  std::vector<std::pair<std::string, int>> gens;
  if (structure == Structure::kSpinC) gens.emplace_back("c", 2);
  for (int k = 1; 4 * k <= cap; ++k) gens.emplace_back("s" + std::to_string(k), 4 * k);
  const char* prefixes[2] = {"gi", "gj"};
  for (int b = 0; b < e8_bundles; ++b)
    for (int k = 1; 4 * k <= cap; ++k)
      gens.emplace_back(std::string(prefixes[b]) + std::to_string(k), 4 * k);
  return ManifoldContext(dimension, structure, e8_bundles, make_ring_context(gens, cap));
}

GradedPoly ManifoldContext::c() const {
  if (structure_ != Structure::kSpinC)
    throw std::invalid_argument("ManifoldContext: no line bundle class in a spin context");
  return GradedPoly::generator(ring_, "c");
}

GradedPoly ManifoldContext::s(int k) const {
  if (k < 1 || 4 * k > ring_->degree_cap())
    throw std::invalid_argument("ManifoldContext: power sum s" + std::to_string(k) +
                                " not present");
  return GradedPoly::generator(ring_, "s" + std::to_string(k));
}

std::string ManifoldContext::bundle_prefix(int bundle) const {
  if (bundle < 0 || bundle >= e8_bundles_)
    throw std::invalid_argument("ManifoldContext: bundle index out of range");
  return bundle == 0 ? "gi" : "gj";
}

GradedPoly ManifoldContext::g(int bundle, int k) const {
  if (k < 1 || 4 * k > ring_->degree_cap())
    throw std::invalid_argument("ManifoldContext: bundle power sum index out of range");
  return GradedPoly::generator(ring_, bundle_prefix(bundle) + std::to_string(k));
}

GradedPoly a_hat(const ManifoldContext& ctx) {
  const EvenSeries logs =
      log_theta_quotient(ThetaKind::kTheta, ctx.max_power_sum(), QExp::integer(0));
  GradedPoly arg = ctx.zero();
  for (int m = 1; m <= ctx.max_power_sum(); ++m)
    arg += ctx.s(m).scale(logs[m].coefficient(QExp::integer(0)));
  return poly_exp(arg);
}

GradedPoly l_hat(const ManifoldContext& ctx) {
  const EvenSeries logs =
      log_theta_quotient(ThetaKind::kTheta1, ctx.max_power_sum(), QExp::integer(0));
  GradedPoly arg = ctx.zero();
  for (int m = 1; m <= ctx.max_power_sum(); ++m)
    arg += ctx.s(m).scale(logs[m].coefficient(QExp::integer(0)));
  return poly_exp(arg);
}

ChernCharacter ch_tangent(const ManifoldContext& ctx) {
  GradedPoly v = ctx.zero();
  for (int k = 1; k <= ctx.max_power_sum(); ++k)
    v += ctx.s(k).scale(Rational(2) / factorial(static_cast<unsigned>(2 * k)));
  return {v};
}

std::string convention_name(LineConvention c) {
  return c == LineConvention::kReal2 ? "REAL2" : "LINE1";
}

std::optional<LineConvention> convention_from_name(const std::string& name) {
  if (name == "REAL2") return LineConvention::kReal2;
  if (name == "LINE1") return LineConvention::kLine1;
  return std::nullopt;
}

ChernCharacter ch_line(const ManifoldContext& ctx, LineConvention conv) {
  const GradedPoly c = ctx.c();
  const GradedPoly ec = poly_exp(c);
  if (conv == LineConvention::kReal2)
    return {ec + poly_exp(-c) - ctx.constant(Rational(2))};
  return {ec - ctx.constant(Rational(1))};
}

GradedPoly line_factor_q0(const ManifoldContext& ctx, LineConvention conv) {
  const GradedPoly half_c = ctx.c().scale(Rational(1, 2));
  if (conv == LineConvention::kReal2)
    return (poly_exp(half_c) - poly_exp(-half_c)).scale(Rational(1, 2));
  return poly_exp(half_c);
}

ChernCharacter adams(unsigned k, const ChernCharacter& x) {
  const RingContext& ctx = x.value.context();
  GradedPoly out(ctx);
  for (const auto& [e, coeff] : x.value.terms()) {
    const int d = ctx->term_degree(e) / 2;
    out += GradedPoly::monomial(ctx, e, coeff * Rational(static_cast<long>(k)).pow(d));
  }
  return {out};
}

ChernCharacter lambda2(const ChernCharacter& x) {
  return (x * x - adams(2, x)).scale(Rational(1, 2));
}

ChernCharacter sym2(const ChernCharacter& x) {
  return (x * x + adams(2, x)).scale(Rational(1, 2));
}

ChernCharacter lambda3(const ChernCharacter& x) {
  const ChernCharacter x2 = adams(2, x);
  const ChernCharacter x3 = adams(3, x);
  return (x * x * x - (x * x2).scale(Rational(3)) + x3.scale(Rational(2)))
      .scale(Rational(1, 6));
}

E8Character::E8Character(const ManifoldContext& ctx, int bundle, QExp order)
    : series_(order, GradedPoly(ctx.ring())) {
  const int tmax = ctx.max_power_sum();
  std::vector<GradedPoly> gens;
  for (int m = 1; m <= tmax; ++m) gens.push_back(ctx.g(bundle, m));

  FormSeries sum(order, GradedPoly(ctx.ring()));
  const ThetaKind kinds[3] = {ThetaKind::kTheta1, ThetaKind::kTheta2, ThetaKind::kTheta3};
  for (const ThetaKind k : kinds) {
    const EvenSeries logs = log_theta_normalized(k, tmax, order);
    const RationalSeries constant8 = theta_zero(k, order).pow(8);
    sum += promote(constant8, ctx.ring()) * exp_even_series(logs, gens, ctx.ring(), order);
  }
  series_ = promote(phi_pow(8, order).reciprocal(), ctx.ring()) * sum.scale(Rational(1, 2));
}

ChernCharacter E8Character::extract_W(int n) const {
  return {series_.coefficient(QExp::integer(n))};
}

FormSeries e8_character(const ManifoldContext& ctx, int bundle, QExp order) {
  return E8Character(ctx, bundle, order).series();
}

namespace {

// ch(tensor over the index family of S_t or Lambda_t of a virtual bundle),
// via log ch = sum_k epsilon^{k+1} t^k ch(psi^k)/k summed over the family.
// exps(k) enumerates the q-exponents contributed by t = +-q^{a} at power k.
FormSeries twist_exp(const ManifoldContext& ctx, const ChernCharacter& x, QExp order,
                     bool symmetric, bool negative_t, bool half_offset) {
  FormSeries arg(order, GradedPoly(ctx.ring()));
  for (unsigned k = 1;; ++k) {
    // Lowest exponent contributed at power k: k*(1) or k*(1/2).
    const std::int64_t base_units = half_offset ? QExp::kGrid / 2 : QExp::kGrid;
    if (static_cast<std::int64_t>(k) * base_units > order.units()) break;
    // sum over the index m >= 1 of q^{k*(m - offset)}
    Rational sign(1);
    if (!symmetric && k % 2 == 0) sign = Rational(-1);  // (-1)^{k+1} t^k
    if (negative_t && k % 2 == 1) sign = -sign;         // t = -q^a
    const GradedPoly coeff =
        adams(k, x).value.scale(sign * Rational(1, static_cast<long>(k)));
    for (std::int64_t m = 1;; ++m) {
      const std::int64_t units =
          static_cast<std::int64_t>(k) * (m * QExp::kGrid - (half_offset ? QExp::kGrid / 2 : 0));
      if (units > order.units()) break;
      arg.add(QExp::from_units(units), coeff);
    }
  }
  return qs_exp(arg);
}

FormSeries genus_times_twist(const ManifoldContext& ctx, ThetaKind kind, QExp order) {
  const EvenSeries logs = log_theta_quotient(kind, ctx.max_power_sum(), order);
  std::vector<GradedPoly> gens;
  for (int m = 1; m <= ctx.max_power_sum(); ++m) gens.push_back(ctx.s(m));
  return exp_even_series(logs, gens, ctx.ring(), order);
}

}  // namespace

FormSeries witten_direct_spin_c(const ManifoldContext& ctx, const ChernCharacter& x,
                                QExp order) {
  if (ctx.structure() != Structure::kSpinC)
    throw std::invalid_argument("witten_direct: spin^c twist in a spin context");
  const FormSeries sym_part = twist_exp(ctx, ch_tangent(ctx), order,
                                        /*symmetric=*/true, /*negative_t=*/false,
                                        /*half=*/false);
  return sym_part * twist_exp(ctx, x, order, false, true, false);
}

FormSeries witten_direct(const ManifoldContext& ctx, WittenTwist twist,
                         LineConvention conv, QExp order) {
  if (twist == WittenTwist::kSpinCQ)
    return witten_direct_spin_c(ctx, ch_line(ctx, conv), order);
  const ChernCharacter t = ch_tangent(ctx);
  const FormSeries sym_part =
      twist_exp(ctx, t, order, /*symmetric=*/true, /*negative_t=*/false, /*half=*/false);
  if (ctx.structure() != Structure::kSpin)
    throw std::invalid_argument("witten_direct: spin twist in a spin^c context");
  if (twist == WittenTwist::kSpinQ1)
    return sym_part * twist_exp(ctx, t, order, false, false, false);
  return sym_part * twist_exp(ctx, t, order, false, true, true);
}

FormSeries line_factor_theta(const ManifoldContext& ctx, QExp order) {
  if (ctx.structure() != Structure::kSpinC)
    throw std::invalid_argument("line_factor_theta: requires a spin^c context");
  const QExp eighth = QExp::fraction(1, 8);
  const QExp build = order + eighth;
  const FormSeries num = theta(ThetaKind::kTheta, ctx.c(), build);
  const RationalSeries den = theta_zero(ThetaKind::kTheta1, build) *
                             theta_zero(ThetaKind::kTheta2, build) *
                             theta_zero(ThetaKind::kTheta3, build);
  if (!den.lowest() || *den.lowest() != eighth)
    throw std::logic_error("line_factor_theta: unexpected leading exponent");
  const FormSeries num_hat = num.shift(QExp::integer(0) - eighth);
  const RationalSeries den_hat = den.shift(QExp::integer(0) - eighth);
  return num_hat * promote(den_hat.reciprocal(), ctx.ring());
}

FormSeries witten_theta(const ManifoldContext& ctx, WittenTwist twist, QExp order) {
  switch (twist) {
    case WittenTwist::kSpinCQ: {
      if (ctx.structure() != Structure::kSpinC)
        throw std::invalid_argument("witten_theta: spin^c twist in a spin context");
      return genus_times_twist(ctx, ThetaKind::kTheta, order) *
             line_factor_theta(ctx, order);
    }
    case WittenTwist::kSpinQ1: {
      if (ctx.structure() != Structure::kSpin)
        throw std::invalid_argument("witten_theta: spin twist in a spin^c context");
      // 2^{root_pairs} prefactor: the theta1 quotient carries the genus in
      // its (z/2)/tanh(z/2) normalization.
      return genus_times_twist(ctx, ThetaKind::kTheta1, order)
          .scale(Rational(2).pow(ctx.root_pairs()));
    }
    case WittenTwist::kSpinQ2:
      if (ctx.structure() != Structure::kSpin)
        throw std::invalid_argument("witten_theta: spin twist in a spin^c context");
      return genus_times_twist(ctx, ThetaKind::kTheta2, order);
  }
  throw std::logic_error("witten_theta: unreachable");
}

GradedPoly anomaly_class(const ManifoldContext& ctx, AnomalyKind which) {
  switch (which) {
    case AnomalyKind::kA:
      if (ctx.e8_bundles() < 2)
        throw std::invalid_argument("anomaly_class: A needs two E8 bundles");
      return ctx.s(1) - ctx.c() * ctx.c() - ctx.g(0, 1) - ctx.g(1, 1);
    case AnomalyKind::kA1:
      if (ctx.e8_bundles() < 1)
        throw std::invalid_argument("anomaly_class: A1 needs an E8 bundle");
      return ctx.s(1) - ctx.c() * ctx.c() - ctx.g(0, 1);
    case AnomalyKind::kA2:
      if (ctx.e8_bundles() < 2)
        throw std::invalid_argument("anomaly_class: A2 needs two E8 bundles");
      return -ctx.g(0, 1) - ctx.g(1, 1);
    case AnomalyKind::kA3:
      if (ctx.e8_bundles() < 1)
        throw std::invalid_argument("anomaly_class: A3 needs an E8 bundle");
      return -ctx.g(0, 1);
  }
  throw std::logic_error("anomaly_class: unreachable");
}

std::string ConventionReport::str() const {
  std::ostringstream os;
  os << "line-convention resolution at order q^" << order.str() << ":\n";
  for (const auto& e : entries) {
    os << "  " << e.name << ": ";
    if (e.match) {
      os << "MATCH (direct route == theta route through q^" << order.str() << ")\n";
    } else {
      os << "mismatch from q^" << (e.first_mismatch ? e.first_mismatch->str() : "?") << "\n";
      for (const auto& [u, r] : e.residuals)
        os << "    residual at q^" << QExp::from_units(u).str() << ": " << r.str() << "\n";
    }
  }
  os << "  resolved: " << (matched ? convention_name(*matched) : "none") << "\n";
  return os.str();
}

LineCandidate line_candidate(const ManifoldContext& ctx, LineConvention conv) {
  return {convention_name(conv), ch_line(ctx, conv), line_factor_q0(ctx, conv)};
}

ConventionReport resolve_l_convention(const ManifoldContext& ctx,
                                      const std::vector<LineConvention>& candidates,
                                      QExp order) {
  std::vector<LineCandidate> cands;
  for (const LineConvention conv : candidates) cands.push_back(line_candidate(ctx, conv));
  return resolve_l_convention(ctx, cands, order);
}

ConventionReport resolve_l_convention(const ManifoldContext& ctx,
                                      const std::vector<LineCandidate>& candidates,
                                      QExp order) {
  if (ctx.structure() != Structure::kSpinC)
    throw std::invalid_argument("resolve_l_convention: requires a spin^c context");
  const FormSeries theta_route = witten_theta(ctx, WittenTwist::kSpinCQ, order);
  const GradedPoly ahat = a_hat(ctx);
  ConventionReport report;
  report.order = order;
  int matches = 0;
  for (const LineCandidate& cand : candidates) {
    const FormSeries direct =
        FormSeries::constant(ahat * cand.lf0, order, ctx.zero()) *
        witten_direct_spin_c(ctx, cand.ch_l, order);
    ConventionEntry entry(cand.name);
    const FormSeries diff = theta_route - direct;
    if (diff.is_zero()) {
      entry.match = true;
      ++matches;
      if (!report.matched) report.matched = convention_from_name(cand.name);
    } else {
      entry.first_mismatch = *diff.lowest();
      for (const auto& [u, r] : diff.raw_terms()) entry.residuals.emplace(u, r);
    }
    report.entries.push_back(std::move(entry));
  }
  if (matches > 1) {
    // Distinct candidates differ somewhere below the cap, so two matches
    // would mean the comparison is degenerate; refuse to resolve.
    report.matched = std::nullopt;
  }
  return report;
}

}  // namespace acv
