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

#include "acv/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace acv {

RingContext GeneratorTable::make(std::vector<Generator> generators, int degree_cap) {
  if (degree_cap <= 0 || degree_cap % 2 != 0)
    throw std::invalid_argument("GeneratorTable: degree cap must be positive and even");
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.name.empty())
      throw std::invalid_argument("GeneratorTable: empty generator name");
    if (!seen.insert(g.name).second)
      throw std::invalid_argument("GeneratorTable: duplicate generator name '" + g.name + "'");
    if (g.degree <= 0 || g.degree % 2 != 0)
      throw std::invalid_argument("GeneratorTable: generator '" + g.name +
                                  "' must have positive even degree");
    if (g.degree > degree_cap)
      throw std::invalid_argument("GeneratorTable: generator '" + g.name +
                                  "' exceeds the degree cap");
  }
  return RingContext(new GeneratorTable(std::move(generators), degree_cap));
}

std::optional<int> GeneratorTable::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[static_cast<size_t>(i)].name == name) return i;
  return std::nullopt;
}

int GeneratorTable::term_degree(const std::vector<unsigned>& exps) const {
  int d = 0;
  for (size_t i = 0; i < exps.size(); ++i)
    d += static_cast<int>(exps[i]) * gens_[i].degree;
  return d;
}

RingContext make_ring_context(const std::vector<std::pair<std::string, int>>& generators,
                              int degree_cap) {
  std::vector<Generator> gens;
  gens.reserve(generators.size());
  for (const auto& [name, degree] : generators) gens.push_back({name, degree});
  return GeneratorTable::make(std::move(gens), degree_cap);
}

GradedPoly GradedPoly::constant(RingContext ctx, const Rational& value) {
  GradedPoly p(std::move(ctx));
  if (!value.is_zero()) p.terms_.emplace(ExpVec(static_cast<size_t>(p.ctx_->size()), 0u), value);
  return p;
}

GradedPoly GradedPoly::generator(const RingContext& ctx, std::string_view name) {
  const auto idx = ctx->index_of(name);
  if (!idx) throw std::invalid_argument("GradedPoly: unknown generator '" + std::string(name) + "'");
  ExpVec e(static_cast<size_t>(ctx->size()), 0u);
  e[static_cast<size_t>(*idx)] = 1;
  return monomial(ctx, e, Rational(1));
}

GradedPoly GradedPoly::monomial(RingContext ctx, const ExpVec& exps, const Rational& coeff) {
  GradedPoly p(std::move(ctx));
  if (exps.size() != static_cast<size_t>(p.ctx_->size()))
    throw std::invalid_argument("GradedPoly: exponent vector size mismatch");
  if (!coeff.is_zero() && p.ctx_->term_degree(exps) <= p.ctx_->degree_cap())
    p.terms_.emplace(exps, coeff);
  return p;
}

Rational GradedPoly::constant_part() const {
  const ExpVec zero(static_cast<size_t>(ctx_->size()), 0u);
  const auto it = terms_.find(zero);
  return it == terms_.end() ? Rational(0) : it->second;
}

int GradedPoly::min_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    const int td = ctx_->term_degree(e);
    if (d < 0 || td < d) d = td;
  }
  return d;
}

int GradedPoly::max_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, ctx_->term_degree(e));
  return d;
}

bool GradedPoly::is_homogeneous(int degree) const {
  for (const auto& [e, c] : terms_)
    if (ctx_->term_degree(e) != degree) return false;
  return true;
}

void GradedPoly::require_same_context(const GradedPoly& o) const {
  if (ctx_ != o.ctx_)
    throw std::invalid_argument("GradedPoly: operands belong to different generator tables");
}

void GradedPoly::add_term(const ExpVec& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r(ctx_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  require_same_context(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  require_same_context(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  a.require_same_context(b);
  GradedPoly r(a.ctx_);
  const int cap = a.ctx_->degree_cap();
  const int n = a.ctx_->size();
  ExpVec sum(static_cast<size_t>(n), 0u);
  for (const auto& [ea, ca] : a.terms_) {
    const int da = a.ctx_->term_degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + b.ctx_->term_degree(eb) > cap) continue;
      for (int i = 0; i < n; ++i)
        sum[static_cast<size_t>(i)] = ea[static_cast<size_t>(i)] + eb[static_cast<size_t>(i)];
      r.add_term(sum, ca * cb);
    }
  }
  return r;
}

GradedPoly GradedPoly::scale(const Rational& r) const {
  GradedPoly out(ctx_);
  if (r.is_zero()) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * r);
  return out;
}

GradedPoly GradedPoly::pow(unsigned e) const {
  GradedPoly r = constant(ctx_, Rational(1));
  GradedPoly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}

bool operator==(const GradedPoly& a, const GradedPoly& b) {
  return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
}

GradedPoly GradedPoly::component(int degree) const {
  GradedPoly r(ctx_);
  for (const auto& [e, c] : terms_)
    if (ctx_->term_degree(e) == degree) r.terms_.emplace(e, c);
  return r;
}

GradedPoly GradedPoly::substitute(const std::map<std::string, GradedPoly>& bindings) const {
  std::vector<const GradedPoly*> repl(static_cast<size_t>(ctx_->size()), nullptr);
  for (const auto& [name, value] : bindings) {
    const auto idx = ctx_->index_of(name);
    if (!idx) throw std::invalid_argument("substitute: unknown generator '" + name + "'");
    if (value.context() != ctx_)
      throw std::invalid_argument("substitute: replacement from a different generator table");
    if (!value.is_zero() && !value.is_homogeneous(ctx_->gen(*idx).degree))
      throw std::invalid_argument("substitute: replacement for '" + name +
                                  "' is not homogeneous of degree " +
                                  std::to_string(ctx_->gen(*idx).degree));
    repl[static_cast<size_t>(*idx)] = &value;
  }
  GradedPoly out(ctx_);
  for (const auto& [e, c] : terms_) {
    GradedPoly term = constant(ctx_, c);
    for (int i = 0; i < ctx_->size() && !term.is_zero(); ++i) {
      const unsigned ei = e[static_cast<size_t>(i)];
      if (ei == 0) continue;
      if (repl[static_cast<size_t>(i)] != nullptr) {
        term = term * repl[static_cast<size_t>(i)]->pow(ei);
      } else {
        ExpVec mono(static_cast<size_t>(ctx_->size()), 0u);
        mono[static_cast<size_t>(i)] = ei;
        term = term * monomial(ctx_, mono, Rational(1));
      }
    }
    out += term;
  }
  return out;
}

GradedPoly GradedPoly::inverse() const {
  const Rational c0 = constant_part();
  if (c0.is_zero())
    throw std::domain_error("GradedPoly: inverse requires a nonzero constant part");
  // 1/(c0(1+n)) with n nilpotent: geometric series, finite under truncation.
  const GradedPoly n = (*this - constant(ctx_, c0)).scale(c0.inv());
  GradedPoly r = constant(ctx_, Rational(1));
  GradedPoly p = constant(ctx_, Rational(1));
  const int max_k = n.is_zero() ? 0 : ctx_->degree_cap() / std::max(2, n.min_degree());
  for (int k = 1; k <= max_k; ++k) {
    p = p * n;
    if (p.is_zero()) break;
    r += (k % 2 == 0) ? p : -p;
  }
  return r.scale(c0.inv());
}

std::string GradedPoly::str() const {
  if (terms_.empty()) return "0";
  // Graded-lex: total degree ascending, then exponent vector descending.
  std::vector<const std::pair<const ExpVec, Rational>*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [this](const auto* a, const auto* b) {
    const int da = ctx_->term_degree(a->first);
    const int db = ctx_->term_degree(b->first);
    if (da != db) return da < db;
    return a->first > b->first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string mono;
    for (int i = 0; i < ctx_->size(); ++i) {
      const unsigned ei = e[static_cast<size_t>(i)];
      if (ei == 0) continue;
      if (!mono.empty()) mono += " ";
      mono += ctx_->gen(i).name;
      if (ei > 1) mono += "^" + std::to_string(ei);
    }
    if (mono.empty()) {
      os << mag.str();
    } else if (mag.is_one()) {
      os << mono;
    } else {
      os << mag.str() << " " << mono;
    }
  }
  return os.str();
}

GradedPoly poly_exp(const GradedPoly& a) {
  if (!a.constant_part().is_zero())
    throw std::invalid_argument("poly_exp: argument must have zero constant part");
  GradedPoly r = GradedPoly::constant(a.context(), Rational(1));
  GradedPoly term = r;
  for (unsigned k = 1;; ++k) {
    term = (term * a).scale(Rational(1, static_cast<long>(k)));
    if (term.is_zero()) break;
    r += term;
  }
  return r;
}

GradedPoly poly_expm1_over(const GradedPoly& a, const Rational& s) {
  if (!a.constant_part().is_zero())
    throw std::invalid_argument("poly_expm1_over: argument must have zero constant part");
  // sum_{k>=1} s^k a^{k-1} / k!
  GradedPoly r = GradedPoly::constant(a.context(), s);
  GradedPoly apow = GradedPoly::constant(a.context(), Rational(1));
  Rational coeff = s;
  for (unsigned k = 2;; ++k) {
    apow = apow * a;
    if (apow.is_zero()) break;
    coeff = coeff * s / Rational(static_cast<long>(k));
    r += apow.scale(coeff);
  }
  return r;
}

std::vector<GradedPoly> newton_convert(NewtonDirection direction,
                                       const std::vector<GradedPoly>& values,
                                       int num_variables) {
  const int m = static_cast<int>(values.size());
  if (m == 0) return {};
  if (m > num_variables)
    throw std::invalid_argument("newton_convert: more inputs than variables");
  const RingContext& ctx = values.front().context();
  for (const auto& v : values)
    if (v.context() != ctx)
      throw std::invalid_argument("newton_convert: mixed generator tables");

  std::vector<GradedPoly> out;
  out.reserve(static_cast<size_t>(m));
  if (direction == NewtonDirection::kPowerToElementary) {
    // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i, with e_0 = 1.
    std::vector<GradedPoly> e;
    e.push_back(GradedPoly::constant(ctx, Rational(1)));
    for (int k = 1; k <= m; ++k) {
      GradedPoly acc(ctx);
      for (int i = 1; i <= k; ++i) {
        GradedPoly t = e[static_cast<size_t>(k - i)] * values[static_cast<size_t>(i - 1)];
        acc += (i % 2 == 1) ? t : -t;
      }
      e.push_back(acc.scale(Rational(1, k)));
      out.push_back(e.back());
    }
  } else {
    // p_k = sum_{i=1..k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
    std::vector<GradedPoly> p;
    for (int k = 1; k <= m; ++k) {
      GradedPoly acc(ctx);
      for (int i = 1; i <= k - 1; ++i) {
        GradedPoly t = values[static_cast<size_t>(i - 1)] * p[static_cast<size_t>(k - i - 1)];
        acc += (i % 2 == 1) ? t : -t;
      }
      GradedPoly tail = values[static_cast<size_t>(k - 1)].scale(Rational(k));
      acc += (k % 2 == 1) ? tail : -tail;
      p.push_back(acc);
      out.push_back(acc);
    }
  }
  return out;
}

}  // namespace acv
