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

#ifndef ACV_RING_HPP
#define ACV_RING_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acv/rational.hpp"

namespace acv {

/// One formal generator of a graded ring: a name and a positive even degree.
struct Generator {
  std::string name;
  int degree = 0;
};

class GeneratorTable;
using RingContext = std::shared_ptr<const GeneratorTable>;

/// Frozen table of named even-degree generators plus a degree cap.
/// Every GradedPoly refers to exactly one table; polynomials from
/// different tables never mix.
class GeneratorTable {
 public:
  static RingContext make(std::vector<Generator> generators, int degree_cap);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int i) const { return gens_.at(static_cast<size_t>(i)); }
  int degree_cap() const { return degree_cap_; }
  std::optional<int> index_of(std::string_view name) const;

  /// Total weighted degree of an exponent vector.
  int term_degree(const std::vector<unsigned>& exps) const;

 private:
  GeneratorTable(std::vector<Generator> g, int cap)
      : gens_(std::move(g)), degree_cap_(cap) {}
  std::vector<Generator> gens_;
  int degree_cap_;
};

/// Convenience wrapper matching the (name, degree) pair form.
RingContext make_ring_context(const std::vector<std::pair<std::string, int>>& generators,
                              int degree_cap);

using ExpVec = std::vector<unsigned>;

/// Sparse polynomial in the generators of one table, truncated at the
/// table's degree cap: any term whose weighted degree exceeds the cap is
/// discarded on construction. The zero polynomial is the empty term map,
/// so equality is structural.
class GradedPoly {
 public:
  explicit GradedPoly(RingContext ctx) : ctx_(std::move(ctx)) {}

  static GradedPoly constant(RingContext ctx, const Rational& value);
  static GradedPoly generator(const RingContext& ctx, std::string_view name);
  static GradedPoly monomial(RingContext ctx, const ExpVec& exps, const Rational& coeff);

  const RingContext& context() const { return ctx_; }
  const std::map<ExpVec, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Rational constant_part() const;
  /// Smallest weighted degree of a nonzero term; -1 for the zero polynomial.
  int min_degree() const;
  int max_degree() const;
  bool is_homogeneous(int degree) const;

  GradedPoly operator-() const;
  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);

  GradedPoly scale(const Rational& r) const;
  GradedPoly pow(unsigned e) const;

  friend bool operator==(const GradedPoly& a, const GradedPoly& b);
  friend bool operator!=(const GradedPoly& a, const GradedPoly& b) { return !(a == b); }

  /// Sum of exactly the terms of the given total degree.
  GradedPoly component(int degree) const;

  /// Ring homomorphism defined by generator -> replacement; unbound
  /// generators map to themselves. Each replacement must be homogeneous
  /// of the generator's own degree (zero counts as homogeneous).
  GradedPoly substitute(const std::map<std::string, GradedPoly>& bindings) const;

  /// Multiplicative inverse of a unit (nonzero constant part).
  GradedPoly inverse() const;

  /// Canonical rendering: graded-lex order (total degree ascending, then
  /// exponent vector descending in table order), coefficients as "p/q".
  std::string str() const;

 private:
  void add_term(const ExpVec& e, const Rational& c);
  void require_same_context(const GradedPoly& o) const;

  RingContext ctx_;
  std::map<ExpVec, Rational> terms_;
};

/// exp(a) = sum a^k/k!, finite because a must have zero constant part
/// (hence is nilpotent under truncation).
GradedPoly poly_exp(const GradedPoly& a);

/// (exp(s*a) - 1)/a = sum_{k>=1} s^k a^{k-1}/k!, the convergent finite sum
/// used where a formal division by a nilpotent class appears.
GradedPoly poly_expm1_over(const GradedPoly& a, const Rational& s);

enum class NewtonDirection { kPowerToElementary, kElementaryToPower };

/// Newton's identities between the first m power sums and the first m
/// elementary symmetric functions of num_variables quantities, applied
/// exactly in the polynomial ring. Requires m <= num_variables.
std::vector<GradedPoly> newton_convert(NewtonDirection direction,
                                       const std::vector<GradedPoly>& values,
                                       int num_variables);

}  // namespace acv

#endif  // ACV_RING_HPP
