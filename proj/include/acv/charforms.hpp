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

#ifndef ACV_CHARFORMS_HPP
#define ACV_CHARFORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "acv/modforms.hpp"
#include "acv/qseries.hpp"

namespace acv {

enum class Structure { kSpin, kSpinC };

/// Generator table for one manifold/bundle setup. Internal generators are
/// power sums of squared normalized Chern roots:
///   c            first Chern class of the spin^c line bundle (degree 2)
///   s1..s{d/4}   tangent power sums, s_k of degree 4k
///   gi1..gi3     power sums of the first E8 bundle's formal roots
///   gj1..gj3     same for the second bundle
/// with gi1 = -(1/30) c2(W_i). The degree cap is the dimension.
class ManifoldContext {
 public:
  /// cap_override (exploration aid; must be even and >= 4) lowers the
  /// truncation below the dimension; generators above it are dropped.
  static ManifoldContext make(int dimension, Structure structure, int e8_bundles,
                              std::optional<int> cap_override = std::nullopt);

  int dimension() const { return dimension_; }
  Structure structure() const { return structure_; }
  int root_pairs() const { return dimension_ / 2; }
  int e8_bundles() const { return e8_bundles_; }
  const RingContext& ring() const { return ring_; }
  /// Largest power-sum index kept under the cap.
  int max_power_sum() const { return ring_->degree_cap() / 4; }

  GradedPoly zero() const { return GradedPoly(ring_); }
  GradedPoly constant(const Rational& r) const { return GradedPoly::constant(ring_, r); }
  GradedPoly c() const;
  GradedPoly s(int k) const;
  GradedPoly g(int bundle, int k) const;
  std::string bundle_prefix(int bundle) const;

 private:
  ManifoldContext(int d, Structure st, int b, RingContext r)
      : dimension_(d), structure_(st), e8_bundles_(b), ring_(std::move(r)) {}
  int dimension_;
  Structure structure_;
  int e8_bundles_;
  RingContext ring_;
};

/// A Chern character: a graded form whose degree-0 part is the (virtual) rank.
struct ChernCharacter {
  GradedPoly value;

  Rational rank() const { return value.constant_part(); }

  ChernCharacter operator+(const ChernCharacter& o) const { return {value + o.value}; }
  ChernCharacter operator-(const ChernCharacter& o) const { return {value - o.value}; }
  ChernCharacter operator*(const ChernCharacter& o) const { return {value * o.value}; }
  ChernCharacter operator-() const { return {-value}; }
  ChernCharacter add_rank(const Rational& r) const {
    return {value + GradedPoly::constant(value.context(), r)};
  }
  ChernCharacter scale(const Rational& r) const { return {value.scale(r)}; }
};

/// A-hat genus: exp(sum a_k s_k), a_k the z^{2k} coefficients of
/// log((z/2)/sinh(z/2)).
GradedPoly a_hat(const ManifoldContext& ctx);

/// Hirzebruch factor per root pair, (z/2)/tanh(z/2), as exp(sum l_k s_k).
GradedPoly l_hat(const ManifoldContext& ctx);

/// ch of the reduced complexified tangent bundle: sum_k 2 s_k/(2k)!.
ChernCharacter ch_tangent(const ManifoldContext& ctx);

/// The two candidate readings of the reduced line bundle feeding the
/// Lambda twist:
///   kReal2: L_C + conj(L_C) - 2, ch = e^c + e^{-c} - 2, with q^0 line
///           factor (e^{c/2} - e^{-c/2})/2 (the theta-quotient reading);
///   kLine1: L_C - 1, ch = e^c - 1, with q^0 line factor e^{c/2} (the
///           literal exp(c/2) reading).
enum class LineConvention { kReal2, kLine1 };

std::string convention_name(LineConvention c);
std::optional<LineConvention> convention_from_name(const std::string& name);

ChernCharacter ch_line(const ManifoldContext& ctx, LineConvention conv);
GradedPoly line_factor_q0(const ManifoldContext& ctx, LineConvention conv);

/// Adams operation on characters: scales the degree-2d component by k^d.
ChernCharacter adams(unsigned k, const ChernCharacter& x);

/// Universal lambda-ring formulas, valid for virtual arguments.
ChernCharacter lambda2(const ChernCharacter& x);
ChernCharacter lambda3(const ChernCharacter& x);
ChernCharacter sym2(const ChernCharacter& x);

/// ch(V_b) for the level-1 E8 series: phi^{-8} * (P1 + P2 + P3)/2 with
/// P_k = prod_{l=1..8} NTheta_k(root_l), computed as exp-of-log in the
/// bundle's power sums.
class E8Character {
 public:
  E8Character(const ManifoldContext& ctx, int bundle, QExp order);
  const FormSeries& series() const { return series_; }
  /// q^n coefficient as a character (n=1: ch(W), n=2: ch(W-bar)).
  ChernCharacter extract_W(int n) const;

 private:
  FormSeries series_;
};

FormSeries e8_character(const ManifoldContext& ctx, int bundle, QExp order);

/// The q-indexed twist bundles whose characters the engine expands.
///   kSpinCQ: tensor_n S_{q^n}(T~) x tensor_m Lambda_{-q^m}(L~)    [spin^c]
///   kSpinQ1: tensor_n S_{q^n}(T~) x tensor_m Lambda_{q^m}(T~)     [spin]
///   kSpinQ2: tensor_n S_{q^n}(T~) x tensor_m Lambda_{-q^{m-1/2}}(T~)
enum class WittenTwist { kSpinCQ, kSpinQ1, kSpinQ2 };

/// Chern character of the twist bundle alone, via Adams-operation
/// generating functions (no theta functions). For kSpinCQ the q^0 line
/// factor is NOT included; the Lambda factor uses the given convention.
FormSeries witten_direct(const ManifoldContext& ctx, WittenTwist twist,
                         LineConvention conv, QExp order);

/// The spin^c twist with an arbitrary virtual line character feeding the
/// Lambda factor: ch(tensor_n S_{q^n}(T~)) x ch(tensor_m Lambda_{-q^m}(x)).
FormSeries witten_direct_spin_c(const ManifoldContext& ctx, const ChernCharacter& x,
                                QExp order);

/// The same object times its genus, via the closed theta-quotient route:
///   kSpinQ2: A-hat x twist                      (per-root theta2 quotient)
///   kSpinQ1: 2^{root_pairs} x L-hat x twist     (per-root theta1 quotient)
///   kSpinCQ: A-hat x line factor x twist        (line: NTheta(c)/(t1 t2 t3)(0))
FormSeries witten_theta(const ManifoldContext& ctx, WittenTwist twist, QExp order);

/// NTheta(c) / (NTheta1 NTheta2 NTheta3)(0): the spin^c line factor of the
/// theta route; equals lf0(kReal2) * ch(tensor Lambda_{-q^m}(L~_Real2)).
FormSeries line_factor_theta(const ManifoldContext& ctx, QExp order);

/// Degree-4 anomaly classes in normalized generators:
///   A  = s1 - c^2 - gi1 - gj1
///   A1 = s1 - c^2 - gi1
///   A2 = -gi1 - gj1
///   A3 = -gi1
enum class AnomalyKind { kA, kA1, kA2, kA3 };
GradedPoly anomaly_class(const ManifoldContext& ctx, AnomalyKind which);

/// A candidate reading of the undefined reduced line bundle: the virtual
/// character feeding the Lambda twist plus the q^0 line factor.
struct LineCandidate {
  std::string name;
  ChernCharacter ch_l;
  GradedPoly lf0;
};

LineCandidate line_candidate(const ManifoldContext& ctx, LineConvention conv);

struct ConventionEntry {
  std::string name;
  bool match = false;
  std::optional<QExp> first_mismatch;
  // theta route minus direct route, per q-order (nonzero entries only).
  std::map<std::int64_t, GradedPoly> residuals;
  explicit ConventionEntry(std::string n) : name(std::move(n)) {}
};

struct ConventionReport {
  std::optional<LineConvention> matched;
  std::vector<ConventionEntry> entries;
  QExp order;
  std::string str() const;
};

/// Compares a_hat x lf0 x witten_direct against witten_theta for each
/// candidate; at most one candidate can match, and a matching registered
/// convention becomes the default for verification runs.
ConventionReport resolve_l_convention(const ManifoldContext& ctx,
                                      const std::vector<LineConvention>& candidates,
                                      QExp order);
ConventionReport resolve_l_convention(const ManifoldContext& ctx,
                                      const std::vector<LineCandidate>& candidates,
                                      QExp order);

}  // namespace acv

#endif  // ACV_CHARFORMS_HPP
