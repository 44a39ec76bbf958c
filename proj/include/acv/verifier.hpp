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

#ifndef ACV_VERIFIER_HPP
#define ACV_VERIFIER_HPP

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acv/charforms.hpp"

namespace acv {

/// The five q-series the verifier expands and fits. The 12-dimensional
/// pair exists in a two-bundle (weight 14) and a one-bundle (weight 10)
/// flavor; the others have fixed bundle counts.
enum class SeriesId { kQ14TwoBundles, kQ14OneBundle, kR10OneBundle, kQ1_12, kQ2_12 };

struct SeriesVariant {
  SeriesId id;
  int bundles;

  static SeriesVariant make(SeriesId id, int bundles = 0);
  std::string name() const;
  static std::optional<SeriesVariant> from_name(const std::string& name);
};

enum class FitGroup { kSL2Z, kGamma0_2, kGammaUp0_2 };
std::string group_name(FitGroup g);
std::optional<FitGroup> group_from_name(const std::string& name);

int variant_weight(const SeriesVariant& v);
FitGroup variant_group(const SeriesVariant& v);
int variant_dimension(const SeriesVariant& v);
ManifoldContext variant_context(const SeriesVariant& v,
                                std::optional<int> cap_override = std::nullopt);

/// Assembles exp((1/24) E2 A-class) x genus-twist factor x phi power x
/// E8 characters for the variant, truncated at the given order. The line
/// convention selects the spin^c line reading (ignored for the 12-dim
/// spin variants).
FormSeries build_q(const ManifoldContext& ctx, const SeriesVariant& v, QExp order,
                   LineConvention conv);

/// Reduces every coefficient of a form series to its degree-d component.
FormSeries series_component(const FormSeries& s, int degree);

struct ModularFitResult {
  std::vector<std::string> basis;
  std::vector<GradedPoly> coefficients;
  std::vector<QExp> fit_orders;
  std::map<std::int64_t, GradedPoly> residuals;  // exponent units -> residual
  bool pass = false;
  std::string str() const;
};

/// Fits a series against the one-dimensional SL2(Z) weight space
/// (E4^2 E6, E4 E6, or E4^2 for weights 14, 10, 8), solving the
/// coefficient from q^0 and reporting every higher-order residual.
ModularFitResult fit_sl2z(const FormSeries& series, int weight);

/// Fits against the level-2 bases
///   weight 14: (8 d)^7, (8 d)^5 e, (8 d)^3 e^2, (8 d) e^3
///   weight 10: (8 d)^5, (8 d)^3 e, (8 d) e^2
/// with (d, e) = (delta2, eps2) for Gamma^0(2) and (delta1, eps1) for
/// Gamma_0(2), solving from the lowest dim-many grid orders.
ModularFitResult fit_gamma(const FormSeries& series, FitGroup group, int weight);

enum class CheckStatus { kPass, kFail, kConventionDependent };
std::string status_name(CheckStatus s);

struct ConstantCheck {
  std::string name;
  Rational expected;
  Rational computed;
  bool ok = false;
};

struct TheoremReport {
  std::string id;
  CheckStatus status = CheckStatus::kFail;
  std::string convention;  // "-" when no line bundle is involved
  GradedPoly lhs;
  GradedPoly rhs;
  GradedPoly difference;
  std::vector<ConstantCheck> constants;
  QExp q_order;
  std::int64_t millis = 0;

  TheoremReport(GradedPoly l, GradedPoly r, GradedPoly d)
      : lhs(std::move(l)), rhs(std::move(r)), difference(std::move(d)) {}

  bool failed() const { return status == CheckStatus::kFail; }
  std::string summary_line() const;
};

struct RunConfig {
  QExp q_order = QExp::integer(6);
  std::optional<LineConvention> convention;  // force a single line reading
  std::vector<std::complex<double>> tau_samples = {{0.0, 2.0}, {1.0, 2.0}, {0.5, 2.0}};
  double tolerance = 1e-9;
};

/// Runs the registered identity checks. Builds, fits and E8 characters
/// are cached per configuration; all results are deterministic.
class Verifier {
 public:
  explicit Verifier(RunConfig config);

  static const std::vector<std::string>& registry();
  static bool filter_matches(const std::string& pattern, const std::string& id);

  /// One registered check; overrides perturb named constants (testing
  /// hook for the injected-fault property).
  TheoremReport verify(const std::string& id,
                       const std::map<std::string, Rational>& overrides = {});

  std::vector<TheoremReport> run_suite(const std::string& filter);

  /// Independent expansion of the Gamma_0(2) series against the basis
  /// reconstruction from the Gamma^0(2) fit (the modular S-swap identity
  /// with its 2^6 prefactor), for the given bundle count.
  TheoremReport gamma_swap_check(int bundles,
                                 const std::map<std::string, Rational>& overrides = {});

  /// The engine's own construction of the level-2 fit coefficients
  /// (h_0..h_3 for two bundles at weight 14, h'_0..h'_2 for one bundle at
  /// weight 10) from characteristic-form primitives.
  std::vector<GradedPoly> gamma_fit_expected_coefficients(int bundles);

  /// Cached build + top-component fit for a variant.
  const ModularFitResult& fit_variant(const SeriesVariant& v, LineConvention conv);
  const FormSeries& built_series(const SeriesVariant& v, LineConvention conv);

  const ConventionReport& convention_resolution();
  LineConvention resolved_convention();

  const RunConfig& config() const { return config_; }
  const ManifoldContext& context_for(const SeriesVariant& v);

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  RunConfig config_;
};

}  // namespace acv

#endif  // ACV_VERIFIER_HPP
