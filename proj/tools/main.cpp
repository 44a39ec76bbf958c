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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acv/verifier.hpp"

namespace {

using acv::CheckStatus;
using acv::FormSeries;
using acv::LineConvention;
using acv::QExp;
using acv::Rational;
using acv::RunConfig;
using acv::SeriesVariant;
using acv::TheoremReport;
using acv::Verifier;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string q_order = "6";
  std::string convention;
  std::string format = "text";
  std::string out;
  int degree_cap = 0;  // 0: context default
};

void add_common(CLI::App* cmd, CommonOpts& opts, const char* default_order = "6") {
  opts.q_order = default_order;
  cmd->add_option("--q-order", opts.q_order, "truncation order for q-expansions (p or p/q)");
  cmd->add_option("--degree-cap", opts.degree_cap,
                  "override the cohomological degree cap (expand only)");
  cmd->add_option("--convention", opts.convention, "line-bundle convention (REAL2 or LINE1)");
  cmd->add_option("--format", opts.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", opts.out, "write output to this file instead of stdout");
}

RunConfig make_config(const CommonOpts& opts) {
  RunConfig cfg;
  cfg.q_order = QExp::parse(opts.q_order);
  if (!opts.convention.empty()) {
    const auto conv = acv::convention_from_name(opts.convention);
    if (!conv)
      throw CLI::ValidationError("--convention", "unknown convention '" + opts.convention +
                                                     "' (use REAL2 or LINE1)");
    cfg.convention = conv;
  }
  return cfg;
}

// Output goes to --out (under ACV_OUT_DIR when relative) or stdout.
int emit(const CommonOpts& opts, const std::string& payload) {
  if (opts.out.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  std::string path = opts.out;
  if (const char* dir = std::getenv("ACV_OUT_DIR"); dir != nullptr && path[0] != '/')
    path = std::string(dir) + "/" + path;
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot open output file " << path << "\n";
    return kExitUsage;
  }
  f << payload;
  return kExitOk;
}

json constants_json(const TheoremReport& r) {
  json arr = json::array();
  for (const auto& c : r.constants)
    arr.push_back({{"name", c.name},
                   {"expected", c.expected.str()},
                   {"computed", c.computed.str()},
                   {"ok", c.ok}});
  return arr;
}

json report_json(const TheoremReport& r) {
  return json{{"theorem", r.id},
              {"status", acv::status_name(r.status)},
              {"convention", r.convention == "-" ? json(nullptr) : json(r.convention)},
              {"difference", r.difference.str()},
              {"constants", constants_json(r)},
              {"q_order", r.q_order.str()},
              {"ms", r.millis}};
}

int cmd_expand(const std::string& name, const std::string& context_name, int component,
               const CommonOpts& opts) {
  const QExp order = QExp::parse(opts.q_order);
  std::ostringstream os;

  if (auto scalar = acv::named_series(name, order)) {
    if (opts.format == "json") {
      os << json{{"name", name}, {"q_order", order.str()}, {"series", scalar->str()}}.dump()
         << "\n";
    } else {
      os << scalar->str() << "\n";
    }
    return emit(opts, os.str());
  }

  // Context-dependent objects.
  static const std::vector<std::string> ctx_objects = {
      "Ahat", "Lhat", "chT", "chL", "chW1", "chW2", "chWbar1",
      "A", "A1", "A2", "A3", "Q_theta", "Q_direct"};
  const bool known = std::find(ctx_objects.begin(), ctx_objects.end(), name) !=
                     ctx_objects.end();
  if (!known) {
    std::cerr << "error: unknown object '" << name << "'\nscalar series:";
    for (const auto& n : acv::named_series_list()) std::cerr << " " << n;
    std::cerr << "\ncontext objects:";
    for (const auto& n : ctx_objects) std::cerr << " " << n;
    std::cerr << "\n";
    return kExitUsage;
  }

  const auto variant = SeriesVariant::from_name(context_name.empty() ? "Q14_2" : context_name);
  if (!variant) {
    std::cerr << "error: unknown context '" << context_name
              << "' (use Q14_2, Q14_1, R10, Q1_12, Q1_12_1, Q2_12 or Q2_12_1)\n";
    return kExitUsage;
  }
  const std::optional<int> cap =
      opts.degree_cap > 0 ? std::optional<int>(opts.degree_cap) : std::nullopt;
  const acv::ManifoldContext ctx = acv::variant_context(*variant, cap);
  const LineConvention conv = opts.convention == "LINE1" ? LineConvention::kLine1
                                                         : LineConvention::kReal2;

  const auto poly_out = [&](const acv::GradedPoly& p_in) {
    const acv::GradedPoly p = component >= 0 ? p_in.component(component) : p_in;
    if (opts.format == "json")
      os << json{{"name", name}, {"context", variant->name()}, {"value", p.str()}}.dump()
         << "\n";
    else
      os << p.str() << "\n";
    return emit(opts, os.str());
  };
  const auto series_out = [&](const FormSeries& s) {
    if (opts.format == "json")
      os << json{{"name", name},
                 {"context", variant->name()},
                 {"q_order", order.str()},
                 {"series", s.str()}}
                .dump()
         << "\n";
    else
      os << s.str() << "\n";
    return emit(opts, os.str());
  };

  try {
    if (name == "Ahat") return poly_out(acv::a_hat(ctx));
    if (name == "Lhat") return poly_out(acv::l_hat(ctx));
    if (name == "chT") return poly_out(acv::ch_tangent(ctx).value);
    if (name == "chL") return poly_out(acv::ch_line(ctx, conv).value);
    if (name == "chW1") return poly_out(acv::E8Character(ctx, 0, order).extract_W(1).value);
    if (name == "chW2") return poly_out(acv::E8Character(ctx, 1, order).extract_W(1).value);
    if (name == "chWbar1") return poly_out(acv::E8Character(ctx, 0, order).extract_W(2).value);
    if (name == "A") return poly_out(acv::anomaly_class(ctx, acv::AnomalyKind::kA));
    if (name == "A1") return poly_out(acv::anomaly_class(ctx, acv::AnomalyKind::kA1));
    if (name == "A2") return poly_out(acv::anomaly_class(ctx, acv::AnomalyKind::kA2));
    if (name == "A3") return poly_out(acv::anomaly_class(ctx, acv::AnomalyKind::kA3));
    if (name == "Q_theta") {
      const acv::WittenTwist twist = variant->id == acv::SeriesId::kQ1_12
                                         ? acv::WittenTwist::kSpinQ1
                                     : variant->id == acv::SeriesId::kQ2_12
                                         ? acv::WittenTwist::kSpinQ2
                                         : acv::WittenTwist::kSpinCQ;
      return series_out(acv::witten_theta(ctx, twist, order));
    }
    if (name == "Q_direct") {
      const acv::WittenTwist twist = variant->id == acv::SeriesId::kQ1_12
                                         ? acv::WittenTwist::kSpinQ1
                                     : variant->id == acv::SeriesId::kQ2_12
                                         ? acv::WittenTwist::kSpinQ2
                                         : acv::WittenTwist::kSpinCQ;
      return series_out(acv::witten_direct(ctx, twist, conv, order));
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int cmd_fit(const std::string& series_name, const std::string& group_str, int weight,
            const CommonOpts& opts) {
  const auto group = acv::group_from_name(group_str);
  if (!group) {
    std::cerr << "error: unknown group '" << group_str
              << "' (use SL2Z, Gamma0(2) or Gamma^0(2))\n";
    return kExitUsage;
  }
  const RunConfig cfg = make_config(opts);
  std::ostringstream os;
  acv::ModularFitResult result;

  if (const auto variant = SeriesVariant::from_name(series_name)) {
    if (acv::variant_group(*variant) != *group || acv::variant_weight(*variant) != weight) {
      std::cerr << "error: " << series_name << " fits over "
                << acv::group_name(acv::variant_group(*variant)) << " at weight "
                << acv::variant_weight(*variant) << "\n";
      return kExitUsage;
    }
    Verifier verifier(cfg);
    result = verifier.fit_variant(*variant, verifier.resolved_convention());
  } else if (auto scalar = acv::named_series(series_name, cfg.q_order)) {
    // Scalar series fit as constant forms in a generator-free ring.
    const acv::RingContext trivial = acv::make_ring_context({}, 2);
    const FormSeries s = acv::promote(*scalar, trivial);
    try {
      result = (*group == acv::FitGroup::kSL2Z) ? acv::fit_sl2z(s, weight)
                                                : acv::fit_gamma(s, *group, weight);
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      return kExitUsage;
    }
  } else {
    std::cerr << "error: unknown series '" << series_name << "'\n";
    return kExitUsage;
  }

  if (opts.format == "json") {
    json jr{{"series", series_name},
            {"group", acv::group_name(*group)},
            {"weight", weight},
            {"pass", result.pass},
            {"q_order", cfg.q_order.str()}};
    jr["basis"] = result.basis;
    json coeffs = json::array();
    for (size_t i = 0; i < result.coefficients.size(); ++i)
      coeffs.push_back({{"basis", result.basis[i]},
                        {"coefficient", result.coefficients[i].str()}});
    jr["coefficients"] = coeffs;
    json residuals = json::array();
    for (const auto& [u, r] : result.residuals)
      residuals.push_back({{"q_order", QExp::from_units(u).str()},
                           {"residual", r.str()},
                           {"zero", r.is_zero()}});
    jr["residuals"] = residuals;
    os << jr.dump() << "\n";
  } else {
    os << "fit of " << series_name << " over " << acv::group_name(*group) << " at weight "
       << weight << "\n"
       << result.str();
  }
  const int rc = emit(opts, os.str());
  if (rc != kExitOk) return rc;
  return result.pass ? kExitOk : kExitVerificationFailure;
}

int cmd_verify(const std::string& filter, const CommonOpts& opts) {
  const RunConfig cfg = make_config(opts);
  Verifier verifier(cfg);

  // A filter that names no registered check and matches nothing glob-wise
  // is almost certainly a typo'd id.
  bool any = false;
  for (const auto& id : Verifier::registry())
    any = any || Verifier::filter_matches(filter, id);
  if (!any && filter != "*") {
    std::cerr << "error: no registered check matches '" << filter << "'\nregistry:";
    for (const auto& id : Verifier::registry()) std::cerr << " " << id;
    std::cerr << "\n";
    return kExitUsage;
  }

  const auto reports = verifier.run_suite(filter);
  int failed = 0, passed = 0, conv_dep = 0;
  std::ostringstream os;
  json jarr = json::array();
  for (const auto& r : reports) {
    if (opts.format == "json") {
      jarr.push_back(report_json(r));
    } else {
      os << r.summary_line() << "\n";
      if (r.status != CheckStatus::kFail && !r.lhs.is_zero()) {
        os << "  lhs = " << r.lhs.str() << "\n";
        os << "  rhs = " << r.rhs.str() << "\n";
      }
    }
    switch (r.status) {
      case CheckStatus::kPass: ++passed; break;
      case CheckStatus::kFail: ++failed; break;
      case CheckStatus::kConventionDependent: ++conv_dep; break;
    }
  }
  if (opts.format == "json") {
    os << jarr.dump() << "\n";
  } else {
    os << "summary: " << passed << " PASS, " << conv_dep << " CONVENTION_DEPENDENT, "
       << failed << " FAIL (line convention resolved: "
       << acv::convention_name(verifier.resolved_convention()) << ")\n";
  }
  const int rc = emit(opts, os.str());
  if (rc != kExitOk) return rc;
  return failed == 0 ? kExitOk : kExitVerificationFailure;
}

int cmd_check_transforms(const CommonOpts& opts, const std::vector<std::string>& taus,
                         double tolerance) {
  const QExp order = QExp::parse(opts.q_order);
  std::vector<std::complex<double>> samples;
  if (taus.empty()) {
    samples = {{0.0, 2.0}, {1.0, 2.0}, {0.5, 2.0}};
  } else {
    for (const auto& t : taus) {
      // "re+imi" e.g. "0.5+2i" or "2i"
      double re = 0.0, im = 0.0;
      const auto plus = t.find('+', 1);
      try {
        if (plus == std::string::npos) {
          im = std::stod(t.substr(0, t.size() - 1));
        } else {
          re = std::stod(t.substr(0, plus));
          im = std::stod(t.substr(plus + 1, t.size() - plus - 2));
        }
      } catch (const std::exception&) {
        std::cerr << "error: cannot parse tau sample '" << t << "' (use re+imi, e.g. 0.5+2i)\n";
        return kExitUsage;
      }
      samples.emplace_back(re, im);
    }
  }

  std::ostringstream os;
  json jarr = json::array();
  bool all_pass = true;
  for (const auto& law : acv::transformation_laws()) {
    double max_residual = 0.0;
    for (const auto& tau : samples) {
      try {
        const auto check = acv::check_transformation_numeric(law.id, tau, order, tolerance);
        max_residual = std::max(max_residual, check.residual);
      } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
      }
    }
    const bool pass = max_residual < tolerance;
    all_pass = all_pass && pass;
    if (opts.format == "json")
      jarr.push_back({{"law", law.id},
                      {"description", law.description},
                      {"max_residual", max_residual},
                      {"pass", pass}});
    else
      os << law.id << ": max residual " << max_residual << (pass ? " PASS" : " FAIL") << "\n";
  }
  if (opts.format == "json") os << jarr.dump() << "\n";
  const int rc = emit(opts, os.str());
  if (rc != kExitOk) return rc;
  return all_pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acv: exact q-expansion engine and verifier for modular-form "
               "anomaly cancellation identities"};
  app.require_subcommand(1);

  CommonOpts expand_opts, fit_opts, verify_opts, transforms_opts;
  std::string expand_name, expand_context;
  int expand_component = -1;
  std::string fit_series, fit_group = "SL2Z";
  int fit_weight = 14;
  std::string verify_filter = "*";
  std::vector<std::string> tau_args;
  double tolerance = 1e-9;

  CLI::App* expand = app.add_subcommand("expand", "print a named series or form");
  expand->add_option("name", expand_name, "object name (see --help text for the registry)")
      ->required();
  expand->add_option("--context", expand_context,
                     "manifold context for form-valued objects (e.g. Q14_2, Q2_12)");
  expand->add_option("--component", expand_component,
                     "print only this total-degree component of a form");
  add_common(expand, expand_opts);

  CLI::App* fit = app.add_subcommand("fit", "fit a series against a modular-form basis");
  fit->add_option("series", fit_series, "series name (Q14_2, Q2_12, ... or a scalar name)")
      ->required();
  fit->add_option("--group", fit_group, "SL2Z, Gamma0(2) or Gamma^0(2)");
  fit->add_option("--weight", fit_weight, "modular weight");
  add_common(fit, fit_opts);

  CLI::App* verify = app.add_subcommand("verify", "run registered identity checks");
  verify->add_option("filter", verify_filter, "glob over check ids (default: *)");
  add_common(verify, verify_opts);

  CLI::App* transforms =
      app.add_subcommand("check-transforms", "numeric transformation-law spot checks");
  transforms->add_option("--tau", tau_args, "tau samples, e.g. 2i 1+2i 0.5+2i");
  transforms->add_option("--tolerance", tolerance, "numeric tolerance (default 1e-9)");
  add_common(transforms, transforms_opts, "48");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (expand->parsed())
      return cmd_expand(expand_name, expand_context, expand_component, expand_opts);
    if (fit->parsed()) return cmd_fit(fit_series, fit_group, fit_weight, fit_opts);
    if (verify->parsed()) return cmd_verify(verify_filter, verify_opts);
    if (transforms->parsed())
      return cmd_check_transforms(transforms_opts, tau_args, tolerance);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
