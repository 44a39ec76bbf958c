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

#ifndef ACV_MODFORMS_HPP
#define ACV_MODFORMS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "acv/even_series.hpp"
#include "acv/qseries.hpp"

namespace acv {

/// The four Jacobi theta functions in normalized form: every factor of
/// 2*pi*sqrt(-1) is absorbed into the argument, so all coefficients are
/// rational. Dictionary to the classical functions:
///   theta(v,tau)   = -sqrt(-1) * NTheta(z),   z the normalized 2*pi*sqrt(-1)*v
///   theta_k(v,tau) =             NTheta_k(z), k = 1,2,3
///   theta'(0,tau)  =  2*pi     * NThetaPrime(0)
enum class ThetaKind { kTheta, kTheta1, kTheta2, kTheta3 };

/// Euler's function phi(tau) = prod (1 - q^n).
RationalSeries phi(QExp order);
RationalSeries phi_pow(int p, QExp order);

/// NTheta_k(0). Zero series for kTheta (the odd function vanishes at 0).
RationalSeries theta_zero(ThetaKind kind, QExp order);

/// NThetaPrime(0) = q^{1/8} phi(tau)^3.
RationalSeries theta_prime_zero(QExp order);

/// Theta with a nilpotent degree-2 form as argument:
///   NTheta (z) = q^{1/8}(e^{z/2}-e^{-z/2}) prod (1-q^n)(1-e^z q^n)(1-e^{-z}q^n)
///   NTheta1(z) = q^{1/8}(e^{z/2}+e^{-z/2}) prod (1-q^n)(1+e^z q^n)(1+e^{-z}q^n)
///   NTheta2(z) = prod (1-q^n)(1-e^z q^{n-1/2})(1-e^{-z}q^{n-1/2})
///   NTheta3(z) = prod (1-q^n)(1+e^z q^{n-1/2})(1+e^{-z}q^{n-1/2})
FormSeries theta(ThetaKind kind, const GradedPoly& z, QExp order);

/// Eisenstein series, k in {2, 4, 6}:
///   E2 = 1 - 24 sum sigma_1(n) q^n
///   E4 = 1 + 240 sum sigma_3(n) q^n
///   E6 = 1 - 504 sum sigma_5(n) q^n
RationalSeries eisenstein(int k, QExp order);

/// Level-2 modular forms built from fourth powers of theta constants:
///   delta1 = (t2^4 + t3^4)/8   eps1 = t2^4 t3^4 / 16
///   delta2 = -(t1^4 + t3^4)/8  eps2 = t1^4 t3^4 / 16
enum class DeltaEps { kDelta1, kEps1, kDelta2, kEps2 };
RationalSeries delta_eps(DeltaEps which, QExp order);

/// log[NTheta_k(z)/NTheta_k(0)] for k = 1,2,3 as an even series in t = z^2.
EvenSeries log_theta_normalized(ThetaKind kind, int tmax, QExp order);

/// log of the per-root genus quotient, even in z:
///   kTheta  -> log[ z NTheta'(0) / NTheta(z) ]          (q->0: (z/2)/sinh(z/2))
///   kTheta1 -> the above + log[NTheta1(z)/NTheta1(0)]   (q->0: (z/2)/tanh(z/2))
///   kTheta2 -> the above + log[NTheta2(z)/NTheta2(0)]
EvenSeries log_theta_quotient(ThetaKind kind, int tmax, QExp order);

/// Registry of named scalar series for the CLI.
std::vector<std::string> named_series_list();
std::optional<RationalSeries> named_series(const std::string& name, QExp order);

struct TransformLaw {
  std::string id;
  std::string description;
};

/// Registered transformation laws, checked numerically on the upper
/// half-plane (S-transform tau -> -1/tau and, where classical, the
/// T-transform tau -> tau + 1).
std::vector<TransformLaw> transformation_laws();

struct TransformCheck {
  std::string id;
  double residual = 0.0;
  double tail_bound = 0.0;
  bool pass = false;
};

/// Evaluates both sides of the named law at tau via qs_eval_numeric and
/// reports |LHS - RHS|. Throws std::domain_error when the truncation tail
/// exceeds the tolerance (the caller must raise the order).
TransformCheck check_transformation_numeric(const std::string& law_id,
                                            std::complex<double> tau, QExp order,
                                            double tol);

}  // namespace acv

#endif  // ACV_MODFORMS_HPP
