//
// Copyright 2026 The privboost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "privboost/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "privboost/error.h"

namespace privboost {
namespace {

void CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kBadDelta,
                "delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void CheckUnitOpen(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(
        ErrorCode::kBadParams,
        std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

void CheckBoundParams(double alpha, double beta, double tau, double epsilon,
                      double delta) {
  CheckUnitOpen(alpha, "alpha");
  CheckUnitOpen(beta, "beta");
  CheckUnitOpen(tau, "tau");
  CheckUnitOpen(delta, "delta");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kBadParams, "epsilon must be positive");
  }
}

// The privacy term shared by both bounds.
double PrivacyTerm(double alpha, double beta, double tau, double epsilon,
                   double delta) {
  const double log_inv_alpha = std::log(1.0 / alpha);
  const double inner = std::log(log_inv_alpha / (beta * tau * tau));
  if (!(inner > 0.0)) {
    throw Error(ErrorCode::kBadParams,
                "ln(ln(1/alpha) / (beta tau^2)) must be positive");
  }
  return std::sqrt(log_inv_alpha * std::log(1.0 / delta) * inner) /
         (epsilon * alpha * tau * tau);
}

std::int64_t Scaled(const SampleBoundTerms& terms, double bound_scale) {
  if (!(bound_scale > 0.0) || !std::isfinite(bound_scale)) {
    throw Error(ErrorCode::kBadParams, "bound_scale must be positive");
  }
  return static_cast<std::int64_t>(std::ceil(bound_scale * terms.Total()));
}

double TransferTerm(double eps, double delta, double beta) {
  const double d = std::min(delta, eps * beta / 4.0);
  return std::log(4.0 * eps / d) / (eps * eps);
}

}  // namespace

void ZcdpLedger::Append(double rho, std::string label) {
  if (!(rho >= 0.0)) {
    throw Error(ErrorCode::kNegativeRho,
                "rho must be non-negative, got " + std::to_string(rho));
  }
  rho_total_ += rho;
  entries_.push_back({std::move(label), rho});
}

ZcdpLedger Compose(const ZcdpLedger& ledger, double rho_new,
                   std::string label) {
  ZcdpLedger out = ledger;
  out.Append(rho_new, std::move(label));
  return out;
}

ApproxDpParams ApproxDpParams::Make(double epsilon, double delta) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kBadTarget, "epsilon must be positive");
  }
  CheckDelta(delta);
  return {epsilon, delta};
}

ApproxDpParams ZcdpToDp(double rho, double delta) {
  CheckDelta(delta);
  if (!(rho >= 0.0)) {
    throw Error(ErrorCode::kNegativeRho, "rho must be non-negative");
  }
  return {rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta)), delta};
}

double ThreeRootEpsilon(double rho, double delta) {
  CheckDelta(delta);
  if (!(rho >= 0.0)) {
    throw Error(ErrorCode::kNegativeRho, "rho must be non-negative");
  }
  return 3.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double GaussianRenyi(double distance_sq, double sigma, double alpha) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kBadSigma, "sigma must be positive");
  }
  if (!(distance_sq >= 0.0) || !(alpha >= 1.0)) {
    throw Error(ErrorCode::kBadParams, "need distance_sq >= 0 and alpha >= 1");
  }
  return alpha * distance_sq / (2.0 * sigma * sigma);
}

double WeakLearnerRho(double kappa, std::int64_t n, double s, double sigma) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kBadSigma, "sigma must be positive");
  }
  if (!(kappa > 0.0 && kappa <= 1.0) || n < 1 || !(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::kBadParams,
                "need kappa in (0, 1], n >= 1 and s in [0, 1]");
  }
  const double sensitivity_half = 1.0 / (kappa * static_cast<double>(n)) + s;
  return 2.0 * sensitivity_half * sensitivity_half / (sigma * sigma);
}

double CalibrateSigma(const ApproxDpParams& target, std::int64_t rounds,
                      double kappa, std::int64_t n, bool exact) {
  if (!(target.epsilon > 0.0)) {
    throw Error(ErrorCode::kBadTarget, "epsilon must be positive");
  }
  CheckDelta(target.delta);
  if (rounds < 1 || n < 1 || !(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kBadParams,
                "need rounds >= 1, n >= 1 and kappa in (0, 1]");
  }
  const double kn = kappa * static_cast<double>(n);
  const double t = static_cast<double>(rounds);
  const double log_inv_delta = std::log(1.0 / target.delta);
  if (!exact) {
    return std::sqrt(8.0 * t) * 3.0 * std::sqrt(log_inv_delta) /
           (kn * target.epsilon);
  }
  // rho + 2 sqrt(rho L) = eps  <=>  sqrt(rho) = sqrt(L + eps) - sqrt(L).
  const double root =
      std::sqrt(log_inv_delta + target.epsilon) - std::sqrt(log_inv_delta);
  const double rho_budget = root * root;
  return std::sqrt(8.0 * t / rho_budget) / kn;
}

SampleBoundTerms FatShatteringBoundTerms(double alpha, double beta, double tau,
                                         double epsilon, double delta) {
  CheckBoundParams(alpha, beta, tau, epsilon, delta);
  const double kappa = alpha / 4.0;
  SampleBoundTerms terms;
  terms.privacy = PrivacyTerm(alpha, beta, tau, epsilon, delta);
  terms.accuracy = std::log(1.0 / (tau * alpha)) * std::log(1.0 / alpha) /
                   (alpha * alpha * tau * tau);
  terms.noise = std::log(1.0 / beta) / (kappa * tau);
  return terms;
}

std::int64_t RequiredNFatShattering(double alpha, double beta, double tau,
                                    double epsilon, double delta,
                                    double bound_scale) {
  return Scaled(FatShatteringBoundTerms(alpha, beta, tau, epsilon, delta),
                bound_scale);
}

SampleBoundTerms PrivacyOnlyBoundTerms(double alpha, double beta, double tau,
                                       double epsilon, double delta) {
  CheckBoundParams(alpha, beta, tau, epsilon, delta);
  SampleBoundTerms terms;
  terms.privacy = PrivacyTerm(alpha, beta, tau, epsilon, delta);
  terms.accuracy = 1.0 / (alpha * alpha * tau * tau);
  terms.noise = 96.0 * std::log(4.0 / beta) / (alpha * tau);
  terms.generalization =
      TransferTerm(epsilon, delta, beta) + TransferTerm(alpha, delta, beta);
  return terms;
}

std::int64_t RequiredNPrivacyOnly(double alpha, double beta, double tau,
                                  double epsilon, double delta,
                                  double bound_scale) {
  return Scaled(PrivacyOnlyBoundTerms(alpha, beta, tau, epsilon, delta),
                bound_scale);
}

}  // namespace privboost
