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

// zCDP accounting, Gaussian-mechanism calibration for the private centering
// learner, and sample-size calculators for the halfspace learner.

#ifndef PRIVBOOST_PRIVACY_H_
#define PRIVBOOST_PRIVACY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace privboost {

struct LedgerEntry {
  std::string label;
  double rho = 0.0;

  bool operator==(const LedgerEntry&) const = default;
};

// Running total of zCDP costs. rho may be +inf for a non-private step.
class ZcdpLedger {
 public:
  ZcdpLedger() = default;

  double rho_total() const { return rho_total_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }

  // In-place append; throws kNegativeRho.
  void Append(double rho, std::string label);

 private:
  double rho_total_ = 0.0;
  std::vector<LedgerEntry> entries_;
};

// Functional composition: returns a new ledger with the entry appended.
ZcdpLedger Compose(const ZcdpLedger& ledger, double rho_new, std::string label);

struct ApproxDpParams {
  double epsilon = 1.0;
  double delta = 1e-6;

  // Throws kBadTarget for epsilon <= 0 and kBadDelta for delta outside (0,1).
  static ApproxDpParams Make(double epsilon, double delta);
};

// (rho, s): rho-zCDP against inputs whose distributions are within
// statistical distance s.
struct WeakLearnerPrivacy {
  double rho = 0.0;
  double s = 0.0;
};

// epsilon = rho + 2 sqrt(rho ln(1/delta)).
ApproxDpParams ZcdpToDp(double rho, double delta);

// The sufficient epsilon 3 sqrt(rho ln(1/delta)) used when sizing the
// halfspace learner's noise.
double ThreeRootEpsilon(double rho, double delta);

// Order-alpha Renyi divergence between N(mu, sigma^2 I) and N(mu', sigma^2 I)
// with ||mu - mu'||^2 = distance_sq: alpha * distance_sq / (2 sigma^2).
double GaussianRenyi(double distance_sq, double sigma, double alpha);

// Per-call zCDP cost of the noisy centering learner: the centering vector
// has L2 sensitivity 2 (1/(kappa n) + s), giving 2 (1/(kappa n) + s)^2 /
// sigma^2. Returns +inf at sigma = 0.
double WeakLearnerRho(double kappa, std::int64_t n, double s, double sigma);

// Smallest sigma such that `rounds` calls at s = 1/(kappa n) stay within the
// target. By default uses epsilon >= 3 sqrt(rho_T ln(1/delta)); with `exact`
// it inverts rho + 2 sqrt(rho ln(1/delta)) = epsilon instead.
double CalibrateSigma(const ApproxDpParams& target, std::int64_t rounds,
                      double kappa, std::int64_t n, bool exact = false);

// Terms of an asymptotic sample bound with every hidden constant set to 1.
struct SampleBoundTerms {
  double privacy = 0.0;
  double accuracy = 0.0;
  double noise = 0.0;
  double generalization = 0.0;

  double Total() const { return privacy + accuracy + noise + generalization; }
};

// Fat-shattering route (kappa = alpha / 4):
//   privacy  sqrt(ln(1/a) ln(1/d) ln(ln(1/a) / (b t^2))) / (e a t^2)
//   accuracy ln(1/(t a)) ln(1/a) / (a^2 t^2)
//   noise    ln(1/b) / (kappa t)
SampleBoundTerms FatShatteringBoundTerms(double alpha, double beta, double tau,
                                         double epsilon, double delta);
std::int64_t RequiredNFatShattering(double alpha, double beta, double tau,
                                    double epsilon, double delta,
                                    double bound_scale = 1.0);

// Privacy-only route: the same privacy term, accuracy 1/(a^2 t^2), the
// label-noise Chernoff requirement 96 ln(4/b) / (a t), and the transfer
// requirement ln(4 e' / d') / e'^2 evaluated once at e' = epsilon and once
// at e' = alpha (d' = min(delta, e' b / 4)).
SampleBoundTerms PrivacyOnlyBoundTerms(double alpha, double beta, double tau,
                                       double epsilon, double delta);
std::int64_t RequiredNPrivacyOnly(double alpha, double beta, double tau,
                                  double epsilon, double delta,
                                  double bound_scale = 1.0);

}  // namespace privboost

#endif  // PRIVBOOST_PRIVACY_H_
