// Copyright 2026 The dcgroup Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCG_THEORY_HPP_
#define DCG_THEORY_HPP_

#include "dcg/estimator.hpp"

namespace dcg {

enum class CheckStatus { kPass, kFail, kInconclusive };

const char* check_status_name(CheckStatus s);

/// Executable form of one inequality/criterion. With exact inputs the
/// tolerance is zero; tolerances only absorb sampling noise, and a sampled
/// check whose confidence intervals straddle the boundary reports
/// inconclusive rather than fail.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kInconclusive;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// No finite group has dc strictly between 5/8 and 1: every corpus member
/// with dc_finite > 5/8 must be abelian.
std::vector<CheckResult> gustafson_check(const std::vector<GroupPtr>& corpus);

/// dc(G) <= dc(N) * dc(G/N) for finite G, exact rationals end to end. The
/// kernel N is materialized as the preimage of the identity.
CheckResult gallagher_check(const GroupPtr& group, const Homomorphism& onto_quotient);

/// max over the window of the dc series <= dc(image subgroup) + tolerance
/// (zero tolerance for exact entries, `sampled_tolerance` otherwise).
CheckResult quotient_bound_check(const GroupPtr& group, const Homomorphism& hom,
                                 const DcSeries& series, std::pair<int, int> window,
                                 double sampled_tolerance = 0.05);

/// max(series_G over window) >= max(series_H over window) / d^2 - tolerance,
/// where series_H is the dc series of the index-d subgroup restriction.
CheckResult index_bound_check(const DcSeries& series_g, const DcSeries& series_h, int index,
                              std::pair<int, int> window, double tolerance = 0.05);

/// Torsion and centralizer density diagnostics. The torsion series is exact
/// and only produced when the model decides torsion elementwise; centralizer
/// density is maximized over seeded samples of certified non-torsion
/// elements (evidence, not proof of the uniform condition).
struct NegligibilityReport {
  std::vector<int> radii;
  std::vector<std::size_t> ball_sizes;
  bool torsion_available = false;
  std::vector<Rational> torsion_density;
  std::vector<Rational> max_centralizer_density;
  std::vector<int> centralizer_samples;  // certified non-torsion samples used per radius
  int requested_samples = 0;
};

NegligibilityReport negligibility_report(GroupPtr group, int n_max, int g_samples,
                                         std::uint64_t seed, const BallLimits& limits = {});

void write_negligibility_csv(std::ostream& out, const NegligibilityReport& report);

/// |g^m|_X / m for m = 1..m_max with prefix infima (Fekete: the limit equals
/// the infimum). Distances come from the model's proven word length when
/// available, otherwise from the supplied ball; powers escaping the ball
/// truncate the report.
struct TranslationLengthReport {
  std::vector<int> m_values;
  std::vector<double> ratios;
  std::vector<double> running_inf;
  double estimate = 0.0;
  bool truncated = false;
};

TranslationLengthReport translation_length(const Group& group, const Element& g, int m_max,
                                           const Ball* distance_ball = nullptr);

void write_translation_csv(std::ostream& out, const TranslationLengthReport& report);

/// Cyclic-centralizer linear bound |<root(g)> ∩ B(n)| <= 2pn+1 over seeded
/// samples of infinite-order elements. Root extraction is implemented for
/// free groups (period detection on the cyclically reduced word); other
/// models report inconclusive.
CheckResult centralizer_linear_bound_check(GroupPtr group, int samples, int n, int p,
                                           std::uint64_t seed, const BallLimits& limits = {});

/// JSON check report: array of {name, status, lhs, rhs, tolerance, detail}.
void write_checks_json(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace dcg

#endif  // DCG_THEORY_HPP_
