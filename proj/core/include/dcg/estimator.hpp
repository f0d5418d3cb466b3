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

#ifndef DCG_ESTIMATOR_HPP_
#define DCG_ESTIMATOR_HPP_

#include <variant>

#include "dcg/equations.hpp"
#include "dcg/measure.hpp"

namespace dcg {

enum class EstimateMode { kExact, kSampled };

/// One density value. `exact` is set for exact computations over uniform
/// measures (weighted enumeration over float measures is exact mode without
/// a rational); `ci95`/`seed` only for sampled mode.
struct EstimateReport {
  double value = 0.0;
  std::optional<Rational> exact;
  EstimateMode mode = EstimateMode::kExact;
  std::uint64_t samples = 0;
  std::optional<std::pair<double, double>> ci95;
  std::optional<std::uint64_t> seed;
};

struct EstimatorOptions {
  enum class Mode { kAuto, kExact, kSampled };
  Mode mode = Mode::kAuto;
  std::uint64_t budget = 1'000'000'000;  // element multiplications for exact work
  std::uint64_t samples = 100'000;
  std::optional<std::uint64_t> seed;     // mandatory when sampling
  int threads = default_threads();
};

/// 95% Wilson score interval for `successes` out of `samples`.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t samples);

// ---------------------------------------------------------------------------
// Exact degree of commutativity.
// ---------------------------------------------------------------------------

/// Exact |{(u,v) in B(r)^2 : uv = vu}| / |B(r)|^2 (whole ball when r < 0).
/// Throws ResourceError when |B(r)|^2 exceeds the budget; sampled mode is the
/// advertised fallback.
Rational dc_exact_on_ball(const Ball& ball, int r = -1,
                          std::uint64_t budget = 1'000'000'000, int threads = default_threads());

/// Exact dc over a whole finite group.
Rational dc_finite(const Group& g, std::uint64_t budget = 1'000'000'000,
                   int threads = default_threads());

/// Exact |{u in B(r) : ug = gu}|.
std::size_t centralizer_in_ball(const Ball& ball, const Element& g, int r = -1);

// ---------------------------------------------------------------------------
// Degree of satisfiability.
// ---------------------------------------------------------------------------

struct DsValue {
  double value = 0.0;
  std::optional<Rational> exact;  // present when the measure is uniform
};

/// Exact sum over Supp(mu)^k of the product measure mass of solution tuples.
/// Throws ResourceError when |Supp|^k exceeds the budget.
DsValue ds_exact(const Group& g, const EquationSystem& system, const Measure& mu,
                 std::uint64_t budget = 1'000'000'000, int threads = default_threads());

/// Monte-Carlo estimate from `samples` i.i.d. tuples drawn from mu^k; the
/// result is deterministic given the seed (substreams are derived per
/// logical chunk, independent of thread count).
EstimateReport ds_sampled(const Group& g, const EquationSystem& system, const Measure& mu,
                          std::uint64_t samples, std::uint64_t seed, int threads = default_threads());

// ---------------------------------------------------------------------------
// Per-radius series.
// ---------------------------------------------------------------------------

struct UniformBallFamily {};
struct RandomWalkFamily {
  double laziness = 0.0;
};
struct PaddedFamily {
  Element element;                    // infinite-order padding element
  std::vector<std::int64_t> padding;  // M_n per requested radius
};
struct FBallFamily {
  FBallSpec spec;
};
using MeasureFamily = std::variant<UniformBallFamily, RandomWalkFamily, PaddedFamily, FBallFamily>;

/// Per-radius dc estimates. `running_max` is the finite-n surrogate for the
/// limsup; no limit is ever claimed or extrapolated.
struct DcSeries {
  std::vector<int> radii;
  std::vector<std::size_t> support_sizes;
  std::vector<EstimateReport> entries;
  std::vector<double> running_max;
};

/// Commutation density series over the measure family: exact mode when the
/// per-radius support fits the budget (auto), sampled otherwise.
DcSeries dc_series(GroupPtr group, const std::vector<int>& radii, const MeasureFamily& family,
                   const EstimatorOptions& options = {}, const BallLimits& limits = {});

/// Same over a prebuilt ball with radius >= radii.back(). For the
/// alternative-generating-set f-ball family the ball must already be
/// enumerated over that generating set.
DcSeries dc_series(const Ball& ball, const std::vector<int>& radii, const MeasureFamily& family,
                   const EstimatorOptions& options = {});

/// CSV schema: n,ball_size,mode,value,exact_num,exact_den,ci_lo,ci_hi,seed
void write_series_csv(std::ostream& out, const DcSeries& series);

}  // namespace dcg

#endif  // DCG_ESTIMATOR_HPP_
