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

#ifndef DCG_MEASURE_HPP_
#define DCG_MEASURE_HPP_

#include <iosfwd>

#include "dcg/cayley.hpp"

namespace dcg {

/// Finite-support probability measure on a group. No zero-probability atoms
/// are stored and the support has no duplicates; probabilities sum to 1
/// within 1e-12. `uniform` is set by constructors that are exactly uniform,
/// in which case every atom is 1/|support| and exact rational reasoning is
/// licensed downstream.
struct Measure {
  std::vector<Element> support;
  std::vector<double> prob;
  ElementIndex index;
  bool uniform = false;

  std::size_t size() const { return support.size(); }
  double mass(const Element& e) const {
    auto pos = index.find(e, support);
    return pos ? prob[*pos] : 0.0;
  }
};

/// Uniform measure on B(r) (the whole ball when r < 0).
Measure uniform_on_ball(const Ball& ball, int r = -1);

/// Exact distribution of the lazy simple random walk after `steps` steps:
/// stay put with probability `laziness`, otherwise move by a uniformly
/// chosen symmetrized generator. Computed by dynamic-programming convolution
/// over B(steps); per-atom floating error stays below 1e-12.
Measure random_walk_measure(GroupPtr group, int steps, double laziness = 0.0,
                            const BallLimits& limits = {});

/// Exact-rational random walk probabilities for oracle tests (steps <= 20;
/// laziness as an exact rational). Returns the support in ball order with
/// atoms of probability zero removed.
struct ExactMeasure {
  std::vector<Element> support;
  std::vector<Rational> prob;
};
ExactMeasure random_walk_measure_exact(GroupPtr group, int steps, const Rational& laziness = Rational(0),
                                       const BallLimits& limits = {});

/// Adversarial padded measure: uniform on B(r) ∪ {g^j : |j| <= padding}
/// (whole ball when r < 0). Requires a model-certified infinite-order g.
Measure padded_measure(const Ball& ball, const Element& g, std::int64_t padding, int r = -1);

/// CSV export, header `element,prob`, canonical element rendering.
void write_measure_csv(std::ostream& out, const Group& group, const Measure& mu);

}  // namespace dcg

#endif  // DCG_MEASURE_HPP_
