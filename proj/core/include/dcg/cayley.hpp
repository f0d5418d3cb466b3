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

#ifndef DCG_CAYLEY_HPP_
#define DCG_CAYLEY_HPP_

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dcg/homomorphism.hpp"

namespace dcg {

struct BallLimits {
  std::size_t max_elements = 20'000'000;
};

/// Cayley ball B_X(n) enumerated by BFS over the symmetrized alphabet.
/// Elements are stored in discovery order (identity first, distances
/// non-decreasing), with parent/edge links so that homomorphic images can be
/// replayed in one linear pass. Immutable once built; safe for concurrent
/// shared reads.
struct Ball {
  GroupPtr group;
  int radius = -1;
  std::vector<Element> elements;
  std::vector<std::uint32_t> parent;          // empty for filtered balls
  std::vector<std::int32_t> via;              // alphabet slot per element
  std::vector<std::size_t> sphere_offsets;    // sphere r = [offsets[r], offsets[r+1])
  std::vector<Element> alphabet;              // symmetrized, deduplicated
  ElementIndex index;

  std::size_t size() const { return elements.size(); }

  /// |B(r)| for r <= radius.
  std::size_t size_at(int r) const;

  /// Index range of the sphere at distance exactly r.
  std::pair<std::size_t, std::size_t> sphere_range(int r) const;

  /// Exact |g|_X if g is in the ball, nullopt otherwise.
  std::optional<int> distance(const Element& g) const;

  std::optional<std::size_t> position(const Element& g) const;

  /// Identifies (model, alphabet) for cache keys; radius-independent.
  std::uint64_t fingerprint() const;
};

/// BFS ball over the model's symmetrized generators. Deterministic order
/// given the generator order. Throws ResourceError past `limits`.
Ball enumerate_ball(GroupPtr group, int radius, const BallLimits& limits = {});

/// Same, over an alternative generating set (symmetrized and deduplicated
/// internally; that Y generates is the caller's assertion).
Ball enumerate_ball_with_generators(GroupPtr group, std::vector<Element> generating_set, int radius,
                                    const BallLimits& limits = {});

/// Continues BFS to a larger radius in place.
void extend_ball(Ball& ball, int radius, const BallLimits& limits = {});

/// Images of every ball element under a homomorphism, replayed through the
/// BFS parent links (requires an unfiltered ball).
std::vector<Element> replay_images(const Ball& ball, const Homomorphism& hom);

// ---------------------------------------------------------------------------
// f-balls: subgroup-restricted balls and balls in another generating set.
// ---------------------------------------------------------------------------

struct FBallSpec {
  std::string description;
  std::function<bool(const Element&)> member;  // subgroup-restriction mode
  std::vector<Element> generating_set;         // alternative-generating-set mode

  bool restriction() const { return static_cast<bool>(member); }

  static FBallSpec subgroup(std::string description, std::function<bool(const Element&)> member);
  static FBallSpec kernel(std::string description, Homomorphism hom);
  static FBallSpec alternative(std::string description, std::vector<Element> generating_set);
};

/// Subgroup-restriction mode: filters an enumerated ball, preserving BFS
/// order and distances (the f-ball of f = |.|_X restricted to H). The result
/// carries no parent links.
Ball f_ball(const Ball& base, const FBallSpec& spec);

/// Either mode from scratch.
Ball f_ball(GroupPtr group, const FBallSpec& spec, int radius, const BallLimits& limits = {});

// ---------------------------------------------------------------------------
// Coset densities (finite quotients).
// ---------------------------------------------------------------------------

struct CosetDensitySeries {
  std::vector<int> radii;  // 0..n_max
  std::vector<std::size_t> ball_sizes;
  std::vector<Rational> value;          // |gN ∩ B(n)| / |B(n)| for the queried g
  std::vector<Rational> max_deviation;  // max over all cosets of | |cN∩B(n)|/|B(n)| - 1/d |
  std::size_t coset_count = 0;
};

/// Exact per-radius densities of the coset of g under hom's kernel, plus the
/// worst-case deviation over all cosets at each radius.
CosetDensitySeries coset_density_series(const Ball& ball, const Homomorphism& hom, const Element& g);

// ---------------------------------------------------------------------------
// Growth fits.
// ---------------------------------------------------------------------------

enum class GrowthClass { kPolynomialLike, kExponentialLike, kInconclusive };

struct GrowthThresholds {
  double exponential_min_ratio = 1.05;  // tail ratio above this: exponential-like
  double polynomial_max_ratio = 1.02;   // tail ratio below this (and declining): polynomial-like
};

struct GrowthFit {
  std::vector<double> ratios;        // |B(n+1)|/|B(n)|
  double poly_degree_estimate = 0;   // LSQ slope of log|B(n)| vs log n, top half
  double exp_rate_estimate = 0;      // mean tail ratio
  GrowthClass classification = GrowthClass::kInconclusive;
};

GrowthFit growth_fit(std::span<const std::size_t> sizes, int first_radius,
                     const GrowthThresholds& thresholds = {});

const char* growth_class_name(GrowthClass c);

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

/// CSV of sphere sizes: header `n,size,cumulative`.
void write_sphere_csv(std::ostream& out, const Ball& ball);

/// Versioned binary ball cache. Loading validates magic, version and
/// fingerprint and rebuilds the hash index.
void save_ball(std::ostream& out, const Ball& ball);
Ball load_ball(std::istream& in, const GroupPtr& group);

}  // namespace dcg

#endif  // DCG_CAYLEY_HPP_
