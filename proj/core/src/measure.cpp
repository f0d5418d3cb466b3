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

#include "dcg/measure.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dcg {

namespace {

Measure from_support(std::vector<Element> support, std::vector<double> prob, bool uniform) {
  Measure mu;
  mu.support = std::move(support);
  mu.prob = std::move(prob);
  mu.uniform = uniform;
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    if (mu.index.insert(mu.support[i], i, mu.support) != i) {
      throw Error("measure support contains duplicates");
    }
  }
  return mu;
}

}  // namespace

Measure uniform_on_ball(const Ball& ball, int r) {
  std::size_t n = r < 0 ? ball.size() : ball.size_at(r);
  if (n == 0) throw SpecError("uniform_on_ball: empty ball");
  std::vector<Element> support(ball.elements.begin(),
                               ball.elements.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> prob(n, 1.0 / static_cast<double>(n));
  return from_support(std::move(support), std::move(prob), /*uniform=*/true);
}

Measure random_walk_measure(GroupPtr group, int steps, double laziness, const BallLimits& limits) {
  if (steps < 0) throw SpecError("random walk length must be >= 0");
  if (laziness < 0.0 || laziness >= 1.0) throw SpecError("laziness must lie in [0,1)");
  Ball ball = enumerate_ball(std::move(group), steps, limits);
  const Group& g = *ball.group;
  const std::size_t n = ball.size();
  const std::size_t deg = ball.alphabet.size();

  // Neighbor table for the interior B(steps-1); step s only ever leaves from
  // B(s), so boundary elements are never stepped from.
  const std::size_t interior = steps == 0 ? 0 : ball.size_at(steps - 1);
  std::vector<std::uint32_t> neighbor(interior * deg);
  for (std::size_t i = 0; i < interior; ++i) {
    for (std::size_t a = 0; a < deg; ++a) {
      auto pos = ball.position(g.multiply(ball.elements[i], ball.alphabet[a]));
      neighbor[i * deg + a] = static_cast<std::uint32_t>(*pos);
    }
  }

  const double step_p = (1.0 - laziness) / static_cast<double>(deg);
  std::vector<double> cur(n, 0.0), nxt(n, 0.0);
  cur[0] = 1.0;
  for (int s = 0; s < steps; ++s) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    const std::size_t reach = ball.size_at(s);
    for (std::size_t i = 0; i < reach; ++i) {
      if (cur[i] == 0.0) continue;
      nxt[i] += laziness * cur[i];
      for (std::size_t a = 0; a < deg; ++a) nxt[neighbor[i * deg + a]] += step_p * cur[i];
    }
    cur.swap(nxt);
  }

  std::vector<Element> support;
  std::vector<double> prob;
  for (std::size_t i = 0; i < n; ++i) {
    if (cur[i] > 0.0) {
      support.push_back(ball.elements[i]);
      prob.push_back(cur[i]);
    }
  }
  return from_support(std::move(support), std::move(prob), /*uniform=*/false);
}

ExactMeasure random_walk_measure_exact(GroupPtr group, int steps, const Rational& laziness,
                                       const BallLimits& limits) {
  if (steps < 0) throw SpecError("random walk length must be >= 0");
  if (steps > 20) throw SpecError("exact random walk mode is limited to 20 steps");
  if (laziness < Rational(0) || laziness >= Rational(1)) throw SpecError("laziness must lie in [0,1)");
  Ball ball = enumerate_ball(std::move(group), steps, limits);
  const Group& g = *ball.group;
  const std::size_t n = ball.size();
  const std::size_t deg = ball.alphabet.size();
  const Rational step_p = (Rational(1) - laziness) / Rational(static_cast<std::int64_t>(deg));

  std::vector<Rational> cur(n, Rational(0)), nxt(n, Rational(0));
  cur[0] = Rational(1);
  for (int s = 0; s < steps; ++s) {
    std::fill(nxt.begin(), nxt.end(), Rational(0));
    const std::size_t reach = ball.size_at(s);
    for (std::size_t i = 0; i < reach; ++i) {
      if (cur[i] == Rational(0)) continue;
      if (laziness != Rational(0)) nxt[i] += laziness * cur[i];
      for (std::size_t a = 0; a < deg; ++a) {
        auto pos = ball.position(g.multiply(ball.elements[i], ball.alphabet[a]));
        nxt[*pos] += step_p * cur[i];
      }
    }
    cur.swap(nxt);
  }

  ExactMeasure out;
  for (std::size_t i = 0; i < n; ++i) {
    if (cur[i] != Rational(0)) {
      out.support.push_back(ball.elements[i]);
      out.prob.push_back(cur[i]);
    }
  }
  return out;
}

Measure padded_measure(const Ball& ball, const Element& g, std::int64_t padding, int r) {
  if (padding < 0) throw SpecError("padding radius must be >= 0");
  const Group& model = *ball.group;
  model.validate(g);
  // Bounded cap: models that decide torsion ignore it, and models that
  // cannot prove infinite order fail fast instead of powering forever.
  OrderResult ord = model.order_of(g, 4096);
  if (!ord.infinite()) {
    throw SpecError(ord.finite()
                        ? "padded_measure requires an infinite-order element; '" + model.render(g) +
                              "' has order " + std::to_string(ord.order)
                        : "padded_measure requires a proven infinite-order element; the model "
                          "cannot certify '" + model.render(g) + "'");
  }

  const std::size_t n = r < 0 ? ball.size() : ball.size_at(r);
  std::vector<Element> support(ball.elements.begin(),
                               ball.elements.begin() + static_cast<std::ptrdiff_t>(n));
  ElementIndex index;
  for (std::size_t i = 0; i < support.size(); ++i) index.insert(support[i], i, support);
  auto add = [&](const Element& e) {
    std::size_t pos = support.size();
    if (index.insert(e, pos, support) == pos) support.push_back(e);
  };
  Element fwd = model.identity(), bwd = model.identity();
  const Element ginv = model.inverse(g);
  for (std::int64_t r = 1; r <= padding; ++r) {
    fwd = model.multiply(fwd, g);
    bwd = model.multiply(bwd, ginv);
    add(fwd);
    add(bwd);
  }
  std::vector<double> prob(support.size(), 1.0 / static_cast<double>(support.size()));
  return from_support(std::move(support), std::move(prob), /*uniform=*/true);
}

void write_measure_csv(std::ostream& out, const Group& group, const Measure& mu) {
  out << "element,prob\n";
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    out << "\"" << group.render(mu.support[i]) << "\"," << format_double(mu.prob[i]) << "\n";
  }
}

}  // namespace dcg
