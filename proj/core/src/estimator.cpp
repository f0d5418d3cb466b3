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

#include "dcg/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace dcg {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t samples) {
  if (samples == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th normal percentile
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The score interval hits the endpoints exactly at p in {0,1}; pin them so
  // degenerate intervals come out as (lo,1) and (0,hi) without float fuzz.
  double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = successes == samples ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

bool commutes(const Group& g, const Element& u, const Element& v) {
  return g.multiply(u, v) == g.multiply(v, u);
}

/// Distance label per ball position, from the sphere offsets.
std::vector<std::int32_t> distance_labels(const Ball& ball, std::size_t count) {
  std::vector<std::int32_t> dist(count);
  for (int r = 0; r <= ball.radius; ++r) {
    auto [lo, hi] = ball.sphere_range(r);
    for (std::size_t i = lo; i < std::min(hi, count); ++i) dist[i] = r;
  }
  return dist;
}

/// Ordered commuting-pair counts bucketed by max(|u|, |v|), for all radii at
/// once. Uses the symmetry of the commuting relation: each unordered
/// non-diagonal pair counts twice.
std::vector<std::int64_t> commuting_pair_buckets(const Ball& ball, std::size_t count, int radius,
                                                 int threads) {
  const Group& g = *ball.group;
  std::vector<std::int32_t> dist = distance_labels(ball, count);
  auto chunk_counts = run_chunked<std::vector<std::int64_t>>(
      count, threads, [&](const ChunkRange& c) {
        std::vector<std::int64_t> buckets(static_cast<std::size_t>(radius) + 1, 0);
        for (std::size_t u = c.begin; u < c.end; ++u) {
          buckets[static_cast<std::size_t>(dist[u])] += 1;  // (u,u)
          for (std::size_t v = u + 1; v < count; ++v) {
            if (commutes(g, ball.elements[u], ball.elements[v])) {
              buckets[static_cast<std::size_t>(std::max(dist[u], dist[v]))] += 2;
            }
          }
        }
        return buckets;
      });
  std::vector<std::int64_t> total(static_cast<std::size_t>(radius) + 1, 0);
  for (const auto& part : chunk_counts) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
  }
  return total;
}

}  // namespace

Rational dc_exact_on_ball(const Ball& ball, int r, std::uint64_t budget, int threads) {
  const int radius = r < 0 ? ball.radius : r;
  const std::size_t n = ball.size_at(radius);
  if (n == 0) throw SpecError("dc over an empty ball");
  if (static_cast<std::uint64_t>(n) * n > budget) {
    throw ResourceError("exact dc needs " + std::to_string(static_cast<std::uint64_t>(n) * n) +
                        " element multiplications, over the budget of " + std::to_string(budget) +
                        "; use sampled mode");
  }
  auto buckets = commuting_pair_buckets(ball, n, radius, threads);
  std::int64_t commuting = 0;
  for (std::int64_t b : buckets) commuting += b;
  return Rational(commuting, static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n));
}

Rational dc_finite(const Group& g, std::uint64_t budget, int threads) {
  if (!g.finite()) throw SpecError("dc_finite requires a finite model, got " + g.name());
  const auto& elems = g.elements();
  const std::size_t n = elems.size();
  if (static_cast<std::uint64_t>(n) * n > budget) {
    throw ResourceError("exact dc over " + g.name() + " exceeds the budget; use sampled mode");
  }
  auto counts = run_chunked<std::int64_t>(n, threads, [&](const ChunkRange& c) {
    std::int64_t commuting = 0;
    for (std::size_t u = c.begin; u < c.end; ++u) {
      commuting += 1;
      for (std::size_t v = u + 1; v < n; ++v) {
        if (commutes(g, elems[u], elems[v])) commuting += 2;
      }
    }
    return commuting;
  });
  std::int64_t commuting = 0;
  for (std::int64_t c : counts) commuting += c;
  return Rational(commuting, static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n));
}

std::size_t centralizer_in_ball(const Ball& ball, const Element& g, int r) {
  ball.group->validate(g);
  const std::size_t n = r < 0 ? ball.size() : ball.size_at(r);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (commutes(*ball.group, ball.elements[i], g)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// ds
// ---------------------------------------------------------------------------

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

struct PreparedSystem {
  const EquationSystem* system;
  std::vector<Element> support_inverse;
};

bool tuple_solves(const Group& g, const PreparedSystem& prep, const std::vector<Element>& support,
                  std::span<const std::size_t> idx) {
  const Element id = g.identity();
  for (const Word& w : prep.system->words) {
    Element acc = id;
    for (std::int32_t letter : w.letters) {
      std::size_t var = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
      const Element& atom =
          letter > 0 ? support[idx[var]] : prep.support_inverse[idx[var]];
      acc = g.multiply(acc, atom);
    }
    if (acc != id) return false;
  }
  return true;
}

}  // namespace

DsValue ds_exact(const Group& g, const EquationSystem& system, const Measure& mu,
                 std::uint64_t budget, int threads) {
  const int k = system.arity;
  const std::size_t s = mu.size();
  if (s == 0) throw SpecError("ds over an empty measure");
  const std::uint64_t tuples = checked_pow(s, k, budget);
  if (tuples > budget) {
    throw ResourceError("exact ds needs |support|^k = " + std::to_string(s) + "^" +
                        std::to_string(k) + " tuple evaluations, over the budget of " +
                        std::to_string(budget) + "; use sampled mode");
  }
  PreparedSystem prep{&system, {}};
  prep.support_inverse.reserve(s);
  for (const Element& e : mu.support) prep.support_inverse.push_back(g.inverse(e));

  struct ChunkAcc {
    double mass = 0.0;
    std::int64_t solutions = 0;
  };
  auto parts = run_chunked<ChunkAcc>(s, threads, [&](const ChunkRange& c) {
    ChunkAcc acc;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    for (std::size_t first = c.begin; first < c.end; ++first) {
      idx.assign(static_cast<std::size_t>(k), 0);
      idx[0] = first;
      for (;;) {
        if (tuple_solves(g, prep, mu.support, idx)) {
          acc.solutions += 1;
          double w = 1.0;
          for (int i = 0; i < k; ++i) w *= mu.prob[idx[static_cast<std::size_t>(i)]];
          acc.mass += w;
        }
        // Odometer over positions 1..k-1 (position 0 is the chunk variable).
        int pos = k - 1;
        while (pos >= 1) {
          if (++idx[static_cast<std::size_t>(pos)] < s) break;
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 1) break;
      }
    }
    return acc;
  });
  double mass = 0.0;
  std::int64_t solutions = 0;
  for (const ChunkAcc& p : parts) {
    mass += p.mass;
    solutions += p.solutions;
  }
  DsValue out;
  if (mu.uniform) {
    std::int64_t denom = 1;
    for (int i = 0; i < k; ++i) denom *= static_cast<std::int64_t>(s);
    out.exact = Rational(solutions, denom);
    out.value = out.exact->value();
  } else {
    out.value = mass;
  }
  return out;
}

EstimateReport ds_sampled(const Group& g, const EquationSystem& system, const Measure& mu,
                          std::uint64_t samples, std::uint64_t seed, int threads) {
  if (samples < 100) throw SpecError("sampled mode needs at least 100 samples");
  const int k = system.arity;
  const std::size_t s = mu.size();
  if (s == 0) throw SpecError("ds over an empty measure");

  std::vector<double> cumulative(s);
  double acc = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    acc += mu.prob[i];
    cumulative[i] = acc;
  }
  cumulative[s - 1] = 1.0;

  PreparedSystem prep{&system, {}};
  prep.support_inverse.reserve(s);
  for (const Element& e : mu.support) prep.support_inverse.push_back(g.inverse(e));

  auto parts = run_chunked<std::uint64_t>(
      static_cast<std::size_t>(samples), threads, [&](const ChunkRange& c) {
        std::mt19937_64 rng = make_rng(seed, c.index);
        std::uint64_t hits = 0;
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        for (std::size_t i = c.begin; i < c.end; ++i) {
          for (int v = 0; v < k; ++v) {
            double u = next_unit(rng);
            idx[static_cast<std::size_t>(v)] = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
          }
          if (tuple_solves(g, prep, mu.support, idx)) ++hits;
        }
        return hits;
      });
  std::uint64_t hits = 0;
  for (std::uint64_t p : parts) hits += p;

  EstimateReport report;
  report.mode = EstimateMode::kSampled;
  report.samples = samples;
  report.seed = seed;
  report.value = static_cast<double>(hits) / static_cast<double>(samples);
  report.ci95 = wilson_interval(hits, samples);
  return report;
}

// ---------------------------------------------------------------------------
// dc series over measure families
// ---------------------------------------------------------------------------

namespace {

EstimateReport sampled_pair_report(const Ball& ball, std::size_t support, std::uint64_t samples,
                                   std::uint64_t seed, int stream_salt, int threads) {
  const Group& g = *ball.group;
  auto parts = run_chunked<std::uint64_t>(
      static_cast<std::size_t>(samples), threads, [&](const ChunkRange& c) {
        std::mt19937_64 rng =
            make_rng(seed, (static_cast<std::uint64_t>(stream_salt) << 16) | c.index);
        std::uint64_t hits = 0;
        for (std::size_t i = c.begin; i < c.end; ++i) {
          auto u = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(support));
          auto v = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(support));
          if (commutes(g, ball.elements[u], ball.elements[v])) ++hits;
        }
        return hits;
      });
  std::uint64_t hits = 0;
  for (std::uint64_t p : parts) hits += p;
  EstimateReport report;
  report.mode = EstimateMode::kSampled;
  report.samples = samples;
  report.seed = seed;
  report.value = static_cast<double>(hits) / static_cast<double>(samples);
  report.ci95 = wilson_interval(hits, samples);
  return report;
}

EstimateReport exact_report(std::int64_t commuting, std::size_t support) {
  EstimateReport report;
  report.mode = EstimateMode::kExact;
  report.exact = Rational(commuting, static_cast<std::int64_t>(support) * static_cast<std::int64_t>(support));
  report.value = report.exact->value();
  return report;
}

void validate_radii(const std::vector<int>& radii) {
  if (radii.empty()) throw SpecError("radius range must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0) throw SpecError("radii must be >= 0");
    if (i > 0 && radii[i] <= radii[i - 1]) throw SpecError("radii must be strictly ascending");
  }
}

}  // namespace

DcSeries dc_series(GroupPtr group, const std::vector<int>& radii, const MeasureFamily& family,
                   const EstimatorOptions& options, const BallLimits& limits) {
  validate_radii(radii);
  const int max_radius = radii.back();
  if (const auto* fb = std::get_if<FBallFamily>(&family); fb && !fb->spec.restriction()) {
    Ball ball = enumerate_ball_with_generators(std::move(group), fb->spec.generating_set, max_radius, limits);
    return dc_series(ball, radii, family, options);
  }
  Ball ball = enumerate_ball(std::move(group), max_radius, limits);
  return dc_series(ball, radii, family, options);
}

DcSeries dc_series(const Ball& base, const std::vector<int>& radii, const MeasureFamily& family,
                   const EstimatorOptions& options) {
  validate_radii(radii);
  const int max_radius = radii.back();
  if (base.radius < max_radius) throw SpecError("ball radius is smaller than the largest requested radius");
  const GroupPtr& group = base.group;
  const bool must_sample = options.mode == EstimatorOptions::Mode::kSampled;
  auto exact_fits = [&](std::size_t n) {
    return static_cast<std::uint64_t>(n) * n <= options.budget;
  };
  auto need_seed = [&]() -> std::uint64_t {
    if (!options.seed) throw SpecError("sampled mode requires a seed (reproducibility contract)");
    return *options.seed;
  };

  DcSeries series;
  series.radii = radii;

  const bool restriction_family =
      std::holds_alternative<FBallFamily>(family) && std::get<FBallFamily>(family).spec.restriction();
  if (std::holds_alternative<UniformBallFamily>(family) || std::holds_alternative<FBallFamily>(family)) {
    // Alternative-generating-set balls behave exactly like uniform balls
    // here; the caller enumerated `base` over that set already.
    const Ball* work = &base;
    Ball filtered;
    if (restriction_family) {
      filtered = f_ball(base, std::get<FBallFamily>(family).spec);
      work = &filtered;
    }
    const Ball& ball = *work;
    // One bucketed pair pass covers every radius that stays in budget.
    int exact_upto = -1;
    for (int n : radii) {
      if (!must_sample && exact_fits(ball.size_at(n))) exact_upto = n;
    }
    if (options.mode == EstimatorOptions::Mode::kExact && exact_upto != max_radius) {
      throw ResourceError("exact dc series exceeds the budget at radius " +
                          std::to_string(max_radius) + "; use sampled or auto mode");
    }
    std::vector<std::int64_t> buckets;
    if (exact_upto >= 0) {
      buckets = commuting_pair_buckets(ball, ball.size_at(exact_upto), exact_upto, options.threads);
      for (std::size_t i = 1; i < buckets.size(); ++i) buckets[i] += buckets[i - 1];
    }
    for (int n : radii) {
      const std::size_t support = ball.size_at(n);
      if (support == 0) throw SpecError("empty support at radius " + std::to_string(n));
      series.support_sizes.push_back(support);
      if (n <= exact_upto) {
        series.entries.push_back(exact_report(buckets[static_cast<std::size_t>(n)], support));
      } else {
        series.entries.push_back(
            sampled_pair_report(ball, support, options.samples, need_seed(), n, options.threads));
      }
    }
  } else if (std::holds_alternative<RandomWalkFamily>(family)) {
    const double laziness = std::get<RandomWalkFamily>(family).laziness;
    if (laziness < 0.0 || laziness >= 1.0) throw SpecError("laziness must lie in [0,1)");
    const EquationSystem commutator = EquationSystem::parse({"[x1,x2]"});
    const Group& g = *group;
    const std::size_t total = base.size_at(max_radius);
    const std::size_t deg = base.alphabet.size();
    const std::size_t interior = max_radius == 0 ? 0 : base.size_at(max_radius - 1);
    std::vector<std::uint32_t> neighbor(interior * deg);
    for (std::size_t i = 0; i < interior; ++i) {
      for (std::size_t a = 0; a < deg; ++a) {
        neighbor[i * deg + a] =
            static_cast<std::uint32_t>(*base.position(g.multiply(base.elements[i], base.alphabet[a])));
      }
    }
    const double step_p = deg == 0 ? 0.0 : (1.0 - laziness) / static_cast<double>(deg);
    std::vector<double> cur(total, 0.0), nxt(total, 0.0);
    cur[0] = 1.0;
    std::size_t next_radius = 0;
    for (int n = 0; n <= max_radius; ++n) {
      if (n > 0) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        const std::size_t reach = base.size_at(n - 1);
        for (std::size_t i = 0; i < reach; ++i) {
          if (cur[i] == 0.0) continue;
          nxt[i] += laziness * cur[i];
          for (std::size_t a = 0; a < deg; ++a) nxt[neighbor[i * deg + a]] += step_p * cur[i];
        }
        cur.swap(nxt);
      }
      if (next_radius >= radii.size() || radii[next_radius] != n) continue;
      ++next_radius;
      Measure mu;
      for (std::size_t i = 0; i < base.size_at(n); ++i) {
        if (cur[i] > 0.0) {
          mu.prob.push_back(cur[i]);
          mu.support.push_back(base.elements[i]);
        }
      }
      for (std::size_t i = 0; i < mu.support.size(); ++i) mu.index.insert(mu.support[i], i, mu.support);
      series.support_sizes.push_back(mu.size());
      const bool fits = exact_fits(mu.size());
      if (options.mode == EstimatorOptions::Mode::kExact && !fits) {
        throw ResourceError("exact random-walk dc exceeds the budget at radius " + std::to_string(n));
      }
      if (!must_sample && fits) {
        DsValue v = ds_exact(g, commutator, mu, options.budget, options.threads);
        EstimateReport report;
        report.mode = EstimateMode::kExact;
        report.value = v.value;
        report.exact = v.exact;
        series.entries.push_back(report);
      } else {
        series.entries.push_back(ds_sampled(g, commutator, mu, options.samples,
                                            hash_combine(need_seed(), static_cast<std::uint64_t>(n)),
                                            options.threads));
        series.entries.back().seed = options.seed;
      }
    }
  } else {
    const auto& padded = std::get<PaddedFamily>(family);
    if (padded.padding.size() != radii.size()) {
      throw SpecError("padded family needs one padding radius per requested radius");
    }
    const EquationSystem commutator = EquationSystem::parse({"[x1,x2]"});
    for (std::size_t i = 0; i < radii.size(); ++i) {
      Measure mu = padded_measure(base, padded.element, padded.padding[i], radii[i]);
      series.support_sizes.push_back(mu.size());
      const bool fits = exact_fits(mu.size());
      if (options.mode == EstimatorOptions::Mode::kExact && !fits) {
        throw ResourceError("exact padded dc exceeds the budget at radius " + std::to_string(radii[i]));
      }
      if (!must_sample && fits) {
        std::int64_t commuting = 0;
        for (std::size_t u = 0; u < mu.size(); ++u) {
          commuting += 1;
          for (std::size_t v = u + 1; v < mu.size(); ++v) {
            if (commutes(*group, mu.support[u], mu.support[v])) commuting += 2;
          }
        }
        series.entries.push_back(exact_report(commuting, mu.size()));
      } else {
        series.entries.push_back(ds_sampled(*group, commutator, mu, options.samples,
                                            hash_combine(need_seed(), static_cast<std::uint64_t>(radii[i])),
                                            options.threads));
        series.entries.back().seed = options.seed;
      }
    }
  }

  double best = 0.0;
  for (const EstimateReport& r : series.entries) {
    best = std::max(best, r.value);
    series.running_max.push_back(best);
  }
  return series;
}

void write_series_csv(std::ostream& out, const DcSeries& series) {
  out << "n,ball_size,mode,value,exact_num,exact_den,ci_lo,ci_hi,seed\n";
  auto fmt = [](double v) { return format_double(v); };
  for (std::size_t i = 0; i < series.radii.size(); ++i) {
    const EstimateReport& r = series.entries[i];
    out << series.radii[i] << "," << series.support_sizes[i] << ","
        << (r.mode == EstimateMode::kExact ? "exact" : "sampled") << "," << fmt(r.value) << ",";
    if (r.exact) {
      out << r.exact->num() << "," << r.exact->den();
    } else {
      out << ",";
    }
    out << ",";
    if (r.ci95) {
      out << fmt(r.ci95->first) << "," << fmt(r.ci95->second);
    } else {
      out << ",";
    }
    out << ",";
    if (r.seed) out << *r.seed;
    out << "\n";
  }
}

}  // namespace dcg
