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

#include "dcg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace dcg {

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Rational dc_over_subset(const Group& g, const std::vector<Element>& subset) {
  const std::size_t n = subset.size();
  if (n == 0) throw Error("dc over an empty subset");
  std::int64_t commuting = 0;
  for (std::size_t u = 0; u < n; ++u) {
    commuting += 1;
    for (std::size_t v = u + 1; v < n; ++v) {
      if (g.multiply(subset[u], subset[v]) == g.multiply(subset[v], subset[u])) commuting += 2;
    }
  }
  return Rational(commuting, static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n));
}

std::vector<Element> image_subgroup(const Homomorphism& hom) {
  const Group& target = *hom.target();
  std::vector<Element> elems{target.identity()};
  ElementIndex index;
  index.insert(elems[0], 0, elems);
  std::vector<Element> seeds;
  for (const Element& img : hom.generator_images()) {
    seeds.push_back(img);
    seeds.push_back(target.inverse(img));
  }
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const Element& s : seeds) {
      Element nxt = target.multiply(elems[head], s);
      std::size_t pos = elems.size();
      if (index.insert(nxt, pos, elems) == pos) elems.push_back(std::move(nxt));
    }
  }
  return elems;
}

bool generators_commute(const Group& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (g.multiply(gens[i].value, gens[j].value) != g.multiply(gens[j].value, gens[i].value)) {
        return false;
      }
    }
  }
  return true;
}

struct WindowStats {
  double max_value = 0.0;
  double max_upper = 0.0;  // with CI upside for sampled entries
  double max_lower = 0.0;  // with CI downside
  bool any_sampled = false;
  bool any_entry = false;
  std::optional<Rational> max_exact;  // over exact entries only
};

WindowStats window_stats(const DcSeries& series, std::pair<int, int> window) {
  WindowStats w;
  for (std::size_t i = 0; i < series.radii.size(); ++i) {
    if (series.radii[i] < window.first || series.radii[i] > window.second) continue;
    const EstimateReport& r = series.entries[i];
    w.any_entry = true;
    w.max_value = std::max(w.max_value, r.value);
    if (r.mode == EstimateMode::kSampled) {
      w.any_sampled = true;
      w.max_upper = std::max(w.max_upper, r.ci95 ? r.ci95->second : r.value);
      w.max_lower = std::max(w.max_lower, r.ci95 ? r.ci95->first : r.value);
    } else {
      w.max_upper = std::max(w.max_upper, r.value);
      w.max_lower = std::max(w.max_lower, r.value);
      if (r.exact && (!w.max_exact || *w.max_exact < *r.exact)) w.max_exact = r.exact;
    }
  }
  return w;
}

}  // namespace

std::vector<CheckResult> gustafson_check(const std::vector<GroupPtr>& corpus) {
  const Rational bound(5, 8);
  std::vector<CheckResult> out;
  for (const GroupPtr& g : corpus) {
    CheckResult r;
    r.name = "gustafson: " + g->name();
    r.rhs = bound.value();
    Rational dc = dc_finite(*g);
    r.lhs = dc.value();
    bool abelian = generators_commute(*g);
    if (dc > bound) {
      r.status = abelian ? CheckStatus::kPass : CheckStatus::kFail;
      r.detail = "dc(" + g->name() + ") = " + dc.str() + " > 5/8; abelian: " + (abelian ? "yes" : "NO");
    } else {
      r.status = CheckStatus::kPass;
      r.detail = "dc(" + g->name() + ") = " + dc.str() + " <= 5/8; no abelian requirement";
    }
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult gallagher_check(const GroupPtr& group, const Homomorphism& onto_quotient) {
  if (!group->finite()) throw SpecError("gallagher_check requires a finite group");
  if (onto_quotient.source().get() != group.get()) {
    throw SpecError("homomorphism does not start at the given group");
  }
  if (!onto_quotient.verified()) {
    throw SpecError("gallagher_check requires a verified homomorphism: " +
                    onto_quotient.verification_note());
  }
  const Rational dc_g = dc_finite(*group);
  const std::vector<Element> kernel = onto_quotient.kernel_elements();
  const Rational dc_n = dc_over_subset(*group, kernel);
  const std::vector<Element> image = image_subgroup(onto_quotient);
  const Rational dc_q = dc_over_subset(*onto_quotient.target(), image);
  const Rational rhs = dc_n * dc_q;

  CheckResult r;
  r.name = "gallagher: " + group->name();
  r.lhs = dc_g.value();
  r.rhs = rhs.value();
  r.status = dc_g <= rhs ? CheckStatus::kPass : CheckStatus::kFail;
  r.detail = "dc(G) = " + dc_g.str() + ", dc(N) = " + dc_n.str() + " (|N| = " +
             std::to_string(kernel.size()) + "), dc(G/N) = " + dc_q.str() + " (index " +
             std::to_string(image.size()) + "); exact comparison";
  return r;
}

CheckResult quotient_bound_check(const GroupPtr& group, const Homomorphism& hom,
                                 const DcSeries& series, std::pair<int, int> window,
                                 double sampled_tolerance) {
  CheckResult r;
  r.name = "quotient-bound: " + group->name();
  if (!hom.verified()) {
    r.status = CheckStatus::kInconclusive;
    r.detail = "homomorphism unverified: " + hom.verification_note();
    return r;
  }
  const std::vector<Element> image = image_subgroup(hom);
  const Rational dc_q = dc_over_subset(*hom.target(), image);
  WindowStats w = window_stats(series, window);
  if (!w.any_entry) {
    r.status = CheckStatus::kInconclusive;
    r.detail = "series has no entries inside the window";
    return r;
  }
  r.lhs = w.max_value;
  r.rhs = dc_q.value();
  r.tolerance = w.any_sampled ? sampled_tolerance : 0.0;
  if (w.max_exact && *w.max_exact > dc_q && !w.any_sampled) {
    r.status = CheckStatus::kFail;
  } else if (w.max_value <= r.rhs + r.tolerance) {
    r.status = CheckStatus::kPass;
  } else if (w.any_sampled && w.max_lower <= r.rhs + r.tolerance) {
    r.status = CheckStatus::kInconclusive;  // CI straddles the bound
  } else {
    r.status = CheckStatus::kFail;
  }
  r.detail = "max dc over n in [" + std::to_string(window.first) + "," + std::to_string(window.second) +
             "] vs dc(G/N) = " + dc_q.str() + " (" + std::to_string(image.size()) + " cosets)";
  return r;
}

CheckResult index_bound_check(const DcSeries& series_g, const DcSeries& series_h, int index,
                              std::pair<int, int> window, double tolerance) {
  if (index < 1) throw SpecError("index_bound_check needs index >= 1");
  CheckResult r;
  r.name = "index-bound: d = " + std::to_string(index);
  WindowStats wg = window_stats(series_g, window);
  WindowStats wh = window_stats(series_h, window);
  if (!wg.any_entry || !wh.any_entry) {
    r.status = CheckStatus::kInconclusive;
    r.detail = "a series has no entries inside the window";
    return r;
  }
  const double d2 = static_cast<double>(index) * static_cast<double>(index);
  r.lhs = wg.max_value;
  r.rhs = wh.max_value / d2;
  r.tolerance = tolerance;
  if (r.lhs >= r.rhs - tolerance) {
    r.status = CheckStatus::kPass;
  } else if ((wg.any_sampled || wh.any_sampled) && wg.max_upper >= wh.max_lower / d2 - tolerance) {
    r.status = CheckStatus::kInconclusive;  // sampling noise could explain the gap
  } else {
    r.status = CheckStatus::kFail;
  }
  r.detail = "max dc(G) over window vs max dc(H)/d^2 with d = " + std::to_string(index);
  return r;
}

NegligibilityReport negligibility_report(GroupPtr group, int n_max, int g_samples,
                                         std::uint64_t seed, const BallLimits& limits) {
  if (n_max < 0) throw SpecError("negligibility_report needs n_max >= 0");
  if (g_samples < 1) throw SpecError("negligibility_report needs g_samples >= 1");
  Ball ball = enumerate_ball(group, n_max, limits);
  const Group& g = *group;

  NegligibilityReport report;
  report.requested_samples = g_samples;
  report.torsion_available = g.torsion_decidable();

  // Elementwise torsion classification (model-proved, never probabilistic).
  std::vector<char> torsion;
  if (report.torsion_available) {
    torsion.resize(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) {
      OrderResult ord = g.order_of(ball.elements[i]);
      if (ord.kind == OrderKind::kExceedsCap) {
        throw Error("model advertised decidable torsion but returned exceeds-cap");
      }
      torsion[i] = ord.finite() ? 1 : 0;
    }
  }

  std::int64_t torsion_count = 0;
  for (int n = 0; n <= n_max; ++n) {
    auto [lo, hi] = ball.sphere_range(n);
    if (report.torsion_available) {
      for (std::size_t i = lo; i < hi; ++i) torsion_count += torsion[i];
    }
    const std::int64_t size = static_cast<std::int64_t>(ball.size_at(n));
    report.radii.push_back(n);
    report.ball_sizes.push_back(static_cast<std::size_t>(size));
    if (report.torsion_available) report.torsion_density.push_back(Rational(torsion_count, size));

    // Max centralizer density over seeded non-torsion samples from B(n).
    std::mt19937_64 rng = make_rng(seed, static_cast<std::uint64_t>(n));
    std::size_t found = 0, best = 0;
    const std::size_t ball_n = static_cast<std::size_t>(size);
    for (int attempt = 0; attempt < g_samples * 50 && found < static_cast<std::size_t>(g_samples);
         ++attempt) {
      std::size_t idx = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(ball_n));
      const Element& cand = ball.elements[idx];
      if (!g.order_of(cand, 4096).infinite()) continue;  // certified non-torsion only
      ++found;
      best = std::max(best, centralizer_in_ball(ball, cand, n));
    }
    report.centralizer_samples.push_back(static_cast<int>(found));
    report.max_centralizer_density.push_back(
        found == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(best), size));
  }
  return report;
}

void write_negligibility_csv(std::ostream& out, const NegligibilityReport& report) {
  out << "n,ball_size,torsion_density,max_centralizer_density,centralizer_samples\n";
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    out << report.radii[i] << "," << report.ball_sizes[i] << ",";
    if (report.torsion_available) {
      out << format_double(report.torsion_density[i].value());
    } else {
      out << "unavailable";
    }
    out << "," << format_double(report.max_centralizer_density[i].value()) << ","
        << report.centralizer_samples[i] << "\n";
  }
}

TranslationLengthReport translation_length(const Group& group, const Element& g, int m_max,
                                           const Ball* distance_ball) {
  if (m_max < 1) throw SpecError("translation_length needs m_max >= 1");
  group.validate(g);
  TranslationLengthReport report;
  Element power = group.identity();
  double inf = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= m_max; ++m) {
    power = group.multiply(power, g);
    std::optional<std::int64_t> len = group.proven_word_length(power);
    if (!len && distance_ball != nullptr) {
      if (auto d = distance_ball->distance(power)) len = *d;
    }
    if (!len) {
      report.truncated = true;
      break;
    }
    const double ratio = static_cast<double>(*len) / static_cast<double>(m);
    inf = std::min(inf, ratio);
    report.m_values.push_back(m);
    report.ratios.push_back(ratio);
    report.running_inf.push_back(inf);
  }
  if (report.ratios.empty()) {
    report.truncated = true;
    report.estimate = 0.0;
  } else {
    report.estimate = report.running_inf.back();
  }
  return report;
}

void write_translation_csv(std::ostream& out, const TranslationLengthReport& report) {
  out << "m,ratio,running_inf\n";
  for (std::size_t i = 0; i < report.m_values.size(); ++i) {
    out << report.m_values[i] << "," << format_double(report.ratios[i]) << ","
        << format_double(report.running_inf[i]) << "\n";
  }
}

namespace {

/// Primitive root of a free-group element: cyclically reduce g = c w c^-1,
/// find the smallest period u of w (w = u^k), and conjugate back. C(g) is
/// the cyclic group generated by the root; this is a standard free-group
/// fact used as an oracle here, external to the estimators.
Element free_primitive_root(const Group& g, const Element& e) {
  const auto& w = e.payload();
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  const std::size_t len = j - i;
  std::size_t period = len;
  for (std::size_t d = 1; d < len; ++d) {
    if (len % d != 0) continue;
    bool ok = true;
    for (std::size_t k = d; k < len && ok; ++k) ok = w[i + k] == w[i + (k % d)];
    if (ok) {
      period = d;
      break;
    }
  }
  Element prefix(std::vector<std::int64_t>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)));
  Element core(std::vector<std::int64_t>(w.begin() + static_cast<std::ptrdiff_t>(i),
                                         w.begin() + static_cast<std::ptrdiff_t>(i + period)));
  return g.multiply(g.multiply(prefix, core), g.inverse(prefix));
}

}  // namespace

CheckResult centralizer_linear_bound_check(GroupPtr group, int samples, int n, int p,
                                           std::uint64_t seed, const BallLimits& limits) {
  CheckResult r;
  r.name = "centralizer-linear-bound: " + group->name();
  r.tolerance = 0.0;
  if (group->kind() != GroupKind::kFree) {
    r.status = CheckStatus::kInconclusive;
    r.detail = "root extraction unavailable for model kind " + group->name();
    return r;
  }
  if (samples < 1 || n < 1 || p < 1) throw SpecError("centralizer_linear_bound_check: bad arguments");
  const Group& g = *group;
  Ball ball = enumerate_ball(group, n, limits);
  const std::int64_t bound = 2 * static_cast<std::int64_t>(p) * n + 1;
  r.rhs = static_cast<double>(bound);

  std::mt19937_64 rng = make_rng(seed, 0xC0B0);
  std::int64_t worst = 0;
  std::string worst_example;
  int found = 0;
  for (int attempt = 0; attempt < samples * 50 && found < samples; ++attempt) {
    std::size_t idx = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(ball.size()));
    const Element& cand = ball.elements[idx];
    if (!g.order_of(cand).infinite()) continue;  // excludes the identity
    ++found;
    const Element root = free_primitive_root(g, cand);
    // With root = c u c^-1 (u cyclically reduced), |root^k| = 2|c| + k|u|,
    // strictly increasing in k, so the first escape from the ball is final;
    // root^k and root^-k have equal length.
    std::int64_t count = 1;  // identity
    Element fwd = g.identity();
    for (;;) {
      fwd = g.multiply(fwd, root);
      if (*g.proven_word_length(fwd) > n) break;
      count += 2;
    }
    if (count > worst) {
      worst = count;
      worst_example = g.render(cand);
    }
  }
  r.lhs = static_cast<double>(worst);
  if (found == 0) {
    r.status = CheckStatus::kInconclusive;
    r.detail = "no infinite-order elements sampled";
    return r;
  }
  r.status = worst <= bound ? CheckStatus::kPass : CheckStatus::kFail;
  r.detail = "max |<root> ∩ B(" + std::to_string(n) + ")| = " + std::to_string(worst) + " over " +
             std::to_string(found) + " samples (worst at " + worst_example + "), bound 2pn+1 = " +
             std::to_string(bound) + " with p = " + std::to_string(p);
  return r;
}

void write_checks_json(std::ostream& out, const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["status"] = check_status_name(c.status);
    item["lhs"] = c.lhs;
    item["rhs"] = c.rhs;
    item["tolerance"] = c.tolerance;
    item["detail"] = c.detail;
    arr.push_back(std::move(item));
  }
  out << arr.dump(2) << "\n";
}

}  // namespace dcg
