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

#include "dcg/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace dcg {

std::size_t Ball::size_at(int r) const {
  if (r < 0) return 0;
  if (r >= radius) return elements.size();
  return sphere_offsets[static_cast<std::size_t>(r) + 1];
}

std::pair<std::size_t, std::size_t> Ball::sphere_range(int r) const {
  if (r < 0 || r > radius) return {0, 0};
  return {sphere_offsets[static_cast<std::size_t>(r)], sphere_offsets[static_cast<std::size_t>(r) + 1]};
}

std::optional<int> Ball::distance(const Element& g) const {
  auto pos = index.find(g, elements);
  if (!pos) return std::nullopt;
  auto it = std::upper_bound(sphere_offsets.begin(), sphere_offsets.end(), *pos);
  return static_cast<int>(it - sphere_offsets.begin()) - 1;
}

std::optional<std::size_t> Ball::position(const Element& g) const { return index.find(g, elements); }

std::uint64_t Ball::fingerprint() const {
  std::uint64_t h = group->fingerprint();
  for (const Element& a : alphabet) h = hash_combine(h, a.hash());
  return h;
}

namespace {

std::vector<Element> symmetrize(const Group& g, std::span<const Element> generating_set) {
  std::vector<Element> alphabet;
  auto add = [&](const Element& e) {
    if (e == g.identity()) return;  // identity edges add nothing
    for (const Element& a : alphabet) {
      if (a == e) return;
    }
    alphabet.push_back(e);
  };
  for (const Element& e : generating_set) add(e);
  for (const Element& e : generating_set) add(g.inverse(e));
  return alphabet;
}

Ball start_ball(GroupPtr group, std::vector<Element> alphabet) {
  group->ensure_enumerable();
  Ball b;
  b.group = std::move(group);
  b.radius = 0;
  b.elements.push_back(b.group->identity());
  b.parent.push_back(0);
  b.via.push_back(-1);
  b.sphere_offsets = {0, 1};
  b.alphabet = std::move(alphabet);
  b.index.insert(b.elements[0], 0, b.elements);
  return b;
}

}  // namespace

void extend_ball(Ball& ball, int radius, const BallLimits& limits) {
  if (ball.parent.size() != ball.elements.size()) {
    throw Error("cannot extend a filtered ball");
  }
  const Group& g = *ball.group;
  for (int r = ball.radius + 1; r <= radius; ++r) {
    auto [lo, hi] = ball.sphere_range(r - 1);
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t a = 0; a < ball.alphabet.size(); ++a) {
        Element nxt = g.multiply(ball.elements[i], ball.alphabet[a]);
        std::size_t pos = ball.elements.size();
        if (ball.index.insert(nxt, pos, ball.elements) == pos) {
          if (pos >= limits.max_elements) {
            throw ResourceError("ball exceeds the element cap of " +
                                std::to_string(limits.max_elements) + " at radius " +
                                std::to_string(r) + " (model " + g.name() + ")");
          }
          ball.elements.push_back(std::move(nxt));
          ball.parent.push_back(static_cast<std::uint32_t>(i));
          ball.via.push_back(static_cast<std::int32_t>(a));
        }
      }
    }
    ball.sphere_offsets.push_back(ball.elements.size());
    ball.radius = r;
  }
}

Ball enumerate_ball(GroupPtr group, int radius, const BallLimits& limits) {
  if (radius < 0) throw SpecError("ball radius must be >= 0");
  std::vector<Element> gens;
  for (const Generator& g : group->generators()) gens.push_back(g.value);
  Ball b = start_ball(group, symmetrize(*group, gens));
  extend_ball(b, radius, limits);
  return b;
}

Ball enumerate_ball_with_generators(GroupPtr group, std::vector<Element> generating_set, int radius,
                                    const BallLimits& limits) {
  if (radius < 0) throw SpecError("ball radius must be >= 0");
  for (const Element& e : generating_set) group->validate(e);
  Ball b = start_ball(group, symmetrize(*group, generating_set));
  extend_ball(b, radius, limits);
  return b;
}

std::vector<Element> replay_images(const Ball& ball, const Homomorphism& hom) {
  if (ball.parent.size() != ball.elements.size()) {
    throw Error("image replay requires an unfiltered ball");
  }
  std::vector<Element> alpha_img;
  alpha_img.reserve(ball.alphabet.size());
  for (const Element& a : ball.alphabet) alpha_img.push_back(hom.apply(a));
  const Group& target = *hom.target();
  std::vector<Element> img(ball.size());
  img[0] = target.identity();
  for (std::size_t i = 1; i < ball.size(); ++i) {
    img[i] = target.multiply(img[ball.parent[i]], alpha_img[static_cast<std::size_t>(ball.via[i])]);
  }
  return img;
}

FBallSpec FBallSpec::subgroup(std::string description, std::function<bool(const Element&)> member) {
  FBallSpec s;
  s.description = std::move(description);
  s.member = std::move(member);
  return s;
}

FBallSpec FBallSpec::kernel(std::string description, Homomorphism hom) {
  FBallSpec s;
  s.description = std::move(description);
  const Element id = hom.target()->identity();
  s.member = [hom = std::move(hom), id](const Element& e) { return hom.apply(e) == id; };
  return s;
}

FBallSpec FBallSpec::alternative(std::string description, std::vector<Element> generating_set) {
  FBallSpec s;
  s.description = std::move(description);
  s.generating_set = std::move(generating_set);
  return s;
}

Ball f_ball(const Ball& base, const FBallSpec& spec) {
  if (!spec.restriction()) throw SpecError("f_ball on an existing ball requires subgroup-restriction mode");
  Ball out;
  out.group = base.group;
  out.radius = base.radius;
  out.alphabet = base.alphabet;
  out.sphere_offsets.push_back(0);
  for (int r = 0; r <= base.radius; ++r) {
    auto [lo, hi] = base.sphere_range(r);
    for (std::size_t i = lo; i < hi; ++i) {
      if (spec.member(base.elements[i])) out.elements.push_back(base.elements[i]);
    }
    out.sphere_offsets.push_back(out.elements.size());
  }
  for (std::size_t i = 0; i < out.elements.size(); ++i) out.index.insert(out.elements[i], i, out.elements);
  return out;
}

Ball f_ball(GroupPtr group, const FBallSpec& spec, int radius, const BallLimits& limits) {
  if (spec.restriction()) {
    Ball base = enumerate_ball(std::move(group), radius, limits);
    return f_ball(base, spec);
  }
  return enumerate_ball_with_generators(std::move(group), spec.generating_set, radius, limits);
}

CosetDensitySeries coset_density_series(const Ball& ball, const Homomorphism& hom, const Element& g) {
  const Group& target = *hom.target();
  if (!target.finite()) throw SpecError("coset densities require a finite quotient");

  // Cosets of the kernel correspond to elements of the image subgroup.
  std::vector<Element> image_subgroup;
  ElementIndex image_index;
  image_subgroup.push_back(target.identity());
  image_index.insert(image_subgroup[0], 0, image_subgroup);
  std::vector<Element> seeds;
  for (const Element& a : ball.alphabet) seeds.push_back(hom.apply(a));
  for (std::size_t head = 0; head < image_subgroup.size(); ++head) {
    for (const Element& s : seeds) {
      Element nxt = target.multiply(image_subgroup[head], s);
      std::size_t pos = image_subgroup.size();
      if (image_index.insert(nxt, pos, image_subgroup) == pos) image_subgroup.push_back(std::move(nxt));
    }
  }
  const std::size_t d = image_subgroup.size();

  std::vector<Element> img = replay_images(ball, hom);
  const Element gi = hom.apply(g);
  auto g_coset = image_index.find(gi, image_subgroup);
  if (!g_coset) throw Error("queried element's image is outside the image subgroup");

  CosetDensitySeries out;
  out.coset_count = d;
  std::vector<std::int64_t> counts(d, 0);
  const Rational ideal(1, static_cast<std::int64_t>(d));
  for (int n = 0; n <= ball.radius; ++n) {
    auto [lo, hi] = ball.sphere_range(n);
    for (std::size_t i = lo; i < hi; ++i) {
      auto c = image_index.find(img[i], image_subgroup);
      counts[*c] += 1;
    }
    const std::int64_t total = static_cast<std::int64_t>(ball.size_at(n));
    out.radii.push_back(n);
    out.ball_sizes.push_back(static_cast<std::size_t>(total));
    out.value.push_back(Rational(counts[*g_coset], total));
    Rational worst(0);
    for (std::size_t c = 0; c < d; ++c) {
      Rational dev = Rational(counts[c], total) - ideal;
      if (dev < Rational(0)) dev = Rational(0) - dev;
      if (dev > worst) worst = dev;
    }
    out.max_deviation.push_back(worst);
  }
  return out;
}

GrowthFit growth_fit(std::span<const std::size_t> sizes, int first_radius,
                     const GrowthThresholds& thresholds) {
  if (sizes.size() < 6) throw SpecError("growth_fit needs at least 6 radii");
  GrowthFit fit;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    fit.ratios.push_back(static_cast<double>(sizes[i + 1]) / static_cast<double>(sizes[i]));
  }
  // Polynomial degree: least-squares slope of log size vs log n over the top
  // half of the radii (n >= 1 only).
  std::vector<double> xs, ys;
  for (std::size_t i = sizes.size() / 2; i < sizes.size(); ++i) {
    int n = first_radius + static_cast<int>(i);
    if (n < 1) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(sizes[i])));
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.poly_degree_estimate = sxx > 0 ? sxy / sxx : 0;
  }
  // Exponential rate: mean ratio over the top half of the ratio series.
  std::size_t tail_start = fit.ratios.size() / 2;
  double sum = 0;
  for (std::size_t i = tail_start; i < fit.ratios.size(); ++i) sum += fit.ratios[i];
  std::size_t tail_len = fit.ratios.size() - tail_start;
  fit.exp_rate_estimate = sum / static_cast<double>(tail_len);

  if (fit.exp_rate_estimate >= thresholds.exponential_min_ratio) {
    fit.classification = GrowthClass::kExponentialLike;
  } else if (fit.exp_rate_estimate <= thresholds.polynomial_max_ratio &&
             fit.ratios.back() <= fit.ratios[tail_start] + 1e-9) {
    fit.classification = GrowthClass::kPolynomialLike;
  } else {
    fit.classification = GrowthClass::kInconclusive;
  }
  return fit;
}

const char* growth_class_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::kPolynomialLike: return "polynomial-like";
    case GrowthClass::kExponentialLike: return "exponential-like";
    case GrowthClass::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void write_sphere_csv(std::ostream& out, const Ball& ball) {
  out << "n,size,cumulative\n";
  for (int r = 0; r <= ball.radius; ++r) {
    auto [lo, hi] = ball.sphere_range(r);
    out << r << "," << (hi - lo) << "," << ball.size_at(r) << "\n";
  }
}

namespace {

constexpr std::uint32_t kBallMagic = 0x44434742u;  // "DCGB"
constexpr std::uint32_t kBallVersion = 1;

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error("truncated ball cache");
  return v;
}

void put_element(std::ostream& out, const Element& e) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(e.payload().size()));
  for (std::int64_t v : e.payload()) put<std::int64_t>(out, v);
}

Element get_element(std::istream& in) {
  auto n = get<std::uint32_t>(in);
  std::vector<std::int64_t> payload(n);
  for (auto& v : payload) v = get<std::int64_t>(in);
  return Element(std::move(payload));
}

}  // namespace

void save_ball(std::ostream& out, const Ball& ball) {
  put<std::uint32_t>(out, kBallMagic);
  put<std::uint32_t>(out, kBallVersion);
  put<std::uint64_t>(out, ball.fingerprint());
  put<std::int32_t>(out, ball.radius);
  put<std::uint64_t>(out, ball.elements.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(ball.alphabet.size()));
  for (const Element& a : ball.alphabet) put_element(out, a);
  for (std::size_t off : ball.sphere_offsets) put<std::uint64_t>(out, off);
  for (const Element& e : ball.elements) put_element(out, e);
  for (std::uint32_t p : ball.parent) put<std::uint32_t>(out, p);
  for (std::int32_t v : ball.via) put<std::int32_t>(out, v);
}

Ball load_ball(std::istream& in, const GroupPtr& group) {
  if (get<std::uint32_t>(in) != kBallMagic) throw Error("not a ball cache file");
  if (get<std::uint32_t>(in) != kBallVersion) throw Error("unsupported ball cache version");
  auto fingerprint = get<std::uint64_t>(in);
  Ball b;
  b.group = group;
  b.radius = get<std::int32_t>(in);
  auto count = get<std::uint64_t>(in);
  auto alpha_count = get<std::uint32_t>(in);
  b.alphabet.reserve(alpha_count);
  for (std::uint32_t i = 0; i < alpha_count; ++i) b.alphabet.push_back(get_element(in));
  b.sphere_offsets.resize(static_cast<std::size_t>(b.radius) + 2);
  for (auto& off : b.sphere_offsets) off = static_cast<std::size_t>(get<std::uint64_t>(in));
  b.elements.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) b.elements.push_back(get_element(in));
  b.parent.resize(count);
  for (auto& p : b.parent) p = get<std::uint32_t>(in);
  b.via.resize(count);
  for (auto& v : b.via) v = get<std::int32_t>(in);
  if (b.fingerprint() != fingerprint) {
    throw Error("ball cache fingerprint does not match the model");
  }
  for (std::size_t i = 0; i < b.elements.size(); ++i) b.index.insert(b.elements[i], i, b.elements);
  return b;
}

}  // namespace dcg
