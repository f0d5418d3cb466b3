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

#include "dcg/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dcg {

using nlohmann::json;

namespace {

HomConfig parse_hom(const json& j, const std::string& field) {
  if (!j.is_object()) throw SpecError(field + ": homomorphism descriptor must be an object");
  HomConfig h;
  h.kind = j.value("kind", "");
  if (h.kind == "mod") {
    if (!j.contains("modulus")) throw SpecError(field + ": mod homomorphism needs \"modulus\"");
    h.modulus = j.at("modulus").get<std::int64_t>();
  } else if (h.kind == "images") {
    h.target = j.value("target", "");
    if (h.target.empty()) throw SpecError(field + ": images homomorphism needs \"target\"");
    if (!j.contains("images") || !j.at("images").is_object()) {
      throw SpecError(field + ": images homomorphism needs an \"images\" object");
    }
    for (auto it = j.at("images").begin(); it != j.at("images").end(); ++it) {
      h.images[it.key()] = it.value().get<std::string>();
    }
  } else {
    throw SpecError(field + ": homomorphism kind must be \"mod\" or \"images\"");
  }
  return h;
}

FBallConfig parse_f_ball(const json& j, const std::string& field) {
  if (!j.is_object()) throw SpecError(field + ": f-ball descriptor must be an object");
  FBallConfig f;
  f.label = j.value("label", "");
  if (j.contains("generators")) {
    f.generators = j.at("generators").get<std::vector<std::string>>();
    if (f.generators.empty()) throw SpecError(field + ": alternative generating set is empty");
    return f;
  }
  f.restrict_mode = j.value("restrict", "");
  if (f.restrict_mode == "kernel") {
    if (!j.contains("hom")) throw SpecError(field + ": kernel restriction needs \"hom\"");
    f.hom = parse_hom(j.at("hom"), field + ".hom");
  } else if (f.restrict_mode != "translation-part") {
    throw SpecError(field + ": restrict must be \"kernel\" or \"translation-part\"");
  }
  return f;
}

std::vector<int> parse_radii(const json& j) {
  std::vector<int> radii;
  if (j.is_array()) {
    radii = j.get<std::vector<int>>();
  } else if (j.is_object()) {
    int from = j.value("from", 0);
    int to = j.value("to", -1);
    int step = j.value("step", 1);
    if (step < 1) throw SpecError("radii.step must be >= 1");
    for (int n = from; n <= to; n += step) radii.push_back(n);
  } else {
    throw SpecError("radii must be an array or a {from,to[,step]} object");
  }
  return radii;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("config root must be an object");

  ExperimentConfig c;
  c.schema = j.value("schema", 1);
  if (c.schema != 1) throw SpecError("unsupported config schema version " + std::to_string(c.schema));
  if (!j.contains("group")) throw SpecError("config needs a \"group\" descriptor");
  c.group = j.at("group").get<std::string>();

  if (j.contains("generating_sets")) {
    const json& gs = j.at("generating_sets");
    if (!gs.is_object()) throw SpecError("generating_sets must be an object of name -> word list");
    for (auto it = gs.begin(); it != gs.end(); ++it) {
      c.generating_sets.emplace_back(it.key(), it.value().get<std::vector<std::string>>());
    }
    if (c.generating_sets.size() > 2) {
      throw SpecError("at most two generating sets are supported (comparison mode)");
    }
  }

  if (j.contains("radii")) c.radii = parse_radii(j.at("radii"));

  if (j.contains("series")) {
    const json& s = j.at("series");
    c.series.type = s.value("type", "dc");
    if (s.contains("hom")) c.series.hom = parse_hom(s.at("hom"), "series.hom");
    c.series.element = s.value("element", "");
    if (c.series.type != "dc" && c.series.type != "coset-density") {
      throw SpecError("series.type must be \"dc\" or \"coset-density\"");
    }
    if (c.series.type == "coset-density" && !c.series.hom) {
      throw SpecError("coset-density series needs series.hom");
    }
  }

  if (j.contains("measure")) {
    const json& m = j.at("measure");
    c.measure.family = m.value("family", "uniform-ball");
    c.measure.laziness = m.value("laziness", 0.0);
    c.measure.element = m.value("element", "");
    if (m.contains("padding")) {
      if (m.at("padding").is_array()) {
        c.measure.padding = m.at("padding").get<std::vector<std::int64_t>>();
      } else if (m.at("padding").is_object()) {
        c.measure.padding_slope = m.at("padding").value("slope", 0);
        c.measure.padding_offset = m.at("padding").value("offset", 0);
      } else {
        throw SpecError("measure.padding must be a list or {slope,offset}");
      }
    }
    if (m.contains("f_ball")) c.measure.f_ball = parse_f_ball(m.at("f_ball"), "measure.f_ball");
    if (c.measure.family != "uniform-ball" && c.measure.family != "random-walk" &&
        c.measure.family != "padded" && c.measure.family != "f-ball") {
      throw SpecError("measure.family must be uniform-ball, random-walk, padded or f-ball");
    }
    if (c.measure.family == "f-ball" && !c.measure.f_ball) {
      throw SpecError("f-ball measure family needs measure.f_ball");
    }
  }

  if (j.contains("estimator")) {
    const json& e = j.at("estimator");
    std::string mode = e.value("mode", "auto");
    if (mode == "auto") {
      c.estimator.mode = EstimatorOptions::Mode::kAuto;
    } else if (mode == "exact") {
      c.estimator.mode = EstimatorOptions::Mode::kExact;
    } else if (mode == "sampled") {
      c.estimator.mode = EstimatorOptions::Mode::kSampled;
    } else {
      throw SpecError("estimator.mode must be auto, exact or sampled");
    }
    c.estimator.budget = e.value("budget", std::uint64_t{1'000'000'000});
    c.estimator.samples = e.value("samples", std::uint64_t{100'000});
    if (e.contains("seed")) c.estimator.seed = e.at("seed").get<std::uint64_t>();
  }

  if (j.contains("checks")) {
    for (const json& cj : j.at("checks")) {
      CheckConfig ck;
      ck.check = cj.value("check", "");
      if (cj.contains("corpus")) ck.corpus = cj.at("corpus").get<std::vector<std::string>>();
      if (cj.contains("hom")) ck.hom = parse_hom(cj.at("hom"), "checks[].hom");
      if (cj.contains("window")) {
        auto w = cj.at("window").get<std::vector<int>>();
        if (w.size() != 2) throw SpecError("checks[].window must be [lo, hi]");
        ck.window = {w[0], w[1]};
      }
      if (cj.contains("subgroup")) ck.subgroup = parse_f_ball(cj.at("subgroup"), "checks[].subgroup");
      ck.index = cj.value("index", 1);
      ck.tolerance = cj.value("tolerance", 0.05);
      ck.samples = cj.value("samples", 100);
      ck.n = cj.value("n", 1);
      ck.p = cj.value("p", 1);
      ck.seed = cj.value("seed", std::uint64_t{0});
      c.checks.push_back(std::move(ck));
    }
  }

  if (j.contains("reports")) {
    for (const json& rj : j.at("reports")) {
      ReportConfig rp;
      rp.report = rj.value("report", "");
      rp.n_max = rj.value("n_max", 8);
      rp.g_samples = rj.value("g_samples", 10);
      rp.seed = rj.value("seed", std::uint64_t{0});
      rp.element = rj.value("element", "");
      rp.m_max = rj.value("m_max", 10);
      if (rj.contains("ball_radius")) rp.ball_radius = rj.at("ball_radius").get<int>();
      c.reports.push_back(std::move(rp));
    }
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    c.output.dir = o.value("dir", "out");
    c.output.dump_spheres = o.value("dump_spheres", false);
    c.output.dump_measures = o.value("dump_measures", false);
  }
  if (j.contains("max_ball_elements")) {
    c.max_ball_elements = j.at("max_ball_elements").get<std::size_t>();
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

GroupPtr build_group(const ExperimentConfig& config) { return make_group(config.group); }

Homomorphism build_hom(const GroupPtr& group, const HomConfig& spec) {
  if (spec.kind == "mod") return quotient(group, spec.modulus).second;
  GroupPtr target = make_group(spec.target);
  std::vector<Element> images;
  for (const Generator& g : group->generators()) {
    auto it = spec.images.find(g.name);
    if (it == spec.images.end()) {
      throw SpecError("homomorphism images missing generator '" + g.name + "'");
    }
    const std::string& word = it->second;
    images.push_back(word.empty() || word == "e" ? target->identity()
                                                 : parse_group_word(*target, word));
  }
  return Homomorphism(group, target, std::move(images));
}

FBallSpec build_f_ball(const GroupPtr& group, const FBallConfig& spec) {
  if (!spec.generators.empty()) {
    std::vector<Element> gens;
    for (const std::string& w : spec.generators) gens.push_back(parse_group_word(*group, w));
    return FBallSpec::alternative(spec.label.empty() ? "alternative generating set" : spec.label,
                                  std::move(gens));
  }
  if (spec.restrict_mode == "kernel") {
    Homomorphism hom = build_hom(group, *spec.hom);
    return FBallSpec::kernel(spec.label.empty() ? "kernel restriction" : spec.label, std::move(hom));
  }
  if (spec.restrict_mode == "translation-part") {
    GroupKind k = group->kind();
    if (k != GroupKind::kInfiniteDihedral && k != GroupKind::kSemidirect) {
      throw SpecError("translation-part restriction needs a dihedral or semidirect model");
    }
    const std::size_t tag_pos = group->identity().size() - 1;
    return FBallSpec::subgroup(
        spec.label.empty() ? "translation subgroup" : spec.label,
        [tag_pos](const Element& e) { return e.payload()[tag_pos] == 0; });
  }
  throw SpecError("unusable f-ball descriptor");
}

std::vector<std::int64_t> expand_padding(const MeasureConfig& measure, const std::vector<int>& radii) {
  if (!measure.padding.empty()) {
    if (measure.padding.size() != radii.size()) {
      throw SpecError("measure.padding list must match the radii count");
    }
    return measure.padding;
  }
  std::vector<std::int64_t> out;
  const std::int64_t slope = measure.padding_slope.value_or(0);
  for (int n : radii) out.push_back(slope * n + measure.padding_offset);
  return out;
}

const char* severity_name(Diagnostic::Severity s) {
  switch (s) {
    case Diagnostic::Severity::kError: return "error";
    case Diagnostic::Severity::kWarning: return "warning";
    case Diagnostic::Severity::kInfo: return "info";
  }
  return "error";
}

std::vector<Diagnostic> validate_config(const ExperimentConfig& config) {
  std::vector<Diagnostic> out;
  auto error = [&](const std::string& field, const std::string& message) {
    out.push_back({Diagnostic::Severity::kError, field, message});
  };
  auto warn = [&](const std::string& field, const std::string& message) {
    out.push_back({Diagnostic::Severity::kWarning, field, message});
  };
  auto info = [&](const std::string& field, const std::string& message) {
    out.push_back({Diagnostic::Severity::kInfo, field, message});
  };

  GroupPtr group;
  try {
    group = build_group(config);
  } catch (const Error& e) {
    error("group", e.what());
    return out;
  }

  if (config.radii.empty()) {
    error("radii", "radius range is empty");
  } else {
    for (std::size_t i = 0; i < config.radii.size(); ++i) {
      if (config.radii[i] < 0) error("radii", "radii must be >= 0");
      if (i > 0 && config.radii[i] <= config.radii[i - 1]) {
        error("radii", "radii must be strictly ascending");
        break;
      }
    }
  }

  if (config.estimator.mode == EstimatorOptions::Mode::kSampled && !config.estimator.seed) {
    error("estimator.seed", "sampled mode requires an explicit seed (reproducibility contract)");
  }
  if (config.estimator.mode != EstimatorOptions::Mode::kExact && !config.estimator.seed) {
    warn("estimator.seed", "auto mode may fall back to sampling, which will fail without a seed");
  }
  if (config.estimator.samples < 100) {
    error("estimator.samples", "sampled mode needs at least 100 samples");
  }

  for (std::size_t i = 0; i < config.generating_sets.size(); ++i) {
    const auto& [name, words] = config.generating_sets[i];
    for (const std::string& w : words) {
      try {
        parse_group_word(*group, w);
      } catch (const Error& e) {
        error("generating_sets." + name, e.what());
      }
    }
  }
  if (config.generating_sets.size() == 2) {
    info("generating_sets", "two generating sets declared: comparison mode enabled");
  }

  if (config.measure.family == "random-walk" && config.measure.laziness == 0.0) {
    warn("measure.laziness",
         "laziness 0 keeps the walk parity-bound on bipartite Cayley graphs, so "
         "Supp(mu_n) can be a strict subset of B(n)");
  }
  if (config.measure.family == "padded") {
    if (config.measure.element.empty()) {
      error("measure.element", "padded family needs an infinite-order element");
    } else {
      try {
        Element g = parse_group_word(*group, config.measure.element);
        OrderResult ord = group->order_of(g, 4096);
        if (ord.finite()) {
          error("measure.element", "padded measure requires infinite order, but order_of proves order " +
                                       std::to_string(ord.order));
        } else if (!ord.infinite()) {
          error("measure.element", "padded measure requires a proven infinite order; order_of exceeded its cap");
        }
      } catch (const Error& e) {
        error("measure.element", e.what());
      }
    }
    try {
      if (!config.radii.empty()) expand_padding(config.measure, config.radii);
    } catch (const Error& e) {
      error("measure.padding", e.what());
    }
  }
  if (config.measure.family == "f-ball" && config.measure.f_ball) {
    try {
      build_f_ball(group, *config.measure.f_ball);
    } catch (const Error& e) {
      error("measure.f_ball", e.what());
    }
  }

  auto check_hom = [&](const std::optional<HomConfig>& hc, const std::string& field) {
    if (!hc) return;
    try {
      Homomorphism hom = build_hom(group, *hc);
      if (!hom.verified()) warn(field, "homomorphism is unverified: " + hom.verification_note());
    } catch (const Error& e) {
      error(field, e.what());
    }
  };
  check_hom(config.series.hom, "series.hom");
  for (std::size_t i = 0; i < config.checks.size(); ++i) {
    const CheckConfig& ck = config.checks[i];
    const std::string field = "checks[" + std::to_string(i) + "]";
    if (ck.check == "gustafson") {
      for (const std::string& d : ck.corpus) {
        try {
          GroupPtr member = make_group(d);
          if (!member->finite()) error(field, "gustafson corpus member is not finite: " + d);
        } catch (const Error& e) {
          error(field, e.what());
        }
      }
    } else if (ck.check == "gallagher" || ck.check == "quotient-bound") {
      check_hom(ck.hom, field + ".hom");
      if (!ck.hom) error(field, ck.check + " needs a homomorphism");
    } else if (ck.check == "index-bound") {
      if (!ck.subgroup) {
        error(field, "index-bound needs a subgroup f-ball descriptor");
      } else {
        try {
          build_f_ball(group, *ck.subgroup);
        } catch (const Error& e) {
          error(field, e.what());
        }
      }
      if (ck.index < 1) error(field, "index must be >= 1");
    } else if (ck.check == "centralizer-linear-bound") {
      if (ck.samples < 1 || ck.n < 1 || ck.p < 1) error(field, "samples, n and p must be >= 1");
    } else {
      error(field, "unknown check '" + ck.check + "'");
    }
  }
  for (std::size_t i = 0; i < config.reports.size(); ++i) {
    const ReportConfig& rp = config.reports[i];
    const std::string field = "reports[" + std::to_string(i) + "]";
    if (rp.report == "negligibility") {
      if (!group->torsion_decidable()) {
        warn(field, "model does not decide torsion; the torsion series will be unavailable");
      }
    } else if (rp.report == "translation-length") {
      if (rp.element.empty()) {
        error(field, "translation-length needs an element");
      } else {
        try {
          parse_group_word(*group, rp.element);
        } catch (const Error& e) {
          error(field, e.what());
        }
      }
    } else {
      error(field, "unknown report '" + rp.report + "'");
    }
  }
  return out;
}

}  // namespace dcg
