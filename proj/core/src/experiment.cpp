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

#include "dcg/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "dcg/version.hpp"
#include "json.hpp"

namespace dcg {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

struct Workspace {
  fs::path out_dir;
  fs::path cache_dir;
  bool use_cache = false;
  std::vector<std::string> artifacts;
  ordered_json timings = ordered_json::object();
  std::ostream* log = nullptr;
};

std::ofstream open_artifact(Workspace& ws, const std::string& name) {
  fs::path path = ws.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write artifact: " + path.string());
  ws.artifacts.push_back(name);
  return out;
}

/// Cached enumeration keyed by (model, generating set) fingerprint; the file
/// holds the largest radius built so far.
Ball obtain_ball(Workspace& ws, const GroupPtr& group, const std::vector<Element>& generating_set,
                 int radius, const BallLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  Ball ball;
  fs::path cache_file;
  bool loaded = false;
  if (ws.use_cache) {
    // Probe fingerprint via a radius-0 ball (cheap).
    Ball probe = generating_set.empty() ? enumerate_ball(group, 0, limits)
                                        : enumerate_ball_with_generators(group, generating_set, 0, limits);
    cache_file = ws.cache_dir / (fingerprint_hex(probe.fingerprint()) + ".ball");
    if (fs::exists(cache_file)) {
      std::ifstream in(cache_file, std::ios::binary);
      try {
        ball = load_ball(in, group);
        loaded = true;
      } catch (const Error& e) {
        *ws.log << "note: ignoring stale ball cache " << cache_file.string() << ": " << e.what() << "\n";
      }
    }
    if (!loaded) ball = std::move(probe);
  } else {
    ball = generating_set.empty() ? enumerate_ball(group, 0, limits)
                                  : enumerate_ball_with_generators(group, generating_set, 0, limits);
  }
  const int had = ball.radius;
  if (ball.radius < radius) extend_ball(ball, radius, limits);
  if (ws.use_cache && ball.radius > had) {
    fs::create_directories(ws.cache_dir);
    std::ofstream out(cache_file, std::ios::binary);
    if (out) save_ball(out, ball);
  }
  ws.timings["ball_ms"] = ms_since(t0);
  return ball;
}

MeasureFamily build_family(const ExperimentConfig& config, const GroupPtr& group) {
  const MeasureConfig& m = config.measure;
  if (m.family == "uniform-ball") return UniformBallFamily{};
  if (m.family == "random-walk") return RandomWalkFamily{m.laziness};
  if (m.family == "padded") {
    return PaddedFamily{parse_group_word(*group, m.element), expand_padding(m, config.radii)};
  }
  return FBallFamily{build_f_ball(group, *m.f_ball)};
}

/// One row per declared radius (the CSV row-count contract); the ratio is
/// always against the adjacent smaller ball.
void write_growth_csv(std::ostream& out, const Ball& ball, const std::vector<int>& radii) {
  out << "n,size,ratio\n";
  for (int r : radii) {
    out << r << "," << ball.size_at(r) << ",";
    if (r > 0) {
      out << format_double(static_cast<double>(ball.size_at(r)) /
                           static_cast<double>(ball.size_at(r - 1)));
    }
    out << "\n";
  }
}

/// Coset-density rows in the estimator CSV schema (exact mode, no CI).
void write_coset_series_csv(std::ostream& out, const CosetDensitySeries& series,
                            const std::vector<int>& radii) {
  out << "n,ball_size,mode,value,exact_num,exact_den,ci_lo,ci_hi,seed\n";
  for (int n : radii) {
    const std::size_t i = static_cast<std::size_t>(n);
    out << n << "," << series.ball_sizes[i] << ",exact," << format_double(series.value[i].value())
        << "," << series.value[i].num() << "," << series.value[i].den() << ",,,\n";
  }
}

ordered_json config_echo(const ExperimentConfig& c) {
  ordered_json j;
  j["schema"] = c.schema;
  j["group"] = c.group;
  if (!c.generating_sets.empty()) {
    ordered_json gs = ordered_json::object();
    for (const auto& [name, words] : c.generating_sets) gs[name] = words;
    j["generating_sets"] = gs;
  }
  j["radii"] = c.radii;
  j["series"] = {{"type", c.series.type}, {"element", c.series.element}};
  j["measure"] = {{"family", c.measure.family}, {"laziness", c.measure.laziness}};
  j["estimator"] = {{"mode", c.estimator.mode == EstimatorOptions::Mode::kAuto      ? "auto"
                             : c.estimator.mode == EstimatorOptions::Mode::kExact   ? "exact"
                                                                                    : "sampled"},
                    {"budget", c.estimator.budget},
                    {"samples", c.estimator.samples}};
  if (c.estimator.seed) j["estimator"]["seed"] = *c.estimator.seed;
  j["checks"] = c.checks.size();
  j["reports"] = c.reports.size();
  j["output"] = {{"dir", c.output.dir}};
  return j;
}

}  // namespace

int validate_experiment(const ExperimentConfig& config, std::ostream& log) {
  std::vector<Diagnostic> diags = validate_config(config);
  bool errors = false;
  for (const Diagnostic& d : diags) {
    log << severity_name(d.severity) << ": " << d.field << ": " << d.message << "\n";
    errors = errors || d.severity == Diagnostic::Severity::kError;
  }
  if (diags.empty()) log << "config ok\n";
  return errors ? 2 : 0;
}

int run_experiment(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  const auto t_start = std::chrono::steady_clock::now();
  std::vector<Diagnostic> diags = validate_config(config);
  bool errors = false;
  for (const Diagnostic& d : diags) {
    log << severity_name(d.severity) << ": " << d.field << ": " << d.message << "\n";
    errors = errors || d.severity == Diagnostic::Severity::kError;
  }
  if (errors) return 2;

  try {
    Workspace ws;
    ws.out_dir = options.output_dir.empty() ? fs::path(config.output.dir) : fs::path(options.output_dir);
    ws.cache_dir = options.cache_dir.empty() ? ws.out_dir / "cache" : fs::path(options.cache_dir);
    ws.use_cache = options.use_cache;
    ws.log = &log;
    fs::create_directories(ws.out_dir);

    const GroupPtr group = build_group(config);
    BallLimits limits{config.max_ball_elements};
    EstimatorOptions est;
    est.mode = config.estimator.mode;
    est.budget = config.estimator.budget;
    est.samples = config.estimator.samples;
    est.seed = config.estimator.seed;
    est.threads = options.threads;

    // Generating sets: the model's own generators unless overridden.
    std::vector<std::pair<std::string, std::vector<Element>>> sets;
    if (config.generating_sets.empty()) {
      sets.emplace_back("X", std::vector<Element>{});
    } else {
      for (const auto& [name, words] : config.generating_sets) {
        std::vector<Element> gens;
        for (const std::string& w : words) gens.push_back(parse_group_word(*group, w));
        sets.emplace_back(name, std::move(gens));
      }
    }

    const int max_radius = config.radii.back();
    DcSeries primary_series;
    bool have_primary_dc = false;
    Ball primary_ball;

    for (std::size_t si = 0; si < sets.size(); ++si) {
      const bool primary = si == 0;
      const std::string suffix = primary ? "" : "_" + sets[si].first;
      Ball ball = obtain_ball(ws, group, sets[si].second, max_radius, limits);

      {
        auto out = open_artifact(ws, "growth" + suffix + ".csv");
        write_growth_csv(out, ball, config.radii);
      }
      if (config.output.dump_spheres) {
        auto out = open_artifact(ws, "spheres" + suffix + ".csv");
        write_sphere_csv(out, ball);
      }

      auto t_series = std::chrono::steady_clock::now();
      if (config.series.type == "dc") {
        MeasureFamily family = build_family(config, group);
        // Alternative-generating-set families need their own ball.
        DcSeries series;
        if (const auto* fb = std::get_if<FBallFamily>(&family); fb && !fb->spec.restriction()) {
          Ball yball = obtain_ball(ws, group, fb->spec.generating_set, max_radius, limits);
          series = dc_series(yball, config.radii, family, est);
        } else {
          series = dc_series(ball, config.radii, family, est);
        }
        auto out = open_artifact(ws, "series" + suffix + ".csv");
        write_series_csv(out, series);
        if (primary) {
          primary_series = std::move(series);
          have_primary_dc = true;
        }
      } else {
        Homomorphism hom = build_hom(group, *config.series.hom);
        Element g = config.series.element.empty() || config.series.element == "e"
                        ? group->identity()
                        : parse_group_word(*group, config.series.element);
        CosetDensitySeries series = coset_density_series(ball, hom, g);
        auto out = open_artifact(ws, "series" + suffix + ".csv");
        write_coset_series_csv(out, series, config.radii);
      }
      ws.timings["series" + suffix + "_ms"] = ms_since(t_series);

      if (config.output.dump_measures && config.series.type == "dc" &&
          config.measure.family != "f-ball") {
        Measure mu;
        if (config.measure.family == "uniform-ball") {
          mu = uniform_on_ball(ball);
        } else if (config.measure.family == "random-walk") {
          mu = random_walk_measure(group, max_radius, config.measure.laziness, limits);
        } else {
          mu = padded_measure(ball, parse_group_word(*group, config.measure.element),
                              expand_padding(config.measure, config.radii).back());
        }
        auto out = open_artifact(ws, "measure" + suffix + ".csv");
        write_measure_csv(out, *group, mu);
      }

      if (primary) primary_ball = std::move(ball);
    }

    // Checks.
    auto t_checks = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    auto dc_series_for_checks = [&]() -> const DcSeries& {
      if (!have_primary_dc) {
        primary_series = dc_series(primary_ball, config.radii, UniformBallFamily{}, est);
        have_primary_dc = true;
      }
      return primary_series;
    };
    for (const CheckConfig& ck : config.checks) {
      if (ck.check == "gustafson") {
        std::vector<GroupPtr> corpus;
        for (const std::string& d : ck.corpus) corpus.push_back(make_group(d));
        for (CheckResult& r : gustafson_check(corpus)) results.push_back(std::move(r));
      } else if (ck.check == "gallagher") {
        results.push_back(gallagher_check(group, build_hom(group, *ck.hom)));
      } else if (ck.check == "quotient-bound") {
        results.push_back(quotient_bound_check(group, build_hom(group, *ck.hom),
                                               dc_series_for_checks(), ck.window, ck.tolerance));
      } else if (ck.check == "index-bound") {
        FBallSpec spec = build_f_ball(group, *ck.subgroup);
        DcSeries hseries;
        if (spec.restriction()) {
          hseries = dc_series(primary_ball, config.radii, FBallFamily{std::move(spec)}, est);
        } else {
          hseries = dc_series(group, config.radii, FBallFamily{std::move(spec)}, est, limits);
        }
        results.push_back(
            index_bound_check(dc_series_for_checks(), hseries, ck.index, ck.window, ck.tolerance));
      } else if (ck.check == "centralizer-linear-bound") {
        results.push_back(centralizer_linear_bound_check(group, ck.samples, ck.n, ck.p, ck.seed, limits));
      }
    }
    {
      auto out = open_artifact(ws, "checks.json");
      write_checks_json(out, results);
    }
    ws.timings["checks_ms"] = ms_since(t_checks);

    // Reports.
    for (const ReportConfig& rp : config.reports) {
      if (rp.report == "negligibility") {
        NegligibilityReport report = negligibility_report(group, rp.n_max, rp.g_samples, rp.seed, limits);
        auto out = open_artifact(ws, "negligibility.csv");
        write_negligibility_csv(out, report);
      } else if (rp.report == "translation-length") {
        Element g = parse_group_word(*group, rp.element);
        Ball oracle;
        const Ball* oracle_ptr = nullptr;
        if (rp.ball_radius) {
          oracle = obtain_ball(ws, group, sets[0].second, *rp.ball_radius, limits);
          oracle_ptr = &oracle;
        } else if (primary_ball.radius >= 0) {
          oracle_ptr = &primary_ball;
        }
        TranslationLengthReport report = translation_length(*group, g, rp.m_max, oracle_ptr);
        auto out = open_artifact(ws, "translation.csv");
        write_translation_csv(out, report);
      }
    }

    // Manifest.
    ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = config_echo(config);
    manifest["threads"] = options.threads;
    manifest["artifacts"] = ws.artifacts;
    ws.timings["total_ms"] = ms_since(t_start);
    manifest["wall_times"] = ws.timings;
    {
      auto out = open_artifact(ws, "manifest.json");
      out << manifest.dump(2) << "\n";
    }
    for (const CheckResult& r : results) {
      log << "check " << r.name << ": " << check_status_name(r.status) << "\n";
    }
    log << "wrote " << ws.artifacts.size() << " artifacts to " << ws.out_dir.string() << "\n";
    return 0;
  } catch (const ResourceError& e) {
    log << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dcg
