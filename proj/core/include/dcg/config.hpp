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

#ifndef DCG_CONFIG_HPP_
#define DCG_CONFIG_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcg/estimator.hpp"
#include "dcg/theory.hpp"

namespace dcg {

/// Homomorphism descriptor: either a coordinate reduction
///   {"kind": "mod", "modulus": 2}
/// or generator images into a named finite target
///   {"kind": "images", "target": "cyclic(2)", "images": {"a": "g", "b": "g"}}
/// (image words are parsed over the target's generators; "" or "e" is the
/// identity).
struct HomConfig {
  std::string kind;
  std::int64_t modulus = 0;
  std::string target;
  std::map<std::string, std::string> images;
};

/// f-ball descriptor: {"restrict":"kernel","hom":{...}},
/// {"restrict":"translation-part"}, or {"generators":["s","s t"]}.
struct FBallConfig {
  std::string restrict_mode;  // "kernel" | "translation-part" | "" (alternative mode)
  std::optional<HomConfig> hom;
  std::vector<std::string> generators;
  std::string label;
};

struct MeasureConfig {
  std::string family = "uniform-ball";  // uniform-ball | random-walk | padded | f-ball
  double laziness = 0.0;
  std::string element;                  // padded: infinite-order element word
  std::vector<std::int64_t> padding;    // padded: explicit M_n list, or
  std::optional<std::int64_t> padding_slope;   // M_n = slope*n + offset
  std::int64_t padding_offset = 0;
  std::optional<FBallConfig> f_ball;
};

/// What the per-radius series measures.
struct SeriesConfig {
  std::string type = "dc";  // dc | coset-density
  std::optional<HomConfig> hom;
  std::string element;  // coset-density: whose coset (default identity)
};

struct EstimatorConfig {
  EstimatorOptions::Mode mode = EstimatorOptions::Mode::kAuto;
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t samples = 100'000;
  std::optional<std::uint64_t> seed;
};

struct CheckConfig {
  std::string check;  // gustafson | gallagher | quotient-bound | index-bound | centralizer-linear-bound
  std::vector<std::string> corpus;          // gustafson
  std::optional<HomConfig> hom;             // gallagher, quotient-bound
  std::pair<int, int> window{0, 0};         // quotient-bound, index-bound
  std::optional<FBallConfig> subgroup;      // index-bound
  int index = 1;                            // index-bound
  double tolerance = 0.05;
  int samples = 100;                        // centralizer-linear-bound
  int n = 1;
  int p = 1;
  std::uint64_t seed = 0;
};

struct ReportConfig {
  std::string report;  // negligibility | translation-length
  int n_max = 8;
  int g_samples = 10;
  std::uint64_t seed = 0;
  std::string element;  // translation-length
  int m_max = 10;
  std::optional<int> ball_radius;  // translation-length distance oracle
};

struct OutputConfig {
  std::string dir = "out";
  bool dump_spheres = false;
  bool dump_measures = false;
};

struct ExperimentConfig {
  int schema = 1;
  std::string group;
  std::vector<std::pair<std::string, std::vector<std::string>>> generating_sets;  // optional, <= 2
  std::vector<int> radii;
  SeriesConfig series;
  MeasureConfig measure;
  EstimatorConfig estimator;
  std::vector<CheckConfig> checks;
  std::vector<ReportConfig> reports;
  OutputConfig output;
  std::size_t max_ball_elements = 20'000'000;
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct Diagnostic {
  enum class Severity { kError, kWarning, kInfo };
  Severity severity = Severity::kError;
  std::string field;
  std::string message;
};

/// Schema and cross-field validation, including dry-run model construction.
/// Errors make the config unrunnable; warnings and infos are advisory
/// (unverified homomorphisms, laziness-0 parity effects, comparison mode).
std::vector<Diagnostic> validate_config(const ExperimentConfig& config);

const char* severity_name(Diagnostic::Severity s);

// Construction helpers shared by the runner and tests.
GroupPtr build_group(const ExperimentConfig& config);
Homomorphism build_hom(const GroupPtr& group, const HomConfig& spec);
FBallSpec build_f_ball(const GroupPtr& group, const FBallConfig& spec);
std::vector<std::int64_t> expand_padding(const MeasureConfig& measure, const std::vector<int>& radii);

}  // namespace dcg

#endif  // DCG_CONFIG_HPP_
