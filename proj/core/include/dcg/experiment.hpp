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

#ifndef DCG_EXPERIMENT_HPP_
#define DCG_EXPERIMENT_HPP_

#include <iosfwd>

#include "dcg/config.hpp"

namespace dcg {

struct RunOptions {
  int threads = default_threads();
  bool use_cache = true;
  std::string output_dir;  // overrides config.output.dir when nonempty
  std::string cache_dir;   // default: <output dir>/cache
};

/// Executes the experiment: builds models and balls (cached), computes the
/// configured series and checks, and writes series.csv, growth.csv,
/// checks.json and manifest.json (plus report CSVs) into the output
/// directory. Outputs are deterministic given the config, including seeds;
/// manifest wall times are the only exception.
///
/// Exit status: 0 on success, 2 on validation errors, 3 on resource-cap
/// errors, 1 on other failures.
int run_experiment(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);

/// Prints diagnostics; returns 0 when the config has no errors.
int validate_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace dcg

#endif  // DCG_EXPERIMENT_HPP_
