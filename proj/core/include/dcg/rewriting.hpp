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

#ifndef DCG_REWRITING_HPP_
#define DCG_REWRITING_HPP_

#include <string>
#include <vector>

#include "dcg/group.hpp"

namespace dcg {

/// Word over the rewriting alphabet, one entry per symbol index.
using Symbols = std::vector<std::int32_t>;

struct RewriteRule {
  Symbols lhs;
  Symbols rhs;
};

/// A string rewriting system over an alphabet with designated formal
/// inverses. Rules must be shortlex-reducing in the declared letter order,
/// which guarantees termination; confluence is a separate, checkable
/// property.
struct RewritingSystemSpec {
  std::vector<std::string> letters;
  std::vector<std::int32_t> inverse_of;   // letter index -> inverse letter index
  std::vector<std::int32_t> generators;   // indices of the positive letters
  std::vector<RewriteRule> rules;

  int letter_index(const std::string& name) const;
};

/// Parses the plain-text format, one declaration per line:
///   letters: a A b B
///   inverses: a A, b B
///   rule: ba -> ab
/// Empty right-hand sides denote the empty word. '#' starts a comment.
/// Throws SpecError on malformed input or rules that are not
/// shortlex-reducing.
RewritingSystemSpec parse_rewriting_spec(const std::string& text);
RewritingSystemSpec load_rewriting_spec(const std::string& path);

/// Normal form under leftmost-innermost rewriting. Unique across strategies
/// iff the system is confluent.
Symbols normal_form(const RewritingSystemSpec& spec, Symbols word);

struct CriticalPair {
  std::size_t rule_a = 0;
  std::size_t rule_b = 0;
  Symbols superposition;
  Symbols left_normal_form;
  Symbols right_normal_form;
  bool joins = false;
};

struct ConfluenceReport {
  bool confluent = false;
  std::vector<CriticalPair> pairs;

  /// First non-joining pair, for diagnostics.
  const CriticalPair* first_failure() const {
    for (const auto& p : pairs) {
      if (!p.joins) return &p;
    }
    return nullptr;
  }
};

/// Computes all critical pairs from rule-overlap superpositions (proper
/// suffix/prefix overlaps and full containments) and reduces each side to
/// normal form. Confluent iff every pair joins; non-confluence is a report
/// outcome, not an error.
ConfluenceReport check_confluence(const RewritingSystemSpec& spec);

std::string render_symbols(const RewritingSystemSpec& spec, const Symbols& word);

/// Group model whose canonical forms are rewriting normal forms. The model
/// is constructed even when the system is not confluent, but ball
/// enumeration rejects it (fail-fast) because canonical forms would not be
/// well defined.
GroupPtr make_rewriting_group(const RewritingSystemSpec& spec);

}  // namespace dcg

#endif  // DCG_REWRITING_HPP_
