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

#ifndef DCG_EQUATIONS_HPP_
#define DCG_EQUATIONS_HPP_

#include <span>
#include <string>
#include <vector>

#include "dcg/group.hpp"

namespace dcg {

/// Freely reduced word over variables x1..xk; letter +i is x_i, -i its
/// inverse. An equation w = 1 in k variables.
struct Word {
  std::vector<std::int32_t> letters;
  int arity = 0;  // max variable index used

  std::size_t length() const { return letters.size(); }
};

/// Parses a word over tokens x1..xk, inverses `xi^-1` or `Xi`, integer
/// exponents, parentheses, and commutator sugar `[u,v]` = u^-1 v^-1 u v.
/// The result is freely reduced; a word that reduces to the empty word is
/// rejected as vacuous. Syntax errors report the offending position.
Word parse_word(const std::string& text);

/// Substitutes tuple[i] for x_{i+1} and multiplies out.
Element evaluate(const Group& g, const Word& w, std::span<const Element> tuple);

/// Finite system of equations; the empty system is rejected.
struct EquationSystem {
  std::vector<Word> words;
  int arity = 0;

  static EquationSystem parse(const std::vector<std::string>& texts);
};

/// True iff every word in E evaluates to the identity at the tuple.
bool is_solution(const Group& g, const EquationSystem& system, std::span<const Element> tuple);

std::string render_word(const Word& w);

}  // namespace dcg

#endif  // DCG_EQUATIONS_HPP_
