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

#include "dcg/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace dcg {

OrderResult Group::order_of(const Element& g, std::int64_t cap) const {
  validate(g);
  if (cap < 1) throw SpecError("order_of: cap must be >= 1");
  Element id = identity();
  Element power = g;
  for (std::int64_t k = 1; k <= cap; ++k) {
    if (power == id) return {OrderKind::kFinite, k};
    power = multiply(power, g);
  }
  return {OrderKind::kExceedsCap, 0};
}

const Group::Closure& Group::closure() const {
  if (!finite()) throw Error("element enumeration requires a finite model: " + name_);
  std::call_once(closure_once_, [this] {
    auto c = std::make_unique<Closure>();
    c->elements.push_back(identity());
    c->parent.push_back(0);
    c->via.push_back(0);
    c->index.insert(c->elements[0], 0, c->elements);

    // Symmetrized alphabet, deduplicated, generator order first.
    std::vector<Element> alphabet;
    std::vector<std::int32_t> letters;
    auto add = [&](const Element& e, std::int32_t letter) {
      for (const Element& a : alphabet) {
        if (a == e) return;
      }
      alphabet.push_back(e);
      letters.push_back(letter);
    };
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      add(generators_[i].value, static_cast<std::int32_t>(i + 1));
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      add(inverse(generators_[i].value), -static_cast<std::int32_t>(i + 1));
    }

    for (std::size_t head = 0; head < c->elements.size(); ++head) {
      Element cur = c->elements[head];
      for (std::size_t a = 0; a < alphabet.size(); ++a) {
        Element nxt = multiply(cur, alphabet[a]);
        std::size_t pos = c->elements.size();
        std::size_t got = c->index.insert(nxt, pos, c->elements);
        if (got == pos) {
          c->elements.push_back(std::move(nxt));
          c->parent.push_back(static_cast<std::uint32_t>(head));
          c->via.push_back(letters[a]);
        }
      }
    }
    closure_ = std::move(c);
  });
  return *closure_;
}

const std::vector<Element>& Group::elements() const { return closure().elements; }

std::optional<GenWord> Group::express(const Element& g) const {
  validate(g);
  if (!finite()) return std::nullopt;
  const Closure& c = closure();
  auto pos = c.index.find(g, c.elements);
  if (!pos) throw Error("express: element not in finite model " + name_);
  GenWord word;
  std::size_t at = *pos;
  while (at != 0) {
    word.push_back(c.via[at]);
    at = c.parent[at];
  }
  std::reverse(word.begin(), word.end());
  return word;
}

Element Group::evaluate_word(const GenWord& word) const {
  Element acc = identity();
  for (std::int32_t letter : word) {
    if (letter == 0) throw SpecError("generator word contains a zero letter");
    std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
    if (idx >= generators_.size()) throw SpecError("generator word letter out of range");
    const Element& gen = generators_[idx].value;
    acc = multiply(acc, letter > 0 ? gen : inverse(gen));
  }
  return acc;
}

std::uint64_t Group::fingerprint() const {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (char ch : name_) h = hash_combine(h, static_cast<std::uint64_t>(ch));
  for (const Generator& g : generators_) {
    for (char ch : g.name) h = hash_combine(h, static_cast<std::uint64_t>(ch));
    h = hash_combine(h, g.value.hash());
  }
  return h;
}

namespace {

bool all_single_lower(const std::vector<Generator>& gens) {
  for (const Generator& g : gens) {
    if (g.name.size() != 1 || !std::islower(static_cast<unsigned char>(g.name[0]))) return false;
  }
  return true;
}

int find_generator(const Group& g, const std::string& name) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

Element parse_group_word(const Group& g, const std::string& text) {
  GenWord word;
  auto push_letter = [&](int gen_idx, std::int64_t exponent) {
    std::int32_t letter = static_cast<std::int32_t>(gen_idx + 1);
    for (std::int64_t k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) {
      word.push_back(exponent < 0 ? -letter : letter);
    }
  };

  bool has_space = text.find_first_of(" \t*") != std::string::npos;
  if (!has_space && all_single_lower(g.generators())) {
    // Compact form: lowercase = generator, uppercase = inverse.
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      bool inv = std::isupper(static_cast<unsigned char>(ch)) != 0;
      std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      int idx = find_generator(g, name);
      if (idx < 0) throw SpecError("unknown generator '" + name + "' in word \"" + text + "\"");
      std::int64_t exponent = inv ? -1 : 1;
      if (i + 1 < text.size() && text[i + 1] == '^') {
        std::size_t j = i + 2;
        std::size_t start = j;
        if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == start) throw SpecError("malformed exponent in word \"" + text + "\"");
        exponent *= std::strtoll(text.substr(start, j - start).c_str(), nullptr, 10);
        i = j - 1;
      }
      push_letter(idx, exponent);
    }
    return g.evaluate_word(word);
  }

  // Token form: names separated by whitespace or '*', optional ^exponent.
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '*') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  for (const std::string& tok : tokens) {
    std::string name = tok;
    std::int64_t exponent = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      const std::string e = tok.substr(caret + 1);
      if (e.empty()) throw SpecError("malformed exponent in word \"" + text + "\"");
      exponent = std::strtoll(e.c_str(), nullptr, 10);
    }
    int idx = find_generator(g, name);
    if (idx < 0) throw SpecError("unknown generator '" + name + "' in word \"" + text + "\"");
    push_letter(idx, exponent);
  }
  return g.evaluate_word(word);
}

}  // namespace dcg
