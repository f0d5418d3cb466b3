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

#include "dcg/equations.hpp"

#include <cctype>

namespace dcg {

namespace {

void push_reduced(std::vector<std::int32_t>& out, std::int32_t letter) {
  if (!out.empty() && out.back() == -letter) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

void append_reduced(std::vector<std::int32_t>& out, const std::vector<std::int32_t>& w) {
  for (std::int32_t letter : w) push_reduced(out, letter);
}

std::vector<std::int32_t> invert(const std::vector<std::int32_t>& w) {
  std::vector<std::int32_t> out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

class WordParser {
 public:
  explicit WordParser(const std::string& text) : text_(text) {}

  std::vector<std::int32_t> parse() {
    auto w = parse_sequence();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  // sequence := factor* ; factor := atom ('^' int)?
  // atom := xN | XN | '[' sequence ',' sequence ']' | '(' sequence ')'
  std::vector<std::int32_t> parse_sequence() {
    std::vector<std::int32_t> out;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ']' || text_[pos_] == ')') {
        return out;
      }
      append_reduced(out, parse_factor());
    }
  }

  std::vector<std::int32_t> parse_factor() {
    std::vector<std::int32_t> atom = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::int64_t e = parse_int();
      std::vector<std::int32_t> out;
      const std::vector<std::int32_t> base = e < 0 ? invert(atom) : atom;
      for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) append_reduced(out, base);
      return out;
    }
    return atom;
  }

  std::vector<std::int32_t> parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of word");
    char ch = text_[pos_];
    if (ch == '[') {
      ++pos_;
      auto u = parse_sequence();
      expect(',');
      auto v = parse_sequence();
      expect(']');
      // [u,v] = u^-1 v^-1 u v
      std::vector<std::int32_t> out = invert(u);
      append_reduced(out, invert(v));
      append_reduced(out, u);
      append_reduced(out, v);
      return out;
    }
    if (ch == '(') {
      ++pos_;
      auto u = parse_sequence();
      expect(')');
      return u;
    }
    if (ch == 'x' || ch == 'X') {
      bool inverse = ch == 'X';
      ++pos_;
      std::int64_t idx = parse_uint();
      if (idx < 1) fail("variable index must be >= 1");
      return {static_cast<std::int32_t>(inverse ? -idx : idx)};
    }
    fail("expected a variable, '[' or '('");
  }

  std::int64_t parse_uint() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    return std::stoll(text_.substr(start, pos_ - start));
  }

  std::int64_t parse_int() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::int64_t v = parse_uint();
    return neg ? -v : v;
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    throw SpecError("word syntax error at position " + std::to_string(pos_ + 1) + ": " + message +
                    " in \"" + text_ + "\"");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const std::string& text) {
  Word w;
  w.letters = WordParser(text).parse();
  if (w.letters.empty()) {
    throw SpecError("word \"" + text + "\" freely reduces to the empty word (vacuous equation)");
  }
  for (std::int32_t letter : w.letters) {
    w.arity = std::max(w.arity, letter > 0 ? letter : -letter);
  }
  return w;
}

Element evaluate(const Group& g, const Word& w, std::span<const Element> tuple) {
  if (static_cast<int>(tuple.size()) < w.arity) {
    throw SpecError("word needs " + std::to_string(w.arity) + " variables but the tuple has " +
                    std::to_string(tuple.size()));
  }
  Element acc = g.identity();
  for (std::int32_t letter : w.letters) {
    std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
    acc = g.multiply(acc, letter > 0 ? tuple[idx] : g.inverse(tuple[idx]));
  }
  return acc;
}

EquationSystem EquationSystem::parse(const std::vector<std::string>& texts) {
  if (texts.empty()) throw SpecError("equation system must be nonempty");
  EquationSystem system;
  for (const std::string& t : texts) {
    Word w = parse_word(t);
    system.arity = std::max(system.arity, w.arity);
    system.words.push_back(std::move(w));
  }
  return system;
}

bool is_solution(const Group& g, const EquationSystem& system, std::span<const Element> tuple) {
  const Element id = g.identity();
  for (const Word& w : system.words) {
    if (evaluate(g, w, tuple) != id) return false;
  }
  return true;
}

std::string render_word(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += " ";
    std::int32_t letter = w.letters[i];
    s += letter > 0 ? "x" + std::to_string(letter) : "X" + std::to_string(-letter);
  }
  return s;
}

}  // namespace dcg
