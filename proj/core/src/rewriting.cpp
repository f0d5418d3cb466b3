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

#include "dcg/rewriting.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dcg {

int RewritingSystemSpec::letter_index(const std::string& name) const {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

bool all_single_char(const std::vector<std::string>& letters) {
  return std::all_of(letters.begin(), letters.end(), [](const std::string& s) { return s.size() == 1; });
}

Symbols parse_letter_string(const RewritingSystemSpec& spec, const std::string& text,
                            const std::string& context) {
  Symbols out;
  std::istringstream ss(text);
  std::string tok;
  std::vector<std::string> tokens;
  while (ss >> tok) tokens.push_back(tok);
  bool compact = tokens.size() == 1 && all_single_char(spec.letters);
  if (compact && spec.letter_index(tokens[0]) < 0) {
    for (char ch : tokens[0]) {
      int idx = spec.letter_index(std::string(1, ch));
      if (idx < 0) throw SpecError("unknown letter '" + std::string(1, ch) + "' in " + context);
      out.push_back(idx);
    }
    return out;
  }
  for (const std::string& t : tokens) {
    int idx = spec.letter_index(t);
    if (idx < 0) throw SpecError("unknown letter '" + t + "' in " + context);
    out.push_back(idx);
  }
  return out;
}

/// lhs > rhs in shortlex (longer, or same length and lexicographically
/// greater in the declared letter order).
bool shortlex_greater(const Symbols& lhs, const Symbols& rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() > rhs.size();
  return lhs > rhs;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

RewritingSystemSpec parse_rewriting_spec(const std::string& text) {
  RewritingSystemSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<std::pair<std::string, std::string>> pending_rules;
  std::vector<std::pair<std::string, std::string>> pending_inverses;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw SpecError("rewriting spec line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "letters") {
      std::istringstream ss(value);
      std::string tok;
      while (ss >> tok) {
        if (spec.letter_index(tok) >= 0) {
          throw SpecError("duplicate letter '" + tok + "' at line " + std::to_string(line_no));
        }
        spec.letters.push_back(tok);
      }
    } else if (key == "inverses") {
      std::istringstream ss(value);
      std::string pair;
      while (std::getline(ss, pair, ',')) {
        std::istringstream ps(pair);
        std::string a, b;
        if (!(ps >> a >> b)) {
          throw SpecError("malformed inverse pair at line " + std::to_string(line_no));
        }
        pending_inverses.emplace_back(a, b);
      }
    } else if (key == "rule") {
      auto arrow = value.find("->");
      if (arrow == std::string::npos) {
        throw SpecError("rule without '->' at line " + std::to_string(line_no));
      }
      pending_rules.emplace_back(trim(value.substr(0, arrow)), trim(value.substr(arrow + 2)));
    } else {
      throw SpecError("unknown key '" + key + "' at line " + std::to_string(line_no));
    }
  }
  if (spec.letters.empty()) throw SpecError("rewriting spec declares no letters");

  spec.inverse_of.assign(spec.letters.size(), -1);
  for (const auto& [a, b] : pending_inverses) {
    int ia = spec.letter_index(a), ib = spec.letter_index(b);
    if (ia < 0 || ib < 0) throw SpecError("inverse pair uses undeclared letter '" + a + " " + b + "'");
    if (spec.inverse_of[static_cast<std::size_t>(ia)] != -1 ||
        (ia != ib && spec.inverse_of[static_cast<std::size_t>(ib)] != -1)) {
      throw SpecError("letter appears in two inverse pairs");
    }
    spec.inverse_of[static_cast<std::size_t>(ia)] = ib;
    spec.inverse_of[static_cast<std::size_t>(ib)] = ia;
    spec.generators.push_back(ia);
  }
  for (std::size_t i = 0; i < spec.letters.size(); ++i) {
    if (spec.inverse_of[i] == -1) {
      throw SpecError("letter '" + spec.letters[i] + "' has no designated inverse");
    }
  }
  for (const auto& [lhs_text, rhs_text] : pending_rules) {
    RewriteRule rule;
    rule.lhs = parse_letter_string(spec, lhs_text, "rule lhs");
    if (!rhs_text.empty()) rule.rhs = parse_letter_string(spec, rhs_text, "rule rhs");
    if (rule.lhs.empty()) throw SpecError("rule with empty left-hand side");
    if (!shortlex_greater(rule.lhs, rule.rhs)) {
      throw SpecError("rule '" + lhs_text + " -> " + rhs_text +
                      "' is not shortlex-reducing in the declared letter order");
    }
    spec.rules.push_back(std::move(rule));
  }
  return spec;
}

RewritingSystemSpec load_rewriting_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open rewriting spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rewriting_spec(ss.str());
}

Symbols normal_form(const RewritingSystemSpec& spec, Symbols word) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t pos = 0; pos < word.size() && !changed; ++pos) {
      for (const RewriteRule& rule : spec.rules) {
        if (rule.lhs.size() > word.size() - pos) continue;
        if (std::equal(rule.lhs.begin(), rule.lhs.end(), word.begin() + static_cast<std::ptrdiff_t>(pos))) {
          Symbols next;
          next.reserve(word.size() - rule.lhs.size() + rule.rhs.size());
          next.insert(next.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
          next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
          next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()), word.end());
          word = std::move(next);
          changed = true;
          break;
        }
      }
    }
  }
  return word;
}

ConfluenceReport check_confluence(const RewritingSystemSpec& spec) {
  ConfluenceReport report;
  report.confluent = true;
  auto add_pair = [&](std::size_t a, std::size_t b, Symbols superposition, Symbols left, Symbols right) {
    CriticalPair cp;
    cp.rule_a = a;
    cp.rule_b = b;
    cp.superposition = std::move(superposition);
    cp.left_normal_form = normal_form(spec, std::move(left));
    cp.right_normal_form = normal_form(spec, std::move(right));
    cp.joins = cp.left_normal_form == cp.right_normal_form;
    if (!cp.joins) report.confluent = false;
    report.pairs.push_back(std::move(cp));
  };

  for (std::size_t a = 0; a < spec.rules.size(); ++a) {
    for (std::size_t b = 0; b < spec.rules.size(); ++b) {
      const Symbols& la = spec.rules[a].lhs;
      const Symbols& lb = spec.rules[b].lhs;

      // Proper overlap: a nonempty proper suffix of lhs_a equals a proper
      // prefix of lhs_b. Superposition w = lhs_a + tail(lhs_b).
      for (std::size_t k = 1; k < std::min(la.size(), lb.size()); ++k) {
        if (!std::equal(la.end() - static_cast<std::ptrdiff_t>(k), la.end(), lb.begin())) continue;
        Symbols w(la);
        w.insert(w.end(), lb.begin() + static_cast<std::ptrdiff_t>(k), lb.end());
        Symbols left(spec.rules[a].rhs);
        left.insert(left.end(), lb.begin() + static_cast<std::ptrdiff_t>(k), lb.end());
        Symbols right(la.begin(), la.end() - static_cast<std::ptrdiff_t>(k));
        right.insert(right.end(), spec.rules[b].rhs.begin(), spec.rules[b].rhs.end());
        add_pair(a, b, std::move(w), std::move(left), std::move(right));
      }

      // Containment: lhs_b occurs inside lhs_a.
      if (lb.size() <= la.size()) {
        for (std::size_t pos = 0; pos + lb.size() <= la.size(); ++pos) {
          if (a == b && pos == 0 && lb.size() == la.size()) continue;  // identical redex
          if (!std::equal(lb.begin(), lb.end(), la.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
          Symbols left(spec.rules[a].rhs);
          Symbols right(la.begin(), la.begin() + static_cast<std::ptrdiff_t>(pos));
          right.insert(right.end(), spec.rules[b].rhs.begin(), spec.rules[b].rhs.end());
          right.insert(right.end(), la.begin() + static_cast<std::ptrdiff_t>(pos + lb.size()), la.end());
          add_pair(a, b, la, std::move(left), std::move(right));
        }
      }
    }
  }
  return report;
}

std::string render_symbols(const RewritingSystemSpec& spec, const Symbols& word) {
  if (word.empty()) return "e";
  bool compact = all_single_char(spec.letters);
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i) s += " ";
    s += spec.letters[static_cast<std::size_t>(word[i])];
  }
  return s;
}

namespace {

class RewritingGroup final : public Group {
 public:
  explicit RewritingGroup(RewritingSystemSpec spec)
      : Group("rewriting-system", {}), spec_(std::move(spec)), report_(check_confluence(spec_)) {
    std::vector<Generator> gens;
    for (std::int32_t g : spec_.generators) {
      gens.push_back({spec_.letters[static_cast<std::size_t>(g)],
                      to_element(normal_form(spec_, {g}))});
    }
    generators_ = std::move(gens);
  }

  GroupKind kind() const override { return GroupKind::kRewritingSystem; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return false; }

  void ensure_enumerable() const override {
    if (report_.confluent) return;
    const CriticalPair* fail = report_.first_failure();
    std::string detail;
    if (fail != nullptr) {
      detail = ": critical pair on '" + render_symbols(spec_, fail->superposition) +
               "' has distinct normal forms '" + render_symbols(spec_, fail->left_normal_form) +
               "' and '" + render_symbols(spec_, fail->right_normal_form) + "'";
    }
    throw SpecError("rewriting system is not confluent; normal forms are not canonical" + detail);
  }

  Element identity() const override { return Element{}; }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    Symbols w = to_symbols(a);
    Symbols v = to_symbols(b);
    w.insert(w.end(), v.begin(), v.end());
    return to_element(normal_form(spec_, std::move(w)));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    Symbols w;
    const auto& p = a.payload();
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      w.push_back(spec_.inverse_of[static_cast<std::size_t>(*it)]);
    }
    return to_element(normal_form(spec_, std::move(w)));
  }

  std::string render(const Element& e) const override { return render_symbols(spec_, to_symbols(e)); }

  void validate(const Element& e) const override {
    for (std::int64_t v : e.payload()) {
      if (v < 0 || v >= static_cast<std::int64_t>(spec_.letters.size())) {
        throw SpecError("rewriting payload symbol out of range");
      }
    }
    // Canonical payloads are normal forms: no rule redex may occur.
    const auto& p = e.payload();
    for (const RewriteRule& rule : spec_.rules) {
      if (rule.lhs.size() > p.size()) continue;
      for (std::size_t pos = 0; pos + rule.lhs.size() <= p.size(); ++pos) {
        bool match = true;
        for (std::size_t i = 0; i < rule.lhs.size(); ++i) {
          if (p[pos + i] != rule.lhs[i]) {
            match = false;
            break;
          }
        }
        if (match) throw SpecError("rewriting payload is not in normal form");
      }
    }
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    GenWord w;
    for (std::int64_t sym : g.payload()) {
      auto it = std::find(spec_.generators.begin(), spec_.generators.end(), static_cast<std::int32_t>(sym));
      if (it != spec_.generators.end()) {
        w.push_back(static_cast<std::int32_t>(it - spec_.generators.begin()) + 1);
      } else {
        std::int32_t inv = spec_.inverse_of[static_cast<std::size_t>(sym)];
        auto jt = std::find(spec_.generators.begin(), spec_.generators.end(), inv);
        if (jt == spec_.generators.end()) throw Error("rewriting letter is neither generator nor inverse");
        w.push_back(-(static_cast<std::int32_t>(jt - spec_.generators.begin()) + 1));
      }
    }
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    // Each rule lhs -> rhs declares the relation lhs * rhs^-1 = 1.
    std::vector<GenWord> rels;
    auto letter_of = [&](std::int32_t sym) -> std::int32_t {
      auto it = std::find(spec_.generators.begin(), spec_.generators.end(), sym);
      if (it != spec_.generators.end()) return static_cast<std::int32_t>(it - spec_.generators.begin()) + 1;
      std::int32_t inv = spec_.inverse_of[static_cast<std::size_t>(sym)];
      auto jt = std::find(spec_.generators.begin(), spec_.generators.end(), inv);
      if (jt == spec_.generators.end()) throw Error("rewriting letter is neither generator nor inverse");
      return -(static_cast<std::int32_t>(jt - spec_.generators.begin()) + 1);
    };
    for (const RewriteRule& rule : spec_.rules) {
      GenWord rel;
      for (std::int32_t sym : rule.lhs) rel.push_back(letter_of(sym));
      for (auto it = rule.rhs.rbegin(); it != rule.rhs.rend(); ++it) rel.push_back(-letter_of(*it));
      rels.push_back(std::move(rel));
    }
    return rels;
  }

  const RewritingSystemSpec& spec() const { return spec_; }
  const ConfluenceReport& confluence() const { return report_; }

 private:
  static Element to_element(const Symbols& w) {
    return Element(std::vector<std::int64_t>(w.begin(), w.end()));
  }
  static Symbols to_symbols(const Element& e) {
    return Symbols(e.payload().begin(), e.payload().end());
  }

  RewritingSystemSpec spec_;
  ConfluenceReport report_;
};

}  // namespace

GroupPtr make_rewriting_group(const RewritingSystemSpec& spec) {
  return std::make_shared<RewritingGroup>(spec);
}

}  // namespace dcg
