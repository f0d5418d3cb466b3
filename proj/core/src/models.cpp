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

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <span>

#include "dcg/group.hpp"
#include "dcg/homomorphism.hpp"
#include "dcg/rewriting.hpp"

namespace dcg {
namespace {

GenWord commutator_word(const GenWord& u, const GenWord& v) {
  GenWord w;
  for (auto it = u.rbegin(); it != u.rend(); ++it) w.push_back(-*it);
  for (auto it = v.rbegin(); it != v.rend(); ++it) w.push_back(-*it);
  w.insert(w.end(), u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

void append_power(GenWord& w, std::int32_t letter, std::int64_t exponent) {
  for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) {
    w.push_back(exponent < 0 ? -letter : letter);
  }
}

// ---------------------------------------------------------------------------
// Free group F_p, reduced words of signed letters.
// ---------------------------------------------------------------------------

class FreeGroup final : public Group {
 public:
  explicit FreeGroup(int rank)
      : Group("free(" + std::to_string(rank) + ")", make_generators(rank)), rank_(rank) {}

  GroupKind kind() const override { return GroupKind::kFree; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return true; }

  Element identity() const override { return Element{}; }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    const auto& u = a.payload();
    const auto& v = b.payload();
    std::size_t cut = 0;
    while (cut < u.size() && cut < v.size() && u[u.size() - 1 - cut] == -v[cut]) ++cut;
    std::vector<std::int64_t> out;
    out.reserve(u.size() + v.size() - 2 * cut);
    out.insert(out.end(), u.begin(), u.end() - static_cast<std::ptrdiff_t>(cut));
    out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(cut), v.end());
    return Element(std::move(out));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    std::vector<std::int64_t> out(a.payload().rbegin(), a.payload().rend());
    for (auto& x : out) x = -x;
    return Element(std::move(out));
  }

  OrderResult order_of(const Element& g, std::int64_t /*cap*/ = 1 << 20) const override {
    validate(g);
    if (g.payload().empty()) return {OrderKind::kFinite, 1};
    return {OrderKind::kInfinite, 0};
  }

  std::optional<std::int64_t> proven_word_length(const Element& g) const override {
    validate(g);
    return static_cast<std::int64_t>(g.payload().size());
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    GenWord w(g.payload().begin(), g.payload().end());
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    return std::vector<GenWord>{};
  }

  std::string render(const Element& e) const override {
    if (e.payload().empty()) return "e";
    std::string s;
    for (std::int64_t x : e.payload()) {
      char base = static_cast<char>('a' + (x > 0 ? x : -x) - 1);
      s.push_back(x > 0 ? base : static_cast<char>(std::toupper(base)));
    }
    return s;
  }

  void validate(const Element& e) const override {
    std::int64_t prev = 0;
    for (std::int64_t x : e.payload()) {
      if (x == 0 || x > rank_ || x < -rank_) throw SpecError("free word letter out of range");
      if (x == -prev) throw SpecError("free word not reduced");
      prev = x;
    }
  }

 private:
  static std::vector<Generator> make_generators(int rank) {
    if (rank < 1 || rank > 26) throw SpecError("free group rank must be in [1,26]");
    std::vector<Generator> gens;
    for (int i = 0; i < rank; ++i) {
      gens.push_back({std::string(1, static_cast<char>('a' + i)), Element{i + 1}});
    }
    return gens;
  }

  int rank_;
};

// ---------------------------------------------------------------------------
// Free abelian Z^d, coordinate vectors.
// ---------------------------------------------------------------------------

class FreeAbelianGroup final : public Group {
 public:
  explicit FreeAbelianGroup(int rank)
      : Group("free-abelian(" + std::to_string(rank) + ")", make_generators(rank)), rank_(rank) {}

  GroupKind kind() const override { return GroupKind::kFreeAbelian; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return true; }

  Element identity() const override {
    return Element(std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0));
  }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    std::vector<std::int64_t> out(a.payload());
    for (int i = 0; i < rank_; ++i) out[static_cast<std::size_t>(i)] += b.payload()[static_cast<std::size_t>(i)];
    return Element(std::move(out));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    std::vector<std::int64_t> out(a.payload());
    for (auto& x : out) x = -x;
    return Element(std::move(out));
  }

  OrderResult order_of(const Element& g, std::int64_t /*cap*/ = 1 << 20) const override {
    validate(g);
    bool zero = std::all_of(g.payload().begin(), g.payload().end(), [](std::int64_t x) { return x == 0; });
    return zero ? OrderResult{OrderKind::kFinite, 1} : OrderResult{OrderKind::kInfinite, 0};
  }

  std::optional<std::int64_t> proven_word_length(const Element& g) const override {
    validate(g);
    std::int64_t n = 0;
    for (std::int64_t x : g.payload()) n += x < 0 ? -x : x;
    return n;
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    GenWord w;
    for (int i = 0; i < rank_; ++i) append_power(w, i + 1, g.payload()[static_cast<std::size_t>(i)]);
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    std::vector<GenWord> rels;
    for (int i = 0; i < rank_; ++i) {
      for (int j = i + 1; j < rank_; ++j) rels.push_back(commutator_word({i + 1}, {j + 1}));
    }
    return rels;
  }

  std::string render(const Element& e) const override {
    std::string s = "(";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ",";
      s += std::to_string(e.payload()[static_cast<std::size_t>(i)]);
    }
    return s + ")";
  }

  void validate(const Element& e) const override {
    if (e.payload().size() != static_cast<std::size_t>(rank_)) {
      throw SpecError("coordinate payload has wrong rank for " + name());
    }
  }

 private:
  static std::vector<Generator> make_generators(int rank) {
    if (rank < 1) throw SpecError("free-abelian rank must be >= 1");
    std::vector<Generator> gens;
    for (int i = 0; i < rank; ++i) {
      std::vector<std::int64_t> v(static_cast<std::size_t>(rank), 0);
      v[static_cast<std::size_t>(i)] = 1;
      gens.push_back({"e" + std::to_string(i + 1), Element(std::move(v))});
    }
    return gens;
  }

  int rank_;
};

// ---------------------------------------------------------------------------
// Integer Heisenberg group in Mal'cev coordinates (x, y, z):
//   (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2)
// which is the product of unitriangular matrices [[1,x,z],[0,1,y],[0,0,1]].
// ---------------------------------------------------------------------------

class HeisenbergGroup final : public Group {
 public:
  HeisenbergGroup()
      : Group("heisenberg", {{"a", Element{1, 0, 0}}, {"b", Element{0, 1, 0}}}) {}

  GroupKind kind() const override { return GroupKind::kHeisenberg; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return true; }

  Element identity() const override { return Element{0, 0, 0}; }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    const auto& u = a.payload();
    const auto& v = b.payload();
    return Element{u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[0] * v[1]};
  }

  Element inverse(const Element& a) const override {
    validate(a);
    const auto& u = a.payload();
    return Element{-u[0], -u[1], -u[2] + u[0] * u[1]};
  }

  OrderResult order_of(const Element& g, std::int64_t /*cap*/ = 1 << 20) const override {
    validate(g);
    bool zero = g.payload()[0] == 0 && g.payload()[1] == 0 && g.payload()[2] == 0;
    return zero ? OrderResult{OrderKind::kFinite, 1} : OrderResult{OrderKind::kInfinite, 0};
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    // (x, y, z) = a^x b^y [a,b]^(z - x*y)
    const auto& u = g.payload();
    GenWord w;
    append_power(w, 1, u[0]);
    append_power(w, 2, u[1]);
    const GenWord c = commutator_word({1}, {2});
    std::int64_t k = u[2] - u[0] * u[1];
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
      if (k > 0) {
        w.insert(w.end(), c.begin(), c.end());
      } else {
        for (auto it = c.rbegin(); it != c.rend(); ++it) w.push_back(-*it);
      }
    }
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    const GenWord c = commutator_word({1}, {2});
    return std::vector<GenWord>{commutator_word({1}, c), commutator_word({2}, c)};
  }

  std::string render(const Element& e) const override {
    const auto& u = e.payload();
    return "(" + std::to_string(u[0]) + "," + std::to_string(u[1]) + "," + std::to_string(u[2]) + ")";
  }

  void validate(const Element& e) const override {
    if (e.payload().size() != 3) throw SpecError("heisenberg payload must be (x,y,z)");
  }
};

// ---------------------------------------------------------------------------
// Infinite dihedral group, elements t^k s^eps with s t s = t^-1.
// ---------------------------------------------------------------------------

class InfiniteDihedralGroup final : public Group {
 public:
  InfiniteDihedralGroup()
      : Group("infinite-dihedral", {{"t", Element{1, 0}}, {"s", Element{0, 1}}}) {}

  GroupKind kind() const override { return GroupKind::kInfiniteDihedral; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return true; }

  Element identity() const override { return Element{0, 0}; }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    std::int64_t k1 = a.payload()[0], e1 = a.payload()[1];
    std::int64_t k2 = b.payload()[0], e2 = b.payload()[1];
    return Element{k1 + (e1 ? -k2 : k2), e1 ^ e2};
  }

  Element inverse(const Element& a) const override {
    validate(a);
    std::int64_t k = a.payload()[0], e = a.payload()[1];
    return e ? Element{k, 1} : Element{-k, 0};
  }

  OrderResult order_of(const Element& g, std::int64_t /*cap*/ = 1 << 20) const override {
    validate(g);
    std::int64_t k = g.payload()[0], e = g.payload()[1];
    if (e) return {OrderKind::kFinite, 2};
    if (k == 0) return {OrderKind::kFinite, 1};
    return {OrderKind::kInfinite, 0};
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    GenWord w;
    append_power(w, 1, g.payload()[0]);
    if (g.payload()[1]) w.push_back(2);
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    return std::vector<GenWord>{{2, 2}, {2, 1, 2, 1}};
  }

  std::string render(const Element& e) const override {
    std::int64_t k = e.payload()[0];
    bool refl = e.payload()[1] != 0;
    if (k == 0 && !refl) return "e";
    std::string s;
    if (k == 1) {
      s = "t";
    } else if (k != 0) {
      s = "t^" + std::to_string(k);
    }
    if (refl) s += s.empty() ? "s" : " s";
    return s;
  }

  void validate(const Element& e) const override {
    if (e.payload().size() != 2 || (e.payload()[1] != 0 && e.payload()[1] != 1)) {
      throw SpecError("infinite-dihedral payload must be (k, eps)");
    }
  }
};

// ---------------------------------------------------------------------------
// Z^d x| F for a finite group F of integer matrices. Payload: d coordinates
// followed by the index of the finite part in the materialized action group.
// ---------------------------------------------------------------------------

struct ActionClosure {
  int dim = 0;
  std::vector<std::vector<std::int64_t>> mats;  // row-major d*d
  std::vector<GenWord> words;                   // expression over action generators
  std::vector<std::uint32_t> inverse;
  std::vector<std::vector<std::uint32_t>> table;
};

std::vector<std::int64_t> mat_mul(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b, int d) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      std::int64_t aik = a[static_cast<std::size_t>(i * d + k)];
      if (aik == 0) continue;
      for (int j = 0; j < d; ++j) {
        out[static_cast<std::size_t>(i * d + j)] += aik * b[static_cast<std::size_t>(k * d + j)];
      }
    }
  }
  return out;
}

std::vector<std::int64_t> mat_vec(const std::vector<std::int64_t>& m,
                                  std::span<const std::int64_t> v, int d) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i)] += m[static_cast<std::size_t>(i * d + j)] * v[static_cast<std::size_t>(j)];
  }
  return out;
}

ActionClosure close_action(int d, const std::vector<std::vector<std::int64_t>>& gen_mats,
                           std::size_t cap = 4096) {
  ActionClosure ac;
  ac.dim = d;
  std::vector<std::int64_t> id(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) id[static_cast<std::size_t>(i * d + i)] = 1;
  ac.mats.push_back(id);
  ac.words.push_back({});
  auto find = [&](const std::vector<std::int64_t>& m) -> int {
    for (std::size_t i = 0; i < ac.mats.size(); ++i) {
      if (ac.mats[i] == m) return static_cast<int>(i);
    }
    return -1;
  };
  for (std::size_t head = 0; head < ac.mats.size(); ++head) {
    for (std::size_t g = 0; g < gen_mats.size(); ++g) {
      auto nxt = mat_mul(ac.mats[head], gen_mats[g], d);
      if (find(nxt) < 0) {
        if (ac.mats.size() >= cap) throw SpecError("semidirect action does not close (not finite?)");
        GenWord w = ac.words[head];
        w.push_back(static_cast<std::int32_t>(g + 1));
        ac.mats.push_back(std::move(nxt));
        ac.words.push_back(std::move(w));
      }
    }
  }
  std::size_t n = ac.mats.size();
  ac.inverse.assign(n, 0);
  ac.table.assign(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int k = find(mat_mul(ac.mats[i], ac.mats[j], d));
      if (k < 0) throw SpecError("semidirect action closure is not multiplicatively closed");
      ac.table[i][j] = static_cast<std::uint32_t>(k);
      if (k == 0) ac.inverse[i] = static_cast<std::uint32_t>(j);
    }
  }
  return ac;
}

class SemidirectGroup final : public Group {
 public:
  SemidirectGroup(std::string name, int dim, std::vector<std::string> action_names,
                  std::vector<std::vector<std::int64_t>> action_mats)
      : Group(std::move(name), {}),
        dim_(dim),
        n_action_gens_(action_mats.size()),
        action_(close_action(dim, action_mats)) {
    std::vector<Generator> gens;
    for (int i = 0; i < dim; ++i) {
      std::vector<std::int64_t> v(static_cast<std::size_t>(dim) + 1, 0);
      v[static_cast<std::size_t>(i)] = 1;
      gens.push_back({"e" + std::to_string(i + 1), Element(std::move(v))});
    }
    for (std::size_t g = 0; g < action_mats.size(); ++g) {
      // Generator g's matrix sits at the closure position of its one-letter word.
      std::vector<std::int64_t> v(static_cast<std::size_t>(dim) + 1, 0);
      int idx = -1;
      for (std::size_t i = 0; i < action_.words.size(); ++i) {
        if (action_.words[i] == GenWord{static_cast<std::int32_t>(g + 1)}) idx = static_cast<int>(i);
      }
      if (idx < 0) {  // generator equals an earlier element (e.g. identity)
        for (std::size_t i = 0; i < action_.mats.size(); ++i) {
          if (action_.mats[i] == action_mats[g]) idx = static_cast<int>(i);
        }
      }
      v[static_cast<std::size_t>(dim)] = idx;
      gens.push_back({action_names[g], Element(std::move(v))});
    }
    generators_ = std::move(gens);
  }

  GroupKind kind() const override { return GroupKind::kSemidirect; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return true; }

  Element identity() const override {
    return Element(std::vector<std::int64_t>(static_cast<std::size_t>(dim_) + 1, 0));
  }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    const auto& u = a.payload();
    const auto& v = b.payload();
    std::size_t f1 = static_cast<std::size_t>(u[static_cast<std::size_t>(dim_)]);
    std::size_t f2 = static_cast<std::size_t>(v[static_cast<std::size_t>(dim_)]);
    auto moved = mat_vec(action_.mats[f1], std::span<const std::int64_t>(v.data(), static_cast<std::size_t>(dim_)), dim_);
    std::vector<std::int64_t> out(static_cast<std::size_t>(dim_) + 1, 0);
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + moved[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(dim_)] = action_.table[f1][f2];
    return Element(std::move(out));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    const auto& u = a.payload();
    std::size_t f = static_cast<std::size_t>(u[static_cast<std::size_t>(dim_)]);
    std::size_t fi = action_.inverse[f];
    auto moved = mat_vec(action_.mats[fi], std::span<const std::int64_t>(u.data(), static_cast<std::size_t>(dim_)), dim_);
    std::vector<std::int64_t> out(static_cast<std::size_t>(dim_) + 1, 0);
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = -moved[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(dim_)] = static_cast<std::int64_t>(fi);
    return Element(std::move(out));
  }

  OrderResult order_of(const Element& g, std::int64_t /*cap*/ = 1 << 20) const override {
    validate(g);
    // Raise to the order of the finite part; the result is a pure translation.
    Element power = g;
    std::int64_t steps = 1;
    while (power.payload()[static_cast<std::size_t>(dim_)] != 0) {
      power = multiply(power, g);
      ++steps;
    }
    bool zero = std::all_of(power.payload().begin(), power.payload().end() - 1,
                            [](std::int64_t x) { return x == 0; });
    if (!zero) return {OrderKind::kInfinite, 0};
    // Torsion: the order divides `steps`.
    Element acc = g;
    for (std::int64_t k = 1; k <= steps; ++k) {
      if (acc == identity()) return {OrderKind::kFinite, k};
      acc = multiply(acc, g);
    }
    return {OrderKind::kFinite, steps};
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    GenWord w;
    for (int i = 0; i < dim_; ++i) append_power(w, i + 1, g.payload()[static_cast<std::size_t>(i)]);
    std::size_t f = static_cast<std::size_t>(g.payload()[static_cast<std::size_t>(dim_)]);
    for (std::int32_t letter : action_.words[f]) w.push_back(letter > 0 ? letter + dim_ : letter - dim_);
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    std::vector<GenWord> rels;
    for (int i = 0; i < dim_; ++i) {
      for (int j = i + 1; j < dim_; ++j) rels.push_back(commutator_word({i + 1}, {j + 1}));
    }
    // Action relations: f e_i f^-1 = translation by (M_f e_i).
    for (std::size_t g = 0; g < n_action_gens_; ++g) {
      std::int32_t f = static_cast<std::int32_t>(dim_ + 1 + g);
      std::size_t fidx = 0;
      for (std::size_t i = 0; i < action_.words.size(); ++i) {
        if (action_.words[i] == GenWord{static_cast<std::int32_t>(g + 1)}) fidx = i;
      }
      for (int i = 0; i < dim_; ++i) {
        std::vector<std::int64_t> col(static_cast<std::size_t>(dim_));
        for (int r = 0; r < dim_; ++r) col[static_cast<std::size_t>(r)] = action_.mats[fidx][static_cast<std::size_t>(r * dim_ + i)];
        GenWord rel{f, static_cast<std::int32_t>(i + 1), -f};
        for (int r = 0; r < dim_; ++r) append_power(rel, r + 1, -col[static_cast<std::size_t>(r)]);
        rels.push_back(std::move(rel));
      }
    }
    // Finite-part multiplication table relations.
    auto lift = [&](const GenWord& w) {
      GenWord out;
      for (std::int32_t letter : w) out.push_back(letter > 0 ? letter + dim_ : letter - dim_);
      return out;
    };
    for (std::size_t i = 0; i < action_.mats.size(); ++i) {
      for (std::size_t j = 0; j < action_.mats.size(); ++j) {
        GenWord rel = lift(action_.words[i]);
        GenWord wj = lift(action_.words[j]);
        rel.insert(rel.end(), wj.begin(), wj.end());
        GenWord wij = lift(action_.words[action_.table[i][j]]);
        for (auto it = wij.rbegin(); it != wij.rend(); ++it) rel.push_back(-*it);
        rels.push_back(std::move(rel));
      }
    }
    return rels;
  }

  std::string render(const Element& e) const override {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += std::to_string(e.payload()[static_cast<std::size_t>(i)]);
    }
    s += ";" + std::to_string(e.payload()[static_cast<std::size_t>(dim_)]) + ")";
    return s;
  }

  void validate(const Element& e) const override {
    if (e.payload().size() != static_cast<std::size_t>(dim_) + 1) {
      throw SpecError("semidirect payload has wrong size");
    }
    std::int64_t f = e.payload()[static_cast<std::size_t>(dim_)];
    if (f < 0 || f >= static_cast<std::int64_t>(action_.mats.size())) {
      throw SpecError("semidirect finite-part tag out of range");
    }
  }

  int dim() const { return dim_; }

 private:
  int dim_;
  std::size_t n_action_gens_;
  ActionClosure action_;
};

// ---------------------------------------------------------------------------
// Free product of finite cyclic groups Z_o1 * ... * Z_ok. Payload: flattened
// syllables (index, exponent) with adjacent indices distinct and exponents in
// [1, o_i).
// ---------------------------------------------------------------------------

class FreeProductCyclicGroup final : public Group {
 public:
  explicit FreeProductCyclicGroup(std::vector<std::int64_t> orders)
      : Group(make_name(orders), make_generators(orders)), orders_(std::move(orders)) {}

  GroupKind kind() const override { return GroupKind::kFreeProduct; }
  bool finite() const override { return false; }
  bool torsion_decidable() const override { return true; }

  Element identity() const override { return Element{}; }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    std::vector<std::int64_t> out(a.payload());
    for (std::size_t p = 0; p < b.payload().size(); p += 2) {
      push_syllable(out, b.payload()[p], b.payload()[p + 1]);
    }
    return Element(std::move(out));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    std::vector<std::int64_t> out;
    out.reserve(a.payload().size());
    for (std::size_t p = a.payload().size(); p > 0; p -= 2) {
      std::int64_t i = a.payload()[p - 2], e = a.payload()[p - 1];
      out.push_back(i);
      out.push_back(orders_[static_cast<std::size_t>(i)] - e);
    }
    return Element(std::move(out));
  }

  OrderResult order_of(const Element& g, std::int64_t /*cap*/ = 1 << 20) const override {
    validate(g);
    // Cyclically reduce: w = (i,e1) mid (i,e2) is conjugate to mid (i,e1+e2).
    // A cyclically reduced word of >= 2 syllables has infinite order; a
    // single syllable is torsion in its factor.
    std::vector<std::int64_t> w(g.payload());
    while (w.size() >= 4 && w[0] == w[w.size() - 2]) {
      std::int64_t i = w[0];
      std::int64_t e = (w[1] + w[w.size() - 1]) % orders_[static_cast<std::size_t>(i)];
      w.erase(w.begin(), w.begin() + 2);
      w.resize(w.size() - 2);
      if (e != 0) {
        w.push_back(i);
        w.push_back(e);
      }
    }
    if (w.empty()) return {OrderKind::kFinite, 1};
    if (w.size() == 2) {
      std::int64_t o = orders_[static_cast<std::size_t>(w[0])];
      return {OrderKind::kFinite, o / std::gcd(o, w[1])};
    }
    return {OrderKind::kInfinite, 0};
  }

  std::optional<std::int64_t> proven_word_length(const Element& g) const override {
    validate(g);
    std::int64_t n = 0;
    for (std::size_t p = 0; p < g.payload().size(); p += 2) {
      std::int64_t o = orders_[static_cast<std::size_t>(g.payload()[p])];
      std::int64_t e = g.payload()[p + 1];
      n += std::min(e, o - e);
    }
    return n;
  }

  std::optional<GenWord> express(const Element& g) const override {
    validate(g);
    GenWord w;
    for (std::size_t p = 0; p < g.payload().size(); p += 2) {
      append_power(w, static_cast<std::int32_t>(g.payload()[p] + 1), g.payload()[p + 1]);
    }
    return w;
  }

  std::optional<std::vector<GenWord>> defining_relations() const override {
    std::vector<GenWord> rels;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      GenWord r;
      append_power(r, static_cast<std::int32_t>(i + 1), orders_[i]);
      rels.push_back(std::move(r));
    }
    return rels;
  }

  std::string render(const Element& e) const override {
    if (e.payload().empty()) return "e";
    std::string s;
    for (std::size_t p = 0; p < e.payload().size(); p += 2) {
      if (p) s += " ";
      s += "s" + std::to_string(e.payload()[p] + 1);
      if (e.payload()[p + 1] != 1) s += "^" + std::to_string(e.payload()[p + 1]);
    }
    return s;
  }

  void validate(const Element& e) const override {
    const auto& w = e.payload();
    if (w.size() % 2 != 0) throw SpecError("free-product payload must be syllable pairs");
    for (std::size_t p = 0; p < w.size(); p += 2) {
      std::int64_t i = w[p], ex = w[p + 1];
      if (i < 0 || i >= static_cast<std::int64_t>(orders_.size())) {
        throw SpecError("free-product syllable index out of range");
      }
      if (ex < 1 || ex >= orders_[static_cast<std::size_t>(i)]) {
        throw SpecError("free-product syllable exponent out of range");
      }
      if (p > 0 && w[p - 2] == i) throw SpecError("free-product word not in normal form");
    }
  }

 private:
  void push_syllable(std::vector<std::int64_t>& w, std::int64_t i, std::int64_t e) const {
    if (!w.empty() && w[w.size() - 2] == i) {
      std::int64_t merged = (w.back() + e) % orders_[static_cast<std::size_t>(i)];
      w.resize(w.size() - 2);
      if (merged != 0) {
        w.push_back(i);
        w.push_back(merged);
      }
    } else {
      w.push_back(i);
      w.push_back(e);
    }
  }

  static std::string make_name(const std::vector<std::int64_t>& orders) {
    std::string s = "free-product(";
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(orders[i]);
    }
    return s + ")";
  }

  static std::vector<Generator> make_generators(const std::vector<std::int64_t>& orders) {
    if (orders.size() < 2) throw SpecError("free-product needs at least two factors");
    for (std::int64_t o : orders) {
      if (o < 2) throw SpecError("free-product factor orders must be >= 2");
    }
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      gens.push_back({"s" + std::to_string(i + 1),
                      Element{static_cast<std::int64_t>(i), 1}});
    }
    return gens;
  }

  std::vector<std::int64_t> orders_;
};

// ---------------------------------------------------------------------------
// Finite group given by an explicit multiplication table.
// ---------------------------------------------------------------------------

class FiniteTableGroup final : public Group {
 public:
  FiniteTableGroup(std::string name, std::vector<std::string> element_names,
                   std::vector<std::vector<std::uint32_t>> table,
                   std::vector<std::uint32_t> generator_indices)
      : Group(std::move(name), {}),
        element_names_(std::move(element_names)),
        table_(std::move(table)) {
    std::size_t n = table_.size();
    if (n == 0 || element_names_.size() != n) throw SpecError("table group: bad sizes");
    for (const auto& row : table_) {
      if (row.size() != n) throw SpecError("table group: ragged table");
      for (std::uint32_t v : row) {
        if (v >= n) throw SpecError("table group: entry out of range");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[0][i] != i || table_[i][0] != i) throw SpecError("table group: index 0 is not an identity");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]]) {
            throw SpecError("table group: multiplication is not associative");
          }
        }
      }
    }
    inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      bool found = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (table_[i][j] == 0) {
          inverse_[i] = static_cast<std::uint32_t>(j);
          found = true;
        }
      }
      if (!found) throw SpecError("table group: element without inverse");
    }
    std::vector<Generator> gens;
    for (std::uint32_t gi : generator_indices) {
      if (gi >= n) throw SpecError("table group: generator index out of range");
      gens.push_back({element_names_[gi], Element{static_cast<std::int64_t>(gi)}});
    }
    generators_ = std::move(gens);
    if (elements().size() != n) throw SpecError("table group: generators do not generate");
  }

  GroupKind kind() const override { return GroupKind::kFiniteTable; }
  bool finite() const override { return true; }

  Element identity() const override { return Element{0}; }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    return Element{static_cast<std::int64_t>(
        table_[static_cast<std::size_t>(a.payload()[0])][static_cast<std::size_t>(b.payload()[0])])};
  }

  Element inverse(const Element& a) const override {
    validate(a);
    return Element{static_cast<std::int64_t>(inverse_[static_cast<std::size_t>(a.payload()[0])])};
  }

  std::string render(const Element& e) const override {
    return element_names_[static_cast<std::size_t>(e.payload()[0])];
  }

  void validate(const Element& e) const override {
    if (e.payload().size() != 1 || e.payload()[0] < 0 ||
        e.payload()[0] >= static_cast<std::int64_t>(table_.size())) {
      throw SpecError("table group payload must be a valid index");
    }
  }

 private:
  std::vector<std::string> element_names_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
};

// ---------------------------------------------------------------------------
// Finite permutation group; payload is the image list.
// ---------------------------------------------------------------------------

class PermutationGroup final : public Group {
 public:
  PermutationGroup(std::string name, std::vector<std::string> gen_names,
                   std::vector<std::vector<std::int64_t>> images)
      : Group(std::move(name), {}), degree_(images.empty() ? 0 : images[0].size()) {
    if (images.empty()) throw SpecError("permutation group needs generators");
    std::vector<Generator> gens;
    for (std::size_t g = 0; g < images.size(); ++g) {
      Element e(images[g]);
      validate(e);
      gens.push_back({gen_names[g], std::move(e)});
    }
    generators_ = std::move(gens);
  }

  GroupKind kind() const override { return GroupKind::kPermutation; }
  bool finite() const override { return true; }

  Element identity() const override {
    std::vector<std::int64_t> img(degree_);
    std::iota(img.begin(), img.end(), 0);
    return Element(std::move(img));
  }

  // (a*b)(x) = a(b(x))
  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    std::vector<std::int64_t> out(degree_);
    for (std::size_t x = 0; x < degree_; ++x) {
      out[x] = a.payload()[static_cast<std::size_t>(b.payload()[x])];
    }
    return Element(std::move(out));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    std::vector<std::int64_t> out(degree_);
    for (std::size_t x = 0; x < degree_; ++x) out[static_cast<std::size_t>(a.payload()[x])] = static_cast<std::int64_t>(x);
    return Element(std::move(out));
  }

  std::string render(const Element& e) const override {
    // Cycle notation.
    std::vector<bool> seen(degree_, false);
    std::string s;
    for (std::size_t x = 0; x < degree_; ++x) {
      if (seen[x] || e.payload()[x] == static_cast<std::int64_t>(x)) continue;
      s += "(";
      std::size_t y = x;
      bool first = true;
      while (!seen[y]) {
        if (!first) s += " ";
        s += std::to_string(y);
        seen[y] = true;
        y = static_cast<std::size_t>(e.payload()[y]);
        first = false;
      }
      s += ")";
    }
    return s.empty() ? "e" : s;
  }

  void validate(const Element& e) const override {
    if (e.payload().size() != degree_) throw SpecError("permutation payload has wrong degree");
    std::vector<bool> seen(degree_, false);
    for (std::int64_t v : e.payload()) {
      if (v < 0 || v >= static_cast<std::int64_t>(degree_) || seen[static_cast<std::size_t>(v)]) {
        throw SpecError("payload is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

 private:
  std::size_t degree_;
};

// ---------------------------------------------------------------------------
// Congruence quotient of a coordinate model: coordinates mod m. The product
// formulas of the supported bases are polynomial with integer coefficients,
// so reduction is a homomorphism by construction.
// ---------------------------------------------------------------------------

class CongruenceQuotientGroup final : public Group {
 public:
  CongruenceQuotientGroup(GroupPtr base, std::int64_t modulus)
      : Group("quotient(" + base->name() + "," + std::to_string(modulus) + ")", {}),
        base_(std::move(base)),
        modulus_(modulus) {
    if (modulus_ < 1) throw SpecError("quotient modulus must be >= 1");
    switch (base_->kind()) {
      case GroupKind::kFreeAbelian:
      case GroupKind::kHeisenberg:
        coord_count_ = base_->identity().size();
        break;
      case GroupKind::kInfiniteDihedral:
        coord_count_ = 1;
        break;
      case GroupKind::kSemidirect:
        coord_count_ = base_->identity().size() - 1;
        break;
      default:
        throw SpecError("quotient requires integer-coordinate payloads, got " + base_->name());
    }
    std::vector<Generator> gens;
    for (const Generator& g : base_->generators()) gens.push_back({g.name, reduce(g.value)});
    generators_ = std::move(gens);
  }

  Element reduce(const Element& e) const {
    base_->validate(e);
    std::vector<std::int64_t> out(e.payload());
    for (std::size_t i = 0; i < coord_count_; ++i) {
      out[i] = ((out[i] % modulus_) + modulus_) % modulus_;
    }
    return Element(std::move(out));
  }

  GroupKind kind() const override { return GroupKind::kCongruenceQuotient; }
  bool finite() const override { return true; }

  Element identity() const override { return reduce(base_->identity()); }

  Element multiply(const Element& a, const Element& b) const override {
    validate(a);
    validate(b);
    return reduce(base_->multiply(a, b));
  }

  Element inverse(const Element& a) const override {
    validate(a);
    return reduce(base_->inverse(a));
  }

  std::string render(const Element& e) const override { return base_->render(e); }

  void validate(const Element& e) const override {
    base_->validate(e);
    for (std::size_t i = 0; i < coord_count_; ++i) {
      if (e.payload()[i] < 0 || e.payload()[i] >= modulus_) {
        throw SpecError("quotient payload coordinate not reduced mod " + std::to_string(modulus_));
      }
    }
  }

  const GroupPtr& base() const { return base_; }
  std::int64_t modulus() const { return modulus_; }

 private:
  GroupPtr base_;
  std::int64_t modulus_;
  std::size_t coord_count_ = 0;
};

// ---------------------------------------------------------------------------
// Named finite groups.
// ---------------------------------------------------------------------------

GroupPtr make_q8() {
  // Elements 1,-1,i,-i,j,-j,k,-k; index = 2*symbol + sign.
  static constexpr std::array<const char*, 8> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  // symbol products with result sign: 1,i,j,k.
  static constexpr int sym[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sgn[4][4] = {{+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
  std::vector<std::vector<std::uint32_t>> table(8, std::vector<std::uint32_t>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      int sa = a & 1, sb = b & 1;
      int pa = a >> 1, pb = b >> 1;
      int ps = sym[pa][pb];
      int sign = ((sa + sb) % 2 == 1 ? -1 : 1) * sgn[pa][pb];
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          static_cast<std::uint32_t>(2 * ps + (sign < 0 ? 1 : 0));
    }
  }
  return make_table_group("q8", std::vector<std::string>(names.begin(), names.end()), table, {2, 4});
}

GroupPtr make_cyclic(std::int64_t n) {
  if (n < 1) throw SpecError("cyclic order must be >= 1");
  std::vector<std::string> names;
  std::vector<std::vector<std::uint32_t>> table(static_cast<std::size_t>(n),
                                                std::vector<std::uint32_t>(static_cast<std::size_t>(n)));
  for (std::int64_t i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    for (std::int64_t j = 0; j < n; ++j) {
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<std::uint32_t>((i + j) % n);
    }
  }
  std::vector<std::uint32_t> gens = n == 1 ? std::vector<std::uint32_t>{0} : std::vector<std::uint32_t>{1};
  return make_table_group("cyclic(" + std::to_string(n) + ")", names, table, gens);
}

GroupPtr make_v4() {
  std::vector<std::string> names = {"e", "x", "y", "xy"};
  std::vector<std::vector<std::uint32_t>> table(4, std::vector<std::uint32_t>(4));
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < 4; ++j) table[i][j] = i ^ j;
  }
  return make_table_group("v4", names, table, {1, 2});
}

std::vector<std::int64_t> cycle_image(std::size_t degree, const std::vector<std::vector<std::int64_t>>& cycles) {
  std::vector<std::int64_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      img[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    }
  }
  return img;
}

GroupPtr make_named_permutation(const std::string& which) {
  if (which == "s3") {
    return make_permutation_group("s3", {"r", "s"},
                                  {cycle_image(3, {{0, 1, 2}}), cycle_image(3, {{0, 1}})});
  }
  if (which == "d4") {
    return make_permutation_group("d4", {"r", "s"},
                                  {cycle_image(4, {{0, 1, 2, 3}}), cycle_image(4, {{1, 3}})});
  }
  if (which == "a4") {
    return make_permutation_group("a4", {"r", "v"},
                                  {cycle_image(4, {{0, 1, 2}}), cycle_image(4, {{0, 1}, {2, 3}})});
  }
  if (which == "s4") {
    return make_permutation_group("s4", {"r", "s"},
                                  {cycle_image(4, {{0, 1, 2, 3}}), cycle_image(4, {{0, 1}})});
  }
  throw SpecError("unknown named permutation group: " + which);
}

// ---------------------------------------------------------------------------
// Descriptor parsing.
// ---------------------------------------------------------------------------

std::vector<std::int64_t> parse_int_args(const std::string& args, const std::string& what) {
  std::vector<std::int64_t> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw SpecError("malformed arguments for " + what);
    out.push_back(std::strtoll(cur.c_str(), nullptr, 10));
    cur.clear();
  };
  for (char ch : args) {
    if (ch == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) flush();
  if (out.empty()) throw SpecError("missing arguments for " + what);
  return out;
}

}  // namespace

GroupPtr make_table_group(std::string name, std::vector<std::string> element_names,
                          std::vector<std::vector<std::uint32_t>> table,
                          std::vector<std::uint32_t> generator_indices) {
  return std::make_shared<FiniteTableGroup>(std::move(name), std::move(element_names),
                                            std::move(table), std::move(generator_indices));
}

GroupPtr make_permutation_group(std::string name, std::vector<std::string> gen_names,
                                std::vector<std::vector<std::int64_t>> images) {
  return std::make_shared<PermutationGroup>(std::move(name), std::move(gen_names), std::move(images));
}

std::pair<GroupPtr, Homomorphism> quotient(const GroupPtr& base, std::int64_t modulus) {
  auto q = std::make_shared<CongruenceQuotientGroup>(base, modulus);
  std::vector<Element> images;
  for (const Generator& g : base->generators()) images.push_back(q->reduce(g.value));
  GroupPtr qp = q;
  Homomorphism hom = Homomorphism::reduction(
      base, qp, [q](const Element& e) { return q->reduce(e); }, std::move(images),
      "coordinate reduction mod " + std::to_string(modulus) + " (homomorphism by construction)");
  return {qp, std::move(hom)};
}

GroupPtr make_group(const std::string& descriptor) {
  // Split head(args); args are kept verbatim for rewriting paths.
  std::string head, args;
  bool has_args = false;
  if (auto open = descriptor.find('('); open != std::string::npos) {
    if (descriptor.back() != ')') throw SpecError("malformed group descriptor: " + descriptor);
    head = descriptor.substr(0, open);
    args = descriptor.substr(open + 1, descriptor.size() - open - 2);
    has_args = true;
  } else {
    head = descriptor;
  }
  std::string key;
  for (char ch : head) {
    if (!std::isspace(static_cast<unsigned char>(ch))) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }

  if (key == "free") {
    auto v = parse_int_args(args, key);
    if (v.size() != 1) throw SpecError("free(p) takes one argument");
    return std::make_shared<FreeGroup>(static_cast<int>(v[0]));
  }
  if (key == "free-abelian" || key == "free_abelian") {
    auto v = parse_int_args(args, key);
    if (v.size() != 1) throw SpecError("free-abelian(d) takes one argument");
    return std::make_shared<FreeAbelianGroup>(static_cast<int>(v[0]));
  }
  if (key == "heisenberg") return std::make_shared<HeisenbergGroup>();
  if (key == "infinite-dihedral" || key == "infinite_dihedral") {
    return std::make_shared<InfiniteDihedralGroup>();
  }
  if (key == "free-product" || key == "free_product") {
    return std::make_shared<FreeProductCyclicGroup>(parse_int_args(args, key));
  }
  if (key == "cyclic") {
    auto v = parse_int_args(args, key);
    if (v.size() != 1) throw SpecError("cyclic(n) takes one argument");
    return make_cyclic(v[0]);
  }
  if (key == "semidirect") {
    auto comma = args.rfind(',');
    if (!has_args || comma == std::string::npos) throw SpecError("semidirect(d, action) takes two arguments");
    auto dims = parse_int_args(args.substr(0, comma), key);
    std::string action;
    for (char ch : args.substr(comma + 1)) {
      if (!std::isspace(static_cast<unsigned char>(ch))) action.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    int d = static_cast<int>(dims.at(0));
    std::vector<std::vector<std::int64_t>> mats;
    if (action == "neg") {
      std::vector<std::int64_t> m(static_cast<std::size_t>(d) * d, 0);
      for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i * d + i)] = -1;
      mats.push_back(std::move(m));
    } else if (action == "swap" && d == 2) {
      mats.push_back({0, 1, 1, 0});
    } else if (action == "rot4" && d == 2) {
      mats.push_back({0, -1, 1, 0});
    } else {
      throw SpecError("unknown semidirect action '" + action + "' for dimension " + std::to_string(d));
    }
    return std::make_shared<SemidirectGroup>("semidirect(" + std::to_string(d) + "," + action + ")",
                                             d, std::vector<std::string>{"f"}, std::move(mats));
  }
  if (key == "quotient") {
    auto comma = args.rfind(',');
    if (!has_args || comma == std::string::npos) throw SpecError("quotient(base, m) takes two arguments");
    GroupPtr base = make_group(args.substr(0, comma));
    auto v = parse_int_args(args.substr(comma + 1), key);
    return quotient(base, v.at(0)).first;
  }
  if (key == "rewriting") {
    if (!has_args) throw SpecError("rewriting(<path>) needs a file path");
    std::string path = args;
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.front()))) path.erase(path.begin());
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
    return make_rewriting_group(load_rewriting_spec(path));
  }
  if (key == "q8") return make_q8();
  if (key == "v4" || key == "z2xz2") return make_v4();
  if (key == "s3" || key == "d4" || key == "a4" || key == "s4") return make_named_permutation(key);

  throw SpecError("unknown group descriptor: " + descriptor);
}

}  // namespace dcg
