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

#ifndef DCG_GROUP_HPP_
#define DCG_GROUP_HPP_

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcg/element.hpp"

namespace dcg {

struct Generator {
  std::string name;
  Element value;
};

enum class GroupKind {
  kFiniteTable,
  kPermutation,
  kFree,
  kFreeAbelian,
  kHeisenberg,
  kInfiniteDihedral,
  kSemidirect,
  kFreeProduct,
  kCongruenceQuotient,
  kRewritingSystem,
};

enum class OrderKind { kFinite, kInfinite, kExceedsCap };

struct OrderResult {
  OrderKind kind = OrderKind::kExceedsCap;
  std::int64_t order = 0;  // valid when kind == kFinite

  bool finite() const { return kind == OrderKind::kFinite; }
  bool infinite() const { return kind == OrderKind::kInfinite; }
};

/// A relation or factorization word over the generators: letter +i means
/// generator i-1, letter -i its inverse (1-based, signed).
using GenWord = std::vector<std::int32_t>;

/// Abstract group model. Instances are immutable after construction; all
/// operations are pure, so concurrent shared reads are unrestricted.
class Group {
 public:
  virtual ~Group() = default;

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  virtual GroupKind kind() const = 0;

  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;

  /// Canonical printable form ("a B a", "(1,-2)", "t^3 s", ...).
  virtual std::string render(const Element& e) const = 0;

  /// Throws SpecError if the payload does not belong to this model.
  virtual void validate(const Element& e) const = 0;

  virtual bool finite() const = 0;

  /// Hook for models whose canonical forms carry a soundness precondition;
  /// ball enumeration calls this and a failing model throws (fail-fast for
  /// non-confluent rewriting systems).
  virtual void ensure_enumerable() const {}

  /// Order of g. Returns kInfinite only with a model-level proof; otherwise
  /// powers are tried up to `cap` and kExceedsCap is reported honestly.
  virtual OrderResult order_of(const Element& g, std::int64_t cap = 1 << 20) const;

  /// True when order_of decides torsion for every element (no kExceedsCap).
  virtual bool torsion_decidable() const { return finite(); }

  /// Exact word length |g|_X when the model can prove it (reduced-word
  /// models); nullopt means callers must fall back to ball enumeration.
  virtual std::optional<std::int64_t> proven_word_length(const Element& g) const {
    (void)g;
    return std::nullopt;
  }

  /// Factorization of g as a word over the generators. Available for all
  /// built-in models (finite models factor through the cached closure BFS).
  virtual std::optional<GenWord> express(const Element& g) const;

  /// Defining relations over the generators, when the presentation is known.
  /// Used to verify homomorphisms out of infinite models.
  virtual std::optional<std::vector<GenWord>> defining_relations() const { return std::nullopt; }

  /// Every element (finite models only; materialized lazily, thread-safe).
  const std::vector<Element>& elements() const;

  /// Group order for finite models (forces materialization).
  std::uint64_t order() const { return elements().size(); }

  /// Evaluates a generator word to an element.
  Element evaluate_word(const GenWord& word) const;

  /// Stable identity of the model (name + generator payloads); used to key
  /// ball caches.
  std::uint64_t fingerprint() const;

 protected:
  Group(std::string name, std::vector<Generator> generators)
      : name_(std::move(name)), generators_(std::move(generators)) {}

  std::string name_;
  std::vector<Generator> generators_;

 private:
  struct Closure {
    std::vector<Element> elements;
    std::vector<std::uint32_t> parent;
    std::vector<std::int32_t> via;  // signed generator letter
    ElementIndex index;
  };
  const Closure& closure() const;

  mutable std::once_flag closure_once_;
  mutable std::unique_ptr<Closure> closure_;
};

using GroupPtr = std::shared_ptr<const Group>;

// ---------------------------------------------------------------------------
// Model construction.
//
// Descriptor grammar (case-insensitive names):
//   free(p)                      free group of rank p, generators a, b, c...
//   free-abelian(d)              Z^d, generators e1..ed
//   heisenberg                   integer Heisenberg group, generators a, b
//   infinite-dihedral            generators t (translation), s (reflection)
//   free-product(o1,o2,...)      Z_o1 * Z_o2 * ..., generators s1..sk
//   semidirect(d, action)        Z^d x| <action>, action in {neg, swap, rot4}
//   cyclic(n)                    Z_n, generator g
//   quotient(<base>, m)          congruence quotient of a coordinate model
//   q8 | s3 | d4 | a4 | s4 | v4  named finite groups
//   rewriting(<path>)            confluent-rewriting-system model from file
// ---------------------------------------------------------------------------

GroupPtr make_group(const std::string& descriptor);

/// Finite permutation group generated by `generators` given as image lists.
GroupPtr make_permutation_group(std::string name, std::vector<std::string> gen_names,
                                std::vector<std::vector<std::int64_t>> images);

/// Finite group from an explicit multiplication table. `table[i][j]` is the
/// index of element i*j; index 0 must be the identity.
GroupPtr make_table_group(std::string name, std::vector<std::string> element_names,
                          std::vector<std::vector<std::uint32_t>> table,
                          std::vector<std::uint32_t> generator_indices);

/// Congruence quotient of a coordinate model (free-abelian, heisenberg,
/// infinite-dihedral, semidirect) together with the reduction homomorphism
/// source element -> quotient element. Declared in homomorphism.hpp:
///   std::pair<GroupPtr, Homomorphism> quotient(const GroupPtr&, std::int64_t);

/// Parses a word over a group's generators: either whitespace/asterisk
/// separated generator names with optional ^exponent ("e1^-2 e2"), or, when
/// all generator names are single lowercase letters, a compact letter string
/// where uppercase denotes the inverse ("aBa").
Element parse_group_word(const Group& g, const std::string& text);

}  // namespace dcg

#endif  // DCG_GROUP_HPP_
