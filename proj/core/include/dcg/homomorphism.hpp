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

#ifndef DCG_HOMOMORPHISM_HPP_
#define DCG_HOMOMORPHISM_HPP_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dcg/group.hpp"

namespace dcg {

/// Homomorphism from a group model onto a finite model, given by generator
/// images. Well-definedness is checked at construction: exhaustively for
/// finite sources, against the defining relations for infinite built-ins.
/// When neither route is available the map is kept but tagged unverified;
/// theory checks consuming it downgrade their verdicts.
class Homomorphism {
 public:
  Homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> generator_images);

  /// Trusted constructor for maps that are homomorphisms by construction
  /// (coordinate reductions). `apply` must agree with `generator_images`.
  static Homomorphism reduction(GroupPtr source, GroupPtr target,
                                std::function<Element(const Element&)> apply,
                                std::vector<Element> generator_images, std::string note);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<Element>& generator_images() const { return images_; }

  bool verified() const { return verified_; }
  const std::string& verification_note() const { return note_; }

  Element apply(const Element& g) const;
  bool in_kernel(const Element& g) const { return apply(g) == target_->identity(); }

  /// Kernel as an element list (finite sources only).
  std::vector<Element> kernel_elements() const;

 private:
  Homomorphism() = default;
  void verify();

  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> images_;
  std::function<Element(const Element&)> custom_apply_;
  bool verified_ = false;
  std::string note_;
};

/// Congruence quotient of a coordinate model (free-abelian, heisenberg,
/// infinite-dihedral, semidirect): coordinates reduced mod m, together with
/// the reduction homomorphism.
std::pair<GroupPtr, Homomorphism> quotient(const GroupPtr& base, std::int64_t modulus);

}  // namespace dcg

#endif  // DCG_HOMOMORPHISM_HPP_
