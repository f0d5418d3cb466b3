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

#include "dcg/homomorphism.hpp"

#include <unordered_map>

namespace dcg {

namespace {
// Exhaustive verification is quadratic in the source order; beyond this the
// map is kept but tagged unverified.
constexpr std::size_t kExhaustiveVerifyLimit = 3000;
}  // namespace

Homomorphism::Homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> generator_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images)) {
  if (!target_->finite()) throw SpecError("homomorphism target must be a finite model");
  if (images_.size() != source_->generators().size()) {
    throw SpecError("homomorphism needs one image per source generator");
  }
  for (const Element& img : images_) target_->validate(img);
  verify();
}

Homomorphism Homomorphism::reduction(GroupPtr source, GroupPtr target,
                                     std::function<Element(const Element&)> apply,
                                     std::vector<Element> generator_images, std::string note) {
  Homomorphism h;
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.images_ = std::move(generator_images);
  h.custom_apply_ = std::move(apply);
  h.verified_ = true;
  h.note_ = std::move(note);
  return h;
}

Element Homomorphism::apply(const Element& g) const {
  if (custom_apply_) return custom_apply_(g);
  auto word = source_->express(g);
  if (!word) throw Error("cannot express element in source generators for " + source_->name());
  Element acc = target_->identity();
  for (std::int32_t letter : *word) {
    std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
    acc = target_->multiply(acc, letter > 0 ? images_[idx] : target_->inverse(images_[idx]));
  }
  return acc;
}

std::vector<Element> Homomorphism::kernel_elements() const {
  if (!source_->finite()) throw Error("kernel materialization requires a finite source");
  std::vector<Element> kernel;
  const Element id = target_->identity();
  for (const Element& g : source_->elements()) {
    if (apply(g) == id) kernel.push_back(g);
  }
  return kernel;
}

void Homomorphism::verify() {
  if (source_->finite()) {
    if (source_->order() > kExhaustiveVerifyLimit) {
      verified_ = false;
      note_ = "source order " + std::to_string(source_->order()) +
              " exceeds the exhaustive verification limit";
      return;
    }
    // phi(g h) == phi(g) phi(h) for every pair.
    const auto& elems = source_->elements();
    std::unordered_map<Element, Element, ElementHash> image;
    image.reserve(elems.size());
    for (const Element& g : elems) image.emplace(g, apply(g));
    for (const Element& g : elems) {
      for (const Element& h : elems) {
        const Element gh = source_->multiply(g, h);
        if (image.at(gh) != target_->multiply(image.at(g), image.at(h))) {
          throw SpecError("generator images do not define a homomorphism from " + source_->name());
        }
      }
    }
    verified_ = true;
    note_ = "verified exhaustively on the full multiplication table";
    return;
  }
  auto relations = source_->defining_relations();
  if (!relations) {
    verified_ = false;
    note_ = "source has no declared defining relations; homomorphism recorded as unverified";
    return;
  }
  const Element id = target_->identity();
  for (const GenWord& rel : *relations) {
    Element acc = id;
    for (std::int32_t letter : rel) {
      std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
      if (idx >= images_.size()) throw SpecError("defining relation letter out of range");
      acc = target_->multiply(acc, letter > 0 ? images_[idx] : target_->inverse(images_[idx]));
    }
    if (acc != id) {
      throw SpecError("defining relation of " + source_->name() +
                      " does not map to the identity; images do not define a homomorphism");
    }
  }
  verified_ = true;
  note_ = "verified against " + std::to_string(relations->size()) + " defining relations";
}

}  // namespace dcg
