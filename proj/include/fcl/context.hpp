#pragma once

#include <memory>

#include "fcl/lattice.hpp"

namespace fcl {

/** An L-subset of a finite carrier: one lattice element per carrier member,
    in carrier order. The carrier itself (object list or attribute list) is
    implied by context; operations check lengths against it. */
using LSubset = std::vector<Elem>;

/** Kept object and attribute indices of a subcontext, each strictly
    increasing and in range of the parent context. */
struct Selector {
  std::vector<int> objects;
  std::vector<int> attributes;

  bool operator==(const Selector& other) const = default;
};

/** A finite L-context: object labels, attribute labels and an incidence
    matrix of lattice elements grading "object x has attribute y".
    Immutable; all derived contexts share the lattice. */
class Context {
public:
  /** `entries` is row-major, |objects| x |attributes|. Labels must be unique,
      nonempty and free of whitespace and '#' (so every context serializes).
      Throws std::invalid_argument on violations. */
  Context(std::shared_ptr<const Lattice> lattice, std::vector<std::string> objects,
          std::vector<std::string> attributes, std::vector<Elem> entries);

  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }

  int object_count() const { return static_cast<int>(objects_.size()); }
  int attribute_count() const { return static_cast<int>(attributes_.size()); }

  Elem at(int x, int y) const;

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  std::optional<int> object_index(std::string_view label) const;
  std::optional<int> attribute_index(std::string_view label) const;

  Selector full_selector() const;

  /// Subcontext induced by the kept rows and columns of `sel`.
  Context restricted(const Selector& sel) const;
  /// Rows-only restriction (all attributes kept).
  Context restricted_objects(std::span<const int> kept) const;
  /// Columns-only restriction (all objects kept).
  Context restricted_attributes(std::span<const int> kept) const;

  /// Entrywise negation of the incidence matrix.
  Context negated() const;
  /// Transpose: objects and attributes swap roles.
  Context dualized() const;

  /// Same lattice (structurally), labels and matrix.
  bool operator==(const Context& other) const;

private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<Elem> entries_;
};

/// Throws std::invalid_argument unless `kept` is strictly increasing and within [0, size).
void validate_index_subset(std::span<const int> kept, int size, const char* what);
void validate_selector(const Context& ctx, const Selector& sel);

/// Componentwise restriction of a subset to the kept positions.
LSubset restrict_to(const LSubset& full, std::span<const int> kept);

/** Extension of a subset on the kept positions to the full carrier,
    padding with bottom elsewhere. Inverse of restrict_to on its image. */
LSubset extend_by_bottom(const LSubset& part, std::span<const int> kept, int full_size,
                         const Lattice& lattice);

LSubset constant_subset(int size, Elem value);

}  // namespace fcl
