#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fcl {

/** Index of a lattice element. Elements are referenced by dense indices into
    the element list of their Lattice; the index order carries no meaning,
    the order relation is the `leq` table. */
using Elem = int;

enum class TNormFamily { lukasiewicz, godel };

std::string_view to_string(TNormFamily family);
std::optional<TNormFamily> tnorm_from_string(std::string_view name);

/// Which residuated-lattice axiom a candidate structure violates.
enum class LatticeDefect {
  not_a_lattice_order,
  non_commutative_tensor,
  non_associative_tensor,
  unit_not_top,
  distributivity_violation,
  adjunction_violation,
  residuum_mismatch,
};

std::string_view to_string(LatticeDefect defect);

/** Raised by Lattice::validated when an axiom fails. Carries the defect kind
    and the witness elements (one to three, depending on the axiom). */
class LatticeError : public std::runtime_error {
public:
  LatticeError(LatticeDefect defect, std::vector<Elem> witness, const std::string& message)
      : std::runtime_error(message), defect_(defect), witness_(std::move(witness)) {}

  LatticeDefect defect() const { return defect_; }
  const std::vector<Elem>& witness() const { return witness_; }

private:
  LatticeDefect defect_;
  std::vector<Elem> witness_;
};

struct BuiltinDesc {
  TNormFamily family;
  int size;
};

/** Raw, unvalidated description of a finite residuated lattice.
    Either `builtin` is set, or `elements`, `leq` and `tensor` describe the
    structure explicitly. `residuum` is an optional table that, when present,
    is cross-checked against the residuum derived from the tensor. */
struct LatticeSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;  // pairs a <= b; closure is taken
  std::vector<std::vector<std::string>> tensor;          // one row per element, |elements| entries
  std::vector<std::vector<std::string>> residuum;        // optional, same shape as tensor
  std::optional<BuiltinDesc> builtin;
};

/** A finite complete residuated lattice with precomputed operation tables.
    Instances can only be obtained through `chain` or `validated`, both of
    which check every axiom, so holders may rely on the structure being a
    complete residuated lattice. Immutable and safe to share across threads. */
class Lattice {
public:
  /// Equidistant n-element chain (n >= 2) carrying the named t-norm.
  static Lattice chain(int n, TNormFamily family);

  /** Validates `spec` against the complete-residuated-lattice axioms and
      derives the meet, join, residuum and negation tables.
      Throws LatticeError (with a witness) on the first axiom violation;
      std::invalid_argument on malformed input (duplicate names, ragged
      tables, unknown element names). */
  static Lattice validated(const LatticeSpec& spec);

  int size() const { return n_; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  bool leq(Elem a, Elem b) const { return leq_[idx(a, b)] != 0; }
  Elem meet(Elem a, Elem b) const { return meet_[idx(a, b)]; }
  Elem join(Elem a, Elem b) const { return join_[idx(a, b)]; }
  Elem tensor(Elem a, Elem b) const { return tensor_[idx(a, b)]; }
  Elem residuum(Elem a, Elem b) const { return residuum_[idx(a, b)]; }
  Elem negation(Elem a) const { return negation_[checked(a)]; }

  /// Greatest lower bound of a set of elements; empty set yields top.
  Elem meet_all(std::span<const Elem> xs) const;
  /// Least upper bound of a set of elements; empty set yields bottom.
  Elem join_all(std::span<const Elem> xs) const;

  /// True iff double negation is the identity on every element.
  bool satisfies_dne() const { return !dne_witness_.has_value(); }
  /// First element (in index order) with ~~a != a, if any.
  std::optional<Elem> dne_witness() const { return dne_witness_; }

  const std::string& element_name(Elem a) const { return names_[checked(a)]; }
  std::optional<Elem> element_index(std::string_view name) const;
  const std::vector<std::string>& element_names() const { return names_; }

  /// Set when the lattice was produced by `chain`; used for serialization.
  const std::optional<BuiltinDesc>& builtin() const { return builtin_; }

  /// Structural equality: same element names, order and tensor.
  bool operator==(const Lattice& other) const;

private:
  Lattice() = default;

  int idx(Elem a, Elem b) const { return checked(a) * n_ + checked(b); }
  int checked(Elem a) const {
    if (a < 0 || a >= n_) throw std::out_of_range("lattice element index out of range");
    return a;
  }

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Elem> meet_, join_, tensor_, residuum_, negation_;
  Elem bottom_ = 0, top_ = 0;
  std::optional<Elem> dne_witness_;
  std::optional<BuiltinDesc> builtin_;
};

}  // namespace fcl
