#pragma once

#include <cstdint>

#include "fcl/context.hpp"

namespace fcl {

/// Which concept lattice a computation targets: formal concepts (fca) or
/// property-oriented concepts (rst).
enum class Mode { fca, rst };
enum class Strategy { naive, generators };

std::string_view to_string(Mode mode);
std::string_view to_string(Strategy strategy);
std::optional<Mode> mode_from_string(std::string_view name);

inline constexpr std::uint64_t default_budget = 1'000'000;

/// Raised when an enumeration would exceed the configured candidate budget.
class BudgetError : public std::runtime_error {
public:
  BudgetError(std::uint64_t required, std::uint64_t limit, const std::string& message)
      : std::runtime_error(message), required_(required), limit_(limit) {}
  /// Saturated at uint64 max.
  std::uint64_t required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

private:
  std::uint64_t required_, limit_;
};

/// |L|^k, saturating at uint64 max.
std::uint64_t count_subsets(int lattice_size, int carrier_size);

/// Odometer step through L^k in lexicographic order (last coordinate moves
/// fastest). Returns false when `v` was the last vector (all top).
bool next_subset(LSubset& v, const Lattice& lattice);

// The four derivation operators of an L-context.

/// Attributes shared by the objects of `mu` to degree: y -> meet_x mu(x) -> phi(x,y).
LSubset intent(const Context& ctx, const LSubset& mu);
/// Objects having all attributes of `lambda` to degree: x -> meet_y lambda(y) -> phi(x,y).
LSubset extent(const Context& ctx, const LSubset& lambda);
/// Existential image of `mu` along the relation: y -> join_x mu(x) * phi(x,y).
LSubset exists_image(const Context& ctx, const LSubset& mu);
/// Universal preimage of `lambda`: x -> meet_y phi(x,y) -> lambda(y).
LSubset forall_preimage(const Context& ctx, const LSubset& lambda);

// Composite operators. The object-side composites are closure operators on
// L^X; on the attribute side, the fca composite is a closure operator and the
// rst composite is an interior operator on L^Y.

LSubset fca_closure(const Context& ctx, const LSubset& mu);        // extent . intent
LSubset rst_closure(const Context& ctx, const LSubset& mu);        // forall . exists
LSubset fca_attr_closure(const Context& ctx, const LSubset& la);   // intent . extent
LSubset rst_attr_interior(const Context& ctx, const LSubset& la);  // exists . forall

LSubset mode_closure(const Context& ctx, Mode mode, const LSubset& mu);
LSubset mode_attr_composite(const Context& ctx, Mode mode, const LSubset& la);

/// Hom degree of mu into nu in L^X: meet_x mu(x) -> nu(x). Top on empty carriers.
Elem subset_order(const Lattice& lattice, const LSubset& mu, const LSubset& nu);

/** The finite concept lattice of a context in one mode: the fixed points of
    the mode's object-side closure operator, in lexicographic order of their
    value vectors, together with the matrix of hom degrees between them. */
struct ConceptLattice {
  Mode mode = Mode::fca;
  std::vector<LSubset> concepts;
  std::vector<Elem> order;  // row-major: order_at(i, j) = L^X(concepts[i], concepts[j])

  Elem order_at(int i, int j) const { return order[static_cast<std::size_t>(i) * concepts.size() + j]; }
  /// Index of a concept by value vector, or -1.
  int find(const LSubset& c) const;
};

/** Enumerates the concept lattice.
    naive: filters every candidate in L^X by the closure fixed-point test;
    requires |L|^|X| <= budget.
    generators: closes the attribute-column generator family under pointwise
    meets, which is bounded by the concept count instead of |L|^|X|.
    Both strategies produce the same set. */
ConceptLattice enumerate_concepts(const Context& ctx, Mode mode, Strategy strategy,
                                  std::uint64_t budget = default_budget);

/** A context morphism: objects map forward, attributes map backward.
    object_map has one destination object index per source object;
    attribute_map has one source attribute index per destination attribute. */
struct Infomorphism {
  std::vector<int> object_map;
  std::vector<int> attribute_map;
};

class InfomorphismError : public std::runtime_error {
public:
  InfomorphismError(int object_witness, int attribute_witness, const std::string& message)
      : std::runtime_error(message), object_witness_(object_witness),
        attribute_witness_(attribute_witness) {}
  int object_witness() const { return object_witness_; }
  int attribute_witness() const { return attribute_witness_; }

private:
  int object_witness_, attribute_witness_;
};

/** Checks phi(x, g b) = psi(f x, b) for all x, b; throws InfomorphismError
    with the witness pair otherwise. Both contexts must share one lattice. */
void verify_infomorphism(const Context& src, const Context& dst, const Infomorphism& info);

/** Left-adjoint image of a source concept: destination closure of the direct
    image of `mu` along the object map. `mu` must be a fixed point of the
    mode closure in `src`. */
LSubset infomorphism_image(const Context& src, const Context& dst, const Infomorphism& info,
                           Mode mode, const LSubset& mu);

/** Right adjoint: precomposition of a destination concept with the object
    map. `nu` must be a fixed point of the mode closure in `dst`. */
LSubset infomorphism_preimage(const Context& src, const Context& dst, const Infomorphism& info,
                              Mode mode, const LSubset& nu);

}  // namespace fcl
