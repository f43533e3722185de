#pragma once

#include <array>

#include "fcl/derivation.hpp"

namespace fcl {

enum class Method { exhaustive, generators, auto_select };

std::string_view to_string(Method method);
std::optional<Method> method_from_string(std::string_view name);

/** Outcome of one side-reducibility check. On failure, `witness` is a subset
    on which the full and restricted composite operators disagree (an L-subset
    of objects for attribute-side checks, of attributes for object-side
    checks). `method` is the method actually used after auto resolution. */
struct SideCheck {
  bool reducible = false;
  std::optional<LSubset> witness;
  std::uint64_t examined = 0;
  Method method = Method::exhaustive;
};

/** The four side-reducibility decisions. `kept_*` are the retained indices.
    exhaustive: compares the two composite operators on every candidate
    subset (|L|^|X| or |L|^|Y| candidates, budget-checked), first mismatch
    becomes the witness.
    generators: checks that every removed row/column generator is a fixed
    point of the restricted composite; sound because these composites are
    determined by their fixed-point sets, which are generated by the
    column (resp. row) families. */
SideCheck fca_attr_side_reducible(const Context& ctx, std::span<const int> kept_attributes,
                                  Method method = Method::auto_select,
                                  std::uint64_t budget = default_budget);
SideCheck fca_object_side_reducible(const Context& ctx, std::span<const int> kept_objects,
                                    Method method = Method::auto_select,
                                    std::uint64_t budget = default_budget);
SideCheck rst_attr_side_reducible(const Context& ctx, std::span<const int> kept_attributes,
                                  Method method = Method::auto_select,
                                  std::uint64_t budget = default_budget);
SideCheck rst_object_side_reducible(const Context& ctx, std::span<const int> kept_objects,
                                    Method method = Method::auto_select,
                                    std::uint64_t budget = default_budget);

struct ReductReport {
  Mode mode = Mode::fca;
  Selector selector;
  bool is_reduct = false;
  SideCheck object_side;
  SideCheck attribute_side;
  Method method = Method::exhaustive;  // resolved method shared by both sides
};

/** Decides whether the subcontext kept by `sel` is a reduct: the conjunction
    of the two side checks. auto_select resolves to exhaustive when
    |L|^max(|X|,|Y|) fits the budget, generators otherwise. */
ReductReport is_reduct(const Context& ctx, const Selector& sel, Mode mode,
                       Method method = Method::auto_select, std::uint64_t budget = default_budget);
ReductReport is_fca_reduct(const Context& ctx, const Selector& sel,
                           Method method = Method::auto_select,
                           std::uint64_t budget = default_budget);
ReductReport is_rst_reduct(const Context& ctx, const Selector& sel,
                           Method method = Method::auto_select,
                           std::uint64_t budget = default_budget);

/** The eight canonical comparison maps between the full and restricted
    concept lattices. R/E tags act on formal concepts, S/F tags on
    property-oriented concepts; R/S map full-side concepts to the restricted
    side, E/F map back. */
enum class ComparisonTag { R1, R2, E1, E2, S1, S2, F1, F2 };

std::string_view to_string(ComparisonTag tag);
Mode mode_of(ComparisonTag tag);
/// True for R1/R2/S1/S2 (full side -> restricted side).
bool maps_to_restricted(ComparisonTag tag);

/** Evaluates one comparison map. `input` must be a fixed point of the mode
    closure of the appropriate context (full for R/S, restricted for E/F);
    throws std::invalid_argument otherwise. */
LSubset comparison_map(const Context& ctx, const Selector& sel, ComparisonTag tag,
                       const LSubset& input);

/** Direct evidence for (or against) the comparison maps being isomorphisms:
    enumerates both concept lattices and checks each of the four mode tags for
    bijectivity and preservation of the hom matrices. */
struct IsoEvidence {
  bool is_iso = false;             // all four tags are isomorphisms
  std::array<bool, 4> tag_iso{};   // in tag order R1,R2,E1,E2 or S1,S2,F1,F2
  bool tags_agree = true;          // the four verdicts coincide
  /// to-restricted . to-full composites, in order 11, 12, 21, 22; these are
  /// identities on the restricted side for every selector.
  std::array<bool, 4> composite_identity{};
  bool roundtrip_full_identity = false;  // to-full . to-restricted is the identity on the full side
  std::size_t full_concepts = 0;
  std::size_t restricted_concepts = 0;
};

IsoEvidence verify_iso_via_maps(const Context& ctx, const Selector& sel, Mode mode,
                                std::uint64_t budget = default_budget);

struct SearchOptions {
  bool minimal_only = true;
  Method method = Method::auto_select;
  std::uint64_t budget = default_budget;
};

/** Enumerates every selector (largest first) and decides it; returns the
    reducts, restricted to the minimal ones (under componentwise inclusion)
    unless options.minimal_only is false. Output is sorted by total kept size,
    then kept object indices, then kept attribute indices. */
std::vector<Selector> search_reducts(const Context& ctx, Mode mode,
                                     const SearchOptions& options = {});

struct InterdefConfig {
  int max_objects = 3;
  int max_attributes = 3;
  int samples = 200;        // random mode only
  std::uint64_t seed = 0;   // random mode only; callers must pass one explicitly
  bool exhaustive = false;  // sweep every context up to the size bounds instead of sampling
  Method method = Method::auto_select;
  std::uint64_t budget = default_budget;
};

struct InterdefCase {
  Context context;  // the positive context phi
  Selector selector;
  bool fca_verdict = false;  // reduct verdict on phi in fca
  bool rst_verdict = false;  // reduct verdict on the negated context in rst
};

/** Empirical check of the reduct interdefinability law on one lattice.
    On a double-negation lattice, the fca verdict on phi and the rst verdict
    on not-phi must coincide for every (context, selector) pair; any mismatch
    is recorded as a violation. On other lattices there must exist a pair
    where the rst verdict holds and the fca verdict fails; the search tries
    the canonical two-object, one-attribute construction (0 and a
    double-negation witness) first, then the sampled contexts. */
struct InterdefReport {
  bool lattice_dne = false;
  std::uint64_t contexts_checked = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<InterdefCase> violations;   // dne mode: equivalence failures (expected none)
  std::optional<InterdefCase> witness;    // non-dne mode: rst true, fca false

  bool consistent() const {
    return lattice_dne ? violations.empty() : witness.has_value();
  }
};

InterdefReport verify_interdefinability(std::shared_ptr<const Lattice> lattice,
                                        const InterdefConfig& config);

}  // namespace fcl
