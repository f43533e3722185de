#include "fcl/reduct.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <sstream>

namespace fcl {

namespace {

[[noreturn]] void budget_exceeded(std::uint64_t required, std::uint64_t limit,
                                  const std::string& what) {
  std::ostringstream msg;
  msg << "budget exceeded: " << what << " needs " << required << " candidates, budget is "
      << limit;
  throw BudgetError(required, limit, msg.str());
}

Method resolve(Method method, int lattice_size, int carrier_size, std::uint64_t budget) {
  if (method != Method::auto_select) return method;
  return count_subsets(lattice_size, carrier_size) <= budget ? Method::exhaustive
                                                             : Method::generators;
}

std::vector<int> complement_of(std::span<const int> kept, int size) {
  std::vector<int> removed;
  auto it = kept.begin();
  for (int i = 0; i < size; ++i) {
    if (it != kept.end() && *it == i)
      ++it;
    else
      removed.push_back(i);
  }
  return removed;
}

// One exhaustive pass: compare the full and restricted composite operators on
// every candidate subset of the given carrier; first mismatch is the witness.
template <typename Composite>
SideCheck exhaustive_side(const Context& full, const Context& restricted, int carrier_size,
                          std::uint64_t budget, Composite&& composite, const char* what) {
  const std::uint64_t required = count_subsets(full.lattice().size(), carrier_size);
  if (required > budget)
    budget_exceeded(required, budget,
                    std::string(what) + " over |L|^" + std::to_string(carrier_size) + " = " +
                        std::to_string(full.lattice().size()) + "^" +
                        std::to_string(carrier_size));
  SideCheck result;
  result.method = Method::exhaustive;
  result.reducible = true;
  LSubset candidate = constant_subset(carrier_size, 0);
  do {
    ++result.examined;
    if (composite(full, candidate) != composite(restricted, candidate)) {
      result.reducible = false;
      result.witness = candidate;
      return result;
    }
  } while (next_subset(candidate, full.lattice()));
  return result;
}

// Generator pass: the composites are determined by their fixed-point sets,
// which the removed-generator family must land in.
template <typename MakeGenerator, typename Composite>
SideCheck generator_side(const Context& restricted, std::span<const int> removed,
                         int lattice_size, MakeGenerator&& make, Composite&& composite) {
  SideCheck result;
  result.method = Method::generators;
  result.reducible = true;
  for (int r : removed) {
    for (Elem a = 0; a < lattice_size; ++a) {
      ++result.examined;
      LSubset g = make(r, a);
      if (composite(restricted, g) != g) {
        result.reducible = false;
        result.witness = std::move(g);
        return result;
      }
    }
  }
  return result;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::exhaustive: return "exhaustive";
    case Method::generators: return "generators";
    case Method::auto_select: return "auto";
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view name) {
  if (name == "exhaustive") return Method::exhaustive;
  if (name == "generators") return Method::generators;
  if (name == "auto") return Method::auto_select;
  return std::nullopt;
}

SideCheck fca_attr_side_reducible(const Context& ctx, std::span<const int> kept_attributes,
                                  Method method, std::uint64_t budget) {
  validate_index_subset(kept_attributes, ctx.attribute_count(), "kept attribute");
  const Context restricted = ctx.restricted_attributes(kept_attributes);
  method = resolve(method, ctx.lattice().size(), ctx.object_count(), budget);
  if (method == Method::exhaustive)
    return exhaustive_side(
        ctx, restricted, ctx.object_count(), budget,
        [](const Context& c, const LSubset& mu) { return fca_closure(c, mu); },
        "fca attribute-side check");
  const Lattice& lat = ctx.lattice();
  return generator_side(
      restricted, complement_of(kept_attributes, ctx.attribute_count()), lat.size(),
      [&](int y, Elem a) {
        LSubset g(static_cast<std::size_t>(ctx.object_count()));
        for (int x = 0; x < ctx.object_count(); ++x)
          g[static_cast<std::size_t>(x)] = lat.residuum(a, ctx.at(x, y));
        return g;
      },
      [](const Context& c, const LSubset& mu) { return fca_closure(c, mu); });
}

SideCheck fca_object_side_reducible(const Context& ctx, std::span<const int> kept_objects,
                                    Method method, std::uint64_t budget) {
  validate_index_subset(kept_objects, ctx.object_count(), "kept object");
  const Context restricted = ctx.restricted_objects(kept_objects);
  method = resolve(method, ctx.lattice().size(), ctx.attribute_count(), budget);
  if (method == Method::exhaustive)
    return exhaustive_side(
        ctx, restricted, ctx.attribute_count(), budget,
        [](const Context& c, const LSubset& la) { return fca_attr_closure(c, la); },
        "fca object-side check");
  const Lattice& lat = ctx.lattice();
  return generator_side(
      restricted, complement_of(kept_objects, ctx.object_count()), lat.size(),
      [&](int x, Elem a) {
        LSubset g(static_cast<std::size_t>(ctx.attribute_count()));
        for (int y = 0; y < ctx.attribute_count(); ++y)
          g[static_cast<std::size_t>(y)] = lat.residuum(a, ctx.at(x, y));
        return g;
      },
      [](const Context& c, const LSubset& la) { return fca_attr_closure(c, la); });
}

SideCheck rst_attr_side_reducible(const Context& ctx, std::span<const int> kept_attributes,
                                  Method method, std::uint64_t budget) {
  validate_index_subset(kept_attributes, ctx.attribute_count(), "kept attribute");
  const Context restricted = ctx.restricted_attributes(kept_attributes);
  method = resolve(method, ctx.lattice().size(), ctx.object_count(), budget);
  if (method == Method::exhaustive)
    return exhaustive_side(
        ctx, restricted, ctx.object_count(), budget,
        [](const Context& c, const LSubset& mu) { return rst_closure(c, mu); },
        "rst attribute-side check");
  const Lattice& lat = ctx.lattice();
  return generator_side(
      restricted, complement_of(kept_attributes, ctx.attribute_count()), lat.size(),
      [&](int y, Elem a) {
        LSubset g(static_cast<std::size_t>(ctx.object_count()));
        for (int x = 0; x < ctx.object_count(); ++x)
          g[static_cast<std::size_t>(x)] = lat.residuum(ctx.at(x, y), a);
        return g;
      },
      [](const Context& c, const LSubset& mu) { return rst_closure(c, mu); });
}

SideCheck rst_object_side_reducible(const Context& ctx, std::span<const int> kept_objects,
                                    Method method, std::uint64_t budget) {
  validate_index_subset(kept_objects, ctx.object_count(), "kept object");
  const Context restricted = ctx.restricted_objects(kept_objects);
  method = resolve(method, ctx.lattice().size(), ctx.attribute_count(), budget);
  if (method == Method::exhaustive)
    return exhaustive_side(
        ctx, restricted, ctx.attribute_count(), budget,
        [](const Context& c, const LSubset& la) { return rst_attr_interior(c, la); },
        "rst object-side check");
  const Lattice& lat = ctx.lattice();
  return generator_side(
      restricted, complement_of(kept_objects, ctx.object_count()), lat.size(),
      [&](int x, Elem a) {
        LSubset g(static_cast<std::size_t>(ctx.attribute_count()));
        for (int y = 0; y < ctx.attribute_count(); ++y)
          g[static_cast<std::size_t>(y)] = lat.tensor(a, ctx.at(x, y));
        return g;
      },
      [](const Context& c, const LSubset& la) { return rst_attr_interior(c, la); });
}

ReductReport is_reduct(const Context& ctx, const Selector& sel, Mode mode, Method method,
                       std::uint64_t budget) {
  validate_selector(ctx, sel);
  ReductReport report;
  report.mode = mode;
  report.selector = sel;
  report.method = resolve(method, ctx.lattice().size(),
                          std::max(ctx.object_count(), ctx.attribute_count()), budget);
  if (mode == Mode::fca) {
    report.attribute_side = fca_attr_side_reducible(ctx, sel.attributes, report.method, budget);
    report.object_side = fca_object_side_reducible(ctx, sel.objects, report.method, budget);
  } else {
    report.attribute_side = rst_attr_side_reducible(ctx, sel.attributes, report.method, budget);
    report.object_side = rst_object_side_reducible(ctx, sel.objects, report.method, budget);
  }
  report.is_reduct = report.attribute_side.reducible && report.object_side.reducible;
  return report;
}

ReductReport is_fca_reduct(const Context& ctx, const Selector& sel, Method method,
                           std::uint64_t budget) {
  return is_reduct(ctx, sel, Mode::fca, method, budget);
}

ReductReport is_rst_reduct(const Context& ctx, const Selector& sel, Method method,
                           std::uint64_t budget) {
  return is_reduct(ctx, sel, Mode::rst, method, budget);
}

std::string_view to_string(ComparisonTag tag) {
  switch (tag) {
    case ComparisonTag::R1: return "R1";
    case ComparisonTag::R2: return "R2";
    case ComparisonTag::E1: return "E1";
    case ComparisonTag::E2: return "E2";
    case ComparisonTag::S1: return "S1";
    case ComparisonTag::S2: return "S2";
    case ComparisonTag::F1: return "F1";
    case ComparisonTag::F2: return "F2";
  }
  return "?";
}

Mode mode_of(ComparisonTag tag) {
  switch (tag) {
    case ComparisonTag::R1:
    case ComparisonTag::R2:
    case ComparisonTag::E1:
    case ComparisonTag::E2:
      return Mode::fca;
    default:
      return Mode::rst;
  }
}

bool maps_to_restricted(ComparisonTag tag) {
  return tag == ComparisonTag::R1 || tag == ComparisonTag::R2 || tag == ComparisonTag::S1 ||
         tag == ComparisonTag::S2;
}

LSubset comparison_map(const Context& ctx, const Selector& sel, ComparisonTag tag,
                       const LSubset& input) {
  validate_selector(ctx, sel);
  const Mode mode = mode_of(tag);
  const Lattice& lat = ctx.lattice();

  if (maps_to_restricted(tag)) {
    if (mode_closure(ctx, mode, input) != input)
      throw std::invalid_argument("input is not a concept of the full context");
    if (tag == ComparisonTag::R1 || tag == ComparisonTag::S1)
      return mode_closure(ctx.restricted(sel), mode, restrict_to(input, sel.objects));
    return restrict_to(mode_closure(ctx.restricted_attributes(sel.attributes), mode, input),
                       sel.objects);
  }

  const Context sub = ctx.restricted(sel);
  if (mode_closure(sub, mode, input) != input)
    throw std::invalid_argument("input is not a concept of the restricted context");
  const LSubset extended = extend_by_bottom(input, sel.objects, ctx.object_count(), lat);
  if (tag == ComparisonTag::E1 || tag == ComparisonTag::F1)
    return mode_closure(ctx, mode, extended);
  return mode_closure(ctx.restricted_attributes(sel.attributes), mode, extended);
}

IsoEvidence verify_iso_via_maps(const Context& ctx, const Selector& sel, Mode mode,
                                std::uint64_t budget) {
  validate_selector(ctx, sel);
  const Context sub = ctx.restricted(sel);
  const ConceptLattice full_cl = enumerate_concepts(ctx, mode, Strategy::generators, budget);
  const ConceptLattice sub_cl = enumerate_concepts(sub, mode, Strategy::generators, budget);

  const bool fca = mode == Mode::fca;
  const std::array<ComparisonTag, 2> to_sub_tags =
      fca ? std::array{ComparisonTag::R1, ComparisonTag::R2}
          : std::array{ComparisonTag::S1, ComparisonTag::S2};
  const std::array<ComparisonTag, 2> to_full_tags =
      fca ? std::array{ComparisonTag::E1, ComparisonTag::E2}
          : std::array{ComparisonTag::F1, ComparisonTag::F2};

  const std::size_t nf = full_cl.concepts.size();
  const std::size_t ns = sub_cl.concepts.size();
  std::array<std::vector<int>, 2> to_sub, to_full;

  for (int t = 0; t < 2; ++t) {
    to_sub[static_cast<std::size_t>(t)].resize(nf);
    for (std::size_t i = 0; i < nf; ++i) {
      int j = sub_cl.find(comparison_map(ctx, sel, to_sub_tags[static_cast<std::size_t>(t)],
                                         full_cl.concepts[i]));
      if (j < 0) throw std::logic_error("comparison map left the restricted concept set");
      to_sub[static_cast<std::size_t>(t)][i] = j;
    }
    to_full[static_cast<std::size_t>(t)].resize(ns);
    for (std::size_t j = 0; j < ns; ++j) {
      int i = full_cl.find(comparison_map(ctx, sel, to_full_tags[static_cast<std::size_t>(t)],
                                          sub_cl.concepts[j]));
      if (i < 0) throw std::logic_error("comparison map left the full concept set");
      to_full[static_cast<std::size_t>(t)][j] = i;
    }
  }

  auto is_isomorphism = [](const std::vector<int>& map, const ConceptLattice& from,
                           const ConceptLattice& to) {
    std::vector<char> hit(to.concepts.size(), 0);
    for (int v : map) hit[static_cast<std::size_t>(v)] = 1;
    if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) return false;
    const auto n = static_cast<int>(from.concepts.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (from.order_at(i, j) != to.order_at(map[static_cast<std::size_t>(i)],
                                               map[static_cast<std::size_t>(j)]))
          return false;
    return true;
  };

  IsoEvidence ev;
  ev.full_concepts = nf;
  ev.restricted_concepts = ns;
  ev.tag_iso[0] = is_isomorphism(to_sub[0], full_cl, sub_cl);
  ev.tag_iso[1] = is_isomorphism(to_sub[1], full_cl, sub_cl);
  ev.tag_iso[2] = is_isomorphism(to_full[0], sub_cl, full_cl);
  ev.tag_iso[3] = is_isomorphism(to_full[1], sub_cl, full_cl);
  ev.tags_agree = ev.tag_iso[0] == ev.tag_iso[1] && ev.tag_iso[1] == ev.tag_iso[2] &&
                  ev.tag_iso[2] == ev.tag_iso[3];
  ev.is_iso = ev.tag_iso[0] && ev.tag_iso[1] && ev.tag_iso[2] && ev.tag_iso[3];

  int k = 0;
  for (int s = 0; s < 2; ++s)
    for (int f = 0; f < 2; ++f) {
      bool identity = true;
      for (std::size_t j = 0; j < ns && identity; ++j)
        identity = to_sub[static_cast<std::size_t>(s)]
                         [static_cast<std::size_t>(to_full[static_cast<std::size_t>(f)][j])] ==
                   static_cast<int>(j);
      ev.composite_identity[static_cast<std::size_t>(k++)] = identity;
    }

  ev.roundtrip_full_identity = true;
  for (std::size_t i = 0; i < nf && ev.roundtrip_full_identity; ++i)
    ev.roundtrip_full_identity =
        to_full[0][static_cast<std::size_t>(to_sub[0][i])] == static_cast<int>(i);

  return ev;
}

namespace {

Selector selector_from_masks(std::uint32_t object_mask, int nx, std::uint32_t attribute_mask,
                             int ny) {
  Selector sel;
  for (int i = 0; i < nx; ++i)
    if (object_mask & (1u << i)) sel.objects.push_back(i);
  for (int j = 0; j < ny; ++j)
    if (attribute_mask & (1u << j)) sel.attributes.push_back(j);
  return sel;
}

}  // namespace

std::vector<Selector> search_reducts(const Context& ctx, Mode mode, const SearchOptions& options) {
  const int nx = ctx.object_count();
  const int ny = ctx.attribute_count();
  if (nx + ny >= 63)
    budget_exceeded(std::numeric_limits<std::uint64_t>::max(), options.budget, "selector search");
  const std::uint64_t selector_count = std::uint64_t{1} << (nx + ny);
  if (selector_count > options.budget)
    budget_exceeded(selector_count, options.budget,
                    "selector search over 2^" + std::to_string(nx + ny) + " subcontexts");

  struct Entry {
    std::uint32_t object_mask, attribute_mask;
    int size;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(selector_count));
  for (std::uint32_t om = 0; om < (1u << nx); ++om)
    for (std::uint32_t am = 0; am < (1u << ny); ++am)
      entries.push_back({om, am, std::popcount(om) + std::popcount(am)});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.size > b.size; });

  std::vector<Entry> found;
  for (const Entry& e : entries) {
    Selector sel = selector_from_masks(e.object_mask, nx, e.attribute_mask, ny);
    if (is_reduct(ctx, sel, mode, options.method, options.budget).is_reduct) found.push_back(e);
  }

  std::vector<Entry> chosen;
  for (const Entry& e : found) {
    bool minimal = true;
    if (options.minimal_only)
      for (const Entry& other : found) {
        if (&other == &e) continue;
        const bool below = (other.object_mask & e.object_mask) == other.object_mask &&
                           (other.attribute_mask & e.attribute_mask) == other.attribute_mask &&
                           (other.object_mask != e.object_mask ||
                            other.attribute_mask != e.attribute_mask);
        if (below) {
          minimal = false;
          break;
        }
      }
    if (minimal) chosen.push_back(e);
  }

  std::vector<Selector> out;
  out.reserve(chosen.size());
  for (const Entry& e : chosen)
    out.push_back(selector_from_masks(e.object_mask, nx, e.attribute_mask, ny));
  std::sort(out.begin(), out.end(), [](const Selector& a, const Selector& b) {
    const std::size_t sa = a.objects.size() + a.attributes.size();
    const std::size_t sb = b.objects.size() + b.attributes.size();
    if (sa != sb) return sa < sb;
    if (a.objects != b.objects) return a.objects < b.objects;
    return a.attributes < b.attributes;
  });
  return out;
}

namespace {

std::vector<std::string> numbered_labels(const char* prefix, int count) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// fca verdict on phi vs rst verdict on not-phi, over every selector of one context.
void sweep_context(const Context& ctx, const InterdefConfig& config, InterdefReport& report) {
  const Context neg = ctx.negated();
  const int nx = ctx.object_count();
  const int ny = ctx.attribute_count();
  if (nx + ny >= 32 || (std::uint64_t{1} << (nx + ny)) > config.budget)
    budget_exceeded(nx + ny >= 32 ? std::numeric_limits<std::uint64_t>::max()
                                  : std::uint64_t{1} << (nx + ny),
                    config.budget, "selector sweep over one context");
  for (std::uint32_t om = 0; om < (1u << nx); ++om)
    for (std::uint32_t am = 0; am < (1u << ny); ++am) {
      Selector sel = selector_from_masks(om, nx, am, ny);
      const bool fca = is_reduct(ctx, sel, Mode::fca, config.method, config.budget).is_reduct;
      const bool rst = is_reduct(neg, sel, Mode::rst, config.method, config.budget).is_reduct;
      ++report.pairs_checked;
      if (report.lattice_dne) {
        if (fca != rst) report.violations.push_back({ctx, sel, fca, rst});
      } else if (!report.witness && rst && !fca) {
        report.witness = InterdefCase{ctx, sel, fca, rst};
      }
    }
  ++report.contexts_checked;
}

}  // namespace

InterdefReport verify_interdefinability(std::shared_ptr<const Lattice> lattice,
                                        const InterdefConfig& config) {
  if (!lattice) throw std::invalid_argument("verify_interdefinability needs a lattice");
  if (config.max_objects < 1 || config.max_attributes < 1)
    throw std::invalid_argument("size bounds must be at least 1");
  InterdefReport report;
  report.lattice_dne = lattice->satisfies_dne();

  if (!report.lattice_dne) {
    // Canonical non-dne witness: two objects mapped to bottom and a
    // double-negation witness, one attribute, keep the bottom row only.
    const Elem a = *lattice->dne_witness();
    Context ctx0(lattice, {"x", "y"}, {"star"}, {lattice->bottom(), a});
    sweep_context(ctx0, config, report);
    if (report.witness) return report;
  }

  if (config.exhaustive) {
    for (int nx = 0; nx <= config.max_objects; ++nx)
      for (int ny = 0; ny <= config.max_attributes; ++ny) {
        const std::uint64_t matrices = count_subsets(lattice->size(), nx * ny);
        if (matrices > config.budget)
          budget_exceeded(matrices, config.budget, "exhaustive context sweep");
        LSubset cells = constant_subset(nx * ny, 0);
        do {
          Context ctx(lattice, numbered_labels("x", nx), numbered_labels("y", ny),
                      std::vector<Elem>(cells.begin(), cells.end()));
          sweep_context(ctx, config, report);
          if (!report.lattice_dne && report.witness) return report;
        } while (next_subset(cells, *lattice));
      }
    return report;
  }

  std::mt19937_64 rng(config.seed);
  for (int s = 0; s < config.samples; ++s) {
    const int nx = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_objects));
    const int ny = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_attributes));
    std::vector<Elem> cells(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (Elem& c : cells)
      c = static_cast<Elem>(rng() % static_cast<std::uint64_t>(lattice->size()));
    Context ctx(lattice, numbered_labels("x", nx), numbered_labels("y", ny), std::move(cells));
    sweep_context(ctx, config, report);
    if (!report.lattice_dne && report.witness) return report;
  }
  return report;
}

}  // namespace fcl
