#include "fcl/derivation.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace fcl {

namespace {

void check_object_carrier(const Context& ctx, const LSubset& mu) {
  if (static_cast<int>(mu.size()) != ctx.object_count())
    throw std::invalid_argument("subset carrier does not match the object list");
}

void check_attribute_carrier(const Context& ctx, const LSubset& la) {
  if (static_cast<int>(la.size()) != ctx.attribute_count())
    throw std::invalid_argument("subset carrier does not match the attribute list");
}

[[noreturn]] void budget_exceeded(std::uint64_t required, std::uint64_t limit,
                                  const std::string& what) {
  std::ostringstream msg;
  msg << "budget exceeded: " << what << " needs ";
  if (required == std::numeric_limits<std::uint64_t>::max())
    msg << "more than " << required;
  else
    msg << required;
  msg << " candidates, budget is " << limit;
  throw BudgetError(required, limit, msg.str());
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::fca ? "fca" : "rst"; }

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::naive ? "naive" : "generators";
}

std::optional<Mode> mode_from_string(std::string_view name) {
  if (name == "fca") return Mode::fca;
  if (name == "rst") return Mode::rst;
  return std::nullopt;
}

std::uint64_t count_subsets(int lattice_size, int carrier_size) {
  std::uint64_t acc = 1;
  const auto base = static_cast<std::uint64_t>(lattice_size);
  for (int i = 0; i < carrier_size; ++i) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    acc *= base;
  }
  return acc;
}

bool next_subset(LSubset& v, const Lattice& lattice) {
  const int last = lattice.size() - 1;
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (*it < last) {
      ++*it;
      return true;
    }
    *it = 0;
  }
  return false;
}

LSubset intent(const Context& ctx, const LSubset& mu) {
  check_object_carrier(ctx, mu);
  const Lattice& lat = ctx.lattice();
  LSubset out(static_cast<std::size_t>(ctx.attribute_count()));
  for (int y = 0; y < ctx.attribute_count(); ++y) {
    Elem acc = lat.top();
    for (int x = 0; x < ctx.object_count(); ++x)
      acc = lat.meet(acc, lat.residuum(mu[static_cast<std::size_t>(x)], ctx.at(x, y)));
    out[static_cast<std::size_t>(y)] = acc;
  }
  return out;
}

LSubset extent(const Context& ctx, const LSubset& la) {
  check_attribute_carrier(ctx, la);
  const Lattice& lat = ctx.lattice();
  LSubset out(static_cast<std::size_t>(ctx.object_count()));
  for (int x = 0; x < ctx.object_count(); ++x) {
    Elem acc = lat.top();
    for (int y = 0; y < ctx.attribute_count(); ++y)
      acc = lat.meet(acc, lat.residuum(la[static_cast<std::size_t>(y)], ctx.at(x, y)));
    out[static_cast<std::size_t>(x)] = acc;
  }
  return out;
}

LSubset exists_image(const Context& ctx, const LSubset& mu) {
  check_object_carrier(ctx, mu);
  const Lattice& lat = ctx.lattice();
  LSubset out(static_cast<std::size_t>(ctx.attribute_count()));
  for (int y = 0; y < ctx.attribute_count(); ++y) {
    Elem acc = lat.bottom();
    for (int x = 0; x < ctx.object_count(); ++x)
      acc = lat.join(acc, lat.tensor(mu[static_cast<std::size_t>(x)], ctx.at(x, y)));
    out[static_cast<std::size_t>(y)] = acc;
  }
  return out;
}

LSubset forall_preimage(const Context& ctx, const LSubset& la) {
  check_attribute_carrier(ctx, la);
  const Lattice& lat = ctx.lattice();
  LSubset out(static_cast<std::size_t>(ctx.object_count()));
  for (int x = 0; x < ctx.object_count(); ++x) {
    Elem acc = lat.top();
    for (int y = 0; y < ctx.attribute_count(); ++y)
      acc = lat.meet(acc, lat.residuum(ctx.at(x, y), la[static_cast<std::size_t>(y)]));
    out[static_cast<std::size_t>(x)] = acc;
  }
  return out;
}

LSubset fca_closure(const Context& ctx, const LSubset& mu) { return extent(ctx, intent(ctx, mu)); }

LSubset rst_closure(const Context& ctx, const LSubset& mu) {
  return forall_preimage(ctx, exists_image(ctx, mu));
}

LSubset fca_attr_closure(const Context& ctx, const LSubset& la) {
  return intent(ctx, extent(ctx, la));
}

LSubset rst_attr_interior(const Context& ctx, const LSubset& la) {
  return exists_image(ctx, forall_preimage(ctx, la));
}

LSubset mode_closure(const Context& ctx, Mode mode, const LSubset& mu) {
  return mode == Mode::fca ? fca_closure(ctx, mu) : rst_closure(ctx, mu);
}

LSubset mode_attr_composite(const Context& ctx, Mode mode, const LSubset& la) {
  return mode == Mode::fca ? fca_attr_closure(ctx, la) : rst_attr_interior(ctx, la);
}

Elem subset_order(const Lattice& lattice, const LSubset& mu, const LSubset& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("subset carriers differ");
  Elem acc = lattice.top();
  for (std::size_t i = 0; i < mu.size(); ++i)
    acc = lattice.meet(acc, lattice.residuum(mu[i], nu[i]));
  return acc;
}

int ConceptLattice::find(const LSubset& c) const {
  auto it = std::lower_bound(concepts.begin(), concepts.end(), c);
  if (it == concepts.end() || *it != c) return -1;
  return static_cast<int>(it - concepts.begin());
}

namespace {

std::vector<LSubset> concepts_naive(const Context& ctx, Mode mode, std::uint64_t budget) {
  const std::uint64_t required = count_subsets(ctx.lattice().size(), ctx.object_count());
  if (required > budget)
    budget_exceeded(required, budget,
                    "naive concept enumeration over |L|^|X| = " +
                        std::to_string(ctx.lattice().size()) + "^" +
                        std::to_string(ctx.object_count()));
  std::vector<LSubset> out;
  LSubset mu = constant_subset(ctx.object_count(), 0);
  do {
    if (mode_closure(ctx, mode, mu) == mu) out.push_back(mu);
  } while (next_subset(mu, ctx.lattice()));
  return out;
}

// The image of the right adjoint equals the fixed-point set and is the
// pointwise-meet closure of the single-column generators together with top.
std::vector<LSubset> concepts_generators(const Context& ctx, Mode mode, std::uint64_t budget) {
  const Lattice& lat = ctx.lattice();
  std::set<LSubset> seen;
  std::vector<LSubset> all;
  auto add = [&](LSubset s) {
    if (seen.insert(s).second) {
      all.push_back(std::move(s));
      if (all.size() > budget)
        budget_exceeded(all.size(), budget, "generator closure of the concept set");
    }
  };

  add(constant_subset(ctx.object_count(), lat.top()));
  for (int y = 0; y < ctx.attribute_count(); ++y) {
    for (Elem a = 0; a < lat.size(); ++a) {
      LSubset g(static_cast<std::size_t>(ctx.object_count()));
      for (int x = 0; x < ctx.object_count(); ++x)
        g[static_cast<std::size_t>(x)] = mode == Mode::fca ? lat.residuum(a, ctx.at(x, y))
                                                           : lat.residuum(ctx.at(x, y), a);
      add(std::move(g));
    }
  }

  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      LSubset m(all[i].size());
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = lat.meet(all[i][k], all[j][k]);
      add(std::move(m));
    }
  }
  return all;
}

}  // namespace

ConceptLattice enumerate_concepts(const Context& ctx, Mode mode, Strategy strategy,
                                  std::uint64_t budget) {
  ConceptLattice out;
  out.mode = mode;
  out.concepts = strategy == Strategy::naive ? concepts_naive(ctx, mode, budget)
                                             : concepts_generators(ctx, mode, budget);
  std::sort(out.concepts.begin(), out.concepts.end());

  const std::size_t n = out.concepts.size();
  out.order.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.order[i * n + j] = subset_order(ctx.lattice(), out.concepts[i], out.concepts[j]);
  return out;
}

void verify_infomorphism(const Context& src, const Context& dst, const Infomorphism& info) {
  if (!(src.lattice() == dst.lattice()))
    throw std::invalid_argument("infomorphism endpoints must share one lattice");
  if (static_cast<int>(info.object_map.size()) != src.object_count())
    throw std::invalid_argument("object map must cover every source object");
  if (static_cast<int>(info.attribute_map.size()) != dst.attribute_count())
    throw std::invalid_argument("attribute map must cover every destination attribute");
  for (int v : info.object_map)
    if (v < 0 || v >= dst.object_count())
      throw std::invalid_argument("object map value out of range");
  for (int v : info.attribute_map)
    if (v < 0 || v >= src.attribute_count())
      throw std::invalid_argument("attribute map value out of range");

  for (int x = 0; x < src.object_count(); ++x)
    for (int b = 0; b < dst.attribute_count(); ++b) {
      Elem lhs = src.at(x, info.attribute_map[static_cast<std::size_t>(b)]);
      Elem rhs = dst.at(info.object_map[static_cast<std::size_t>(x)], b);
      if (lhs != rhs) {
        std::ostringstream msg;
        msg << "not an infomorphism: object " << src.objects()[static_cast<std::size_t>(x)]
            << " and destination attribute " << dst.attributes()[static_cast<std::size_t>(b)]
            << " disagree";
        throw InfomorphismError(x, b, msg.str());
      }
    }
}

LSubset infomorphism_image(const Context& src, const Context& dst, const Infomorphism& info,
                           Mode mode, const LSubset& mu) {
  verify_infomorphism(src, dst, info);
  check_object_carrier(src, mu);
  if (mode_closure(src, mode, mu) != mu)
    throw std::invalid_argument("input is not a concept of the source context");
  const Lattice& lat = src.lattice();
  LSubset image = constant_subset(dst.object_count(), lat.bottom());
  for (int x = 0; x < src.object_count(); ++x) {
    auto a = static_cast<std::size_t>(info.object_map[static_cast<std::size_t>(x)]);
    image[a] = lat.join(image[a], mu[static_cast<std::size_t>(x)]);
  }
  return mode_closure(dst, mode, image);
}

LSubset infomorphism_preimage(const Context& src, const Context& dst, const Infomorphism& info,
                              Mode mode, const LSubset& nu) {
  verify_infomorphism(src, dst, info);
  check_object_carrier(dst, nu);
  if (mode_closure(dst, mode, nu) != nu)
    throw std::invalid_argument("input is not a concept of the destination context");
  LSubset out(static_cast<std::size_t>(src.object_count()));
  for (int x = 0; x < src.object_count(); ++x)
    out[static_cast<std::size_t>(x)] = nu[static_cast<std::size_t>(info.object_map[static_cast<std::size_t>(x)])];
  return out;
}

}  // namespace fcl
