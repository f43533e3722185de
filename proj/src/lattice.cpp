#include "fcl/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fcl {

namespace {

std::string describe(const std::vector<std::string>& names, std::span<const Elem> witness) {
  std::string out;
  for (Elem e : witness) {
    if (!out.empty()) out += ", ";
    out += names[static_cast<std::size_t>(e)];
  }
  return out;
}

[[noreturn]] void fail(LatticeDefect defect, const std::vector<std::string>& names,
                       std::vector<Elem> witness, const std::string& detail) {
  std::ostringstream msg;
  msg << to_string(defect) << " (witness: " << describe(names, witness) << "): " << detail;
  throw LatticeError(defect, std::move(witness), msg.str());
}

std::string fraction_name(int i, int denominator) {
  if (i == 0) return "0";
  if (i == denominator) return "1";
  int g = std::gcd(i, denominator);
  return std::to_string(i / g) + "/" + std::to_string(denominator / g);
}

}  // namespace

std::string_view to_string(TNormFamily family) {
  switch (family) {
    case TNormFamily::lukasiewicz: return "lukasiewicz";
    case TNormFamily::godel: return "godel";
  }
  return "?";
}

std::optional<TNormFamily> tnorm_from_string(std::string_view name) {
  if (name == "lukasiewicz") return TNormFamily::lukasiewicz;
  if (name == "godel") return TNormFamily::godel;
  return std::nullopt;
}

std::string_view to_string(LatticeDefect defect) {
  switch (defect) {
    case LatticeDefect::not_a_lattice_order: return "not-a-lattice-order";
    case LatticeDefect::non_commutative_tensor: return "non-commutative-tensor";
    case LatticeDefect::non_associative_tensor: return "non-associative-tensor";
    case LatticeDefect::unit_not_top: return "unit-not-top";
    case LatticeDefect::distributivity_violation: return "join-distributivity-violation";
    case LatticeDefect::adjunction_violation: return "adjunction-violation";
    case LatticeDefect::residuum_mismatch: return "residuum-mismatch";
  }
  return "?";
}

Lattice Lattice::validated(const LatticeSpec& spec) {
  if (spec.builtin) {
    const auto& b = *spec.builtin;
    return chain(b.size, b.family);
  }

  const int n = static_cast<int>(spec.elements.size());
  if (n == 0) throw std::invalid_argument("lattice needs at least one element");

  std::unordered_map<std::string_view, Elem> index;
  for (int i = 0; i < n; ++i) {
    if (spec.elements[static_cast<std::size_t>(i)].empty())
      throw std::invalid_argument("empty element name");
    if (!index.emplace(spec.elements[static_cast<std::size_t>(i)], i).second)
      throw std::invalid_argument("duplicate element name: " + spec.elements[static_cast<std::size_t>(i)]);
  }
  auto resolve = [&](const std::string& name) -> Elem {
    auto it = index.find(name);
    if (it == index.end()) throw std::invalid_argument("unknown element name: " + name);
    return it->second;
  };

  Lattice lat;
  lat.n_ = n;
  lat.names_ = spec.elements;

  // Order: reflexive-transitive closure of the declared pairs.
  lat.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  auto le = [&](Elem a, Elem b) -> char& { return lat.leq_[static_cast<std::size_t>(a) * n + b]; };
  for (int i = 0; i < n; ++i) le(i, i) = 1;
  for (const auto& [a, b] : spec.leq) le(resolve(a), resolve(b)) = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le(i, k))
        for (int j = 0; j < n; ++j)
          if (le(k, j)) le(i, j) = 1;

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (le(a, b) && le(b, a))
        fail(LatticeDefect::not_a_lattice_order, lat.names_, {a, b},
             "order is not antisymmetric");

  // Binary meets and joins; they must exist for every pair.
  lat.meet_.assign(static_cast<std::size_t>(n) * n, 0);
  lat.join_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Elem glb = -1, lub = -1;
      for (int c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b)) {
          bool greatest = true;
          for (int d = 0; d < n && greatest; ++d)
            if (le(d, a) && le(d, b) && !le(d, c)) greatest = false;
          if (greatest) glb = c;
        }
        if (le(a, c) && le(b, c)) {
          bool least = true;
          for (int d = 0; d < n && least; ++d)
            if (le(a, d) && le(b, d) && !le(c, d)) least = false;
          if (least) lub = c;
        }
      }
      if (glb < 0)
        fail(LatticeDefect::not_a_lattice_order, lat.names_, {a, b}, "pair has no meet");
      if (lub < 0)
        fail(LatticeDefect::not_a_lattice_order, lat.names_, {a, b}, "pair has no join");
      lat.meet_[static_cast<std::size_t>(a) * n + b] = glb;
      lat.join_[static_cast<std::size_t>(a) * n + b] = lub;
    }
  }

  // Bottom and top exist in any finite lattice: fold the binary operations.
  Elem bot = 0, top = 0;
  for (int c = 1; c < n; ++c) {
    bot = lat.meet_[static_cast<std::size_t>(bot) * n + c];
    top = lat.join_[static_cast<std::size_t>(top) * n + c];
  }
  lat.bottom_ = bot;
  lat.top_ = top;

  // Tensor table.
  if (static_cast<int>(spec.tensor.size()) != n)
    throw std::invalid_argument("tensor table must have one row per element");
  lat.tensor_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    const auto& row = spec.tensor[static_cast<std::size_t>(a)];
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("tensor row for " + spec.elements[static_cast<std::size_t>(a)] +
                                  " must have one entry per element");
    for (int b = 0; b < n; ++b)
      lat.tensor_[static_cast<std::size_t>(a) * n + b] = resolve(row[static_cast<std::size_t>(b)]);
  }
  auto ten = [&](Elem a, Elem b) { return lat.tensor_[static_cast<std::size_t>(a) * n + b]; };

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (ten(a, b) != ten(b, a))
        fail(LatticeDefect::non_commutative_tensor, lat.names_, {a, b},
             "a*b and b*a differ");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (ten(ten(a, b), c) != ten(a, ten(b, c)))
          fail(LatticeDefect::non_associative_tensor, lat.names_, {a, b, c},
               "(a*b)*c and a*(b*c) differ");
  for (int a = 0; a < n; ++a)
    if (ten(a, top) != a)
      fail(LatticeDefect::unit_not_top, lat.names_, {a}, "a*top differs from a");

  // Distributivity over arbitrary joins reduces to binary joins plus the
  // empty join in the finite case.
  for (int a = 0; a < n; ++a)
    if (ten(a, bot) != bot)
      fail(LatticeDefect::distributivity_violation, lat.names_, {a},
           "a*bottom differs from bottom (empty join)");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Elem lhs = ten(a, lat.join_[static_cast<std::size_t>(b) * n + c]);
        Elem rhs = lat.join_[static_cast<std::size_t>(ten(a, b)) * n + ten(a, c)];
        if (lhs != rhs)
          fail(LatticeDefect::distributivity_violation, lat.names_, {a, b, c},
               "a*(b v c) differs from (a*b) v (a*c)");
      }

  // Residuum is derived, never trusted: a -> b = join { c : a*c <= b }.
  lat.residuum_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Elem acc = bot;
      for (int c = 0; c < n; ++c)
        if (le(ten(a, c), b)) acc = lat.join_[static_cast<std::size_t>(acc) * n + c];
      lat.residuum_[static_cast<std::size_t>(a) * n + b] = acc;
    }
  }
  auto res = [&](Elem a, Elem b) { return lat.residuum_[static_cast<std::size_t>(a) * n + b]; };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (static_cast<bool>(le(ten(a, b), c)) != static_cast<bool>(le(a, res(b, c))))
          fail(LatticeDefect::adjunction_violation, lat.names_, {a, b, c},
               "a*b <= c and a <= b->c disagree");

  if (!spec.residuum.empty()) {
    if (static_cast<int>(spec.residuum.size()) != n)
      throw std::invalid_argument("residuum table must have one row per element");
    for (int a = 0; a < n; ++a) {
      const auto& row = spec.residuum[static_cast<std::size_t>(a)];
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("residuum row for " + spec.elements[static_cast<std::size_t>(a)] +
                                    " must have one entry per element");
      for (int b = 0; b < n; ++b)
        if (resolve(row[static_cast<std::size_t>(b)]) != res(a, b))
          fail(LatticeDefect::residuum_mismatch, lat.names_, {a, b},
               "declared residuum differs from the table derived from the tensor");
    }
  }

  lat.negation_.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) lat.negation_[static_cast<std::size_t>(a)] = res(a, bot);

  for (int a = 0; a < n; ++a) {
    Elem nn = lat.negation_[static_cast<std::size_t>(lat.negation_[static_cast<std::size_t>(a)])];
    if (nn != a) {
      lat.dne_witness_ = a;
      break;
    }
  }

  return lat;
}

Lattice Lattice::chain(int n, TNormFamily family) {
  if (n < 2) throw std::invalid_argument("builtin chains need at least two elements");

  LatticeSpec spec;
  spec.elements.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) spec.elements.push_back(fraction_name(i, n - 1));
  for (int i = 0; i + 1 < n; ++i)
    spec.leq.emplace_back(spec.elements[static_cast<std::size_t>(i)],
                          spec.elements[static_cast<std::size_t>(i + 1)]);
  spec.tensor.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = spec.tensor[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      int v = family == TNormFamily::lukasiewicz ? std::max(0, i + j - (n - 1)) : std::min(i, j);
      row.push_back(spec.elements[static_cast<std::size_t>(v)]);
    }
  }

  Lattice lat = validated(spec);
  lat.builtin_ = BuiltinDesc{family, n};
  return lat;
}

Elem Lattice::meet_all(std::span<const Elem> xs) const {
  Elem acc = top_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

Elem Lattice::join_all(std::span<const Elem> xs) const {
  Elem acc = bottom_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

std::optional<Elem> Lattice::element_index(std::string_view name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  return std::nullopt;
}

bool Lattice::operator==(const Lattice& other) const {
  return names_ == other.names_ && leq_ == other.leq_ && tensor_ == other.tensor_;
}

}  // namespace fcl
