#include "fcl/context.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace fcl {

namespace {

void validate_labels(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) throw std::invalid_argument(std::string(what) + " label is empty");
    if (label.find_first_of(" \t\r\n#") != std::string::npos)
      throw std::invalid_argument(std::string(what) + " label contains whitespace or '#': " + label);
    if (!seen.insert(label).second)
      throw std::invalid_argument(std::string("duplicate ") + what + " label: " + label);
  }
}

}  // namespace

Context::Context(std::shared_ptr<const Lattice> lattice, std::vector<std::string> objects,
                 std::vector<std::string> attributes, std::vector<Elem> entries)
    : lattice_(std::move(lattice)), objects_(std::move(objects)),
      attributes_(std::move(attributes)), entries_(std::move(entries)) {
  if (!lattice_) throw std::invalid_argument("context needs a lattice");
  validate_labels(objects_, "object");
  validate_labels(attributes_, "attribute");
  if (entries_.size() != objects_.size() * attributes_.size())
    throw std::invalid_argument("entry matrix shape does not match the label lists");
  for (Elem e : entries_)
    if (e < 0 || e >= lattice_->size())
      throw std::invalid_argument("entry is not a lattice element index");
}

Elem Context::at(int x, int y) const {
  if (x < 0 || x >= object_count()) throw std::out_of_range("object index out of range");
  if (y < 0 || y >= attribute_count()) throw std::out_of_range("attribute index out of range");
  return entries_[static_cast<std::size_t>(x) * attributes_.size() + static_cast<std::size_t>(y)];
}

std::optional<int> Context::object_index(std::string_view label) const {
  for (int i = 0; i < object_count(); ++i)
    if (objects_[static_cast<std::size_t>(i)] == label) return i;
  return std::nullopt;
}

std::optional<int> Context::attribute_index(std::string_view label) const {
  for (int i = 0; i < attribute_count(); ++i)
    if (attributes_[static_cast<std::size_t>(i)] == label) return i;
  return std::nullopt;
}

Selector Context::full_selector() const {
  Selector sel;
  sel.objects.resize(static_cast<std::size_t>(object_count()));
  sel.attributes.resize(static_cast<std::size_t>(attribute_count()));
  std::iota(sel.objects.begin(), sel.objects.end(), 0);
  std::iota(sel.attributes.begin(), sel.attributes.end(), 0);
  return sel;
}

Context Context::restricted(const Selector& sel) const {
  validate_selector(*this, sel);
  std::vector<std::string> objs, attrs;
  objs.reserve(sel.objects.size());
  attrs.reserve(sel.attributes.size());
  for (int x : sel.objects) objs.push_back(objects_[static_cast<std::size_t>(x)]);
  for (int y : sel.attributes) attrs.push_back(attributes_[static_cast<std::size_t>(y)]);
  std::vector<Elem> sub;
  sub.reserve(sel.objects.size() * sel.attributes.size());
  for (int x : sel.objects)
    for (int y : sel.attributes) sub.push_back(at(x, y));
  return Context(lattice_, std::move(objs), std::move(attrs), std::move(sub));
}

Context Context::restricted_objects(std::span<const int> kept) const {
  Selector sel = full_selector();
  sel.objects.assign(kept.begin(), kept.end());
  return restricted(sel);
}

Context Context::restricted_attributes(std::span<const int> kept) const {
  Selector sel = full_selector();
  sel.attributes.assign(kept.begin(), kept.end());
  return restricted(sel);
}

Context Context::negated() const {
  std::vector<Elem> out;
  out.reserve(entries_.size());
  for (Elem e : entries_) out.push_back(lattice_->negation(e));
  return Context(lattice_, objects_, attributes_, std::move(out));
}

Context Context::dualized() const {
  std::vector<Elem> out(entries_.size());
  for (int x = 0; x < object_count(); ++x)
    for (int y = 0; y < attribute_count(); ++y)
      out[static_cast<std::size_t>(y) * objects_.size() + static_cast<std::size_t>(x)] = at(x, y);
  return Context(lattice_, attributes_, objects_, std::move(out));
}

bool Context::operator==(const Context& other) const {
  return *lattice_ == *other.lattice_ && objects_ == other.objects_ &&
         attributes_ == other.attributes_ && entries_ == other.entries_;
}

void validate_index_subset(std::span<const int> kept, int size, const char* what) {
  int prev = -1;
  for (int i : kept) {
    if (i <= prev)
      throw std::invalid_argument(std::string(what) + " indices must be strictly increasing");
    if (i < 0 || i >= size)
      throw std::invalid_argument(std::string(what) + " index out of range");
    prev = i;
  }
}

void validate_selector(const Context& ctx, const Selector& sel) {
  validate_index_subset(sel.objects, ctx.object_count(), "kept object");
  validate_index_subset(sel.attributes, ctx.attribute_count(), "kept attribute");
}

LSubset restrict_to(const LSubset& full, std::span<const int> kept) {
  LSubset out;
  out.reserve(kept.size());
  for (int i : kept) {
    if (i < 0 || static_cast<std::size_t>(i) >= full.size())
      throw std::out_of_range("kept index out of range of the subset carrier");
    out.push_back(full[static_cast<std::size_t>(i)]);
  }
  return out;
}

LSubset extend_by_bottom(const LSubset& part, std::span<const int> kept, int full_size,
                         const Lattice& lattice) {
  if (part.size() != kept.size())
    throw std::invalid_argument("subset length does not match the kept index list");
  validate_index_subset(kept, full_size, "kept");
  LSubset out(static_cast<std::size_t>(full_size), lattice.bottom());
  for (std::size_t i = 0; i < kept.size(); ++i)
    out[static_cast<std::size_t>(kept[i])] = part[i];
  return out;
}

LSubset constant_subset(int size, Elem value) {
  return LSubset(static_cast<std::size_t>(size), value);
}

}  // namespace fcl
