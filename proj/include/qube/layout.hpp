#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qube/errors.hpp"

namespace qube {

// Dense storage cap on the total Hilbert-space dimension.  Covers the
// eight-qubit two-copy scenario (256) and four-party qudit states up to
// local dimension 5 (625) with a wide margin.
inline constexpr std::size_t kDimensionCap = 4096;

// An ordered list of tensor factors: local dimension plus a name per factor.
// The composite basis index is big-endian in factor order (the first factor
// is the most significant digit).
struct SubsystemLayout {
  std::vector<int> dims;
  std::vector<std::string> labels;

  std::size_t size() const { return dims.size(); }

  std::size_t total_dimension() const {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
  }

  // Position of a label; throws if the label is unknown.
  std::size_t slot_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    throw argument_error("layout: unknown subsystem label '" + label + "'");
  }

  bool has_label(const std::string& label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
  }

  int dim_of(const std::string& label) const { return dims[slot_of(label)]; }

  bool operator==(const SubsystemLayout& other) const {
    return dims == other.dims && labels == other.labels;
  }
};

// Validates and builds a layout.  Dimension violations of the cap raise
// capacity_error; every other malformation raises argument_error.
inline SubsystemLayout make_layout(std::vector<int> dims,
                                   std::vector<std::string> labels) {
  if (dims.empty() || dims.size() != labels.size())
    throw argument_error("layout: dims and labels must be equally sized and nonempty");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 2) throw argument_error("layout: every local dimension must be >= 2");
    total *= static_cast<std::size_t>(d);
    if (total > kDimensionCap)
      throw capacity_error("layout: total dimension exceeds cap of " +
                           std::to_string(kDimensionCap));
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw argument_error("layout: subsystem labels must be distinct");
  return SubsystemLayout{std::move(dims), std::move(labels)};
}

// Uniform-dimension convenience (n factors of local dimension d).
inline SubsystemLayout make_uniform_layout(int d, std::vector<std::string> labels) {
  std::vector<int> dims(labels.size(), d);  // read size before moving labels
  return make_layout(std::move(dims), std::move(labels));
}

// Big-endian digit decomposition of a composite index.
inline std::vector<int> digits_of(std::size_t index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % static_cast<std::size_t>(dims[i]));
    index /= static_cast<std::size_t>(dims[i]);
  }
  return digits;
}

inline std::size_t index_of_digits(const std::vector<int>& digits,
                                   const std::vector<int>& dims) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    index = index * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(digits[i]);
  return index;
}

// An unordered bipartition of a layout's labels.  The partial transpose acts
// on the `right` side; spectra are unchanged if the sides are exchanged.
struct Cut {
  std::vector<std::string> left;
  std::vector<std::string> right;

  std::string name() const {
    std::string out;
    for (const auto& l : left) out += l;
    out += ":";
    for (const auto& r : right) out += r;
    return out;
  }
};

// Checks that a cut is a genuine bipartition of the layout's labels.
inline void validate_cut(const Cut& cut, const SubsystemLayout& layout) {
  if (cut.left.empty() || cut.right.empty())
    throw argument_error("cut: both sides must be nonempty");
  std::set<std::string> left(cut.left.begin(), cut.left.end());
  std::set<std::string> right(cut.right.begin(), cut.right.end());
  if (left.size() != cut.left.size() || right.size() != cut.right.size())
    throw argument_error("cut: repeated label within one side");
  for (const auto& l : left)
    if (right.count(l))
      throw argument_error("cut: label '" + l + "' appears on both sides");
  if (left.size() + right.size() != layout.size())
    throw argument_error("cut: sides must jointly cover the layout");
  for (const auto& l : left)
    if (!layout.has_label(l))
      throw argument_error("cut: unknown label '" + l + "'");
  for (const auto& r : right)
    if (!layout.has_label(r))
      throw argument_error("cut: unknown label '" + r + "'");
}

// Parses "AB:CD" into a cut over single-character labels.
inline Cut parse_cut(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw argument_error("cut: expected '<labels>:<labels>', got '" + text + "'");
  Cut cut;
  for (std::size_t i = 0; i < colon; ++i) cut.left.push_back(std::string(1, text[i]));
  for (std::size_t i = colon + 1; i < text.size(); ++i)
    cut.right.push_back(std::string(1, text[i]));
  return cut;
}

// A relabeling of subsystem contents: the factor currently at label L moves
// to the position of label mapping[L].  Labels absent from the map stay put.
struct PermutationMap {
  std::map<std::string, std::string> mapping;

  std::string image_of(const std::string& label) const {
    auto it = mapping.find(label);
    return it == mapping.end() ? label : it->second;
  }

  PermutationMap inverse() const {
    PermutationMap inv;
    for (const auto& [from, to] : mapping) inv.mapping[to] = from;
    return inv;
  }

  // Human-readable name: images listed in the layout's label order.
  std::string image_string(const SubsystemLayout& layout) const {
    std::string out;
    for (const auto& l : layout.labels) out += image_of(l);
    return out;
  }
};

inline PermutationMap swap_of(const std::string& a, const std::string& b) {
  PermutationMap perm;
  perm.mapping[a] = b;
  perm.mapping[b] = a;
  return perm;
}

// Checks bijectivity over the layout and local-dimension compatibility.
inline void validate_permutation(const PermutationMap& perm,
                                 const SubsystemLayout& layout) {
  std::set<std::string> images;
  for (const auto& [from, to] : perm.mapping) {
    if (!layout.has_label(from))
      throw argument_error("permutation: unknown label '" + from + "'");
    if (!layout.has_label(to))
      throw argument_error("permutation: unknown label '" + to + "'");
    images.insert(to);
  }
  if (images.size() != perm.mapping.size())
    throw argument_error("permutation: mapping is not injective");
  // Labels not named in the map are fixed points; their images must be free.
  for (const auto& l : layout.labels)
    if (!perm.mapping.count(l) && images.count(l))
      throw argument_error("permutation: label '" + l +
                           "' is both a fixed point and an image");
  for (const auto& l : layout.labels)
    if (layout.dim_of(l) != layout.dim_of(perm.image_of(l)))
      throw layout_error("permutation: '" + l + "' and '" + perm.image_of(l) +
                         "' have different local dimensions");
}

}  // namespace qube
