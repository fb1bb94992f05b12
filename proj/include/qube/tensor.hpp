#pragma once

#include <set>
#include <string>
#include <vector>

#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/states.hpp"

namespace qube {
namespace detail {

// Composite-index permutation for a slot relocation: slot i's digit moves to
// slot destination[i].  Returns pi with pi[old_index] = new_index.
inline std::vector<std::size_t> index_permutation(
    const std::vector<int>& dims, const std::vector<std::size_t>& destination) {
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (int d : dims) t *= static_cast<std::size_t>(d);
    return t;
  }();
  std::vector<std::size_t> pi(total);
  std::vector<int> moved(dims.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto digits = digits_of(idx, dims);
    for (std::size_t i = 0; i < dims.size(); ++i)
      moved[destination[i]] = digits[i];
    pi[idx] = index_of_digits(moved, dims);
  }
  return pi;
}

inline ComplexMatrix permute_matrix(const ComplexMatrix& m,
                                    const std::vector<std::size_t>& pi) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(pi[r], pi[c]) = m(r, c);
  return out;
}

}  // namespace detail

// P rho P^dagger for the unitary P that relocates subsystem contents per the
// permutation map.  The layout (labels and their order) is unchanged.
inline DensityOperator permute_subsystems(const DensityOperator& state,
                                          const PermutationMap& perm) {
  validate_permutation(perm, state.layout);
  std::vector<std::size_t> destination(state.layout.size());
  for (std::size_t i = 0; i < state.layout.size(); ++i)
    destination[i] = state.layout.slot_of(perm.image_of(state.layout.labels[i]));
  const auto pi = detail::index_permutation(state.layout.dims, destination);
  return DensityOperator{state.layout, detail::permute_matrix(state.matrix, pi)};
}

inline StateVector permute_subsystems(const StateVector& state,
                                      const PermutationMap& perm) {
  validate_permutation(perm, state.layout);
  std::vector<std::size_t> destination(state.layout.size());
  for (std::size_t i = 0; i < state.layout.size(); ++i)
    destination[i] = state.layout.slot_of(perm.image_of(state.layout.labels[i]));
  const auto pi = detail::index_permutation(state.layout.dims, destination);
  ComplexVector out(state.amplitudes.size());
  for (Eigen::Index k = 0; k < state.amplitudes.size(); ++k)
    out(pi[k]) = state.amplitudes(k);
  return StateVector{state.layout, std::move(out)};
}

// Re-expresses the same abstract state with the layout's factors listed in a
// new order.  Unlike permute_subsystems this changes the layout, not the state.
inline StateVector reorder_to(const StateVector& state,
                              const std::vector<std::string>& new_order) {
  if (new_order.size() != state.layout.size())
    throw argument_error("reorder_to: label list must cover the layout");
  std::vector<std::size_t> destination(state.layout.size());
  std::vector<int> new_dims(state.layout.size());
  for (std::size_t i = 0; i < new_order.size(); ++i) {
    if (!state.layout.has_label(new_order[i]))
      throw argument_error("reorder_to: unknown label '" + new_order[i] + "'");
    destination[state.layout.slot_of(new_order[i])] = i;
  }
  for (std::size_t i = 0; i < state.layout.size(); ++i)
    new_dims[destination[i]] = state.layout.dims[i];
  // Digit i of the old index becomes digit destination[i] of the new index.
  const std::size_t total = state.layout.total_dimension();
  ComplexVector out(total);
  std::vector<int> moved(state.layout.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto digits = digits_of(idx, state.layout.dims);
    for (std::size_t i = 0; i < digits.size(); ++i) moved[destination[i]] = digits[i];
    out(index_of_digits(moved, new_dims)) = state.amplitudes(idx);
  }
  return StateVector{make_layout(new_dims, new_order), std::move(out)};
}

inline DensityOperator reorder_to(const DensityOperator& state,
                                  const std::vector<std::string>& new_order) {
  if (new_order.size() != state.layout.size())
    throw argument_error("reorder_to: label list must cover the layout");
  std::vector<std::size_t> destination(state.layout.size());
  std::vector<int> new_dims(state.layout.size());
  for (std::size_t i = 0; i < new_order.size(); ++i) {
    if (!state.layout.has_label(new_order[i]))
      throw argument_error("reorder_to: unknown label '" + new_order[i] + "'");
    destination[state.layout.slot_of(new_order[i])] = i;
  }
  for (std::size_t i = 0; i < state.layout.size(); ++i)
    new_dims[destination[i]] = state.layout.dims[i];
  const std::size_t total = state.layout.total_dimension();
  std::vector<std::size_t> pi(total);
  std::vector<int> moved(state.layout.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto digits = digits_of(idx, state.layout.dims);
    for (std::size_t i = 0; i < digits.size(); ++i) moved[destination[i]] = digits[i];
    pi[idx] = index_of_digits(moved, new_dims);
  }
  return DensityOperator{make_layout(new_dims, new_order),
                         detail::permute_matrix(state.matrix, pi)};
}

// Reduced state on the kept labels (in layout order), tracing out the rest.
inline DensityOperator partial_trace(const DensityOperator& state,
                                     const std::set<std::string>& keep) {
  if (keep.empty()) throw argument_error("partial_trace: keep set is empty");
  for (const auto& l : keep)
    if (!state.layout.has_label(l))
      throw argument_error("partial_trace: unknown label '" + l + "'");

  std::vector<std::size_t> kept_slots, traced_slots;
  for (std::size_t i = 0; i < state.layout.size(); ++i) {
    if (keep.count(state.layout.labels[i]))
      kept_slots.push_back(i);
    else
      traced_slots.push_back(i);
  }
  std::vector<int> kept_dims, traced_dims;
  std::vector<std::string> kept_labels;
  for (auto s : kept_slots) {
    kept_dims.push_back(state.layout.dims[s]);
    kept_labels.push_back(state.layout.labels[s]);
  }
  for (auto s : traced_slots) traced_dims.push_back(state.layout.dims[s]);

  std::size_t kept_total = 1, traced_total = 1;
  for (int d : kept_dims) kept_total *= static_cast<std::size_t>(d);
  for (int d : traced_dims) traced_total *= static_cast<std::size_t>(d);

  ComplexMatrix out = ComplexMatrix::Zero(kept_total, kept_total);
  std::vector<int> full_r(state.layout.size()), full_c(state.layout.size());
  for (std::size_t kr = 0; kr < kept_total; ++kr) {
    const auto kr_digits = digits_of(kr, kept_dims);
    for (std::size_t kc = 0; kc < kept_total; ++kc) {
      const auto kc_digits = digits_of(kc, kept_dims);
      complex_t sum = 0.0;
      for (std::size_t t = 0; t < traced_total; ++t) {
        const auto t_digits = traced_dims.empty()
                                  ? std::vector<int>()
                                  : digits_of(t, traced_dims);
        for (std::size_t i = 0; i < kept_slots.size(); ++i) {
          full_r[kept_slots[i]] = kr_digits[i];
          full_c[kept_slots[i]] = kc_digits[i];
        }
        for (std::size_t i = 0; i < traced_slots.size(); ++i) {
          full_r[traced_slots[i]] = t_digits[i];
          full_c[traced_slots[i]] = t_digits[i];
        }
        sum += state.matrix(index_of_digits(full_r, state.layout.dims),
                            index_of_digits(full_c, state.layout.dims));
      }
      out(kr, kc) = sum;
    }
  }
  return DensityOperator{make_layout(kept_dims, kept_labels), std::move(out)};
}

namespace detail {

// Transpose of the factors at the given slots; core shared by the public
// partial transpose and its involution property test.
inline ComplexMatrix partial_transpose_slots(const ComplexMatrix& m,
                                             const std::vector<int>& dims,
                                             const std::set<std::size_t>& slots) {
  const std::size_t total = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < total; ++r) {
    auto r_digits = digits_of(r, dims);
    for (std::size_t c = 0; c < total; ++c) {
      auto c_digits = digits_of(c, dims);
      for (auto s : slots) std::swap(r_digits[s], c_digits[s]);
      out(index_of_digits(r_digits, dims), index_of_digits(c_digits, dims)) =
          m(r, c);
      for (auto s : slots) std::swap(r_digits[s], c_digits[s]);
    }
  }
  return out;
}

}  // namespace detail

// Transpose applied to the cut's right-side factors only.  The result is
// Hermitian with trace 1 but need not be positive, so it is returned as a
// bare matrix rather than a DensityOperator.
inline ComplexMatrix partial_transpose(const DensityOperator& state,
                                       const Cut& cut) {
  validate_cut(cut, state.layout);
  std::set<std::size_t> slots;
  for (const auto& r : cut.right) slots.insert(state.layout.slot_of(r));
  return detail::partial_transpose_slots(state.matrix, state.layout.dims, slots);
}

// Lifts an operator on a subset of registers (in the given order) to the full
// space, acting as the identity elsewhere.
inline ComplexMatrix embed_operator(const ComplexMatrix& op,
                                    const SubsystemLayout& layout,
                                    const std::vector<std::string>& registers) {
  if (registers.empty())
    throw argument_error("embed_operator: register list is empty");
  std::vector<std::size_t> slots;
  std::vector<int> sub_dims;
  std::set<std::string> seen;
  for (const auto& reg : registers) {
    if (!seen.insert(reg).second)
      throw argument_error("embed_operator: repeated register '" + reg + "'");
    slots.push_back(layout.slot_of(reg));
    sub_dims.push_back(layout.dim_of(reg));
  }
  std::size_t sub_total = 1;
  for (int d : sub_dims) sub_total *= static_cast<std::size_t>(d);
  if (static_cast<std::size_t>(op.rows()) != sub_total ||
      static_cast<std::size_t>(op.cols()) != sub_total)
    throw argument_error("embed_operator: operator does not match registers");

  const std::size_t total = layout.total_dimension();
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  std::vector<int> sub_r(slots.size()), sub_c(slots.size());
  for (std::size_t r = 0; r < total; ++r) {
    const auto r_digits = digits_of(r, layout.dims);
    for (std::size_t i = 0; i < slots.size(); ++i) sub_r[i] = r_digits[slots[i]];
    const std::size_t row_sub = index_of_digits(sub_r, sub_dims);
    for (std::size_t c = 0; c < total; ++c) {
      const auto c_digits = digits_of(c, layout.dims);
      bool diagonal_elsewhere = true;
      for (std::size_t i = 0; i < layout.size() && diagonal_elsewhere; ++i) {
        bool touched = false;
        for (auto s : slots) touched |= (s == i);
        if (!touched && r_digits[i] != c_digits[i]) diagonal_elsewhere = false;
      }
      if (!diagonal_elsewhere) continue;
      for (std::size_t i = 0; i < slots.size(); ++i) sub_c[i] = c_digits[slots[i]];
      out(r, c) = op(row_sub, index_of_digits(sub_c, sub_dims));
    }
  }
  return out;
}

// U rho U^dagger for a unitary acting on one register, computed with index
// arithmetic rather than full-dimension matrix products.
inline DensityOperator apply_single_register_unitary(
    const DensityOperator& state, const std::string& register_label,
    const ComplexMatrix& u) {
  const std::size_t slot = state.layout.slot_of(register_label);
  const int d = state.layout.dims[slot];
  if (u.rows() != d || u.cols() != d)
    throw argument_error("apply unitary: operator does not match register '" +
                         register_label + "'");
  const std::size_t total = state.layout.total_dimension();
  // Stride of the target slot in the composite index.
  std::size_t stride = 1;
  for (std::size_t i = state.layout.size(); i-- > slot + 1;)
    stride *= static_cast<std::size_t>(state.layout.dims[i]);

  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (std::size_t r = 0; r < total; ++r) {
    const int r_digit =
        static_cast<int>((r / stride) % static_cast<std::size_t>(d));
    const std::size_t r_base = r - static_cast<std::size_t>(r_digit) * stride;
    for (std::size_t c = 0; c < total; ++c) {
      const int c_digit =
          static_cast<int>((c / stride) % static_cast<std::size_t>(d));
      const std::size_t c_base = c - static_cast<std::size_t>(c_digit) * stride;
      complex_t sum = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          sum += u(r_digit, i) *
                 state.matrix(r_base + static_cast<std::size_t>(i) * stride,
                              c_base + static_cast<std::size_t>(j) * stride) *
                 std::conj(u(c_digit, j));
      out(r, c) = sum;
    }
  }
  return DensityOperator{state.layout, std::move(out)};
}

}  // namespace qube
