#pragma once

#include <array>
#include <string>
#include <vector>

#include "qube/bell.hpp"
#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/states.hpp"
#include "qube/weyl.hpp"

namespace qube {

inline const std::vector<std::string>& four_party_labels() {
  static const std::vector<std::string> labels = {"A", "B", "C", "D"};
  return labels;
}

// The four-party four-qubit state: a uniform mixture, over the four Bell
// kinds, of the same Bell state held by (A,B) and by (C,D).  Equivalently:
// the two pairs share an unknown but common Bell state.
inline DensityOperator smolin_state() {
  ComplexMatrix sum = ComplexMatrix::Zero(16, 16);
  for (BellKind kind : kAllBellKinds) {
    const ComplexVector pair = bell_state(kind).amplitudes;
    const ComplexVector joint = kron(pair, pair);
    sum += joint * joint.adjoint();
  }
  return make_density_operator(make_layout({2, 2, 2, 2}, four_party_labels()),
                               0.25 * sum);
}

// Qudit generalization on four d-level systems: a uniform mixture over all
// d^2 labels (a, b) of B_{a,b} on (A,B) paired with the conjugate-label state
// B_{a,-b} on (C,D).  The conjugate pairing keeps the construction invariant
// under the B<->C interchange for every d, and it reduces exactly to
// smolin_state at d = 2 (where -b = b mod 2).
inline DensityOperator smolin_qudit_state(int d) {
  if (d < 2 || d > 5)
    throw capacity_error("qudit state: local dimension must be in [2, 5]");
  const std::size_t total = static_cast<std::size_t>(d) * d * d * d;
  ComplexMatrix sum = ComplexMatrix::Zero(total, total);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const ComplexVector left =
          generalized_bell_state(WeylLabel(d, a, b)).amplitudes;
      const ComplexVector right =
          generalized_bell_state(WeylLabel(d, a, (d - b) % d)).amplitudes;
      const ComplexVector joint = kron(left, right);
      sum += joint * joint.adjoint();
    }
  return make_density_operator(make_uniform_layout(d, four_party_labels()),
                               sum / static_cast<double>(d * d));
}

namespace detail {

inline StateVector four_qubit_vector(
    const std::array<std::pair<int, double>, 4>& terms) {
  ComplexVector amplitudes = ComplexVector::Zero(16);
  for (const auto& [index, amplitude] : terms) amplitudes(index) = amplitude;
  return make_state_vector(make_layout({2, 2, 2, 2}, four_party_labels()),
                           std::move(amplitudes));
}

}  // namespace detail

// The four mixture vectors written out in the computational basis as Bell
// pairs on (A,B) x (C,D).  Basis index is the bitstring ABCD read as a
// binary number; every amplitude is +-1/2.
inline std::array<StateVector, 4> expansion_vectors_ab_cd() {
  const double h = 0.5;
  return {
      // (|00>+|11>) x (|00>+|11>) / 2
      detail::four_qubit_vector({{{0b0000, h}, {0b0011, h}, {0b1100, h}, {0b1111, h}}}),
      // (|00>-|11>) x (|00>-|11>) / 2
      detail::four_qubit_vector({{{0b0000, h}, {0b0011, -h}, {0b1100, -h}, {0b1111, h}}}),
      // (|01>+|10>) x (|01>+|10>) / 2
      detail::four_qubit_vector({{{0b0101, h}, {0b0110, h}, {0b1001, h}, {0b1010, h}}}),
      // (|01>-|10>) x (|01>-|10>) / 2
      detail::four_qubit_vector({{{0b0101, h}, {0b0110, -h}, {0b1001, -h}, {0b1010, h}}}),
  };
}

// The same construction with the B and C indices interchanged: Bell pairs on
// (A,C) x (B,D), still written in the ABCD basis.
inline std::array<StateVector, 4> expansion_vectors_ac_bd() {
  const double h = 0.5;
  return {
      detail::four_qubit_vector({{{0b0000, h}, {0b0101, h}, {0b1010, h}, {0b1111, h}}}),
      detail::four_qubit_vector({{{0b0000, h}, {0b0101, -h}, {0b1010, -h}, {0b1111, h}}}),
      detail::four_qubit_vector({{{0b0011, h}, {0b0110, h}, {0b1001, h}, {0b1100, h}}}),
      detail::four_qubit_vector({{{0b0011, h}, {0b0110, -h}, {0b1001, -h}, {0b1100, h}}}),
  };
}

}  // namespace qube
