#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qube/bell.hpp"
#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/smolin.hpp"
#include "qube/states.hpp"
#include "qube/tensor.hpp"
#include "qube/weyl.hpp"

namespace qube {
namespace detail {

// Minimal deterministic bit source (xorshift64*), so the structured-state
// family is identical on every platform and run.
class DeterministicBits {
 public:
  explicit DeterministicBits(std::uint64_t seed) : state_(seed ? seed : 1) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

inline ComplexVector pseudo_random_unit_vector(DeterministicBits& bits,
                                               std::size_t n) {
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v(i) = complex_t(bits.uniform() - 0.5, bits.uniform() - 0.5);
  const double norm = v.norm();
  // A zero vector has probability zero but guard anyway.
  if (norm < 1e-12) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace detail

// A deterministic family of density operators spanning the layouts and state
// shapes the library works with: basis projectors, pure-product projectors,
// pseudo-random low-rank mixtures, the four-party constructions and their
// reductions.  Used for the structural property checks (type invariants,
// partial-transpose involution, permutation round-trips).
inline std::vector<DensityOperator> structured_states(std::size_t count,
                                                      std::uint64_t seed = 20) {
  const std::vector<SubsystemLayout> layouts = {
      make_layout({2, 2}, {"A", "B"}),
      make_layout({2, 2, 2}, {"A", "B", "C"}),
      make_layout({2, 2, 2, 2}, {"A", "B", "C", "D"}),
      make_layout({3, 3}, {"A", "B"}),
      make_layout({2, 3}, {"A", "B"}),
      make_layout({3, 3, 3}, {"A", "B", "C"}),
      make_layout({3, 2, 3}, {"A", "B", "C"}),
  };
  detail::DeterministicBits bits(seed);
  std::vector<DensityOperator> states;
  states.reserve(count);

  while (states.size() < count) {
    const std::size_t which = states.size() % 8;
    const SubsystemLayout& layout = layouts[states.size() % layouts.size()];
    const std::size_t n = layout.total_dimension();
    switch (which) {
      case 0: {  // basis projector
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        const int k = bits.below(static_cast<int>(n));
        m(k, k) = 1.0;
        states.push_back(make_density_operator(layout, std::move(m)));
        break;
      }
      case 1: {  // maximally mixed
        states.push_back(make_density_operator(
            layout, ComplexMatrix::Identity(n, n) / static_cast<double>(n)));
        break;
      }
      case 2: {  // pseudo-random pure projector
        const ComplexVector v = detail::pseudo_random_unit_vector(bits, n);
        states.push_back(make_density_operator(layout, v * v.adjoint()));
        break;
      }
      case 3: {  // rank-2 mixture of pseudo-random pure states
        const ComplexVector v = detail::pseudo_random_unit_vector(bits, n);
        const ComplexVector w = detail::pseudo_random_unit_vector(bits, n);
        const double p = 0.25 + 0.5 * bits.uniform();
        states.push_back(make_density_operator(
            layout, p * (v * v.adjoint()) + (1 - p) * (w * w.adjoint())));
        break;
      }
      case 4: {  // product of per-factor pure states
        ComplexVector v = ComplexVector::Ones(1);
        for (int d : layout.dims) {
          const ComplexVector f = detail::pseudo_random_unit_vector(
              bits, static_cast<std::size_t>(d));
          v = kron(v, f);
        }
        states.push_back(make_density_operator(layout, v * v.adjoint()));
        break;
      }
      case 5: {  // four-party construction or a maximally entangled projector
        if (layout.size() == 4) {
          states.push_back(smolin_state());
        } else if (layout.size() == 2 && layout.dims[0] == layout.dims[1]) {
          const int d = layout.dims[0];
          const StateVector b = generalized_bell_state(
              WeylLabel(d, bits.below(d), bits.below(d)), layout.labels);
          states.push_back(projector(b));
        } else {
          const ComplexVector v = detail::pseudo_random_unit_vector(bits, n);
          states.push_back(make_density_operator(layout, v * v.adjoint()));
        }
        break;
      }
      case 6: {  // reduction of a larger pseudo-random pure state
        const SubsystemLayout big = make_layout(
            {layout.dims[0], layout.dims[1], 2}, {"X", "Y", "Z"});
        const ComplexVector v = detail::pseudo_random_unit_vector(
            bits, big.total_dimension());
        const DensityOperator reduced =
            partial_trace(DensityOperator{big, v * v.adjoint()}, {"X", "Y"});
        states.push_back(make_density_operator(
            make_layout({layout.dims[0], layout.dims[1]},
                        {layout.labels[0], layout.labels[1]}),
            reduced.matrix));
        break;
      }
      default: {  // diagonal mixture with pseudo-random weights
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        double total = 0.0;
        std::vector<double> weights(n);
        for (std::size_t i = 0; i < n; ++i) {
          weights[i] = bits.uniform() + 0.05;
          total += weights[i];
        }
        for (std::size_t i = 0; i < n; ++i) m(i, i) = weights[i] / total;
        states.push_back(make_density_operator(layout, std::move(m)));
        break;
      }
    }
  }
  return states;
}

}  // namespace qube
