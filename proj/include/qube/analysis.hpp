#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qube/bell.hpp"
#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/smolin.hpp"
#include "qube/states.hpp"
#include "qube/tensor.hpp"

namespace qube {

inline constexpr double kPptTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-12;
inline constexpr double kExpansionTol = 1e-12;

// Spectrum of the partial transpose across a cut, with the positivity verdict.
struct PPTReport {
  Cut cut;
  double min_eigenvalue = 0.0;
  bool is_ppt = false;
  std::vector<double> eigenvalues;  // descending
  double tolerance = kPptTol;
};

inline PPTReport ppt_check(const DensityOperator& state, const Cut& cut,
                           double tol = kPptTol) {
  PPTReport report;
  report.cut = cut;
  report.tolerance = tol;
  report.eigenvalues = hermitian_eigenvalues(partial_transpose(state, cut));
  report.min_eigenvalue = report.eigenvalues.back();
  report.is_ppt = report.min_eigenvalue >= -tol;
  return report;
}

// Sum of |negative eigenvalues| of the partial transpose; zero iff PPT,
// strictly positive iff the state is entangled across the cut by this test.
inline double negativity(const DensityOperator& state, const Cut& cut) {
  double sum = 0.0;
  for (double v : hermitian_eigenvalues(partial_transpose(state, cut)))
    if (v < 0.0) sum -= v;
  return sum;
}

inline bool permutation_invariant(const DensityOperator& state,
                                  const PermutationMap& perm, double tol) {
  const DensityOperator image = permute_subsystems(state, perm);
  return frobenius_distance(state.matrix, image.matrix) <= tol;
}

// Mixes the (A,B)x(C,D) expansion vectors and the B<->C-interchanged
// (A,C)x(B,D) vectors uniformly and compares the two density operators.
// All sign differences between the two vector families cancel in the mixtures,
// which is what makes the state separable across both cuts at once.
inline bool expansion_equality_check(double tol = kExpansionTol) {
  ComplexMatrix paired = ComplexMatrix::Zero(16, 16);
  ComplexMatrix interchanged = ComplexMatrix::Zero(16, 16);
  for (const auto& v : expansion_vectors_ab_cd())
    paired += 0.25 * (v.amplitudes * v.amplitudes.adjoint());
  for (const auto& v : expansion_vectors_ac_bd())
    interchanged += 0.25 * (v.amplitudes * v.amplitudes.adjoint());
  return frobenius_distance(paired, interchanged) <= tol;
}

// An explicit mixture of product states across one cut.
struct SeparableEnsemble {
  struct Term {
    double weight;
    StateVector left;
    StateVector right;
  };
  Cut cut;
  std::vector<Term> terms;
};

namespace detail {

// Canonical pairing for each supported cut of the four-party state: the same
// Bell state placed on the cut's two pairs reproduces the state once the
// factors are reordered back to A,B,C,D.
inline bool cut_matches(const Cut& cut, const std::string& first_pair,
                        const std::string& second_pair) {
  auto side_is = [](const std::vector<std::string>& side, const std::string& pair) {
    if (side.size() != 2) return false;
    return (side[0] + side[1] == pair) || (side[1] + side[0] == pair);
  };
  return (side_is(cut.left, first_pair) && side_is(cut.right, second_pair)) ||
         (side_is(cut.left, second_pair) && side_is(cut.right, first_pair));
}

}  // namespace detail

// An explicit separable decomposition for one of the three two-against-two
// cuts: four equally weighted Bell x Bell products on the cut's pairs.  Any
// other cut raises unsupported_cut_error: no separability claim is made there.
inline SeparableEnsemble separable_ensemble_for_cut(const Cut& cut) {
  validate_cut(cut, make_layout({2, 2, 2, 2}, four_party_labels()));
  std::vector<std::string> left_pair, right_pair;
  if (detail::cut_matches(cut, "AB", "CD")) {
    left_pair = {"A", "B"};
    right_pair = {"C", "D"};
  } else if (detail::cut_matches(cut, "AC", "BD")) {
    left_pair = {"A", "C"};
    right_pair = {"B", "D"};
  } else if (detail::cut_matches(cut, "AD", "BC")) {
    left_pair = {"A", "D"};
    right_pair = {"B", "C"};
  } else {
    throw unsupported_cut_error(
        "separable ensemble: no decomposition is provided for cut " +
        cut.name());
  }
  SeparableEnsemble ensemble;
  ensemble.cut = Cut{left_pair, right_pair};
  for (BellKind kind : kAllBellKinds)
    ensemble.terms.push_back({0.25, bell_state(kind, left_pair),
                              bell_state(kind, right_pair)});
  return ensemble;
}

inline double ensemble_weight_sum(const SeparableEnsemble& ensemble) {
  double sum = 0.0;
  for (const auto& term : ensemble.terms) sum += term.weight;
  return sum;
}

// Mixture of the ensemble's product projectors, expressed on the target
// layout's factor order.
inline DensityOperator reconstruct(const SeparableEnsemble& ensemble,
                                   const SubsystemLayout& target_layout) {
  std::vector<std::string> build_order = ensemble.cut.left;
  build_order.insert(build_order.end(), ensemble.cut.right.begin(),
                     ensemble.cut.right.end());
  std::vector<int> build_dims;
  for (const auto& l : build_order)
    build_dims.push_back(target_layout.dim_of(l));
  const SubsystemLayout build_layout = make_layout(build_dims, build_order);

  ComplexMatrix sum = ComplexMatrix::Zero(target_layout.total_dimension(),
                                          target_layout.total_dimension());
  for (const auto& term : ensemble.terms) {
    const StateVector product{
        build_layout, kron(term.left.amplitudes, term.right.amplitudes)};
    const StateVector aligned = reorder_to(product, target_layout.labels);
    sum += term.weight * (aligned.amplitudes * aligned.amplitudes.adjoint());
  }
  return make_density_operator(target_layout, std::move(sum));
}

}  // namespace qube
