#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qube/layout.hpp"
#include "qube/linalg.hpp"

namespace qube {

// Default tolerances for the structural invariants of the state types.
inline constexpr double kNormalizationTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

// A normalized pure state over a subsystem layout.
struct StateVector {
  SubsystemLayout layout;
  ComplexVector amplitudes;
};

// A Hermitian, unit-trace, positive-semidefinite operator over a layout.
struct DensityOperator {
  SubsystemLayout layout;
  ComplexMatrix matrix;
};

inline void require_normalized(const StateVector& state,
                               double tol = kNormalizationTol) {
  if (static_cast<std::size_t>(state.amplitudes.size()) !=
      state.layout.total_dimension())
    throw argument_error("state vector: amplitude count does not match layout");
  if (std::abs(state.amplitudes.norm() - 1.0) > tol)
    throw argument_error("state vector: not normalized");
}

// Validates the full DensityOperator contract.  The positivity check costs an
// eigensolve, so callers on hot paths may pass check_psd = false when
// positivity is guaranteed by construction.
inline void require_density(const DensityOperator& state,
                            double hermiticity_tol = kHermiticityTol,
                            double trace_tol = kTraceTol,
                            double psd_tol = kPsdTol, bool check_psd = true) {
  const std::size_t n = state.layout.total_dimension();
  if (static_cast<std::size_t>(state.matrix.rows()) != n ||
      static_cast<std::size_t>(state.matrix.cols()) != n)
    throw argument_error("density operator: matrix does not match layout");
  if (hermiticity_deviation(state.matrix) > hermiticity_tol)
    throw argument_error("density operator: not Hermitian");
  if (std::abs(state.matrix.trace().real() - 1.0) > trace_tol ||
      std::abs(state.matrix.trace().imag()) > trace_tol)
    throw argument_error("density operator: trace is not 1");
  if (check_psd && min_hermitian_eigenvalue(state.matrix) < -psd_tol)
    throw argument_error("density operator: negative eigenvalue beyond tolerance");
}

// Checked constructors.  Every state the library hands out funnels through
// these, so downstream code can rely on the invariants.
inline StateVector make_state_vector(SubsystemLayout layout,
                                     ComplexVector amplitudes) {
  StateVector state{std::move(layout), std::move(amplitudes)};
  require_normalized(state);
  return state;
}

inline DensityOperator make_density_operator(SubsystemLayout layout,
                                             ComplexMatrix matrix,
                                             bool check_psd = true) {
  DensityOperator state{std::move(layout), std::move(matrix)};
  require_density(state, kHermiticityTol, kTraceTol, kPsdTol, check_psd);
  return state;
}

inline DensityOperator projector(const StateVector& state) {
  require_normalized(state);
  return DensityOperator{state.layout,
                         state.amplitudes * state.amplitudes.adjoint()};
}

// Same amplitudes, new labels (dimension structure must be unchanged).
inline StateVector with_labels(const StateVector& state,
                               std::vector<std::string> labels) {
  return StateVector{make_layout(state.layout.dims, std::move(labels)),
                     state.amplitudes};
}

inline DensityOperator with_labels(const DensityOperator& state,
                                   std::vector<std::string> labels) {
  return DensityOperator{make_layout(state.layout.dims, std::move(labels)),
                         state.matrix};
}

// <target| rho |target>.  Layouts must agree (dimensions and labels).
inline double fidelity_pure(const DensityOperator& state,
                            const StateVector& target) {
  if (!(state.layout == target.layout))
    throw argument_error("fidelity_pure: layouts do not match");
  const complex_t value =
      (target.amplitudes.adjoint() * state.matrix * target.amplitudes)(0, 0);
  return value.real();
}

}  // namespace qube
