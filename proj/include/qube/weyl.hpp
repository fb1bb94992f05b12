#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qube/bell.hpp"
#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/states.hpp"

namespace qube {

// Label (a, b) of the shift/clock unitary X^a Z^b in local dimension d.
struct WeylLabel {
  int d;
  int a;
  int b;
  WeylLabel(int d_, int a_, int b_) : d(d_), a(a_), b(b_) {
    if (d < 2) throw argument_error("weyl label: dimension must be >= 2");
    if (a < 0 || a >= d || b < 0 || b >= d)
      throw argument_error("weyl label: components must lie in [0, d)");
  }
  bool operator==(const WeylLabel& other) const {
    return d == other.d && a == other.a && b == other.b;
  }
};

// X^a Z^b with X|k> = |k+1 mod d> and Z|k> = omega^k |k>, omega = exp(2 pi i / d).
inline ComplexMatrix heisenberg_weyl(const WeylLabel& label) {
  const double theta = 2.0 * std::numbers::pi / label.d;
  ComplexMatrix m = ComplexMatrix::Zero(label.d, label.d);
  for (int k = 0; k < label.d; ++k) {
    const complex_t phase(std::cos(theta * label.b * k),
                          std::sin(theta * label.b * k));
    m((k + label.a) % label.d, k) = phase;
  }
  return m;
}

// (I (x) X^a Z^b) applied to the canonical maximally entangled vector
// sum_k |kk> / sqrt(d).  The d^2 outputs form an orthonormal basis of the
// bipartite space.
inline StateVector generalized_bell_state(
    const WeylLabel& label, std::vector<std::string> labels = {"L", "R"}) {
  const double theta = 2.0 * std::numbers::pi / label.d;
  const double s = 1.0 / std::sqrt(static_cast<double>(label.d));
  ComplexVector amplitudes =
      ComplexVector::Zero(static_cast<std::size_t>(label.d) * label.d);
  for (int k = 0; k < label.d; ++k) {
    const complex_t phase(std::cos(theta * label.b * k),
                          std::sin(theta * label.b * k));
    amplitudes(static_cast<std::size_t>(k) * label.d + (k + label.a) % label.d) =
        s * phase;
  }
  return make_state_vector(make_layout({label.d, label.d}, std::move(labels)),
                           std::move(amplitudes));
}

// The canonical maximally entangled vector sum_k |kk> / sqrt(d).
inline StateVector canonical_max_entangled(
    int d, std::vector<std::string> labels = {"L", "R"}) {
  return generalized_bell_state(WeylLabel(d, 0, 0), std::move(labels));
}

// For d = 2 the generalized Bell vectors coincide exactly (signs included)
// with the two-qubit Bell states under this pairing.
inline BellKind bell_kind_for_weyl(const WeylLabel& label) {
  if (label.d != 2)
    throw argument_error("bell kind: only defined for local dimension 2");
  if (label.a == 0) return label.b == 0 ? BellKind::PhiPlus : BellKind::PhiMinus;
  return label.b == 0 ? BellKind::PsiPlus : BellKind::PsiMinus;
}

inline WeylLabel weyl_for_bell_kind(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus: return WeylLabel(2, 0, 0);
    case BellKind::PhiMinus: return WeylLabel(2, 0, 1);
    case BellKind::PsiPlus: return WeylLabel(2, 1, 0);
    case BellKind::PsiMinus: return WeylLabel(2, 1, 1);
  }
  throw argument_error("bell kind: invalid value");
}

// Correction-set index of a d = 2 measurement outcome.
inline SigmaIndex sigma_for_weyl(const WeylLabel& label) {
  return sigma_for_bell_kind(bell_kind_for_weyl(label));
}

// The correction matrices as shift/clock products: sigma_0 = X^0 Z^0,
// sigma_1 = X^0 Z^1, sigma_2 = X^1 Z^1, sigma_3 = X^1 Z^0, each an exact
// entrywise equality at d = 2 (no phase left over).
inline WeylLabel operator_weyl_for_sigma(SigmaIndex index) {
  switch (index.value) {
    case 0: return WeylLabel(2, 0, 0);
    case 1: return WeylLabel(2, 0, 1);
    case 2: return WeylLabel(2, 1, 1);
    default: return WeylLabel(2, 1, 0);
  }
}

}  // namespace qube
