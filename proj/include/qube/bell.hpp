#pragma once

#include <array>
#include <numbers>
#include <string>

#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/states.hpp"

namespace qube {

// The four maximally entangled two-qubit states.
enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {
    BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
    BellKind::PsiMinus};

inline std::string to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus: return "Phi+";
    case BellKind::PhiMinus: return "Phi-";
    case BellKind::PsiPlus: return "Psi+";
    case BellKind::PsiMinus: return "Psi-";
  }
  throw argument_error("bell kind: invalid value");
}

// Index into the correction set: sigma_0 = identity, sigma_1 = diag(1,-1),
// sigma_2 = [[0,-1],[1,0]], sigma_3 = [[0,1],[1,0]].  Each sigma_i maps its
// partner Bell state onto Psi- (up to phase), from either side of the pair.
struct SigmaIndex {
  int value;
  explicit SigmaIndex(int v) : value(v) {
    if (v < 0 || v > 3)
      throw argument_error("sigma index: must be in {0,1,2,3}");
  }
  bool operator==(const SigmaIndex& other) const { return value == other.value; }
};

inline ComplexMatrix pauli_sigma(SigmaIndex index) {
  ComplexMatrix m(2, 2);
  switch (index.value) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 1, 0, 0, -1; break;
    case 2: m << 0, -1, 1, 0; break;
    case 3: m << 0, 1, 1, 0; break;
  }
  return m;
}

// sigma_a sigma_b is proportional to sigma_{compose(a,b)}: the labels form
// the Klein four-group (each element self-inverse).  The table is exercised
// entrywise by the test suite.
inline SigmaIndex compose(SigmaIndex a, SigmaIndex b) {
  return SigmaIndex(a.value ^ b.value);
}

// The Bell state each sigma maps onto Psi-.
inline BellKind bell_kind_for_sigma(SigmaIndex index) {
  switch (index.value) {
    case 0: return BellKind::PsiMinus;
    case 1: return BellKind::PsiPlus;
    case 2: return BellKind::PhiPlus;
    default: return BellKind::PhiMinus;
  }
}

inline SigmaIndex sigma_for_bell_kind(BellKind kind) {
  switch (kind) {
    case BellKind::PsiMinus: return SigmaIndex(0);
    case BellKind::PsiPlus: return SigmaIndex(1);
    case BellKind::PhiPlus: return SigmaIndex(2);
    case BellKind::PhiMinus: return SigmaIndex(3);
  }
  throw argument_error("bell kind: invalid value");
}

// Basis convention: index 0 is the "up" basis state.  Phi+- = (|00> +- |11>)/sqrt(2),
// Psi+- = (|01> +- |10>)/sqrt(2).
inline StateVector bell_state(BellKind kind,
                              std::vector<std::string> labels = {"L", "R"}) {
  const double s = 1.0 / std::numbers::sqrt2;
  ComplexVector amplitudes = ComplexVector::Zero(4);
  switch (kind) {
    case BellKind::PhiPlus: amplitudes(0) = s; amplitudes(3) = s; break;
    case BellKind::PhiMinus: amplitudes(0) = s; amplitudes(3) = -s; break;
    case BellKind::PsiPlus: amplitudes(1) = s; amplitudes(2) = s; break;
    case BellKind::PsiMinus: amplitudes(1) = s; amplitudes(2) = -s; break;
  }
  return make_state_vector(make_layout({2, 2}, std::move(labels)),
                           std::move(amplitudes));
}

}  // namespace qube
