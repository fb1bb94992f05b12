#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qube/bell.hpp"
#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/smolin.hpp"
#include "qube/states.hpp"
#include "qube/tensor.hpp"
#include "qube/weyl.hpp"

namespace qube {

inline constexpr double kBranchProbabilityFloor = 1e-12;
inline constexpr double kFidelityTol = 1e-9;
inline constexpr double kEquivalenceTol = 1e-10;

// A named participant in a protocol run.
struct PartyId {
  std::string name;
  bool operator==(const PartyId& other) const { return name == other.name; }
  bool operator<(const PartyId& other) const { return name < other.name; }
};

// Who owns which register.  Every register of the active layout must be
// owned by exactly one party.
struct RegisterAssignment {
  std::map<std::string, std::string> owner;  // register label -> party name
};

inline void validate_assignment(const RegisterAssignment& assignment,
                                const SubsystemLayout& layout) {
  if (assignment.owner.size() != layout.size())
    throw argument_error("assignment: must cover every register exactly once");
  for (const auto& label : layout.labels)
    if (!assignment.owner.count(label))
      throw argument_error("assignment: register '" + label + "' has no owner");
}

// Registers owned by a party, in layout order.
inline std::vector<std::string> registers_of(const RegisterAssignment& assignment,
                                             const SubsystemLayout& layout,
                                             const PartyId& party) {
  std::vector<std::string> regs;
  for (const auto& label : layout.labels) {
    auto it = assignment.owner.find(label);
    if (it != assignment.owner.end() && it->second == party.name)
      regs.push_back(label);
  }
  return regs;
}

inline RegisterAssignment four_party_assignment() {
  RegisterAssignment assignment;
  for (const auto& label : four_party_labels()) assignment.owner[label] = label;
  return assignment;
}

// Outcome of a measurement in the generalized Bell basis: the label (a, b)
// of the observed basis vector, plus its correction-set index when d = 2.
struct OutcomeLabel {
  int d;
  int a;
  int b;
  std::optional<int> sigma;

  static OutcomeLabel from_weyl(const WeylLabel& label) {
    OutcomeLabel out{label.d, label.a, label.b, std::nullopt};
    if (label.d == 2) out.sigma = sigma_for_weyl(label).value;
    return out;
  }

  WeylLabel weyl() const { return WeylLabel(d, a, b); }

  std::string text() const {
    std::string out = "(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
    if (sigma) out += " sigma=" + std::to_string(*sigma);
    return out;
  }
};

// A correcting unitary, described by its shift/clock decomposition X^a Z^b,
// with the correction-set index alongside when d = 2.  Distinct from
// OutcomeLabel because a two-qubit Bell state and the rotation that repairs
// it decompose differently.
struct OperatorLabel {
  int d;
  int a;
  int b;
  std::optional<int> sigma;

  static OperatorLabel from_sigma(SigmaIndex index) {
    const WeylLabel w = operator_weyl_for_sigma(index);
    return OperatorLabel{w.d, w.a, w.b, index.value};
  }

  static OperatorLabel from_weyl(const WeylLabel& label) {
    return OperatorLabel{label.d, label.a, label.b, std::nullopt};
  }

  WeylLabel weyl() const { return WeylLabel(d, a, b); }

  std::string text() const {
    if (sigma) return "sigma_" + std::to_string(*sigma);
    return "W(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
  }
};

// One outcome of a projective measurement.  Zero-probability branches are
// kept (the branch count is always d^2) but carry no post-state.
struct MeasurementBranch {
  OutcomeLabel outcome;
  double probability = 0.0;
  std::optional<DensityOperator> post_state;
};

// Projective measurement of two equal-dimension registers in the generalized
// Bell basis, acting as the identity on every other register.  Branches are
// enumerated in lexicographic (a, b) order.
inline std::vector<MeasurementBranch> bell_basis_measurement(
    const DensityOperator& state,
    const std::pair<std::string, std::string>& registers, int d) {
  const SubsystemLayout& layout = state.layout;
  const std::size_t s1 = layout.slot_of(registers.first);
  const std::size_t s2 = layout.slot_of(registers.second);
  if (s1 == s2)
    throw argument_error("measurement: registers must be distinct");
  if (layout.dims[s1] != d || layout.dims[s2] != d)
    throw argument_error("measurement: registers must both have dimension " +
                         std::to_string(d));

  // Split each composite index into (measured-pair index, rest index).
  const std::size_t total = layout.total_dimension();
  const std::size_t rest_total = total / (static_cast<std::size_t>(d) * d);
  std::vector<std::size_t> pair_part(total), rest_part(total);
  std::vector<int> rest_dims;
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (i != s1 && i != s2) rest_dims.push_back(layout.dims[i]);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto digits = digits_of(idx, layout.dims);
    pair_part[idx] =
        static_cast<std::size_t>(digits[s1]) * d + static_cast<std::size_t>(digits[s2]);
    std::vector<int> rest;
    rest.reserve(rest_dims.size());
    for (std::size_t i = 0; i < layout.size(); ++i)
      if (i != s1 && i != s2) rest.push_back(digits[i]);
    rest_part[idx] = rest.empty() ? 0 : index_of_digits(rest, rest_dims);
  }

  std::vector<MeasurementBranch> branches;
  branches.reserve(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const WeylLabel label(d, a, b);
      const ComplexVector beta = generalized_bell_state(label).amplitudes;

      // M[kr, kc] = <beta, kr| rho |beta, kc> contracted over the measured pair.
      ComplexMatrix contracted = ComplexMatrix::Zero(rest_total, rest_total);
      for (std::size_t r = 0; r < total; ++r) {
        if (beta(pair_part[r]) == complex_t(0.0)) continue;
        for (std::size_t c = 0; c < total; ++c) {
          if (beta(pair_part[c]) == complex_t(0.0)) continue;
          contracted(rest_part[r], rest_part[c]) += std::conj(beta(pair_part[r])) *
                                                    state.matrix(r, c) *
                                                    beta(pair_part[c]);
        }
      }
      const double probability = contracted.trace().real();

      MeasurementBranch branch;
      branch.outcome = OutcomeLabel::from_weyl(label);
      branch.probability = probability;
      if (probability > kBranchProbabilityFloor) {
        // Post state (Pi rho Pi) / p = |beta><beta| (x) M / p on the original
        // factor order.
        ComplexMatrix post(total, total);
        for (std::size_t r = 0; r < total; ++r)
          for (std::size_t c = 0; c < total; ++c)
            post(r, c) = beta(pair_part[r]) * std::conj(beta(pair_part[c])) *
                         contracted(rest_part[r], rest_part[c]) / probability;
        branch.post_state =
            make_density_operator(layout, hermitize(post));
      }
      branches.push_back(std::move(branch));
    }
  return branches;
}

// U rho U^dagger with U drawn from the correction set (d = 2) acting on one
// register.
inline DensityOperator apply_correction(const DensityOperator& state,
                                        const std::string& register_label,
                                        SigmaIndex index) {
  if (state.layout.dim_of(register_label) != 2)
    throw argument_error("correction: register '" + register_label +
                         "' is not a qubit");
  return apply_single_register_unitary(state, register_label,
                                       pauli_sigma(index));
}

// Same with a Heisenberg-Weyl unitary in local dimension d.
inline DensityOperator apply_correction(const DensityOperator& state,
                                        const std::string& register_label,
                                        const WeylLabel& label) {
  if (state.layout.dim_of(register_label) != label.d)
    throw argument_error("correction: register '" + register_label +
                         "' does not have dimension " + std::to_string(label.d));
  return apply_single_register_unitary(state, register_label,
                                       heisenberg_weyl(label));
}

// Protocol transcript events.
struct MeasurementEvent {
  std::vector<std::string> parties;
  std::vector<std::string> registers;
  OutcomeLabel outcome;
  double probability = 0.0;  // conditional on the preceding events
};

struct MessageEvent {
  std::string sender;
  std::vector<std::string> receivers;
  std::string payload;
};

struct CorrectionEvent {
  std::string party;
  std::string register_label;
  OperatorLabel label;
};

using TranscriptStep = std::variant<MeasurementEvent, MessageEvent, CorrectionEvent>;

// Ordered record of one protocol branch.  final_state is the reduced state
// on the target registers after every correction; certified_fidelity is
// recomputable from it.  Zero-probability branches carry no final state.
struct Transcript {
  std::vector<TranscriptStep> steps;
  std::vector<std::string> target_registers;
  StateVector target;
  std::optional<DensityOperator> final_state;
  double probability = 0.0;
  double certified_fidelity = 0.0;
  std::vector<std::string> notes;
};

// Probability-weighted mean of the certified fidelities.
inline double mean_certified_fidelity(const std::vector<Transcript>& branches) {
  double weight = 0.0, sum = 0.0;
  for (const auto& t : branches) {
    weight += t.probability;
    sum += t.probability * t.certified_fidelity;
  }
  return weight > 0.0 ? sum / weight : 0.0;
}

namespace detail {

// Merged-register slot patterns for which a single correcting operator exists
// at local dimension >= 3 under the conjugate-label pairing.  Measuring one
// of the two "diagonal" pairs leaves the remaining registers in a mixture of
// differently labeled maximally entangled states, which no fixed local
// unitary aligns.
inline bool qudit_mergeable(std::size_t slot1, std::size_t slot2) {
  const auto lo = std::min(slot1, slot2);
  const auto hi = std::max(slot1, slot2);
  return (lo == 0 && hi == 1) || (lo == 2 && hi == 3) ||
         (lo == 0 && hi == 2) || (lo == 1 && hi == 3);
}

}  // namespace detail

// The unlocking protocol: the two merged parties measure their registers in
// the (generalized) Bell basis, broadcast the outcome, and one remaining
// party applies the correcting rotation, leaving the remaining pair in the
// target state on every branch.  Returns one transcript per branch.
inline std::vector<Transcript> unlock(
    const DensityOperator& state, std::pair<PartyId, PartyId> merged,
    const RegisterAssignment& assignment,
    std::optional<PartyId> correction_party = std::nullopt) {
  validate_assignment(assignment, state.layout);
  if (merged.first == merged.second)
    throw argument_error("unlock: merged pair must be two distinct parties");
  if (merged.second < merged.first) std::swap(merged.first, merged.second);

  std::set<std::string> party_names;
  for (const auto& [reg, party] : assignment.owner) party_names.insert(party);
  if (party_names.size() != 4)
    throw argument_error("unlock: expected exactly four parties");
  for (const auto& p : {merged.first, merged.second})
    if (!party_names.count(p.name))
      throw argument_error("unlock: unknown party '" + p.name + "'");

  std::vector<PartyId> remaining;
  for (const auto& name : party_names)
    if (name != merged.first.name && name != merged.second.name)
      remaining.push_back(PartyId{name});

  const auto merged_regs_1 = registers_of(assignment, state.layout, merged.first);
  const auto merged_regs_2 = registers_of(assignment, state.layout, merged.second);
  if (merged_regs_1.size() != 1 || merged_regs_2.size() != 1)
    throw argument_error("unlock: each merged party must own exactly one register");
  const std::string meas_reg_1 = merged_regs_1.front();
  const std::string meas_reg_2 = merged_regs_2.front();

  std::map<std::string, std::string> register_of_party;  // party -> register
  for (const auto& p : remaining) {
    const auto regs = registers_of(assignment, state.layout, p);
    if (regs.size() != 1)
      throw argument_error("unlock: each remaining party must own exactly one register");
    register_of_party[p.name] = regs.front();
  }

  PartyId corrector = correction_party.value_or(remaining.front());
  if (std::find(remaining.begin(), remaining.end(), corrector) == remaining.end())
    throw argument_error("unlock: correction party '" + corrector.name +
                         "' is not one of the remaining parties");

  const int d = state.layout.dim_of(meas_reg_1);
  if (state.layout.dim_of(meas_reg_2) != d)
    throw argument_error("unlock: merged registers have different dimensions");
  if (d >= 3 &&
      !detail::qudit_mergeable(state.layout.slot_of(meas_reg_1),
                               state.layout.slot_of(meas_reg_2))) {
    throw argument_error(
        "unlock: merged pair (" + merged.first.name + "," + merged.second.name +
        ") is not supported for local dimension >= 3: measuring this register "
        "pair leaves the remaining pair in a label mixture that no single "
        "correcting operator aligns");
  }

  // Remaining registers in layout order define the target pair.
  std::vector<std::string> kept;
  for (const auto& label : state.layout.labels)
    if (label != meas_reg_1 && label != meas_reg_2) kept.push_back(label);
  const std::string correction_register = register_of_party[corrector.name];
  const bool corrects_first_kept = (correction_register == kept.front());

  const StateVector target = d == 2
                                 ? bell_state(BellKind::PsiMinus, kept)
                                 : canonical_max_entangled(d, kept);

  std::vector<Transcript> transcripts;
  const std::string merged_lab = merged.first.name + "+" + merged.second.name;
  std::vector<std::string> remaining_names;
  for (const auto& p : remaining) remaining_names.push_back(p.name);

  for (const auto& branch :
       bell_basis_measurement(state, {meas_reg_1, meas_reg_2}, d)) {
    Transcript t;
    t.target_registers = kept;
    t.target = target;
    t.probability = branch.probability;
    t.steps.push_back(MeasurementEvent{{merged.first.name, merged.second.name},
                                       {meas_reg_1, meas_reg_2},
                                       branch.outcome,
                                       branch.probability});
    t.steps.push_back(
        MessageEvent{merged_lab, remaining_names, branch.outcome.text()});

    // The measured label fixes the correction: outcome j repairs with
    // sigma_j for qubits; for qudits the remaining pair is left carrying the
    // outcome's label, which the matching shift/clock rotation removes (its
    // shift component flips sign when the correction acts on the second
    // remaining register).
    const OperatorLabel correction_label =
        d == 2 ? OperatorLabel::from_sigma(SigmaIndex(*branch.outcome.sigma))
               : OperatorLabel::from_weyl(
                     WeylLabel(d,
                               corrects_first_kept
                                   ? branch.outcome.a
                                   : (d - branch.outcome.a) % d,
                               branch.outcome.b));
    t.steps.push_back(
        CorrectionEvent{corrector.name, correction_register, correction_label});

    if (branch.post_state) {
      DensityOperator reduced = partial_trace(
          *branch.post_state, std::set<std::string>(kept.begin(), kept.end()));
      DensityOperator corrected =
          d == 2 ? apply_correction(reduced, correction_register,
                                    SigmaIndex(*correction_label.sigma))
                 : apply_correction(reduced, correction_register,
                                    correction_label.weyl());
      t.certified_fidelity = fidelity_pure(corrected, target);
      t.final_state = std::move(corrected);
    } else {
      t.notes.push_back("zero-probability branch: no post-state");
    }
    if (d >= 3)
      t.notes.push_back(
          "target is the canonical maximally entangled vector; the two-qubit "
          "convention targets Psi-, which differs by a fixed local rotation");
    transcripts.push_back(std::move(t));
  }
  return transcripts;
}

// The teleportation reading of the unlocking step: the sender holds an input
// qubit and one half of the resource pair (the standard two-qubit target
// pre-rotated by sigma_resource); a Bell measurement on the sender's two
// registers plus a correction at the receiver delivers the input on every
// branch.  The correction label composes the resource label with the
// measurement outcome; with the plain resource (label 0) it is the outcome
// itself.
inline std::vector<Transcript> teleport_view(const StateVector& input_qubit,
                                             SigmaIndex resource_label) {
  require_normalized(input_qubit);
  if (input_qubit.layout.dims != std::vector<int>{2})
    throw argument_error("teleport: input must be a single qubit");

  const SubsystemLayout layout = make_layout({2, 2, 2}, {"M", "R1", "R2"});
  const ComplexMatrix rot = pauli_sigma(resource_label);
  ComplexVector resource = bell_state(BellKind::PsiMinus).amplitudes;
  // Pre-rotate the sender-held half of the resource pair.
  resource = kron(rot, ComplexMatrix::Identity(2, 2)) * resource;
  const ComplexVector joint = kron(input_qubit.amplitudes, resource);
  const DensityOperator initial{layout, joint * joint.adjoint()};

  const StateVector target = with_labels(input_qubit, {"R2"});

  std::vector<Transcript> transcripts;
  for (const auto& branch : bell_basis_measurement(initial, {"M", "R1"}, 2)) {
    Transcript t;
    t.target_registers = {"R2"};
    t.target = target;
    t.probability = branch.probability;
    t.steps.push_back(MeasurementEvent{
        {"B"}, {"M", "R1"}, branch.outcome, branch.probability});
    t.steps.push_back(MessageEvent{"B", {"C"}, branch.outcome.text()});
    const SigmaIndex correction =
        compose(resource_label, SigmaIndex(*branch.outcome.sigma));
    t.steps.push_back(
        CorrectionEvent{"C", "R2", OperatorLabel::from_sigma(correction)});
    if (resource_label.value != 0)
      t.notes.push_back(
          "correction label composes the resource label with the outcome");

    if (branch.post_state) {
      DensityOperator reduced = partial_trace(*branch.post_state, {"R2"});
      DensityOperator corrected = apply_correction(reduced, "R2", correction);
      t.certified_fidelity = fidelity_pure(corrected, target);
      t.final_state = std::move(corrected);
    } else {
      t.notes.push_back("zero-probability branch: no post-state");
    }
    transcripts.push_back(std::move(t));
  }
  return transcripts;
}

// Checks that the two readings of unlocking by the merged pair (B, D) agree:
// measuring the four-party state directly, versus teleporting B's half of the
// shared pair to C through the matching (C, D) pair, for every component
// label.  Outcome distributions and corrected final states must match within
// the tolerance on every branch.
inline bool equivalence_check(double tol = kEquivalenceTol) {
  const auto unlock_branches =
      unlock(smolin_state(), {PartyId{"B"}, PartyId{"D"}},
             four_party_assignment(), PartyId{"C"});

  const SubsystemLayout layout = make_layout({2, 2, 2, 2}, four_party_labels());
  for (BellKind kind : kAllBellKinds) {
    // Component: the same Bell state on (A,B) and on (C,D).  Its B-half is
    // teleported to C through the (C,D) pair by the Bell measurement on (B,D).
    const ComplexVector pair = bell_state(kind).amplitudes;
    const ComplexVector joint = kron(pair, pair);
    const DensityOperator component{layout, joint * joint.adjoint()};
    const SigmaIndex resource = sigma_for_bell_kind(kind);

    const auto branches = bell_basis_measurement(component, {"B", "D"}, 2);
    for (std::size_t j = 0; j < branches.size(); ++j) {
      if (std::abs(branches[j].probability - unlock_branches[j].probability) >
          tol)
        return false;
      if (!branches[j].post_state || !unlock_branches[j].final_state)
        return false;
      DensityOperator reduced =
          partial_trace(*branches[j].post_state, {"A", "C"});
      // The component's two resource-label rotations meet inside the Bell
      // measurement and cancel, so the plain outcome correction suffices.
      DensityOperator corrected = apply_correction(
          reduced, "C", SigmaIndex(*branches[j].outcome.sigma));
      if (frobenius_distance(corrected.matrix,
                             unlock_branches[j].final_state->matrix) > tol)
        return false;
    }
  }
  return true;
}

// Which classical message is withheld from the final correction, if any.
enum class MessageAblation { None, DropA, DropB, DropC };

inline std::string to_string(MessageAblation ablation) {
  switch (ablation) {
    case MessageAblation::None: return "none";
    case MessageAblation::DropA: return "drop-A";
    case MessageAblation::DropB: return "drop-B";
    case MessageAblation::DropC: return "drop-C";
  }
  throw argument_error("ablation: invalid value");
}

// Two copies of the four-party state, the second sharing its last register
// with a fifth party: A, B and C each measure their own register pair in the
// Bell basis and broadcast; E composes the three outcome labels into one
// correction.  All 64 branches end with D and E sharing the two-qubit target.
// An ablation withholds one message from E's correction rule; the protocol
// then fails, which is what makes all three messages load-bearing.
inline std::vector<Transcript> superadditivity_protocol(
    MessageAblation ablation = MessageAblation::None) {
  const std::vector<std::string> labels = {"A1", "B1", "C1", "D",
                                           "A2", "B2", "C2", "E"};
  const DensityOperator copy = smolin_state();
  const SubsystemLayout layout = make_layout(std::vector<int>(8, 2), labels);
  const DensityOperator joint{layout, kron(copy.matrix, copy.matrix)};

  const StateVector target = bell_state(BellKind::PsiMinus, {"D", "E"});

  std::vector<Transcript> transcripts;
  for (const auto& branch_a : bell_basis_measurement(joint, {"A1", "A2"}, 2)) {
    if (!branch_a.post_state) continue;
    for (const auto& branch_b :
         bell_basis_measurement(*branch_a.post_state, {"B1", "B2"}, 2)) {
      if (!branch_b.post_state) continue;
      for (const auto& branch_c :
           bell_basis_measurement(*branch_b.post_state, {"C1", "C2"}, 2)) {
        Transcript t;
        t.target_registers = {"D", "E"};
        t.target = target;
        t.probability = branch_a.probability * branch_b.probability *
                        branch_c.probability;
        t.steps.push_back(MeasurementEvent{
            {"A"}, {"A1", "A2"}, branch_a.outcome, branch_a.probability});
        t.steps.push_back(MeasurementEvent{
            {"B"}, {"B1", "B2"}, branch_b.outcome, branch_b.probability});
        t.steps.push_back(MeasurementEvent{
            {"C"}, {"C1", "C2"}, branch_c.outcome, branch_c.probability});

        SigmaIndex correction(0);
        if (ablation != MessageAblation::DropA) {
          t.steps.push_back(
              MessageEvent{"A", {"E"}, branch_a.outcome.text()});
          correction = compose(correction, SigmaIndex(*branch_a.outcome.sigma));
        }
        if (ablation != MessageAblation::DropB) {
          t.steps.push_back(
              MessageEvent{"B", {"E"}, branch_b.outcome.text()});
          correction = compose(correction, SigmaIndex(*branch_b.outcome.sigma));
        }
        if (ablation != MessageAblation::DropC) {
          t.steps.push_back(
              MessageEvent{"C", {"E"}, branch_c.outcome.text()});
          correction = compose(correction, SigmaIndex(*branch_c.outcome.sigma));
        }
        t.steps.push_back(
            CorrectionEvent{"E", "E", OperatorLabel::from_sigma(correction)});
        if (ablation != MessageAblation::None)
          t.notes.push_back("ablation " + to_string(ablation) +
                            ": correction omits one outcome");

        if (branch_c.post_state) {
          DensityOperator reduced =
              partial_trace(*branch_c.post_state, {"D", "E"});
          DensityOperator corrected =
              apply_correction(reduced, "E", correction);
          t.certified_fidelity = fidelity_pure(corrected, target);
          t.final_state = std::move(corrected);
        } else {
          t.notes.push_back("zero-probability branch: no post-state");
        }
        transcripts.push_back(std::move(t));
      }
    }
  }
  return transcripts;
}

}  // namespace qube
