#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qube/analysis.hpp"
#include "qube/bell.hpp"
#include "qube/layout.hpp"
#include "qube/protocol.hpp"
#include "qube/report.hpp"
#include "qube/smolin.hpp"
#include "qube/states.hpp"
#include "qube/structured.hpp"
#include "qube/tensor.hpp"
#include "qube/weyl.hpp"

namespace qube {
namespace detail {

inline CheckRecord record(std::string name, std::string source,
                          std::vector<std::pair<std::string, double>> values,
                          bool pass, double tolerance) {
  return CheckRecord{std::move(name), std::move(source), std::move(values),
                     pass, tolerance};
}

inline const std::vector<Cut>& pair_cuts() {
  static const std::vector<Cut> cuts = {
      {{"A", "B"}, {"C", "D"}}, {{"A", "C"}, {"B", "D"}}, {{"A", "D"}, {"B", "C"}}};
  return cuts;
}

inline const std::vector<Cut>& single_party_cuts() {
  static const std::vector<Cut> cuts = {{{"A"}, {"B", "C", "D"}},
                                        {{"B"}, {"A", "C", "D"}},
                                        {{"C"}, {"A", "B", "D"}},
                                        {{"D"}, {"A", "B", "C"}}};
  return cuts;
}

}  // namespace detail

// Three two-against-two cuts must be PPT; the four one-against-three cuts
// must be NPT, with negativities reported.
inline std::vector<CheckRecord> cut_suite(const Tolerances& tol) {
  const DensityOperator rho = smolin_state();
  std::vector<CheckRecord> records;
  for (const auto& cut : detail::pair_cuts()) {
    const PPTReport report = ppt_check(rho, cut, tol.ppt);
    records.push_back(detail::record(
        "ppt " + cut.name(), "spectrum",
        {{"min_eigenvalue", report.min_eigenvalue},
         {"negativity", negativity(rho, cut)}},
        report.is_ppt, tol.ppt));
  }
  for (const auto& cut : detail::single_party_cuts()) {
    const PPTReport report = ppt_check(rho, cut, tol.ppt);
    records.push_back(detail::record(
        "npt " + cut.name(), "spectrum",
        {{"min_eigenvalue", report.min_eigenvalue},
         {"negativity", negativity(rho, cut)}},
        report.min_eigenvalue < -tol.npt, tol.npt));
  }
  return records;
}

// Explicit separable mixtures for the three supported cuts rebuild the state.
inline std::vector<CheckRecord> ensemble_suite(const Tolerances& tol) {
  const DensityOperator rho = smolin_state();
  std::vector<CheckRecord> records;
  for (const auto& cut : detail::pair_cuts()) {
    const SeparableEnsemble ensemble = separable_ensemble_for_cut(cut);
    const DensityOperator rebuilt = reconstruct(ensemble, rho.layout);
    const double error = frobenius_distance(rebuilt.matrix, rho.matrix);
    const double weight_sum = ensemble_weight_sum(ensemble);
    records.push_back(detail::record(
        "ensemble " + cut.name(), "construction",
        {{"terms", static_cast<double>(ensemble.terms.size())},
         {"weight_sum", weight_sum},
         {"reconstruction_error", error}},
        error <= tol.reconstruction &&
            std::abs(weight_sum - 1.0) <= tol.probability,
        tol.reconstruction));
  }
  return records;
}

// All 24 relabelings of the four parties leave the state unchanged; each one
// is checked and reported.
inline std::vector<CheckRecord> invariance_suite(const Tolerances& tol) {
  const DensityOperator rho = smolin_state();
  std::vector<std::string> images = rho.layout.labels;
  std::sort(images.begin(), images.end());
  std::vector<CheckRecord> records;
  do {
    PermutationMap perm;
    for (std::size_t i = 0; i < images.size(); ++i)
      perm.mapping[rho.layout.labels[i]] = images[i];
    const DensityOperator moved = permute_subsystems(rho, perm);
    const double distance = frobenius_distance(moved.matrix, rho.matrix);
    records.push_back(detail::record(
        "invariance ABCD->" + perm.image_string(rho.layout), "algebraic",
        {{"frobenius_distance", distance}}, distance <= tol.invariance,
        tol.invariance));
  } while (std::next_permutation(images.begin(), images.end()));
  return records;
}

// The two computational-basis expansions of the mixture (Bell pairs on
// (A,B)x(C,D) versus on (A,C)x(B,D)) produce the same density operator, and
// each reproduces the state itself.
inline std::vector<CheckRecord> expansion_suite(const Tolerances& tol) {
  std::vector<CheckRecord> records;
  double max_norm_dev = 0.0;
  for (const auto& v : expansion_vectors_ab_cd())
    max_norm_dev = std::max(max_norm_dev, std::abs(v.amplitudes.norm() - 1.0));
  for (const auto& v : expansion_vectors_ac_bd())
    max_norm_dev = std::max(max_norm_dev, std::abs(v.amplitudes.norm() - 1.0));
  records.push_back(detail::record("expansion vectors normalized",
                                   "construction",
                                   {{"max_norm_deviation", max_norm_dev}},
                                   max_norm_dev <= tol.hygiene, tol.hygiene));

  ComplexMatrix paired = ComplexMatrix::Zero(16, 16);
  ComplexMatrix interchanged = ComplexMatrix::Zero(16, 16);
  for (const auto& v : expansion_vectors_ab_cd())
    paired += 0.25 * (v.amplitudes * v.amplitudes.adjoint());
  for (const auto& v : expansion_vectors_ac_bd())
    interchanged += 0.25 * (v.amplitudes * v.amplitudes.adjoint());
  const double cross_distance = frobenius_distance(paired, interchanged);
  records.push_back(detail::record(
      "expansion mixtures equal", "algebraic",
      {{"frobenius_distance", cross_distance},
       {"equality_check", expansion_equality_check(tol.expansion) ? 1.0 : 0.0}},
      cross_distance <= tol.expansion &&
          expansion_equality_check(tol.expansion),
      tol.expansion));

  const double state_distance =
      frobenius_distance(paired, smolin_state().matrix);
  records.push_back(detail::record("expansion mixture matches state",
                                   "algebraic",
                                   {{"frobenius_distance", state_distance}},
                                   state_distance <= tol.expansion,
                                   tol.expansion));
  return records;
}

namespace detail {

struct BranchStats {
  double min_fidelity = 1.0;
  double max_fidelity_deviation = 0.0;
  double max_probability_deviation = 0.0;
  double probability_sum = 0.0;
  std::size_t branches = 0;
};

inline BranchStats branch_stats(const std::vector<Transcript>& transcripts,
                                double expected_probability) {
  BranchStats stats;
  for (const auto& t : transcripts) {
    stats.branches += 1;
    stats.probability_sum += t.probability;
    stats.min_fidelity = std::min(stats.min_fidelity, t.certified_fidelity);
    stats.max_fidelity_deviation = std::max(
        stats.max_fidelity_deviation, std::abs(t.certified_fidelity - 1.0));
    stats.max_probability_deviation =
        std::max(stats.max_probability_deviation,
                 std::abs(t.probability - expected_probability));
  }
  return stats;
}

}  // namespace detail

// Per-branch records for one unlocking run.
inline std::vector<CheckRecord> unlock_branch_records(
    const Tolerances& tol, const DensityOperator& state,
    std::pair<PartyId, PartyId> merged, const RegisterAssignment& assignment,
    std::optional<PartyId> correction_party = std::nullopt) {
  const auto transcripts = unlock(state, merged, assignment, correction_party);
  const double expected =
      1.0 / static_cast<double>(transcripts.size());
  std::vector<CheckRecord> records;
  const std::string prefix =
      "unlock merged=" + merged.first.name + merged.second.name;
  for (const auto& t : transcripts) {
    const auto& outcome =
        std::get<MeasurementEvent>(t.steps.front()).outcome;
    records.push_back(detail::record(
        prefix + " branch " + outcome.text(), "enumeration",
        {{"probability", t.probability},
         {"fidelity", t.certified_fidelity}},
        std::abs(t.certified_fidelity - 1.0) <= tol.fidelity &&
            std::abs(t.probability - expected) <= tol.probability,
        tol.fidelity));
  }
  const auto stats = detail::branch_stats(transcripts, expected);
  records.push_back(detail::record(
      prefix + " summary", "enumeration",
      {{"branches", static_cast<double>(stats.branches)},
       {"probability_sum", stats.probability_sum},
       {"min_fidelity", stats.min_fidelity},
       {"max_probability_deviation", stats.max_probability_deviation}},
      stats.max_fidelity_deviation <= tol.fidelity &&
          stats.max_probability_deviation <= tol.probability &&
          std::abs(stats.probability_sum - 1.0) <= tol.probability,
      tol.fidelity));
  return records;
}

// Every merged pair, with either remaining party applying the correction,
// unlocks the target pair on all four branches.
inline std::vector<CheckRecord> unlock_suite(const Tolerances& tol) {
  const DensityOperator rho = smolin_state();
  const RegisterAssignment assignment = four_party_assignment();
  const std::vector<std::string> parties = {"A", "B", "C", "D"};
  std::vector<CheckRecord> records;
  for (std::size_t i = 0; i < parties.size(); ++i)
    for (std::size_t j = i + 1; j < parties.size(); ++j) {
      std::vector<std::string> remaining;
      for (const auto& p : parties)
        if (p != parties[i] && p != parties[j]) remaining.push_back(p);
      for (const auto& corrector : remaining) {
        const auto transcripts =
            unlock(rho, {PartyId{parties[i]}, PartyId{parties[j]}}, assignment,
                   PartyId{corrector});
        const auto stats = detail::branch_stats(transcripts, 0.25);
        records.push_back(detail::record(
            "unlock merged=" + parties[i] + parties[j] +
                " correction=" + corrector,
            "enumeration",
            {{"branches", static_cast<double>(stats.branches)},
             {"min_fidelity", stats.min_fidelity},
             {"max_probability_deviation", stats.max_probability_deviation}},
            stats.max_fidelity_deviation <= tol.fidelity &&
                stats.max_probability_deviation <= tol.probability,
            tol.fidelity));
      }
    }
  return records;
}

// Deterministic single-qubit input grid covering the state space.
inline std::vector<StateVector> teleport_input_grid(int rows = 10,
                                                    int cols = 10) {
  std::vector<StateVector> inputs;
  inputs.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double theta = std::numbers::pi * (i + 0.5) / rows;
      const double phi = 2.0 * std::numbers::pi * j / cols;
      ComplexVector amplitudes(2);
      amplitudes(0) = std::cos(theta / 2.0);
      amplitudes(1) = complex_t(std::cos(phi), std::sin(phi)) *
                      std::sin(theta / 2.0);
      inputs.push_back(
          make_state_vector(make_layout({2}, {"q"}), std::move(amplitudes)));
    }
  return inputs;
}

// The teleportation reading: every resource label delivers every grid input
// on every branch, and the direct unlocking run agrees with the
// teleportation construction branch by branch.
inline std::vector<CheckRecord> teleport_suite(const Tolerances& tol) {
  std::vector<CheckRecord> records;
  const auto inputs = teleport_input_grid();
  for (int r = 0; r < 4; ++r) {
    double min_fidelity = 1.0, max_fid_dev = 0.0, max_prob_dev = 0.0;
    std::size_t branches = 0;
    for (const auto& input : inputs) {
      for (const auto& t : teleport_view(input, SigmaIndex(r))) {
        branches += 1;
        min_fidelity = std::min(min_fidelity, t.certified_fidelity);
        max_fid_dev =
            std::max(max_fid_dev, std::abs(t.certified_fidelity - 1.0));
        max_prob_dev = std::max(max_prob_dev, std::abs(t.probability - 0.25));
      }
    }
    records.push_back(detail::record(
        "teleport resource sigma_" + std::to_string(r), "enumeration",
        {{"inputs", static_cast<double>(inputs.size())},
         {"branches", static_cast<double>(branches)},
         {"min_fidelity", min_fidelity},
         {"max_probability_deviation", max_prob_dev}},
        max_fid_dev <= tol.fidelity && max_prob_dev <= tol.probability,
        tol.fidelity));
  }
  const bool equivalent = equivalence_check(tol.equivalence);
  records.push_back(detail::record("teleport equivalence", "enumeration",
                                   {{"agree", equivalent ? 1.0 : 0.0}},
                                   equivalent, tol.equivalence));
  return records;
}

// Qudit generalization checks for one local dimension.
inline std::vector<CheckRecord> qudit_suite(const Tolerances& tol, int d) {
  const std::string prefix = "qudit d=" + std::to_string(d) + " ";
  const DensityOperator rho = smolin_qudit_state(d);
  std::vector<CheckRecord> records;

  const auto spectrum = hermitian_eigenvalues(rho.matrix);
  const std::size_t rank = static_cast<std::size_t>(
      std::count_if(spectrum.begin(), spectrum.end(),
                    [](double v) { return v > 1e-8; }));
  records.push_back(detail::record(
      prefix + "construction", "construction",
      {{"trace", rho.matrix.trace().real()},
       {"rank", static_cast<double>(rank)}},
      std::abs(rho.matrix.trace().real() - 1.0) <= tol.hygiene &&
          rank == static_cast<std::size_t>(d) * d,
      tol.hygiene));

  if (d == 2) {
    const double distance =
        frobenius_distance(rho.matrix, smolin_state().matrix);
    records.push_back(detail::record(prefix + "matches qubit construction",
                                     "construction",
                                     {{"frobenius_distance", distance}},
                                     distance <= tol.roundtrip, tol.roundtrip));
  }

  double max_gram_dev = 0.0;
  std::vector<ComplexVector> basis;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      basis.push_back(generalized_bell_state(WeylLabel(d, a, b)).amplitudes);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      max_gram_dev = std::max(
          max_gram_dev, std::abs(std::abs(basis[i].dot(basis[j])) - expected));
    }
  records.push_back(detail::record(prefix + "bell basis orthonormal",
                                   "algebraic",
                                   {{"max_gram_deviation", max_gram_dev}},
                                   max_gram_dev <= tol.hygiene, tol.hygiene));

  const Cut ab_cd{{"A", "B"}, {"C", "D"}};
  const PPTReport report = ppt_check(rho, ab_cd, tol.ppt);
  records.push_back(detail::record(
      prefix + "ppt AB:CD", "spectrum",
      {{"min_eigenvalue", report.min_eigenvalue}}, report.is_ppt, tol.ppt));

  const double swap_distance = frobenius_distance(
      permute_subsystems(rho, swap_of("B", "C")).matrix, rho.matrix);
  records.push_back(detail::record(
      prefix + "invariance B<->C", "algebraic",
      {{"frobenius_distance", swap_distance}},
      swap_distance <= tol.qudit_invariance, tol.qudit_invariance));

  const auto transcripts =
      unlock(rho, {PartyId{"C"}, PartyId{"D"}}, four_party_assignment());
  const auto stats =
      detail::branch_stats(transcripts, 1.0 / static_cast<double>(d * d));
  records.push_back(detail::record(
      prefix + "unlock merged=CD", "enumeration",
      {{"branches", static_cast<double>(stats.branches)},
       {"min_fidelity", stats.min_fidelity},
       {"max_probability_deviation", stats.max_probability_deviation}},
      stats.branches == static_cast<std::size_t>(d) * d &&
          stats.max_fidelity_deviation <= tol.fidelity &&
          stats.max_probability_deviation <= tol.probability,
      tol.fidelity));
  return records;
}

// Two-copy protocol: all 64 branches deliver the target between D and E, and
// withholding any one message from the correction rule breaks the protocol.
inline std::vector<CheckRecord> superadditivity_suite(const Tolerances& tol) {
  std::vector<CheckRecord> records;
  const auto transcripts = superadditivity_protocol();
  const auto stats = detail::branch_stats(transcripts, 1.0 / 64.0);
  records.push_back(detail::record(
      "superadditivity branches", "enumeration",
      {{"branches", static_cast<double>(stats.branches)},
       {"probability_sum", stats.probability_sum},
       {"min_fidelity", stats.min_fidelity},
       {"max_probability_deviation", stats.max_probability_deviation}},
      stats.branches == 64 && stats.max_fidelity_deviation <= tol.fidelity &&
          std::abs(stats.probability_sum - 1.0) <= tol.probability,
      tol.fidelity));

  const double threshold = 0.95;
  for (const auto ablation :
       {MessageAblation::DropA, MessageAblation::DropB, MessageAblation::DropC}) {
    const double mean =
        mean_certified_fidelity(superadditivity_protocol(ablation));
    records.push_back(detail::record(
        "superadditivity ablation " + to_string(ablation), "enumeration",
        {{"mean_fidelity", mean}, {"threshold", threshold}}, mean < threshold,
        threshold));
  }
  return records;
}

// Structural properties over the deterministic structured-state family.
inline std::vector<CheckRecord> hygiene_suite(const Tolerances& tol,
                                              std::size_t count = 1000) {
  const auto states = structured_states(count);
  double max_herm = 0.0, max_trace = 0.0, min_eigenvalue = 0.0;
  double max_involution = 0.0, max_roundtrip = 0.0;
  std::size_t index = 0;
  for (const auto& state : states) {
    max_herm = std::max(max_herm, hermiticity_deviation(state.matrix));
    max_trace =
        std::max(max_trace, std::abs(state.matrix.trace().real() - 1.0));
    min_eigenvalue =
        std::min(min_eigenvalue, min_hermitian_eigenvalue(state.matrix));

    // Involution: transpose one cut twice (the cut cycles with the index).
    const std::size_t n = state.layout.size();
    const std::size_t subsets = (static_cast<std::size_t>(1) << n) - 2;
    const std::size_t mask = 1 + index % subsets;
    Cut cut;
    for (std::size_t i = 0; i < n; ++i)
      (mask >> i & 1 ? cut.right : cut.left).push_back(state.layout.labels[i]);
    const ComplexMatrix once = partial_transpose(state, cut);
    const ComplexMatrix twice = detail::partial_transpose_slots(
        once, state.layout.dims,
        [&] {
          std::set<std::size_t> slots;
          for (const auto& r : cut.right)
            slots.insert(state.layout.slot_of(r));
          return slots;
        }());
    max_involution =
        std::max(max_involution, frobenius_distance(twice, state.matrix));

    // Round-trip: permute contents, then permute back.
    std::vector<std::string> images = state.layout.labels;
    std::rotate(images.begin(), images.begin() + (1 + index % (n - 1)) % n,
                images.end());
    PermutationMap perm;
    bool dims_compatible = true;
    for (std::size_t i = 0; i < n; ++i) {
      perm.mapping[state.layout.labels[i]] = images[i];
      if (state.layout.dims[i] != state.layout.dim_of(images[i]))
        dims_compatible = false;
    }
    if (dims_compatible) {
      const DensityOperator there = permute_subsystems(state, perm);
      const DensityOperator back = permute_subsystems(there, perm.inverse());
      max_roundtrip =
          std::max(max_roundtrip, frobenius_distance(back.matrix, state.matrix));
    }
    index += 1;
  }

  std::vector<CheckRecord> records;
  records.push_back(detail::record(
      "hygiene state invariants", "property",
      {{"states", static_cast<double>(states.size())},
       {"max_hermiticity_deviation", max_herm},
       {"max_trace_deviation", max_trace},
       {"min_eigenvalue", min_eigenvalue}},
      max_herm <= tol.hygiene && max_trace <= tol.hygiene &&
          min_eigenvalue >= -tol.hygiene,
      tol.hygiene));
  records.push_back(detail::record(
      "hygiene partial-transpose involution", "property",
      {{"states", static_cast<double>(states.size())},
       {"max_error", max_involution}},
      max_involution <= tol.roundtrip, tol.roundtrip));
  records.push_back(detail::record(
      "hygiene permutation round-trip", "property",
      {{"states", static_cast<double>(states.size())},
       {"max_error", max_roundtrip}},
      max_roundtrip <= tol.roundtrip, tol.roundtrip));
  return records;
}

// Everything at once; the overall verdict is the acceptance gate.
inline std::vector<CheckRecord> full_report_suite(const Tolerances& tol) {
  std::vector<CheckRecord> records;
  auto append = [&records](std::vector<CheckRecord> more) {
    for (auto& r : more) records.push_back(std::move(r));
  };
  append(cut_suite(tol));
  append(ensemble_suite(tol));
  append(invariance_suite(tol));
  append(expansion_suite(tol));
  append(unlock_suite(tol));
  append(teleport_suite(tol));
  append(qudit_suite(tol, 3));
  append(superadditivity_suite(tol));
  append(hygiene_suite(tol));
  return records;
}

// Seeded sampling demonstration: draws branches from the exact distribution
// and reports empirical frequencies.  Informational (always passes); the
// verification path is the exhaustive enumeration above.
inline std::vector<CheckRecord> sampled_demo_records(
    const std::vector<Transcript>& transcripts, std::uint64_t seed,
    int samples = 1000) {
  detail::DeterministicBits bits(seed);
  std::vector<std::size_t> counts(transcripts.size(), 0);
  for (int s = 0; s < samples; ++s) {
    const double u = bits.uniform();
    double acc = 0.0;
    std::size_t chosen = transcripts.size() - 1;
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
      acc += transcripts[i].probability;
      if (u < acc) {
        chosen = i;
        break;
      }
    }
    counts[chosen] += 1;
  }
  std::vector<CheckRecord> records;
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    std::string name = "sampled branch";
    for (const auto& step : transcripts[i].steps)
      if (const auto* event = std::get_if<MeasurementEvent>(&step))
        name += " " + event->outcome.text();
    records.push_back(detail::record(
        std::move(name), "simulation",
        {{"samples", static_cast<double>(samples)},
         {"frequency", static_cast<double>(counts[i]) / samples},
         {"exact_probability", transcripts[i].probability}},
        true, 0.0));
  }
  return records;
}

}  // namespace qube
