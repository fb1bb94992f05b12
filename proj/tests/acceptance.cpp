// Acceptance gate: one timed line per criterion, nonzero exit on any failure.
// Tolerances are pinned here on purpose — these are the numbers the project
// promises, independent of the configurable report tolerances.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qube/qube.hpp"

namespace {

using qube::detail::roundtrip_double;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run_criterion(int number, const std::string& label, double budget_seconds,
                   const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0.0 && seconds > budget_seconds) {
    outcome.ok = false;
    outcome.detail += "; exceeded time budget of " +
                      roundtrip_double(budget_seconds) + " s";
  }
  std::cout << (outcome.ok ? "[PASS]" : "[FAIL]") << " criterion " << number
            << ": " << label << " (" << std::fixed << std::setprecision(3)
            << seconds << " s) " << outcome.detail << "\n";
  std::cout.unsetf(std::ios::fixed);
  if (!outcome.ok) failures += 1;
}

std::string kv(const std::string& key, double value) {
  return key + "=" + roundtrip_double(value);
}

}  // namespace

int main() {
  using namespace qube;
  std::cout << "acceptance checks, artifact version " << kArtifactVersion
            << "\n";

  const DensityOperator rho = smolin_state();
  const RegisterAssignment assignment = four_party_assignment();

  // 1. Positive partial transpose and an explicit separable form across
  //    every two-against-two cut.
  run_criterion(1, "separable across the three pair cuts", 1.0, [&] {
    double min_eigenvalue = 1.0;
    double max_reconstruction = 0.0;
    for (const char* name : {"AB:CD", "AC:BD", "AD:BC"}) {
      const Cut cut = parse_cut(name);
      const PPTReport report = ppt_check(rho, cut);
      min_eigenvalue = std::min(min_eigenvalue, report.min_eigenvalue);
      if (!report.is_ppt || report.min_eigenvalue < -1e-10)
        return Outcome{false, std::string("cut ") + name + " not PPT: " +
                                  kv("min_eigenvalue", report.min_eigenvalue)};
      const DensityOperator rebuilt =
          reconstruct(separable_ensemble_for_cut(cut), rho.layout);
      const double err = frobenius_distance(rebuilt.matrix, rho.matrix);
      max_reconstruction = std::max(max_reconstruction, err);
      if (err > 1e-12)
        return Outcome{false, std::string("cut ") + name +
                                  " reconstruction off: " + kv("error", err)};
    }
    return Outcome{true, kv("min_pt_eigenvalue", min_eigenvalue) + " " +
                             kv("max_reconstruction_error", max_reconstruction)};
  });

  // 2. Negative partial transpose across every one-against-three cut.
  run_criterion(2, "entangled across the four single-party cuts", 1.0, [&] {
    std::ostringstream detail;
    for (const char* name : {"A:BCD", "B:ACD", "C:ABD", "D:ABC"}) {
      const Cut cut = parse_cut(name);
      const PPTReport report = ppt_check(rho, cut);
      if (report.min_eigenvalue >= -1e-6)
        return Outcome{false, std::string("cut ") + name + " not NPT: " +
                                  kv("min_eigenvalue", report.min_eigenvalue)};
      detail << kv(std::string("negativity_") + name, negativity(rho, cut))
             << " ";
    }
    return Outcome{true, detail.str()};
  });

  // 3. The two computational-basis expansions mix to the same operator.
  run_criterion(3, "both basis expansions mix to the same state", 0.0, [&] {
    if (!expansion_equality_check(1e-12))
      return Outcome{false, "mixtures differ beyond 1e-12"};
    return Outcome{true, "equal within 1e-12"};
  });

  // 4. Every merged pair, with either remaining party correcting, delivers
  //    the target on all four branches.
  run_criterion(4, "unlocking works for all merged pairs and correctors", 1.0,
                [&] {
    const std::vector<std::string> parties = {"A", "B", "C", "D"};
    double worst_fidelity_dev = 0.0;
    double worst_probability_dev = 0.0;
    int configurations = 0;
    for (std::size_t i = 0; i < parties.size(); ++i)
      for (std::size_t j = i + 1; j < parties.size(); ++j)
        for (const auto& corrector : parties) {
          if (corrector == parties[i] || corrector == parties[j]) continue;
          const auto transcripts =
              unlock(rho, {PartyId{parties[i]}, PartyId{parties[j]}},
                     assignment, PartyId{corrector});
          configurations += 1;
          if (transcripts.size() != 4)
            return Outcome{false, "expected 4 branches"};
          for (const auto& t : transcripts) {
            worst_fidelity_dev = std::max(
                worst_fidelity_dev, std::abs(t.certified_fidelity - 1.0));
            worst_probability_dev = std::max(worst_probability_dev,
                                             std::abs(t.probability - 0.25));
          }
        }
    const bool ok = configurations == 12 && worst_fidelity_dev <= 1e-9 &&
                    worst_probability_dev <= 1e-10;
    return Outcome{ok, kv("configurations", configurations) + " " +
                           kv("max_fidelity_deviation", worst_fidelity_dev) +
                           " " + kv("max_probability_deviation",
                                    worst_probability_dev)};
  });

  // 5. The teleportation reading agrees with direct unlocking, and delivers
  //    every grid-sampled input exactly.
  run_criterion(5, "teleportation reading matches and delivers all inputs",
                0.0, [&] {
    if (!equivalence_check(1e-10))
      return Outcome{false, "direct and teleportation readings disagree"};
    const auto inputs = teleport_input_grid();
    if (inputs.size() != 100)
      return Outcome{false, "expected 100 grid inputs"};
    double worst_fidelity_dev = 0.0;
    for (int r = 0; r < 4; ++r)
      for (const auto& input : inputs)
        for (const auto& t : teleport_view(input, SigmaIndex(r)))
          worst_fidelity_dev = std::max(worst_fidelity_dev,
                                        std::abs(t.certified_fidelity - 1.0));
    return Outcome{worst_fidelity_dev <= 1e-9,
                   kv("inputs", static_cast<double>(inputs.size())) + " " +
                       kv("max_fidelity_deviation", worst_fidelity_dev)};
  });

  // 6. The qutrit generalization keeps the structural properties.
  run_criterion(6, "qutrit generalization: PPT, symmetry, unlocking", 10.0,
                [&] {
    const DensityOperator qutrit = smolin_qudit_state(3);
    const PPTReport report = ppt_check(qutrit, parse_cut("AB:CD"));
    if (report.min_eigenvalue < -1e-10)
      return Outcome{false, "pair cut not PPT: " +
                                kv("min_eigenvalue", report.min_eigenvalue)};
    const DensityOperator swapped =
        permute_subsystems(qutrit, swap_of("B", "C"));
    const double swap_distance =
        frobenius_distance(qutrit.matrix, swapped.matrix);
    if (swap_distance > 1e-10)
      return Outcome{false, "B<->C symmetry broken: " +
                                kv("distance", swap_distance)};
    const auto transcripts =
        unlock(qutrit, {PartyId{"C"}, PartyId{"D"}}, assignment);
    if (transcripts.size() != 9)
      return Outcome{false, "expected 9 branches"};
    double worst_fidelity_dev = 0.0;
    for (const auto& t : transcripts)
      worst_fidelity_dev = std::max(worst_fidelity_dev,
                                    std::abs(t.certified_fidelity - 1.0));
    return Outcome{worst_fidelity_dev <= 1e-9,
                   kv("min_pt_eigenvalue", report.min_eigenvalue) + " " +
                       kv("swap_distance", swap_distance) + " " +
                       kv("max_fidelity_deviation", worst_fidelity_dev)};
  });

  // 7. Two copies, three classical messages: every branch delivers, and
  //    withholding any one message breaks it.
  run_criterion(7, "two-copy protocol and its message ablations", 30.0, [&] {
    const auto transcripts = superadditivity_protocol();
    if (transcripts.size() != 64)
      return Outcome{false, "expected 64 branches"};
    double worst_fidelity_dev = 0.0;
    for (const auto& t : transcripts)
      worst_fidelity_dev = std::max(worst_fidelity_dev,
                                    std::abs(t.certified_fidelity - 1.0));
    if (worst_fidelity_dev > 1e-9)
      return Outcome{false,
                     kv("max_fidelity_deviation", worst_fidelity_dev)};
    std::ostringstream detail;
    detail << kv("max_fidelity_deviation", worst_fidelity_dev);
    for (MessageAblation ablation :
         {MessageAblation::DropA, MessageAblation::DropB,
          MessageAblation::DropC}) {
      const double mean =
          mean_certified_fidelity(superadditivity_protocol(ablation));
      detail << " " << kv("mean_" + to_string(ablation), mean);
      if (!(mean < 0.95))
        return Outcome{false, "ablation " + to_string(ablation) +
                                  " still succeeds: " + kv("mean", mean)};
    }
    return Outcome{true, detail.str()};
  });

  // 8. Numerical hygiene: operators produced by the protocols stay valid
  //    states, and the tensor operations are exact involutions/round-trips
  //    on a large structured batch.
  run_criterion(8, "state invariants and tensor round-trips", 0.0, [&] {
    double max_herm = 0.0, max_trace = 0.0, min_eigenvalue = 0.0;
    int swept = 0;
    auto sweep = [&](const DensityOperator& state) {
      max_herm = std::max(max_herm, hermiticity_deviation(state.matrix));
      max_trace =
          std::max(max_trace, std::abs(state.matrix.trace().real() - 1.0));
      min_eigenvalue =
          std::min(min_eigenvalue, min_hermitian_eigenvalue(state.matrix));
      swept += 1;
    };
    for (const auto& t :
         unlock(rho, {PartyId{"A"}, PartyId{"B"}}, assignment))
      if (t.final_state) sweep(*t.final_state);
    for (const auto& t : teleport_view(teleport_input_grid()[0], SigmaIndex(2)))
      if (t.final_state) sweep(*t.final_state);
    for (const auto& t : superadditivity_protocol())
      if (t.final_state) sweep(*t.final_state);
    for (const auto& branch : bell_basis_measurement(rho, {"A", "B"}, 2))
      if (branch.post_state) sweep(*branch.post_state);
    if (max_herm > 1e-10 || max_trace > 1e-10 || min_eigenvalue < -1e-10)
      return Outcome{false, "protocol outputs violate state invariants: " +
                                kv("max_hermiticity", max_herm) + " " +
                                kv("max_trace_deviation", max_trace) + " " +
                                kv("min_eigenvalue", min_eigenvalue)};

    const auto records = hygiene_suite(Tolerances{}, 1000);
    std::ostringstream detail;
    detail << kv("protocol_outputs_swept", swept);
    for (const auto& r : records) {
      for (const auto& [key, value] : r.values)
        if (key.rfind("max_", 0) == 0 || key == "min_eigenvalue")
          detail << " " << kv(r.name + " " + key, value);
      if (!r.pass) return Outcome{false, "failed: " + r.name};
    }
    return Outcome{true, detail.str()};
  });

  std::cout << "acceptance: " << (8 - failures) << "/8 criteria passed\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
