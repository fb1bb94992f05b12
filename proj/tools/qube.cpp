// Command-line harness: runs the verification suites and protocol demos and
// emits text or JSON reports.  Exit codes: 0 all checks pass, 1 a check
// failed (or output could not be written), 2 usage error.

#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qube/qube.hpp"

namespace {

struct CommonOptions {
  std::string format = "text";
  std::optional<double> tolerance_all;
  std::optional<double> ppt_tolerance;
  std::optional<double> npt_tolerance;
  std::optional<double> fidelity_tolerance;
  std::optional<double> reconstruction_tolerance;
};

void add_common_options(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--format", opts->format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--tolerance", opts->tolerance_all,
                  "Override every tolerance with one value")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--ppt-tolerance", opts->ppt_tolerance,
                  "Tolerance for positive partial-transpose checks")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--npt-tolerance", opts->npt_tolerance,
                  "Negative-eigenvalue margin for NPT checks")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fidelity-tolerance", opts->fidelity_tolerance,
                  "Tolerance for branch fidelity checks")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--reconstruction-tolerance", opts->reconstruction_tolerance,
                  "Tolerance for ensemble reconstruction checks")
      ->check(CLI::PositiveNumber);
}

qube::Tolerances resolve(const CommonOptions& opts) {
  qube::Tolerances tol = qube::resolve_tolerances(opts.tolerance_all);
  if (opts.ppt_tolerance) tol.ppt = *opts.ppt_tolerance;
  if (opts.npt_tolerance) tol.npt = *opts.npt_tolerance;
  if (opts.fidelity_tolerance) tol.fidelity = *opts.fidelity_tolerance;
  if (opts.reconstruction_tolerance)
    tol.reconstruction = *opts.reconstruction_tolerance;
  return tol;
}

// Accepts "CD", "C,D", "C:D"; returns the pair with names sorted.
std::pair<qube::PartyId, qube::PartyId> parse_merge(const std::string& text) {
  std::vector<std::string> names;
  for (char c : text) {
    if (c == ',' || c == ':' || c == ' ') continue;
    names.push_back(std::string(1, static_cast<char>(std::toupper(c))));
  }
  if (names.size() != 2 || names[0] == names[1])
    throw qube::argument_error(
        "--merge expects two distinct party names, e.g. CD or C,D");
  if (names[1] < names[0]) std::swap(names[0], names[1]);
  return {qube::PartyId{names[0]}, qube::PartyId{names[1]}};
}

int emit(const qube::ReportDocument& doc, const std::string& format) {
  if (format == "json")
    std::cout << qube::render_json(doc);
  else
    std::cout << qube::render_text(doc);
  std::cout.flush();
  if (!std::cout.good()) {
    std::cerr << "error: failed to write report\n";
    return 1;
  }
  return doc.verdict_pass() ? 0 : 1;
}

qube::ReportDocument make_document(std::string command_echo,
                                   std::vector<qube::CheckRecord> records) {
  return qube::ReportDocument{qube::kArtifactVersion, qube::kReportSchemaVersion,
                              std::move(command_echo), std::move(records)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites and protocol demos for the four-party "
               "unlockable state"};
  app.set_version_flag("--version", std::string(qube::kArtifactVersion));
  app.require_subcommand(1);

  CommonOptions opts;

  auto* check_cuts = app.add_subcommand(
      "check-cuts", "PPT across the three 2:2 cuts, NPT across the 1:3 cuts");
  add_common_options(check_cuts, &opts);

  auto* check_invariance = app.add_subcommand(
      "check-invariance", "Invariance under all 24 party relabelings");
  add_common_options(check_invariance, &opts);

  auto* expansion_check = app.add_subcommand(
      "expansion-check",
      "The two computational-basis expansions agree term by term");
  add_common_options(expansion_check, &opts);

  std::string merge_text;
  int unlock_d = 2;
  std::string correction_party;
  std::optional<std::uint64_t> seed;
  auto* unlock_cmd = app.add_subcommand(
      "unlock", "Merge two parties, Bell-measure, and correct: all branches");
  unlock_cmd->add_option("--merge", merge_text, "Merged party pair, e.g. CD")
      ->required();
  unlock_cmd->add_option("--d", unlock_d, "Local dimension")
      ->check(CLI::Range(2, 5))
      ->capture_default_str();
  unlock_cmd->add_option("--correction-party", correction_party,
                         "Which remaining party applies the correction");
  unlock_cmd->add_option("--seed", seed,
                         "Append seeded branch-sampling demo records");
  add_common_options(unlock_cmd, &opts);

  auto* teleport_demo = app.add_subcommand(
      "teleport-demo",
      "Teleportation reading of the unlocking step, plus the equivalence check");
  teleport_demo->add_option("--seed", seed,
                            "Append seeded branch-sampling demo records");
  add_common_options(teleport_demo, &opts);

  auto* superadditivity = app.add_subcommand(
      "superadditivity", "Two-copy protocol over all 64 branches and ablations");
  superadditivity->add_option("--seed", seed,
                              "Append seeded branch-sampling demo records");
  add_common_options(superadditivity, &opts);

  int qudit_d = 2;
  auto* qudit_cmd =
      app.add_subcommand("qudit-suite", "Qudit-generalization checks");
  qudit_cmd->add_option("--d", qudit_d, "Local dimension")
      ->check(CLI::Range(2, 5))
      ->capture_default_str();
  add_common_options(qudit_cmd, &opts);

  auto* full_report = app.add_subcommand(
      "full-report", "Every suite; the overall verdict is the acceptance gate");
  add_common_options(full_report, &opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const qube::Tolerances tol = resolve(opts);

    if (check_cuts->parsed())
      return emit(make_document("check-cuts", qube::cut_suite(tol)),
                  opts.format);
    if (check_invariance->parsed())
      return emit(
          make_document("check-invariance", qube::invariance_suite(tol)),
          opts.format);
    if (expansion_check->parsed())
      return emit(make_document("expansion-check", qube::expansion_suite(tol)),
                  opts.format);

    if (unlock_cmd->parsed()) {
      const auto merged = parse_merge(merge_text);
      std::optional<qube::PartyId> corrector;
      if (!correction_party.empty())
        corrector = qube::PartyId{correction_party};
      const qube::DensityOperator state = qube::smolin_qudit_state(unlock_d);
      const qube::RegisterAssignment assignment =
          qube::four_party_assignment();
      auto records = qube::unlock_branch_records(tol, state, merged,
                                                 assignment, corrector);
      std::string echo = "unlock --merge " + merged.first.name +
                         merged.second.name + " --d " +
                         std::to_string(unlock_d);
      if (corrector) echo += " --correction-party " + corrector->name;
      if (seed) {
        echo += " --seed " + std::to_string(*seed);
        const auto transcripts =
            qube::unlock(state, merged, assignment, corrector);
        for (auto& r : qube::sampled_demo_records(transcripts, *seed))
          records.push_back(std::move(r));
      }
      return emit(make_document(std::move(echo), std::move(records)),
                  opts.format);
    }

    if (teleport_demo->parsed()) {
      auto records = qube::teleport_suite(tol);
      std::string echo = "teleport-demo";
      if (seed) {
        echo += " --seed " + std::to_string(*seed);
        const auto transcripts = qube::teleport_view(
            qube::teleport_input_grid()[0], qube::SigmaIndex(0));
        for (auto& r : qube::sampled_demo_records(transcripts, *seed))
          records.push_back(std::move(r));
      }
      return emit(make_document(std::move(echo), std::move(records)),
                  opts.format);
    }

    if (superadditivity->parsed()) {
      auto records = qube::superadditivity_suite(tol);
      std::string echo = "superadditivity";
      if (seed) {
        echo += " --seed " + std::to_string(*seed);
        for (auto& r : qube::sampled_demo_records(
                 qube::superadditivity_protocol(), *seed))
          records.push_back(std::move(r));
      }
      return emit(make_document(std::move(echo), std::move(records)),
                  opts.format);
    }

    if (qudit_cmd->parsed())
      return emit(
          make_document("qudit-suite --d " + std::to_string(qudit_d),
                        qube::qudit_suite(tol, qudit_d)),
          opts.format);

    if (full_report->parsed())
      return emit(make_document("full-report", qube::full_report_suite(tol)),
                  opts.format);

    std::cerr << "usage error: no command selected\n";
    return 2;
  } catch (const qube::error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
