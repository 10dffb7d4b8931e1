// JSON reports shared by the command-line tool and the corpus tests.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "invariantlab/export_analysis.hpp"
#include "invariantlab/invariant_analysis.hpp"
#include "invariantlab/obligations.hpp"
#include "invariantlab/parser.hpp"
#include "invariantlab/runtime.hpp"
#include "invariantlab/verifier.hpp"

namespace invariantlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Bad input: unreadable files, parse errors, ill-typed programs, bad flags.
/// Carries the partial report so callers can still print diagnostics.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& message, Json report = {})
      : std::runtime_error(message), report_(std::move(report)) {}
  const Json& report() const { return report_; }

 private:
  Json report_;
};

enum class Command { Check, Obligations, Verify, Run, All };

const char* to_string(Command c);

struct AnalysisOptions {
  ConsistencyMode consistency = ConsistencyMode::Cases;
  InhibitionConfig inhibition;
  ObligationConfig obligations;
  StateSpec spec;
  Policy policy = Policy::Orule;
  std::string root;  // "CLASS.make", "CLASS", or empty for the default
  bool keep_going = false;
  bool include_trace = true;
  std::vector<std::string> only;  // obligation ids to verify; empty for all
};

/// Parses and builds the table for several source files taken together.
/// Throws InputError with a report holding the parse diagnostics.
ClassTable load_program(const std::vector<std::filesystem::path>& files,
                        const std::vector<std::string>& display_names);

/// Root chosen when none is given: the last class, through its first
/// creation procedure (default creation when it has no create clause).
std::pair<std::string, std::string> default_root(const ClassTable& table);
std::pair<std::string, std::string> resolve_root(const std::string& spec, const ClassTable& table);

Json hiding_json(const std::vector<ConsistencyDiagnostic>& diags);
Json consistency_json(const std::vector<ConsistencyDiagnostic>& diags, ConsistencyMode mode);
Json inhibition_json(const std::vector<Inhibition>& inhibitions,
                     const std::vector<SanityDiagnostic>& diags, const InhibitionConfig& config);
Json obligation_json(const Obligation& ob);
Json check_result_json(const Obligation& ob, const CheckResult& r);
Json run_json(const RunResult& r, const std::string& root_class, const std::string& root_creator,
              Policy policy, bool include_trace);

/// Runs the analyses of `command` and assembles the report. The top level
/// holds "tool", "version", "command", "inputs", "config", the per-analysis
/// sections, "status" and "exit_code".
Json build_report(Command command, const std::vector<std::filesystem::path>& files,
                  const std::vector<std::string>& display_names, const AnalysisOptions& options);

/// Drops the version header so reports from different builds compare equal.
Json strip_version(Json report);

/// Plain-text rendering of a report.
std::string render_text(const Json& report, bool color);

struct ExtraRun {
  std::string root;
  Policy policy = Policy::Orule;
};

struct Fixture {
  std::string name;
  std::filesystem::path source;
  std::filesystem::path golden;
  AnalysisOptions options;
  std::vector<ExtraRun> extra_runs;  // further runs recorded in the golden
  std::string note;
};

/// Reads `dir/manifest.json`. Throws InputError when the manifest is missing,
/// empty, or names missing files.
std::vector<Fixture> load_corpus(const std::filesystem::path& dir);

/// The golden document of a fixture: {fixture, note, report, extra_runs},
/// with the version header stripped.
Json fixture_report(const Fixture& fx);

}  // namespace invariantlab
