// invariantlab: export, inhibition and obligation checks, bounded
// verification and monitored execution for Mini-O programs.
#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "invariantlab/report.hpp"

using namespace invariantlab;

namespace {

struct Flags {
  std::vector<std::string> files;
  std::string policy = "orule";
  std::string consistency = "cases";
  std::string internal = "strict";
  std::string external = "modifier";
  std::string int_range = "0:4";
  int max_objects = 3;
  std::int64_t fuel = 10000;
  std::uint64_t max_states = 2'000'000;
  std::string root;
  std::string format = "text";
  bool keep_going = false;
  bool oprime = false;
  bool no_trace = false;
  std::vector<std::string> only;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("files", f.files, "Mini-O source files")->required()->check(CLI::ExistingFile);
  cmd->add_option("--policy", f.policy, "Invariant checking policy")
      ->check(CLI::IsMember({"classic", "orule", "tribes"}));
  cmd->add_option("--consistency-mode", f.consistency, "Export consistency reading")
      ->check(CLI::IsMember({"cases", "exportset"}));
  cmd->add_option("--internal-sanity", f.internal, "Internal sanity variant")
      ->check(CLI::IsMember({"strict", "literal"}));
  cmd->add_option("--external-sanity", f.external, "External sanity variant")
      ->check(CLI::IsMember({"modifier", "type"}));
  cmd->add_option("--int-range", f.int_range, "Integer domain lo:hi for verification");
  cmd->add_option("--max-objects", f.max_objects, "Objects per class for verification");
  cmd->add_option("--fuel", f.fuel, "Execution step budget");
  cmd->add_option("--max-states", f.max_states, "State budget per obligation");
  cmd->add_option("--root", f.root, "Root creation, CLASS or CLASS.make");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--keep-going", f.keep_going, "Record violations without halting");
  cmd->add_flag("--oprime", f.oprime, "Use O' obligations for routines without callbacks");
  cmd->add_option("--only", f.only, "Verify only these obligations, e.g. O:PERSON.marry");
  cmd->add_flag("--no-trace", f.no_trace, "Omit the execution trace from run reports");
}

AnalysisOptions to_options(const Flags& f) {
  AnalysisOptions o;
  o.policy = *parse_policy(f.policy);
  o.consistency = f.consistency == "exportset" ? ConsistencyMode::ExportSet : ConsistencyMode::Cases;
  o.inhibition.internal = f.internal == "literal" ? InternalSanity::Literal : InternalSanity::Strict;
  o.inhibition.external = f.external == "type" ? ExternalSanity::Type : ExternalSanity::Modifier;
  o.obligations.use_oprime = f.oprime;
  auto range = parse_int_range(f.int_range);
  if (!range) throw InputError("bad --int-range '" + f.int_range + "', expected lo:hi");
  o.spec.lo = range->first;
  o.spec.hi = range->second;
  o.spec.max_objects = f.max_objects;
  o.spec.fuel = f.fuel;
  o.spec.max_states = f.max_states;
  o.root = f.root;
  o.keep_going = f.keep_going;
  o.include_trace = !f.no_trace;
  o.only = f.only;
  return o;
}

bool use_color() {
  const char* env = std::getenv("INVARIANTLAB_COLOR");
  if (env) return std::string(env) == "1";
  return isatty(STDOUT_FILENO) != 0;
}

void emit(const Json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << render_text(report, use_color());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant and export analysis for Mini-O programs", "invariantlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Check, "Parse, information hiding, export consistency and inhibition rule"},
      {Command::Obligations, "List proof obligations"},
      {Command::Verify, "Bounded check of every obligation"},
      {Command::Run, "Interpret the root creation with contract monitoring"},
      {Command::All, "Everything above"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) subs.emplace_back(cmd, app.add_subcommand(to_string(cmd), help));
  for (auto& [cmd, sub] : subs) add_flags(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Command command = Command::All;
  for (auto& [cmd, sub] : subs) {
    if (sub->parsed()) command = cmd;
  }
  try {
    AnalysisOptions options = to_options(flags);
    std::vector<std::filesystem::path> paths(flags.files.begin(), flags.files.end());
    Json report = build_report(command, paths, flags.files, options);
    emit(report, flags.format);
    return report["exit_code"].get<int>();
  } catch (const InputError& e) {
    if (!e.report().is_null()) {
      emit(e.report(), flags.format);
    }
    std::cerr << "invariantlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariantlab: internal error: " << e.what() << "\n";
    return 3;
  }
}
