#include <algorithm>

#include "invariantlab/report.hpp"

namespace invariantlab {

namespace {

bool wants(Command c, Command section) { return c == Command::All || c == section; }

Json config_json(const AnalysisOptions& o) {
  Json j;
  j["consistency_mode"] = to_string(o.consistency);
  j["external_sanity"] = to_string(o.inhibition.external);
  j["internal_sanity"] = to_string(o.inhibition.internal);
  j["use_oprime"] = o.obligations.use_oprime;
  j["int_range"] = std::to_string(o.spec.lo) + ":" + std::to_string(o.spec.hi);
  j["max_objects"] = o.spec.max_objects;
  j["max_states"] = o.spec.max_states;
  j["fuel"] = o.spec.fuel;
  j["policy"] = to_string(o.policy);
  j["root"] = o.root;
  j["keep_going"] = o.keep_going;
  return j;
}

std::vector<Obligation> all_obligations(const ClassTable& table, const ObligationConfig& config,
                                        Json& warnings) {
  std::vector<Obligation> out;
  for (const auto& name : table.names()) {
    ObligationSet set = obligations_for(name, table, config);
    for (auto& w : set.warnings) warnings.push_back(w);
    for (auto& ob : set.obligations) out.push_back(std::move(ob));
  }
  return out;
}

}  // namespace

Json build_report(Command command, const std::vector<std::filesystem::path>& files,
                  const std::vector<std::string>& display_names, const AnalysisOptions& options) {
  if (std::string why = options.spec.validate(); !why.empty()) throw InputError(why);
  ClassTable table = load_program(files, display_names);

  Json r;
  r["tool"] = "invariantlab";
  r["version"] = kVersion;
  r["command"] = to_string(command);
  r["inputs"] = display_names;
  r["config"] = config_json(options);
  r["classes"] = table.names();
  bool findings = false;

  if (wants(command, Command::Check)) {
    auto hiding = check_information_hiding(table);
    auto consistency = check_export_consistency(table, options.consistency);
    auto sanity = check_inhibition_rule(table, options.inhibition);
    findings = findings || !hiding.empty() || !consistency.empty() || !sanity.empty();
    r["hiding"] = hiding_json(hiding);
    r["consistency"] = consistency_json(consistency, options.consistency);
    r["inhibition"] = inhibition_json(extract_inhibitions(table), sanity, options.inhibition);
  }

  const bool need_obligations = wants(command, Command::Obligations) || command == Command::Verify;
  std::vector<Obligation> obligations;
  if (need_obligations) {
    Json warnings = Json::array();
    obligations = all_obligations(table, options.obligations, warnings);
    if (wants(command, Command::Obligations)) {
      Json list = Json::array();
      for (const auto& ob : obligations) list.push_back(obligation_json(ob));
      r["obligations"] = Json{{"count", obligations.size()}, {"warnings", warnings}, {"list", list}};
    }
  }

  if (wants(command, Command::Verify)) {
    Json results = Json::array();
    std::size_t verified = 0, refuted = 0, inconclusive = 0;
    for (const auto& ob : obligations) {
      if (!options.only.empty() &&
          std::find(options.only.begin(), options.only.end(), ob.id()) == options.only.end()) {
        continue;
      }
      CheckResult res = check_obligation(ob, options.spec, table);
      Json j = check_result_json(ob, res);
      switch (res.verdict) {
        case CheckResult::Verdict::Verified:
          ++verified;
          break;
        case CheckResult::Verdict::Counterexample: {
          ++refuted;
          RunResult rr = replay(*res.witness, ob, table, Policy::Orule, options.spec.fuel);
          Json tags = Json::array();
          for (const auto& v : rr.violations) tags.push_back(v.tag);
          j["replay"] = Json{{"status", to_string(rr.status)}, {"violated", tags}};
          break;
        }
        case CheckResult::Verdict::Inconclusive:
          ++inconclusive;
          break;
      }
      results.push_back(std::move(j));
    }
    findings = findings || refuted > 0;
    r["verification"] = Json{{"verified", verified},
                             {"counterexamples", refuted},
                             {"inconclusive", inconclusive},
                             {"results", results}};
  }

  if (wants(command, Command::Run)) {
    auto [cls, creator] = resolve_root(options.root, table);
    RuntimeConfig rc;
    rc.policy = options.policy;
    rc.fuel = options.spec.fuel;
    rc.root_class = cls;
    rc.root_creator = creator;
    rc.keep_going = options.keep_going;
    RunResult rr;
    try {
      rr = run_program(table, rc);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    Json j = run_json(rr, cls, creator, options.policy, options.include_trace);
    if (options.policy != Policy::Tribes) {
      bool uses_tribes = false;
      for (const auto& d : table.decls()) {
        for (const auto& f : d->features) {
          walk_instrs(
              f.body, [](const Instr&) {},
              [&](const ExprPtr& root) {
                walk(root, [&](const Expr& n) {
                  uses_tribes = uses_tribes || (n.kind == Expr::Kind::Call && n.name == kTribePut);
                });
              });
        }
      }
      if (uses_tribes) {
        j["warnings"] = Json::array({"tribe_put has no effect under the " +
                                     std::string(to_string(options.policy)) + " policy"});
      }
    }
    findings = findings || rr.status != RunStatus::Completed || !rr.violations.empty();
    r["run"] = std::move(j);
  }

  r["status"] = findings ? "findings" : "clean";
  r["exit_code"] = findings ? 1 : 0;
  return r;
}

}  // namespace invariantlab
