#include "invariantlab/report.hpp"

#include <fstream>
#include <sstream>

namespace invariantlab {

namespace fs = std::filesystem;

const char* to_string(Command c) {
  switch (c) {
    case Command::Check:
      return "check";
    case Command::Obligations:
      return "obligations";
    case Command::Verify:
      return "verify";
    case Command::Run:
      return "run";
    case Command::All:
      return "all";
  }
  return "?";
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json pos_json(const SourcePos& p) { return p.str(); }

Json export_json(const ExportSet& e) { return e.str(); }

Json value_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Void:
      return nullptr;
    case Value::Kind::Int:
      return v.i;
    case Value::Kind::Bool:
      return v.b;
    case Value::Kind::Ref:
      return Json{{"ref", v.ref}};
  }
  return nullptr;
}

Json violation_json(const ContractViolation& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  if (!v.phase.empty()) j["phase"] = v.phase;
  j["tag"] = v.tag;
  j["blamed"] = "#" + std::to_string(v.blamed);
  j["blamed_class"] = v.blamed_class;
  j["routine"] = v.routine;
  j["pos"] = pos_json(v.pos);
  j["call_stack"] = v.call_stack;
  j["message"] = v.message;
  return j;
}

Json diagnostic_error_report(const std::vector<std::string>& inputs, const Json& diags) {
  Json r;
  r["tool"] = "invariantlab";
  r["version"] = kVersion;
  r["inputs"] = inputs;
  r["parse"] = Json{{"status", "error"}, {"diagnostics", diags}};
  r["status"] = "error";
  r["exit_code"] = 2;
  return r;
}

}  // namespace

ClassTable load_program(const std::vector<fs::path>& files,
                        const std::vector<std::string>& display_names) {
  std::vector<ClassDecl> classes;
  Json diags = Json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = i < display_names.size() ? display_names[i] : files[i].string();
    std::string text;
    try {
      text = read_file(files[i]);
    } catch (const InputError& e) {
      diags.push_back(Json{{"pos", name}, {"severity", "error"}, {"message", e.what()}});
      continue;
    }
    ParseResult pr = parse(text, name);
    for (const auto& d : pr.diagnostics) {
      diags.push_back(Json{{"pos", pos_json(d.pos)},
                           {"severity", d.severity == Severity::Error ? "error" : "warning"},
                           {"message", d.message}});
    }
    if (!pr.ok()) continue;
    for (auto& c : pr.classes) classes.push_back(std::move(c));
  }
  bool failed = false;
  for (const auto& d : diags) failed = failed || d["severity"] == "error";
  if (failed) throw InputError("parse error", diagnostic_error_report(display_names, diags));
  try {
    return build_class_table(std::move(classes));
  } catch (const SemanticError& e) {
    diags.push_back(Json{{"pos", pos_json(e.pos())}, {"severity", "error"}, {"message", e.what()}});
    throw InputError(e.what(), diagnostic_error_report(display_names, diags));
  }
}

std::pair<std::string, std::string> default_root(const ClassTable& table) {
  if (table.empty()) throw InputError("program has no classes");
  const FlatClass& c = table.at(table.names().back());
  if (c.has_create_clause) {
    if (c.creators.empty()) throw InputError("class " + c.name + " has no creation procedure");
    return {c.name, c.creators.front()};
  }
  return {c.name, ""};
}

std::pair<std::string, std::string> resolve_root(const std::string& spec, const ClassTable& table) {
  if (spec.empty()) return default_root(table);
  const auto dot = spec.find('.');
  const std::string cls = spec.substr(0, dot);
  const FlatClass* c = table.find(cls);
  if (!c) throw InputError("unknown root class " + cls);
  if (dot != std::string::npos) {
    const std::string creator = spec.substr(dot + 1);
    const FlatFeature* f = c->find(creator);
    if (!f || !f->decl->is_routine() || f->decl->result || !f->decl->formals.empty()) {
      throw InputError("root " + spec + " is not a procedure without arguments");
    }
    return {cls, creator};
  }
  if (c->has_create_clause) {
    if (c->creators.empty()) throw InputError("class " + cls + " has no creation procedure");
    return {cls, c->creators.front()};
  }
  return {cls, ""};
}

Json hiding_json(const std::vector<ConsistencyDiagnostic>& diags) {
  Json out = Json::array();
  for (const auto& d : diags) {
    Json j;
    j["caller"] = d.caller_class + "." + d.caller_routine;
    j["callee"] = d.callee_class + "." + d.callee_routine;
    j["pos"] = pos_json(d.pos);
    j["callee_exports"] = export_json(d.callee_exports);
    j["message"] = d.message;
    out.push_back(std::move(j));
  }
  return Json{{"status", diags.empty() ? "ok" : "findings"}, {"diagnostics", out}};
}

Json consistency_json(const std::vector<ConsistencyDiagnostic>& diags, ConsistencyMode mode) {
  Json out = Json::array();
  for (const auto& d : diags) {
    Json j;
    j["rule"] = to_string(d.rule);
    j["caller"] = d.caller_class + "." + d.caller_routine;
    j["callee"] = d.callee_class + "." + d.callee_routine;
    j["pos"] = pos_json(d.pos);
    j["callee_exports"] = export_json(d.callee_exports);
    j["caller_exports"] = export_json(d.caller_exports);
    j["message"] = d.message;
    out.push_back(std::move(j));
  }
  return Json{{"mode", to_string(mode)},
              {"status", diags.empty() ? "ok" : "findings"},
              {"diagnostics", out}};
}

Json inhibition_json(const std::vector<Inhibition>& inhibitions,
                     const std::vector<SanityDiagnostic>& diags, const InhibitionConfig& config) {
  Json inh = Json::array();
  for (const auto& i : inhibitions) {
    inh.push_back(Json{{"inhibitor", i.inhibitor},
                       {"inhibited", i.inhibited},
                       {"tag", i.tag},
                       {"query", i.query},
                       {"clause", i.clause},
                       {"pos", pos_json(i.pos)}});
  }
  Json out = Json::array();
  for (const auto& d : diags) {
    out.push_back(Json{{"clause", to_string(d.clause)},
                       {"inhibited", d.inhibition.inhibited},
                       {"inhibitor", d.inhibition.inhibitor},
                       {"tag", d.inhibition.tag},
                       {"query", d.inhibition.query},
                       {"source_clause", d.inhibition.clause},
                       {"feature", d.feature_class + "." + d.feature},
                       {"explanation", d.explanation}});
  }
  return Json{{"external", to_string(config.external)},
              {"internal", to_string(config.internal)},
              {"status", diags.empty() ? "ok" : "findings"},
              {"inhibitions", inh},
              {"diagnostics", out}};
}

Json obligation_json(const Obligation& ob) {
  auto clauses = [](const std::vector<ObligationClause>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) {
      a.push_back(Json{{"role", to_string(c.role)}, {"tag", c.tag}, {"expr", expr_to_string(c.expr)}});
    }
    return a;
  };
  Json j;
  j["id"] = ob.id();
  j["kind"] = to_string(ob.kind);
  j["class"] = ob.cls;
  j["routine"] = ob.routine;
  j["recursive"] = ob.recursive;
  j["pre"] = clauses(ob.pre);
  j["post"] = clauses(ob.post);
  if (!ob.notes.empty()) j["notes"] = ob.notes;
  return j;
}

Json check_result_json(const Obligation& ob, const CheckResult& r) {
  Json j;
  j["obligation"] = ob.id();
  j["verdict"] = to_string(r.verdict);
  j["states_checked"] = r.states_checked;
  j["states_estimate"] = r.states_estimate;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.witness) {
    j["witness"] = witness_to_json(*r.witness);
    j["snippet"] = witness_snippet(*r.witness, ob);
  }
  return j;
}

Json run_json(const RunResult& r, const std::string& root_class, const std::string& root_creator,
              Policy policy, bool include_trace) {
  Json j;
  j["root"] = root_creator.empty() ? root_class : root_class + "." + root_creator;
  j["policy"] = to_string(policy);
  j["status"] = to_string(r.status);
  if (!r.error.empty()) j["error"] = r.error;
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back(violation_json(v));
  j["violations"] = vs;
  Json heap = Json::array();
  for (const auto& [id, obj] : r.heap.objects()) {
    Json fields;
    for (const auto& [name, v] : obj.fields) fields[name] = value_json(v);
    heap.push_back(Json{{"id", id}, {"class", obj.cls}, {"fields", fields}});
  }
  j["final_heap"] = heap;
  if (include_trace) j["trace"] = r.trace;
  return j;
}

Json strip_version(Json report) {
  report.erase("version");
  return report;
}

}  // namespace invariantlab
