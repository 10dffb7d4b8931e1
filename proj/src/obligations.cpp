#include "invariantlab/obligations.hpp"

#include <deque>
#include <utility>

#include "invariantlab/invariant_analysis.hpp"

namespace invariantlab {

const char* to_string(ObligationKind k) {
  switch (k) {
    case ObligationKind::N: return "N";
    case ObligationKind::O: return "O";
    case ObligationKind::Oprime: return "Oprime";
    case ObligationKind::C: return "C";
  }
  return "?";
}

const char* to_string(ObligationClause::Role r) {
  switch (r) {
    case ObligationClause::Role::Invariant: return "invariant";
    case ObligationClause::Role::Pre: return "pre";
    case ObligationClause::Role::Post: return "post";
    case ObligationClause::Role::Def: return "def";
  }
  return "?";
}

const std::vector<Instr>& Obligation::body() const {
  static const std::vector<Instr> kEmpty;
  return decl ? decl->body : kEmpty;
}

std::string Obligation::id() const {
  return std::string(to_string(kind)) + ":" + cls + "." + routine;
}

namespace {

using Node = std::pair<std::string, std::string>;  // class, routine

// Static callees of `n`: unqualified calls resolve in n's class, qualified
// ones in the static type of the target. Creation calls count as qualified.
std::vector<std::pair<Node, bool>> callees(const Node& n, const ClassTable& table) {
  std::vector<std::pair<Node, bool>> out;
  const FlatClass& c = table.at(n.first);
  const FlatFeature* f = c.find(n.second);
  if (!f || !f->decl->is_routine()) return out;
  for (const auto& s : unqualified_calls_in(f->decl->body)) out.push_back({{c.name, s}, false});
  for (const Expr* q : qualified_calls_in(f->decl->body)) {
    if (q->binding == Binding::Routine) out.push_back({{q->lhs->type.base, q->name}, true});
  }
  walk_instrs(
      f->decl->body,
      [&](const Instr& i) {
        if (i.kind != Instr::Kind::Create || i.creator.empty()) return;
        const FlatFeature* t = i.target == "Result" ? f : c.find(i.target);
        if (t && t->decl->result) out.push_back({{t->decl->result->base, i.creator}, true});
      },
      [](const ExprPtr&) {});
  return out;
}

}  // namespace

bool no_callback(const std::string& cls, const std::string& r, const ClassTable& table,
                 const std::set<std::string>& closed_classes) {
  std::set<Node> seen{{cls, r}};
  std::deque<Node> work{{cls, r}};
  while (!work.empty()) {
    Node n = work.front();
    work.pop_front();
    for (const auto& [callee, qualified] : callees(n, table)) {
      if (qualified && !closed_classes.count(callee.first)) return false;
      if (seen.insert(callee).second) work.push_back(callee);
    }
  }
  return true;
}

bool is_recursive(const std::string& cls, const std::string& r, const ClassTable& table) {
  Node start{cls, r};
  std::set<Node> seen;
  std::deque<Node> work{start};
  while (!work.empty()) {
    Node n = work.front();
    work.pop_front();
    for (const auto& [callee, qualified] : callees(n, table)) {
      (void)qualified;
      if (callee == start) return true;
      if (seen.insert(callee).second) work.push_back(callee);
    }
  }
  return false;
}

std::vector<ObligationClause> def_state(const std::string& cls, const ClassTable& table) {
  std::vector<ObligationClause> out;
  for (const auto* a : table.at(cls).attributes()) {
    const TypeRef& t = *a->decl->result;
    ExprPtr lhs = make_name(a->name());
    lhs->binding = Binding::Attribute;
    lhs->type = t;
    ExprPtr rhs;
    if (t.base == kInteger) {
      rhs = make_int(0);
      rhs->type = {kInteger, false};
    } else if (t.base == kBoolean) {
      rhs = make_bool(false);
      rhs->type = {kBoolean, false};
    } else {
      rhs = make_void();
      rhs->type = {kVoidType, true};
    }
    ExprPtr eq = make_binary(Op::Eq, lhs, rhs);
    eq->type = {kBoolean, false};
    std::string text = a->name() + " = " +
                       (t.base == kInteger ? "0" : t.base == kBoolean ? "False" : "Void");
    out.push_back({ObligationClause::Role::Def, text, eq});
  }
  return out;
}

namespace {

void append(std::vector<ObligationClause>& out, ObligationClause::Role role,
            const std::vector<AssertionClause>& clauses) {
  for (const auto& c : clauses) out.push_back({role, c.label(), c.expr});
}

void append(std::vector<ObligationClause>& out, const std::vector<InvariantClause>& clauses) {
  for (const auto& c : clauses) {
    out.push_back({ObligationClause::Role::Invariant, c.clause->label(), c.clause->expr});
  }
}

}  // namespace

Obligation make_obligation(ObligationKind kind, const std::string& cls, const std::string& routine,
                           const ClassTable& table) {
  const FlatClass& c = table.at(cls);
  Obligation ob;
  ob.kind = kind;
  ob.cls = cls;
  ob.routine = routine;
  if (routine == kDefaultCreate && !c.find(routine)) {
    if (kind != ObligationKind::C) {
      throw std::invalid_argument(std::string(kDefaultCreate) + " only has a C obligation");
    }
    ob.pre = def_state(cls, table);
    append(ob.post, c.invariant);
    ob.notes.push_back("default creation: no creation procedure, empty body");
    return ob;
  }
  const FlatFeature* f = c.find(routine);
  if (!f || !f->decl->is_routine()) {
    throw std::invalid_argument(cls + "." + routine + " is not a routine");
  }
  ob.decl = f->decl;
  ob.recursive = is_recursive(cls, routine, table);
  switch (kind) {
    case ObligationKind::N:
      append(ob.pre, ObligationClause::Role::Pre, f->decl->require);
      append(ob.post, ObligationClause::Role::Post, f->decl->ensure);
      break;
    case ObligationKind::O:
      append(ob.pre, inv_r(cls, routine, table).clauses);
      append(ob.pre, ObligationClause::Role::Pre, f->decl->require);
      append(ob.post, c.invariant);
      append(ob.post, ObligationClause::Role::Post, f->decl->ensure);
      break;
    case ObligationKind::Oprime:
      append(ob.pre, c.invariant);
      append(ob.pre, ObligationClause::Role::Pre, f->decl->require);
      append(ob.post, c.invariant);
      append(ob.post, ObligationClause::Role::Post, f->decl->ensure);
      break;
    case ObligationKind::C:
      ob.pre = def_state(cls, table);
      append(ob.pre, ObligationClause::Role::Pre, f->decl->require);
      append(ob.post, c.invariant);
      append(ob.post, ObligationClause::Role::Post, f->decl->ensure);
      break;
  }
  if (ob.recursive) ob.notes.push_back("recursive: bounded checking may be inconclusive");
  return ob;
}

namespace {

// Routine declarations some class calls unqualified.
std::set<const FeatureDecl*> unqualified_targets(const ClassTable& table) {
  std::set<const FeatureDecl*> out;
  for (const auto& name : table.names()) {
    const FlatClass& c = table.at(name);
    for (const auto* r : c.routines()) {
      for (const auto& s : unqualified_calls_in(r->decl->body)) {
        if (const FlatFeature* f = c.find(s)) out.insert(f->decl);
      }
    }
  }
  return out;
}

}  // namespace

ObligationSet obligations_for(const std::string& cls, const ClassTable& table,
                              const ObligationConfig& config) {
  ObligationSet out;
  const FlatClass& c = table.at(cls);
  auto called = unqualified_targets(table);

  for (const auto* r : c.routines()) {
    bool any = false;
    if (called.count(r->decl)) {
      Obligation ob = make_obligation(ObligationKind::N, cls, r->name(), table);
      ob.notes.push_back("called unqualified");
      out.obligations.push_back(std::move(ob));
      any = true;
    }
    if (!r->exports().is_none()) {
      bool prime = config.use_oprime && no_callback(cls, r->name(), table, config.closed_classes);
      Obligation ob =
          make_obligation(prime ? ObligationKind::Oprime : ObligationKind::O, cls, r->name(), table);
      ob.notes.push_back("exported to " + r->exports().str());
      if (prime) {
        ob.notes.push_back("no callback: full invariant assumed on entry");
        if (!config.closed_classes.empty()) {
          ob.notes.push_back("closed classes are a configuration assumption");
        }
      }
      out.obligations.push_back(std::move(ob));
      any = true;
    }
    if (c.has_create_clause && c.is_creator(r->name())) {
      Obligation ob = make_obligation(ObligationKind::C, cls, r->name(), table);
      ob.notes.push_back("creation procedure");
      out.obligations.push_back(std::move(ob));
      any = true;
    }
    if (!any) {
      out.warnings.push_back(cls + "." + r->name() +
                             " is secret and never called unqualified: nothing to prove");
    }
  }
  if (!c.has_create_clause) {
    out.obligations.push_back(make_obligation(ObligationKind::C, cls, kDefaultCreate, table));
  }
  return out;
}

}  // namespace invariantlab
