#include "invariantlab/export_analysis.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace invariantlab {

const char* to_string(ConsistencyMode m) {
  return m == ConsistencyMode::Cases ? "cases" : "exportset";
}

const char* to_string(RulePart r) {
  switch (r) {
    case RulePart::BroaderCallee: return "broader-callee";
    case RulePart::Precursor: return "precursor";
    case RulePart::ClassicHiding: return "classic-hiding";
  }
  return "?";
}

Privilege privilege_of(const std::string& cls, const ClassTable& table, PrivilegeScope scope) {
  Privilege p;
  for (const auto& name : table.names()) {
    for (const auto& f : table.at(name).features) {
      const ExportSet& e = f.exports();
      bool granted = false;
      if (e.is_all()) {
        granted = scope == PrivilegeScope::Full;
      } else if (e.is_selective()) {
        granted = effective_export(e, table).count(cls) > 0;
      }
      if (granted) p[name].insert(f.name());
    }
  }
  return p;
}

bool privilege_leq(const Privilege& p, const Privilege& q) {
  for (const auto& [cls, feats] : p) {
    if (feats.empty()) continue;
    auto it = q.find(cls);
    if (it == q.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), feats.begin(), feats.end())) {
      return false;
    }
  }
  return true;
}

namespace {

bool pos_less(const SourcePos& a, const SourcePos& b) {
  return std::tie(a.file, a.line, a.column) < std::tie(b.file, b.line, b.column);
}

// Declaration order of the calling class, then source position.
void sort_diagnostics(std::vector<ConsistencyDiagnostic>& out, const ClassTable& table) {
  std::map<std::string, std::size_t> rank;
  for (std::size_t k = 0; k < table.names().size(); ++k) rank[table.names()[k]] = k;
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    std::size_t ra = rank[a.caller_class];
    std::size_t rb = rank[b.caller_class];
    if (ra != rb) return ra < rb;
    return pos_less(a.pos, b.pos);
  });
}

class HidingChecker {
 public:
  HidingChecker(const ClassTable& table, std::vector<ConsistencyDiagnostic>& out)
      : table_(table), out_(out) {}

  void run(const ClassDecl& c) {
    cls_ = c.name;
    for (const auto& f : c.features) {
      if (!f.is_routine()) continue;
      where_ = f.name;
      for (const auto& a : f.require) expr(a.expr);
      walk_instrs(
          f.body, [&](const Instr& i) { instr(i); }, [&](const ExprPtr& e) { expr(e); });
      for (const auto& a : f.ensure) expr(a.expr);
    }
    where_ = "<invariant>";
    for (const auto& a : c.invariant) expr(a.expr);
  }

 private:
  void report(const std::string& target, const std::string& feature, const ExportSet& exports,
              const SourcePos& pos, const std::string& what) {
    if (effective_export(exports, table_).count(cls_)) return;
    ConsistencyDiagnostic d;
    d.caller_class = cls_;
    d.caller_routine = where_;
    d.callee_class = target;
    d.callee_routine = feature;
    d.pos = pos;
    d.rule = RulePart::ClassicHiding;
    d.callee_exports = exports;
    d.message = cls_ + "." + where_ + " " + what + " " + target + "." + feature +
                ", which is exported to " + exports.str();
    out_.push_back(std::move(d));
  }

  void expr(const ExprPtr& root) {
    walk(root, [&](const Expr& e) {
      if (e.kind != Expr::Kind::Qualified) return;
      const std::string& target = e.lhs->type.base;
      const FlatFeature* f = table_.at(target).find(e.name);
      report(target, e.name, f->exports(), e.pos, "calls");
    });
  }

  void instr(const Instr& i) {
    if (i.kind != Instr::Kind::Create || i.creator.empty()) return;
    const TypeRef* t = target_type(i.target);
    if (!t) return;
    const FlatClass& created = table_.at(t->base);
    report(created.name, i.creator, created.create_exports, i.pos, "creates through");
  }

  const TypeRef* target_type(const std::string& name) {
    const FlatClass& c = table_.at(cls_);
    if (name == "Result") {
      const FlatFeature* f = c.find(where_);
      return f && f->decl->result ? &*f->decl->result : nullptr;
    }
    const FlatFeature* f = c.find(name);
    return f && f->decl->result ? &*f->decl->result : nullptr;
  }

  const ClassTable& table_;
  std::vector<ConsistencyDiagnostic>& out_;
  std::string cls_;
  std::string where_;
};

}  // namespace

std::vector<ConsistencyDiagnostic> check_information_hiding(const ClassTable& table) {
  std::vector<ConsistencyDiagnostic> out;
  HidingChecker checker(table, out);
  for (const auto& d : table.decls()) checker.run(*d);
  sort_diagnostics(out, table);
  return out;
}

namespace {

struct ReachedCall {
  const Expr* call;
  std::string via;  // routine whose body contains the call
};

// Qualified routine calls in `r` and in every routine it reaches through
// unqualified calls, resolved in `cls`.
std::vector<ReachedCall> reached_calls(const FlatClass& cls, const std::string& r) {
  std::vector<ReachedCall> out;
  std::set<std::string> seen{r};
  std::deque<std::string> work{r};
  while (!work.empty()) {
    std::string name = work.front();
    work.pop_front();
    const FlatFeature* f = cls.find(name);
    if (!f || !f->decl->is_routine()) continue;
    for (const Expr* q : qualified_calls_in(f->decl->body)) {
      if (q->binding == Binding::Routine) out.push_back({q, name});
    }
    for (const auto& callee : unqualified_calls_in(f->decl->body)) {
      if (seen.insert(callee).second) work.push_back(callee);
    }
  }
  return out;
}

}  // namespace

std::vector<ConsistencyDiagnostic> check_export_consistency(const ClassTable& table,
                                                            ConsistencyMode mode) {
  std::vector<ConsistencyDiagnostic> out;
  std::map<std::string, Privilege> explicit_priv;
  auto priv = [&](const std::string& c) -> const Privilege& {
    auto it = explicit_priv.find(c);
    if (it == explicit_priv.end()) {
      it = explicit_priv.emplace(c, privilege_of(c, table, PrivilegeScope::ExplicitOnly)).first;
    }
    return it->second;
  };

  auto violates = [&](const std::string& caller_class, const ExportSet& caller,
                      const std::string& callee_class, const ExportSet& callee) {
    if (mode == ConsistencyMode::ExportSet) {
      return !export_leq(callee, caller, table);
    }
    if (caller.is_all()) return false;
    if (callee.is_all()) return true;
    return !privilege_leq(priv(callee_class), priv(caller_class));
  };

  for (const auto& d : table.decls()) {
    const FlatClass& cls = table.at(d->name);
    for (const auto& fd : d->features) {
      if (!fd.is_routine() || fd.exports.is_none()) continue;
      const FlatFeature* r = cls.find(fd.name);
      std::set<std::tuple<std::string, int, int, int>> seen;
      for (const auto& [call, via] : reached_calls(cls, fd.name)) {
        const std::string& target = call->lhs->type.base;
        const FlatFeature* s = table.at(target).find(call->name);
        std::vector<std::pair<RulePart, ExportSet>> checks{{RulePart::BroaderCallee, r->exports()}};
        if (r->precursor_exports) checks.emplace_back(RulePart::Precursor, *r->precursor_exports);
        for (const auto& [part, against] : checks) {
          if (!violates(cls.name, against, target, s->exports())) continue;
          auto key = std::make_tuple(call->pos.file, call->pos.line, call->pos.column,
                                     static_cast<int>(part));
          if (!seen.insert(key).second) continue;
          ConsistencyDiagnostic diag;
          diag.caller_class = cls.name;
          diag.caller_routine = fd.name;
          diag.callee_class = target;
          diag.callee_routine = call->name;
          diag.pos = call->pos;
          diag.rule = part;
          diag.mode = mode;
          diag.callee_exports = s->exports();
          diag.caller_exports = against;
          diag.message = cls.name + "." + fd.name + " (exported to " + against.str() + ") " +
                         (via == fd.name ? "calls " : "reaches through " + via + " a call to ") +
                         target + "." + call->name + " (exported to " + s->exports().str() + ")";
          if (part == RulePart::Precursor) diag.message += " [precursor export set]";
          out.push_back(std::move(diag));
        }
      }
    }
  }
  sort_diagnostics(out, table);
  return out;
}

}  // namespace invariantlab
