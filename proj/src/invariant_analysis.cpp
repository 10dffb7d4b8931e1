#include "invariantlab/invariant_analysis.hpp"

#include <algorithm>
#include <tuple>

namespace invariantlab {

const char* to_string(ExternalSanity v) { return v == ExternalSanity::Modifier ? "modifier" : "type"; }
const char* to_string(InternalSanity v) { return v == InternalSanity::Strict ? "strict" : "literal"; }
const char* to_string(SanityDiagnostic::Clause c) {
  return c == SanityDiagnostic::Clause::External ? "external" : "internal";
}

namespace {

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

PartialInvariant partial_invariant(const std::string& cls, const ExportSet& e,
                                   const ClassTable& table) {
  const FlatClass& c = table.at(cls);
  PartialInvariant out{cls, e, {}};
  for (const auto& clause : c.invariant) {
    bool keep = true;
    for (const auto& name : unqualified_features_of(*clause.clause)) {
      const FlatFeature* f = c.find(name);
      if (f && !export_leq(f->exports(), e, table)) {
        keep = false;
        break;
      }
    }
    if (keep) out.clauses.push_back(clause);
  }
  return out;
}

PartialInvariant inv_r(const std::string& cls, const std::string& r, const ClassTable& table) {
  const FlatFeature* f = table.at(cls).find(r);
  if (!f) throw std::out_of_range("unknown feature " + cls + "." + r);
  return partial_invariant(cls, f->exports(), table);
}

std::vector<Inhibition> extract_inhibitions(const ClassTable& table) {
  std::vector<Inhibition> out;
  for (const auto& d : table.decls()) {
    for (const auto& clause : d->invariant) {
      walk(clause.expr, [&](const Expr& e) {
        if (e.kind != Expr::Kind::Qualified || e.lhs->kind != Expr::Kind::Name) return;
        if (e.lhs->binding != Binding::Attribute && e.lhs->binding != Binding::Routine) return;
        out.push_back({e.lhs->type.base, d->name, e.lhs->name, e.name, clause.label(), e.pos});
      });
    }
  }
  return out;
}

namespace {

std::set<std::string> assigned_in(const std::vector<Instr>& body) {
  std::set<std::string> out;
  walk_instrs(
      body,
      [&](const Instr& i) {
        if ((i.kind == Instr::Kind::Assign || i.kind == Instr::Kind::Create) &&
            i.target != "Result") {
          out.insert(i.target);
        }
      },
      [](const ExprPtr&) {});
  return out;
}

// Attributes a function depends on, through the functions it calls.
std::set<std::string> attributes_read(const FlatClass& c, const std::string& fn) {
  std::set<std::string> attrs;
  std::set<std::string> seen{fn};
  std::vector<std::string> work{fn};
  while (!work.empty()) {
    const FlatFeature* f = c.find(work.back());
    work.pop_back();
    if (!f) continue;
    walk_instrs(
        f->decl->body, [](const Instr&) {},
        [&](const ExprPtr& root) {
          walk(root, [&](const Expr& e) {
            if (e.kind != Expr::Kind::Name && e.kind != Expr::Kind::Call) return;
            if (e.binding == Binding::Attribute) attrs.insert(e.name);
            if (e.binding == Binding::Routine && seen.insert(e.name).second) {
              work.push_back(e.name);
            }
          });
        });
  }
  return attrs;
}

}  // namespace

std::set<std::string> modifier_closure(const std::string& cls, const std::string& feature,
                                       const ClassTable& table) {
  const FlatClass& c = table.at(cls);
  const FlatFeature* target = c.find(feature);
  if (!target) throw std::out_of_range("unknown feature " + cls + "." + feature);

  std::set<std::string> watched;
  if (target->decl->kind == FeatureDecl::Kind::Attribute) {
    watched.insert(feature);
  } else if (target->decl->is_function()) {
    watched = attributes_read(c, feature);
  }

  std::set<std::string> out;
  for (const auto* r : c.routines()) {
    auto assigned = assigned_in(r->decl->body);
    for (const auto& a : watched) {
      if (assigned.count(a)) {
        out.insert(r->name());
        break;
      }
    }
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto* r : c.routines()) {
      if (out.count(r->name())) continue;
      for (const auto& callee : unqualified_calls_in(r->decl->body)) {
        if (out.count(callee)) {
          out.insert(r->name());
          grew = true;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<SanityDiagnostic> check_external_sanity(const Inhibition& i, const ClassTable& table,
                                                    ExternalSanity variant) {
  std::vector<SanityDiagnostic> out;
  const FlatClass& t = table.at(i.inhibitor);
  const auto& allowed = table.descendants(i.inhibited);
  auto flag = [&](const FlatFeature& f, const std::string& why) {
    if (!f.exports().is_all() && subset(effective_export(f.exports(), table), allowed)) return;
    out.push_back({i, SanityDiagnostic::Clause::External, t.name, f.name(),
                   t.name + "." + f.name() + " " + why + " but is exported to " +
                       f.exports().str() + ", beyond " + i.inhibited});
  };

  const FlatFeature* query = t.find(i.query);
  if (variant == ExternalSanity::Modifier) {
    flag(*query, "is the query " + i.tag + "." + i.query + " of " + i.inhibited + "'s invariant");
    auto modifiers = modifier_closure(t.name, i.query, table);
    for (const auto* f : t.routines()) {
      if (modifiers.count(f->name())) {
        flag(*f, "may modify " + i.query);
      }
    }
    return out;
  }
  TypeRef qt = *query->decl->result;
  for (const auto& f : t.features) {
    bool related = f.decl->result && conforms(*f.decl->result, qt, table);
    for (const auto& p : f.decl->formals) related = related || conforms(p.type, qt, table);
    if (related) flag(f, "has a signature conforming to " + qt.str());
  }
  return out;
}

std::vector<SanityDiagnostic> check_internal_sanity(const Inhibition& i, const ClassTable& table,
                                                    InternalSanity variant) {
  std::vector<SanityDiagnostic> out;
  const FlatClass& d = table.at(i.inhibited);
  TypeRef inhibitor{i.inhibitor, false};
  auto self_available = [&](const ExportSet& e) { return effective_export(e, table).count(d.name) > 0; };
  for (const auto& f : d.features) {
    if (variant == InternalSanity::Literal && f.name() == i.tag) continue;
    std::string sig;
    if (f.decl->result && conforms(*f.decl->result, inhibitor, table)) sig = "result";
    for (const auto& p : f.decl->formals) {
      if (sig.empty() && conforms(p.type, inhibitor, table)) sig = "argument " + p.name;
    }
    if (sig.empty()) continue;
    std::string how;
    if (self_available(f.exports())) {
      how = "for calls (exported to " + f.exports().str() + ")";
    } else if (d.has_create_clause && d.is_creator(f.name()) && self_available(d.create_exports)) {
      how = "for creation (create clause " + d.create_exports.str() + ")";
    }
    if (how.empty()) continue;
    out.push_back({i, SanityDiagnostic::Clause::Internal, d.name, f.name(),
                   d.name + "." + f.name() + " has " + sig + " of type conforming to " +
                       i.inhibitor + " and is available to " + d.name + " itself " + how});
  }
  return out;
}

std::vector<SanityDiagnostic> check_inhibition_rule(const ClassTable& table,
                                                    const InhibitionConfig& config) {
  std::vector<SanityDiagnostic> out;
  std::set<std::tuple<std::string, std::string, std::string, std::string, int, std::string>> seen;
  auto add = [&](std::vector<SanityDiagnostic> ds) {
    for (auto& d : ds) {
      const Inhibition& i = d.inhibition;
      auto key = std::make_tuple(i.inhibitor, i.inhibited, i.tag, i.query,
                                 static_cast<int>(d.clause), d.feature);
      if (seen.insert(key).second) out.push_back(std::move(d));
    }
  };
  for (const auto& i : extract_inhibitions(table)) {
    add(check_external_sanity(i, table, config.external));
    add(check_internal_sanity(i, table, config.internal));
  }
  return out;
}

}  // namespace invariantlab
