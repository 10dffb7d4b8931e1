#include "invariantlab/class_table.hpp"

#include <algorithm>
#include <functional>

#include "invariantlab/parser.hpp"

namespace invariantlab {

const FlatFeature* FlatClass::find(std::string_view feature) const {
  for (const auto& f : features) {
    if (f.name() == feature) return &f;
  }
  return nullptr;
}

bool FlatClass::is_creator(std::string_view feature) const {
  return std::find(creators.begin(), creators.end(), feature) != creators.end();
}

std::vector<const FlatFeature*> FlatClass::attributes() const {
  std::vector<const FlatFeature*> out;
  for (const auto& f : features) {
    if (f.decl->kind == FeatureDecl::Kind::Attribute) out.push_back(&f);
  }
  return out;
}

std::vector<const FlatFeature*> FlatClass::routines() const {
  std::vector<const FlatFeature*> out;
  for (const auto& f : features) {
    if (f.decl->is_routine()) out.push_back(&f);
  }
  return out;
}

const FlatClass* ClassTable::find(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

const FlatClass& ClassTable::at(std::string_view name) const {
  const FlatClass* c = find(name);
  if (!c) throw std::out_of_range("unknown class " + std::string(name));
  return *c;
}

bool ClassTable::is_descendant(std::string_view cls, std::string_view ancestor) const {
  auto it = descendants_.find(ancestor);
  return it != descendants_.end() && it->second.count(std::string(cls)) > 0;
}

const std::set<std::string>& ClassTable::descendants(std::string_view cls) const {
  static const std::set<std::string> kEmpty;
  auto it = descendants_.find(cls);
  return it == descendants_.end() ? kEmpty : it->second;
}

std::vector<std::string> ClassTable::ancestors(std::string_view cls) const {
  std::vector<std::string> out;
  const FlatClass* c = find(cls);
  while (c) {
    out.push_back(c->name);
    c = c->parent ? find(*c->parent) : nullptr;
  }
  return out;
}

std::set<std::string> effective_export(const ExportSet& e, const ClassTable& table) {
  std::set<std::string> out;
  switch (e.variant) {
    case ExportSet::Variant::All:
      out.insert(table.names().begin(), table.names().end());
      break;
    case ExportSet::Variant::NoneSet:
      break;
    case ExportSet::Variant::Names:
      for (const auto& n : e.names) {
        const auto& d = table.descendants(n);
        if (d.empty()) throw SemanticError({}, "unknown class " + n + " in export set");
        out.insert(d.begin(), d.end());
      }
      break;
  }
  return out;
}

bool export_leq(const ExportSet& a, const ExportSet& b, const ClassTable& table) {
  if (b.is_all()) return true;
  if (a.is_all()) return false;
  const auto eb = effective_export(b, table);
  for (const auto& n : effective_export(a, table)) {
    if (!eb.count(n)) return false;
  }
  return true;
}

bool conforms(const TypeRef& t1, const TypeRef& t2, const ClassTable& table) {
  if (t1.is_builtin() || t2.is_builtin()) return t1.base == t2.base;
  if (t1.is_void_type()) return t2.is_reference();
  return table.is_descendant(t1.base, t2.base);
}

std::set<std::string> unqualified_features_of(const ExprPtr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& n) {
    if ((n.kind == Expr::Kind::Name || n.kind == Expr::Kind::Call) &&
        (n.binding == Binding::Attribute || n.binding == Binding::Constant ||
         n.binding == Binding::Routine)) {
      out.insert(n.name);
    }
  });
  return out;
}

std::set<std::string> unqualified_features_of(const AssertionClause& clause) {
  return unqualified_features_of(clause.expr);
}

std::set<std::string> unqualified_calls_in(const std::vector<Instr>& body) {
  std::set<std::string> out;
  walk_instrs(
      body, [](const Instr&) {},
      [&](const ExprPtr& root) {
        walk(root, [&](const Expr& n) {
          if ((n.kind == Expr::Kind::Name || n.kind == Expr::Kind::Call) &&
              n.binding == Binding::Routine) {
            out.insert(n.name);
          }
        });
      });
  return out;
}

std::vector<const Expr*> qualified_calls_in(const std::vector<Instr>& body) {
  std::vector<const Expr*> out;
  walk_instrs(
      body, [](const Instr&) {},
      [&](const ExprPtr& root) {
        walk(root, [&](const Expr& n) {
          if (n.kind == Expr::Kind::Qualified) out.push_back(&n);
        });
      });
  return out;
}

namespace {

bool reserved(const std::string& name) { return name == "ANY" || name == "NONE"; }

TypeRef boolean() { return {kBoolean, false}; }
TypeRef integer() { return {kInteger, false}; }

class TypeChecker {
 public:
  TypeChecker(const ClassTable& table, const FlatClass& cls) : table_(table), cls_(cls) {}

  void check_feature(const FeatureDecl& f) {
    formals_.clear();
    for (const auto& p : f.formals) {
      if (formals_.count(p.name) || cls_.find(p.name)) {
        if (formals_.count(p.name)) {
          throw SemanticError(f.pos, "duplicate argument " + p.name + " in " + f.name);
        }
      }
      formals_[p.name] = p.type;
    }
    result_ = f.result;
    for (const auto& c : f.require) check_assertion(c);
    check_instrs(f.body);
    for (const auto& c : f.ensure) check_assertion(c);
  }

  void check_invariant(const AssertionClause& c) {
    formals_.clear();
    result_.reset();
    check_assertion(c);
  }

 private:
  void check_assertion(const AssertionClause& c) {
    TypeRef t = check(c.expr, false);
    if (t != boolean()) {
      throw SemanticError(c.expr->pos, "assertion clause '" + c.label() + "' is not BOOLEAN");
    }
  }

  const FlatClass& class_of(const TypeRef& t, const SourcePos& pos) {
    if (!t.is_reference() || t.is_void_type()) {
      throw SemanticError(pos, "qualified call on a value of type " + t.str());
    }
    return table_.at(t.base);
  }

  void expect_type(const ExprPtr& e, const TypeRef& want, const char* what) {
    TypeRef got = check(e, false);
    if (!conforms(got, want, table_)) {
      throw SemanticError(e->pos, std::string(what) + ": expected " + want.str() + ", got " +
                                      (got.base.empty() ? "no value" : got.str()));
    }
  }

  void check_args(const Expr& call, const FeatureDecl& f) {
    if (call.args.size() != f.formals.size()) {
      throw SemanticError(call.pos, f.name + " expects " + std::to_string(f.formals.size()) +
                                        " argument(s), got " + std::to_string(call.args.size()));
    }
    for (std::size_t k = 0; k < call.args.size(); ++k) {
      expect_type(call.args[k], f.formals[k].type, "argument type mismatch");
    }
  }

  // Annotates `feature` use on `e` and returns its type. Procedures are only
  // legal as instructions.
  TypeRef bind_feature(Expr& e, const FeatureDecl& f, bool as_instruction) {
    switch (f.kind) {
      case FeatureDecl::Kind::Attribute:
      case FeatureDecl::Kind::Constant:
        if (!e.args.empty() || e.kind == Expr::Kind::Call) {
          throw SemanticError(e.pos, f.name + " is not a routine");
        }
        e.binding = f.kind == FeatureDecl::Kind::Attribute ? Binding::Attribute : Binding::Constant;
        return *f.result;
      case FeatureDecl::Kind::Routine:
        break;
    }
    check_args(e, f);
    e.binding = Binding::Routine;
    if (!f.result) {
      if (!as_instruction) throw SemanticError(e.pos, "procedure " + f.name + " used as a value");
      return {};
    }
    return *f.result;
  }

  TypeRef check_builtin(Expr& e, bool as_instruction) {
    bool put = e.name == kTribePut;
    if (put && !as_instruction) throw SemanticError(e.pos, "tribe_put used as a value");
    if (e.args.empty() || e.args.size() > 2) {
      throw SemanticError(e.pos, e.name + " expects 1 or 2 reference arguments");
    }
    for (const auto& a : e.args) {
      TypeRef t = check(a, false);
      if (!t.is_reference()) throw SemanticError(a->pos, e.name + " expects references");
    }
    e.binding = Binding::Builtin;
    return put ? TypeRef{} : boolean();
  }

  TypeRef check(const ExprPtr& ep, bool as_instruction) {
    Expr& e = *ep;
    e.type = check_inner(e, as_instruction);
    return e.type;
  }

  TypeRef check_inner(Expr& e, bool as_instruction) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return integer();
      case Expr::Kind::BoolLit:
        return boolean();
      case Expr::Kind::VoidLit:
        return {kVoidType, true};
      case Expr::Kind::Current:
        return {cls_.name, false};
      case Expr::Kind::Result:
        if (!result_) throw SemanticError(e.pos, "'Result' outside a function");
        return *result_;
      case Expr::Kind::Old:
        return check(e.lhs, false);
      case Expr::Kind::Name: {
        auto it = formals_.find(e.name);
        if (it != formals_.end()) {
          e.binding = Binding::Local;
          return it->second;
        }
        const FlatFeature* f = cls_.find(e.name);
        if (!f) throw SemanticError(e.pos, "unknown feature " + e.name + " in " + cls_.name);
        return bind_feature(e, *f->decl, as_instruction);
      }
      case Expr::Kind::Call: {
        if (e.name == kTribePut || e.name == kTribeHas) return check_builtin(e, as_instruction);
        const FlatFeature* f = cls_.find(e.name);
        if (!f) throw SemanticError(e.pos, "unknown feature " + e.name + " in " + cls_.name);
        return bind_feature(e, *f->decl, as_instruction);
      }
      case Expr::Kind::Qualified: {
        TypeRef target = check(e.lhs, false);
        const FlatClass& tc = class_of(target, e.pos);
        const FlatFeature* f = tc.find(e.name);
        if (!f) throw SemanticError(e.pos, "unknown feature " + e.name + " in " + tc.name);
        // `x.f` with no parentheses may name any kind of feature.
        Binding saved = Binding::Unresolved;
        TypeRef t;
        if (f->decl->kind != FeatureDecl::Kind::Routine && !e.args.empty()) {
          throw SemanticError(e.pos, f->name() + " is not a routine");
        }
        if (f->decl->kind == FeatureDecl::Kind::Routine) {
          check_args(e, *f->decl);
          saved = Binding::Routine;
          if (!f->decl->result) {
            if (!as_instruction) {
              throw SemanticError(e.pos, "procedure " + f->name() + " used as a value");
            }
          } else {
            t = *f->decl->result;
          }
        } else {
          saved = f->decl->kind == FeatureDecl::Kind::Attribute ? Binding::Attribute
                                                                : Binding::Constant;
          t = *f->decl->result;
        }
        e.binding = saved;
        return t;
      }
      case Expr::Kind::Unary:
        if (e.op == Op::Not) {
          expect_type(e.lhs, boolean(), "operand of 'not'");
          return boolean();
        }
        expect_type(e.lhs, integer(), "operand of unary '-'");
        return integer();
      case Expr::Kind::Binary:
        switch (e.op) {
          case Op::Add:
          case Op::Sub:
            expect_type(e.lhs, integer(), "arithmetic operand");
            expect_type(e.rhs, integer(), "arithmetic operand");
            return integer();
          case Op::Lt:
          case Op::Le:
          case Op::Gt:
          case Op::Ge:
            expect_type(e.lhs, integer(), "comparison operand");
            expect_type(e.rhs, integer(), "comparison operand");
            return boolean();
          case Op::And:
          case Op::Or:
          case Op::Implies:
            expect_type(e.lhs, boolean(), "boolean operand");
            expect_type(e.rhs, boolean(), "boolean operand");
            return boolean();
          case Op::Eq:
          case Op::Ne: {
            TypeRef l = check(e.lhs, false);
            TypeRef r = check(e.rhs, false);
            bool ok = conforms(l, r, table_) || conforms(r, l, table_);
            if (!ok) {
              throw SemanticError(e.pos, "cannot compare " + l.str() + " with " + r.str());
            }
            return boolean();
          }
          default:
            break;
        }
        break;
    }
    throw SemanticError(e.pos, "malformed expression");
  }

  TypeRef lvalue_type(const Instr& i) {
    if (i.target == "Result") {
      if (!result_) throw SemanticError(i.pos, "'Result' outside a function");
      return *result_;
    }
    if (formals_.count(i.target)) {
      throw SemanticError(i.pos, "cannot assign to argument " + i.target);
    }
    const FlatFeature* f = cls_.find(i.target);
    if (!f || f->decl->kind != FeatureDecl::Kind::Attribute) {
      throw SemanticError(i.pos, i.target + " is not an attribute of " + cls_.name);
    }
    return *f->decl->result;
  }

  void check_instrs(const std::vector<Instr>& instrs) {
    for (const auto& i : instrs) check_instr(i);
  }

  void check_instr(const Instr& i) {
    switch (i.kind) {
      case Instr::Kind::Assign: {
        TypeRef t = lvalue_type(i);
        expect_type(i.expr, t, "assignment type mismatch");
        return;
      }
      case Instr::Kind::Call:
        check(i.expr, true);
        return;
      case Instr::Kind::Create: {
        TypeRef t = lvalue_type(i);
        if (!t.is_reference()) throw SemanticError(i.pos, "cannot create a " + t.str());
        const FlatClass& created = table_.at(t.base);
        if (i.creator.empty()) {
          if (created.has_create_clause) {
            throw SemanticError(i.pos, created.name + " requires a creation procedure");
          }
          return;
        }
        if (!created.is_creator(i.creator)) {
          throw SemanticError(i.pos, i.creator + " is not a creation procedure of " + created.name);
        }
        Expr call;
        call.kind = Expr::Kind::Call;
        call.pos = i.pos;
        call.args = i.args;
        call.name = i.creator;
        check_args(call, *created.find(i.creator)->decl);
        return;
      }
      case Instr::Kind::If:
        expect_type(i.expr, boolean(), "condition");
        check_instrs(i.then_branch);
        check_instrs(i.else_branch);
        return;
      case Instr::Kind::Loop:
        check_instrs(i.init);
        expect_type(i.expr, boolean(), "loop exit condition");
        check_instrs(i.body);
        return;
    }
  }

  const ClassTable& table_;
  const FlatClass& cls_;
  std::map<std::string, TypeRef> formals_;
  std::optional<TypeRef> result_;
};

}  // namespace

ClassTable build_class_table(std::vector<ClassDecl> units) {
  ClassTable table;
  std::map<std::string, ClassDecl*, std::less<>> by_name;
  for (auto& u : units) {
    if (reserved(u.name)) throw SemanticError(u.pos, u.name + " is a reserved class name");
    if (by_name.count(u.name)) throw SemanticError(u.pos, "duplicate class " + u.name);
    table.decls_.push_back(std::make_unique<ClassDecl>(clone(u)));
    by_name[u.name] = table.decls_.back().get();
    table.order_.push_back(u.name);
  }

  for (const auto& d : table.decls_) {
    if (d->parent && !by_name.count(*d->parent)) {
      throw SemanticError(d->pos, "unknown parent " + *d->parent + " of " + d->name);
    }
  }

  // Parents before children; detect cycles along the way.
  std::vector<ClassDecl*> topo;
  std::map<std::string, int> state;  // 1 = visiting, 2 = done
  std::function<void(ClassDecl*)> visit = [&](ClassDecl* c) {
    int& s = state[c->name];
    if (s == 2) return;
    if (s == 1) throw SemanticError(c->pos, "inheritance cycle through " + c->name);
    s = 1;
    if (c->parent) visit(by_name.at(*c->parent));
    state[c->name] = 2;
    topo.push_back(c);
  };
  for (const auto& d : table.decls_) visit(d.get());

  for (auto* c : topo) {
    std::string cur = c->name;
    table.descendants_[cur].insert(cur);
    for (auto* p = c; p->parent;) {
      p = by_name.at(*p->parent);
      table.descendants_[p->name].insert(cur);
    }
  }

  auto resolve = [&](TypeRef& t, const SourcePos& pos) {
    if (t.is_builtin()) {
      if (t.detachable) throw SemanticError(pos, "builtin type " + t.base + " cannot be detachable");
      return;
    }
    if (!by_name.count(t.base)) throw SemanticError(pos, "unknown type " + t.base);
  };
  auto check_exports = [&](const ExportSet& e, const SourcePos& pos) {
    for (const auto& n : e.names) {
      if (!by_name.count(n)) throw SemanticError(pos, "unknown class " + n + " in export set");
    }
  };

  for (auto* c : topo) {
    check_exports(c->create_exports, c->pos);
    std::set<std::string> own;
    for (auto& f : c->features) {
      if (!own.insert(f.name).second) {
        throw SemanticError(f.pos, "duplicate feature " + f.name + " in " + c->name);
      }
      if (f.name == kTribePut || f.name == kTribeHas) {
        throw SemanticError(f.pos, f.name + " is a reserved feature name");
      }
      check_exports(f.exports, f.pos);
      for (auto& p : f.formals) resolve(p.type, f.pos);
      if (f.result) resolve(*f.result, f.pos);
      if (f.kind == FeatureDecl::Kind::Constant && !f.result->is_builtin()) {
        throw SemanticError(f.pos, "constant " + f.name + " must have a builtin type");
      }
    }

    FlatClass flat;
    flat.name = c->name;
    flat.parent = c->parent;
    flat.decl = c;
    flat.has_create_clause = c->has_create_clause;
    flat.create_exports = c->create_exports;
    flat.creators = c->creators;
    if (c->parent) {
      const FlatClass& parent = table.classes_.at(*c->parent);
      flat.features = parent.features;
      flat.invariant = parent.invariant;
    }
    for (const auto& f : c->features) {
      auto it = std::find_if(flat.features.begin(), flat.features.end(),
                             [&](const FlatFeature& x) { return x.name() == f.name; });
      if (it == flat.features.end()) {
        flat.features.push_back({&f, c->name, std::nullopt, {}});
        continue;
      }
      const FeatureDecl& precursor = *it->decl;
      if (precursor.kind != f.kind) {
        throw SemanticError(f.pos, "redefinition of " + f.name + " changes its kind");
      }
      if (!export_leq(f.exports, precursor.exports, table)) {
        throw SemanticError(f.pos, "redefinition of " + f.name + " broadens its exports");
      }
      *it = {&f, c->name, precursor.exports, it->origin};
    }
    for (const auto& clause : c->invariant) flat.invariant.push_back({&clause, c->name});
    for (const auto& cr : flat.creators) {
      const FlatFeature* f = flat.find(cr);
      if (!f || !f->decl->is_routine() || f->decl->result) {
        throw SemanticError(c->pos, cr + " is not a procedure of " + c->name);
      }
    }
    table.classes_.emplace(c->name, std::move(flat));
  }

  for (auto* c : topo) {
    const FlatClass& flat = table.classes_.at(c->name);
    TypeChecker tc(table, flat);
    for (const auto& f : c->features) {
      if (f.is_routine()) tc.check_feature(f);
    }
    for (const auto& clause : c->invariant) tc.check_invariant(clause);
  }
  return table;
}

}  // namespace invariantlab
