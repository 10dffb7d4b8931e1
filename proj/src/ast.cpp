#include "invariantlab/ast.hpp"

namespace invariantlab {

std::string SourcePos::str() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  return out + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::string TypeRef::str() const { return detachable ? "detachable " + base : base; }

ExportSet ExportSet::of(const std::vector<std::string>& classes) {
  ExportSet e;
  e.variant = Variant::Names;
  for (const auto& c : classes) {
    if (c == "ANY") return all();
    if (c == "NONE") continue;
    e.names.insert(c);
  }
  if (e.names.empty()) return none();
  return e;
}

std::string ExportSet::str() const {
  switch (variant) {
    case Variant::All:
      return "{ANY}";
    case Variant::NoneSet:
      return "{NONE}";
    case Variant::Names:
      break;
  }
  std::string out = "{";
  bool first = true;
  for (const auto& n : names) {
    if (!first) out += ", ";
    out += n;
    first = false;
  }
  return out + "}";
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Neg: return "-";
    case Op::Eq: return "=";
    case Op::Ne: return "/=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Implies: return "implies";
    case Op::Not: return "not";
  }
  return "?";
}

namespace {

ExprPtr make(Expr::Kind kind, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->pos = std::move(pos);
  return e;
}

}  // namespace

ExprPtr make_int(std::int64_t v, SourcePos pos) {
  auto e = make(Expr::Kind::IntLit, std::move(pos));
  e->int_value = v;
  return e;
}

ExprPtr make_bool(bool v, SourcePos pos) {
  auto e = make(Expr::Kind::BoolLit, std::move(pos));
  e->bool_value = v;
  return e;
}

ExprPtr make_void(SourcePos pos) { return make(Expr::Kind::VoidLit, std::move(pos)); }

ExprPtr make_current(SourcePos pos) { return make(Expr::Kind::Current, std::move(pos)); }

ExprPtr make_name(std::string name, SourcePos pos) {
  auto e = make(Expr::Kind::Name, std::move(pos));
  e->name = std::move(name);
  return e;
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos) {
  auto e = make(Expr::Kind::Call, std::move(pos));
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

ExprPtr make_qualified(ExprPtr target, std::string name, std::vector<ExprPtr> args,
                       SourcePos pos) {
  auto e = make(Expr::Kind::Qualified, std::move(pos));
  e->lhs = std::move(target);
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

ExprPtr make_unary(Op op, ExprPtr operand, SourcePos pos) {
  auto e = make(Expr::Kind::Unary, std::move(pos));
  e->op = op;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr make_binary(Op op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = make(Expr::Kind::Binary, std::move(pos));
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr clone(const ExprPtr& e) {
  if (!e) return nullptr;
  auto c = std::make_shared<Expr>(*e);
  c->lhs = clone(e->lhs);
  c->rhs = clone(e->rhs);
  for (auto& a : c->args) a = clone(a);
  return c;
}

namespace {

std::vector<Instr> clone_all(const std::vector<Instr>& v) {
  std::vector<Instr> out;
  out.reserve(v.size());
  for (const auto& i : v) out.push_back(clone(i));
  return out;
}

std::vector<AssertionClause> clone_all(const std::vector<AssertionClause>& v) {
  std::vector<AssertionClause> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back({c.tag, clone(c.expr)});
  return out;
}

}  // namespace

Instr clone(const Instr& i) {
  Instr c = i;
  c.expr = clone(i.expr);
  for (auto& a : c.args) a = clone(a);
  c.then_branch = clone_all(i.then_branch);
  c.else_branch = clone_all(i.else_branch);
  c.init = clone_all(i.init);
  c.body = clone_all(i.body);
  return c;
}

FeatureDecl clone(const FeatureDecl& f) {
  FeatureDecl c = f;
  c.require = clone_all(f.require);
  c.ensure = clone_all(f.ensure);
  c.body = clone_all(f.body);
  return c;
}

ClassDecl clone(const ClassDecl& c) {
  ClassDecl out = c;
  out.features.clear();
  for (const auto& f : c.features) out.features.push_back(clone(f));
  out.invariant = clone_all(c.invariant);
  return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case Expr::Kind::IntLit:
      if (a->int_value != b->int_value) return false;
      break;
    case Expr::Kind::BoolLit:
      if (a->bool_value != b->bool_value) return false;
      break;
    case Expr::Kind::Unary:
    case Expr::Kind::Binary:
      if (a->op != b->op) return false;
      break;
    default:
      break;
  }
  if (!structurally_equal(a->lhs, b->lhs) || !structurally_equal(a->rhs, b->rhs)) return false;
  for (std::size_t k = 0; k < a->args.size(); ++k) {
    if (!structurally_equal(a->args[k], b->args[k])) return false;
  }
  return true;
}

namespace {

bool equal_all(const std::vector<Instr>& a, const std::vector<Instr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!structurally_equal(a[k], b[k])) return false;
  }
  return true;
}

bool equal_all(const std::vector<AssertionClause>& a, const std::vector<AssertionClause>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].tag != b[k].tag || !structurally_equal(a[k].expr, b[k].expr)) return false;
  }
  return true;
}

bool equal_all(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!structurally_equal(a[k], b[k])) return false;
  }
  return true;
}

}  // namespace

bool structurally_equal(const Instr& a, const Instr& b) {
  return a.kind == b.kind && a.target == b.target && a.creator == b.creator &&
         structurally_equal(a.expr, b.expr) && equal_all(a.args, b.args) &&
         equal_all(a.then_branch, b.then_branch) && equal_all(a.else_branch, b.else_branch) &&
         equal_all(a.init, b.init) && equal_all(a.body, b.body);
}

bool structurally_equal(const FeatureDecl& a, const FeatureDecl& b) {
  if (a.name != b.name || a.kind != b.kind || a.result != b.result || a.exports != b.exports ||
      a.constant_value != b.constant_value || a.formals.size() != b.formals.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.formals.size(); ++k) {
    if (a.formals[k].name != b.formals[k].name || a.formals[k].type != b.formals[k].type) {
      return false;
    }
  }
  return equal_all(a.require, b.require) && equal_all(a.ensure, b.ensure) &&
         equal_all(a.body, b.body);
}

bool structurally_equal(const ClassDecl& a, const ClassDecl& b) {
  if (a.name != b.name || a.parent != b.parent || a.has_create_clause != b.has_create_clause ||
      a.create_exports != b.create_exports || a.creators != b.creators ||
      a.features.size() != b.features.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.features.size(); ++k) {
    if (!structurally_equal(a.features[k], b.features[k])) return false;
  }
  return equal_all(a.invariant, b.invariant);
}

}  // namespace invariantlab
