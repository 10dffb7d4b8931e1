#include <sstream>

#include "invariantlab/parser.hpp"

namespace invariantlab {

namespace {

// Binding strength, matching the parser's levels.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      switch (e.op) {
        case Op::Implies: return 1;
        case Op::Or: return 2;
        case Op::And: return 3;
        case Op::Add:
        case Op::Sub: return 6;
        default: return 5;
      }
    case Expr::Kind::Unary:
      return e.op == Op::Not ? 4 : 7;
    case Expr::Kind::Old:
      return 7;
    case Expr::Kind::IntLit:
      return e.int_value < 0 ? 7 : 8;
    default:
      return 8;
  }
}

void print(std::ostream& os, const ExprPtr& e);

void print_at(std::ostream& os, const ExprPtr& e, bool parens) {
  if (parens) os << '(';
  print(os, e);
  if (parens) os << ')';
}

void print_args(std::ostream& os, const std::vector<ExprPtr>& args) {
  if (args.empty()) return;
  os << " (";
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) os << ", ";
    print(os, args[k]);
  }
  os << ')';
}

void print(std::ostream& os, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::IntLit:
      os << e->int_value;
      return;
    case Expr::Kind::BoolLit:
      os << (e->bool_value ? "True" : "False");
      return;
    case Expr::Kind::VoidLit:
      os << "Void";
      return;
    case Expr::Kind::Current:
      os << "Current";
      return;
    case Expr::Kind::Result:
      os << "Result";
      return;
    case Expr::Kind::Old:
      os << "old ";
      print_at(os, e->lhs, precedence(*e->lhs) < 7);
      return;
    case Expr::Kind::Name:
      os << e->name;
      return;
    case Expr::Kind::Call:
      os << e->name;
      if (e->args.empty()) {
        os << " ()";
      } else {
        print_args(os, e->args);
      }
      return;
    case Expr::Kind::Qualified:
      print_at(os, e->lhs, precedence(*e->lhs) < 8);
      os << '.' << e->name;
      print_args(os, e->args);
      return;
    case Expr::Kind::Unary:
      if (e->op == Op::Not) {
        os << "not ";
        print_at(os, e->lhs, precedence(*e->lhs) < 4);
      } else {
        os << '-';
        // A literal right after '-' would re-parse as a negative literal.
        bool parens = precedence(*e->lhs) < 7 || e->lhs->kind == Expr::Kind::IntLit ||
                      e->lhs->kind == Expr::Kind::Unary;
        print_at(os, e->lhs, parens);
      }
      return;
    case Expr::Kind::Binary: {
      int p = precedence(*e);
      int lp = precedence(*e->lhs);
      int rp = precedence(*e->rhs);
      bool lparen = false;
      bool rparen = false;
      if (e->op == Op::Implies) {
        lparen = lp <= p;
        rparen = rp < p;
      } else if (p == 5) {
        lparen = lp <= p;
        rparen = rp <= p;
      } else {
        lparen = lp < p;
        rparen = rp <= p;
      }
      print_at(os, e->lhs, lparen);
      os << ' ' << op_text(e->op) << ' ';
      print_at(os, e->rhs, rparen);
      return;
    }
  }
}

void indent(std::ostream& os, int level) {
  for (int k = 0; k < level; ++k) os << '\t';
}

void print_instrs(std::ostream& os, const std::vector<Instr>& instrs, int level);

void print_instr(std::ostream& os, const Instr& i, int level) {
  indent(os, level);
  switch (i.kind) {
    case Instr::Kind::Assign:
      os << i.target << " := ";
      print(os, i.expr);
      os << '\n';
      return;
    case Instr::Kind::Call:
      print(os, i.expr);
      os << '\n';
      return;
    case Instr::Kind::Create:
      os << "create " << i.target;
      if (!i.creator.empty()) {
        os << '.' << i.creator;
        print_args(os, i.args);
      }
      os << '\n';
      return;
    case Instr::Kind::If:
      os << "if ";
      print(os, i.expr);
      os << " then\n";
      print_instrs(os, i.then_branch, level + 1);
      if (!i.else_branch.empty()) {
        indent(os, level);
        os << "else\n";
        print_instrs(os, i.else_branch, level + 1);
      }
      indent(os, level);
      os << "end\n";
      return;
    case Instr::Kind::Loop:
      os << "from\n";
      print_instrs(os, i.init, level + 1);
      indent(os, level);
      os << "until\n";
      indent(os, level + 1);
      print(os, i.expr);
      os << '\n';
      indent(os, level);
      os << "loop\n";
      print_instrs(os, i.body, level + 1);
      indent(os, level);
      os << "end\n";
      return;
  }
}

void print_instrs(std::ostream& os, const std::vector<Instr>& instrs, int level) {
  for (const auto& i : instrs) print_instr(os, i, level);
}

void print_clauses(std::ostream& os, const std::vector<AssertionClause>& clauses, int level) {
  for (const auto& c : clauses) {
    indent(os, level);
    if (c.tag) os << *c.tag << ": ";
    print(os, c.expr);
    os << '\n';
  }
}

std::string export_prefix(const ExportSet& e) {
  return e.is_all() ? std::string() : " " + e.str();
}

void print_feature(std::ostream& os, const FeatureDecl& f) {
  indent(os, 1);
  os << f.name;
  if (!f.formals.empty()) {
    os << " (";
    for (std::size_t k = 0; k < f.formals.size(); ++k) {
      if (k) os << "; ";
      os << f.formals[k].name << ": " << f.formals[k].type.str();
    }
    os << ')';
  }
  if (f.result) os << ": " << f.result->str();
  switch (f.kind) {
    case FeatureDecl::Kind::Attribute:
      os << '\n';
      return;
    case FeatureDecl::Kind::Constant:
      os << " constant " << f.constant_value << '\n';
      return;
    case FeatureDecl::Kind::Routine:
      break;
  }
  os << '\n';
  if (!f.require.empty()) {
    indent(os, 2);
    os << "require\n";
    print_clauses(os, f.require, 3);
  }
  indent(os, 2);
  os << "do\n";
  print_instrs(os, f.body, 3);
  if (!f.ensure.empty()) {
    indent(os, 2);
    os << "ensure\n";
    print_clauses(os, f.ensure, 3);
  }
  indent(os, 2);
  os << "end\n";
}

}  // namespace

std::string expr_to_string(const ExprPtr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string instr_to_string(const Instr& i) {
  std::ostringstream os;
  print_instr(os, i, 0);
  std::string s = os.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string AssertionClause::label() const { return tag ? *tag : expr_to_string(expr); }

std::string pretty_print(const ClassDecl& c) {
  std::ostringstream os;
  os << "class " << c.name;
  if (!c.parent && !c.has_create_clause && c.features.empty() && c.invariant.empty()) {
    os << " end\n";
    return os.str();
  }
  os << '\n';
  if (c.parent) os << "inherit " << *c.parent << '\n';
  if (c.has_create_clause) {
    os << "create" << export_prefix(c.create_exports) << ' ';
    for (std::size_t k = 0; k < c.creators.size(); ++k) {
      if (k) os << ", ";
      os << c.creators[k];
    }
    os << '\n';
  }
  const ExportSet* open = nullptr;
  for (const auto& f : c.features) {
    if (!open || *open != f.exports) {
      os << "feature" << export_prefix(f.exports) << '\n';
      open = &f.exports;
    }
    print_feature(os, f);
  }
  if (!c.invariant.empty()) {
    os << "invariant\n";
    print_clauses(os, c.invariant, 1);
  }
  os << "end\n";
  return os.str();
}

std::string pretty_print(const std::vector<ClassDecl>& classes) {
  std::string out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (k) out += '\n';
    out += pretty_print(classes[k]);
  }
  return out;
}

}  // namespace invariantlab
