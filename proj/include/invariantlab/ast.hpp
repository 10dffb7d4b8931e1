// Abstract syntax for Mini-O, the small contract-equipped object language
// analyzed by invariantlab.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace invariantlab {

struct SourcePos {
  std::string file;
  int line = 1;
  int column = 1;

  std::string str() const;
};

/// Names of the two builtin types. Everything else is a class name.
inline constexpr const char* kInteger = "INTEGER";
inline constexpr const char* kBoolean = "BOOLEAN";
/// Pseudo type of the `Void` literal; conforms to every reference type.
inline constexpr const char* kVoidType = "NONE";

struct TypeRef {
  std::string base;
  bool detachable = false;

  bool is_builtin() const { return base == kInteger || base == kBoolean; }
  bool is_reference() const { return !base.empty() && !is_builtin(); }
  bool is_void_type() const { return base == kVoidType; }
  std::string str() const;

  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

/// Who may call a feature: everyone, a list of classes (and their
/// descendants), or nobody.
struct ExportSet {
  enum class Variant { All, Names, NoneSet };

  Variant variant = Variant::All;
  std::set<std::string> names;

  static ExportSet all() { return {}; }
  static ExportSet none() { return {Variant::NoneSet, {}}; }
  /// Normalizes: ANY anywhere gives All, NONE is dropped, empty gives NoneSet.
  static ExportSet of(const std::vector<std::string>& classes);

  bool is_all() const { return variant == Variant::All; }
  bool is_none() const { return variant == Variant::NoneSet; }
  bool is_selective() const { return variant == Variant::Names; }
  std::string str() const;

  friend bool operator==(const ExportSet&, const ExportSet&) = default;
};

enum class Op { Add, Sub, Neg, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies, Not };

const char* op_text(Op op);

/// How a name was resolved by the type checker.
enum class Binding { Unresolved, Local, Attribute, Constant, Routine, Builtin };

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Kind {
    IntLit,
    BoolLit,
    VoidLit,
    Current,
    Result,
    Old,        // operand in `lhs`
    Name,       // bare identifier: local, attribute, constant or 0-ary call
    Call,       // unqualified call with an argument list
    Qualified,  // lhs.name(args)
    Unary,      // op lhs
    Binary,     // lhs op rhs
  };

  Kind kind = Kind::IntLit;
  SourcePos pos;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string name;
  Op op = Op::Add;
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<ExprPtr> args;

  // Filled in by the type checker.
  TypeRef type;
  Binding binding = Binding::Unresolved;
};

ExprPtr make_int(std::int64_t v, SourcePos pos = {});
ExprPtr make_bool(bool v, SourcePos pos = {});
ExprPtr make_void(SourcePos pos = {});
ExprPtr make_current(SourcePos pos = {});
ExprPtr make_name(std::string name, SourcePos pos = {});
ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos = {});
ExprPtr make_qualified(ExprPtr target, std::string name, std::vector<ExprPtr> args,
                       SourcePos pos = {});
ExprPtr make_unary(Op op, ExprPtr operand, SourcePos pos = {});
ExprPtr make_binary(Op op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});

struct Instr {
  enum class Kind { Assign, Call, Create, If, Loop };

  Kind kind = Kind::Call;
  SourcePos pos;
  std::string target;   // Assign: lvalue; Create: variable
  std::string creator;  // Create: creation procedure, empty for default creation
  ExprPtr expr;         // Assign: value; Call: call expression; If: condition; Loop: exit condition
  std::vector<ExprPtr> args;       // Create arguments
  std::vector<Instr> then_branch;  // If
  std::vector<Instr> else_branch;  // If
  std::vector<Instr> init;         // Loop `from` part
  std::vector<Instr> body;         // Loop body
};

struct AssertionClause {
  std::optional<std::string> tag;
  ExprPtr expr;

  /// The tag, or the clause text when untagged.
  std::string label() const;
};

struct Formal {
  std::string name;
  TypeRef type;
};

struct FeatureDecl {
  enum class Kind { Attribute, Constant, Routine };

  std::string name;
  Kind kind = Kind::Attribute;
  SourcePos pos;
  std::vector<Formal> formals;
  std::optional<TypeRef> result;
  ExportSet exports;
  std::int64_t constant_value = 0;
  std::vector<AssertionClause> require;
  std::vector<AssertionClause> ensure;
  std::vector<Instr> body;

  bool is_routine() const { return kind == Kind::Routine; }
  bool is_function() const { return is_routine() && result.has_value(); }
  bool is_query() const { return kind != Kind::Routine || result.has_value(); }
};

struct ClassDecl {
  std::string name;
  SourcePos pos;
  std::optional<std::string> parent;
  bool has_create_clause = false;
  ExportSet create_exports;
  std::vector<std::string> creators;
  std::vector<FeatureDecl> features;
  std::vector<AssertionClause> invariant;
};

// Deep copies; type annotations are copied along.
ExprPtr clone(const ExprPtr& e);
Instr clone(const Instr& i);
FeatureDecl clone(const FeatureDecl& f);
ClassDecl clone(const ClassDecl& c);

// Structural equality, ignoring source positions and type annotations.
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);
bool structurally_equal(const Instr& a, const Instr& b);
bool structurally_equal(const FeatureDecl& a, const FeatureDecl& b);
bool structurally_equal(const ClassDecl& a, const ClassDecl& b);

/// Calls `fn` on every node of the tree rooted at `e`, parents first.
template <typename Fn>
void walk(const ExprPtr& e, Fn&& fn) {
  if (!e) return;
  fn(*e);
  walk(e->lhs, fn);
  walk(e->rhs, fn);
  for (const auto& a : e->args) walk(a, fn);
}

/// Calls `ifn` on every instruction and `efn` on every expression root in
/// the instruction list, recursively.
template <typename InstrFn, typename ExprFn>
void walk_instrs(const std::vector<Instr>& instrs, InstrFn&& ifn, ExprFn&& efn) {
  for (const auto& i : instrs) {
    ifn(i);
    if (i.expr) efn(i.expr);
    for (const auto& a : i.args) efn(a);
    walk_instrs(i.then_branch, ifn, efn);
    walk_instrs(i.else_branch, ifn, efn);
    walk_instrs(i.init, ifn, efn);
    walk_instrs(i.body, ifn, efn);
  }
}

}  // namespace invariantlab
