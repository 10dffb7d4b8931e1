// Class table construction: inheritance flattening, type resolution, type
// checking, and the export/conformance queries every analysis builds on.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invariantlab/ast.hpp"

namespace invariantlab {

/// Ill-formed program: duplicate or unknown names, inheritance cycles,
/// type errors.
class SemanticError : public std::runtime_error {
 public:
  SemanticError(SourcePos pos, const std::string& message)
      : std::runtime_error(message), pos_(std::move(pos)) {}
  const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct FlatFeature {
  const FeatureDecl* decl = nullptr;
  std::string origin;  // class whose text declares `decl`
  // Set when `decl` redefines an inherited feature.
  std::optional<ExportSet> precursor_exports;
  std::string precursor_origin;

  const std::string& name() const { return decl->name; }
  const ExportSet& exports() const { return decl->exports; }
  bool is_redefinition() const { return precursor_exports.has_value(); }
};

struct InvariantClause {
  const AssertionClause* clause = nullptr;
  std::string origin;
};

struct FlatClass {
  std::string name;
  std::optional<std::string> parent;
  const ClassDecl* decl = nullptr;
  bool has_create_clause = false;
  ExportSet create_exports;
  std::vector<std::string> creators;
  std::vector<FlatFeature> features;
  std::vector<InvariantClause> invariant;  // ancestors' clauses first

  const FlatFeature* find(std::string_view feature) const;
  bool is_creator(std::string_view feature) const;
  std::vector<const FlatFeature*> attributes() const;
  std::vector<const FlatFeature*> routines() const;
};

class ClassTable {
 public:
  ClassTable() = default;
  ClassTable(ClassTable&&) = default;
  ClassTable& operator=(ClassTable&&) = default;
  ClassTable(const ClassTable&) = delete;
  ClassTable& operator=(const ClassTable&) = delete;

  const FlatClass* find(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  const FlatClass& at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  /// Declaration order.
  const std::vector<std::string>& names() const { return order_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  /// Reflexive: every class is its own descendant.
  bool is_descendant(std::string_view cls, std::string_view ancestor) const;
  const std::set<std::string>& descendants(std::string_view cls) const;
  /// `cls` first, then its parent chain.
  std::vector<std::string> ancestors(std::string_view cls) const;

  /// The declarations, cloned and type-annotated.
  const std::vector<std::unique_ptr<ClassDecl>>& decls() const { return decls_; }

 private:
  friend ClassTable build_class_table(std::vector<ClassDecl> units);

  std::vector<std::unique_ptr<ClassDecl>> decls_;
  std::vector<std::string> order_;
  std::map<std::string, FlatClass, std::less<>> classes_;
  std::map<std::string, std::set<std::string>, std::less<>> descendants_;
};

/// Builds, flattens and type checks. Throws SemanticError.
ClassTable build_class_table(std::vector<ClassDecl> units);

/// Concrete set of classes allowed by an export set, closed under
/// descendants. Throws SemanticError for names not in the table.
std::set<std::string> effective_export(const ExportSet& e, const ClassTable& table);

/// a no broader than b. ALL is strictly broader than any named set, even one
/// whose closure happens to cover every class of the table.
bool export_leq(const ExportSet& a, const ExportSet& b, const ClassTable& table);

bool conforms(const TypeRef& t1, const TypeRef& t2, const ClassTable& table);

/// Features of the enclosing class used in unqualified position: bare names,
/// unqualified calls, and receivers of qualified calls. The feature named by
/// a qualified call is not included. Requires a type-checked expression.
std::set<std::string> unqualified_features_of(const ExprPtr& e);
std::set<std::string> unqualified_features_of(const AssertionClause& clause);

/// Names reserved for the tribe registry primitives.
inline constexpr const char* kTribePut = "tribe_put";
inline constexpr const char* kTribeHas = "tribe_has";

/// Every unqualified routine name called from `body` (instructions and
/// nested expressions).
std::set<std::string> unqualified_calls_in(const std::vector<Instr>& body);

/// Every qualified call expression in `body`, in source order.
std::vector<const Expr*> qualified_calls_in(const std::vector<Instr>& body);

}  // namespace invariantlab
