// Hoare-triple proof obligations for routines and creation procedures.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "invariantlab/class_table.hpp"

namespace invariantlab {

enum class ObligationKind { N, O, Oprime, C };

const char* to_string(ObligationKind k);

struct ObligationClause {
  enum class Role { Invariant, Pre, Post, Def };

  Role role = Role::Pre;
  std::string tag;  // clause label: tag or text
  ExprPtr expr;     // type-annotated, evaluated in the target's context
};

const char* to_string(ObligationClause::Role r);

struct Obligation {
  ObligationKind kind = ObligationKind::N;
  std::string cls;
  std::string routine;
  const FeatureDecl* decl = nullptr;  // null for the synthetic default_create
  std::vector<ObligationClause> pre;
  std::vector<ObligationClause> post;
  bool recursive = false;
  std::vector<std::string> notes;

  const std::vector<Instr>& body() const;
  std::string id() const;  // e.g. "O:PERSON.set_married"
};

struct ObligationSet {
  std::vector<Obligation> obligations;
  std::vector<std::string> warnings;
};

struct ObligationConfig {
  /// Emit Oprime instead of O for exported routines with no callback risk.
  bool use_oprime = false;
  /// Classes whose routines are trusted not to call back.
  std::set<std::string> closed_classes;
};

/// The routine name used for classes without a create clause.
inline constexpr const char* kDefaultCreate = "default_create";

/// True when nothing reachable from `r` makes a qualified call outside the
/// configured closed classes.
bool no_callback(const std::string& cls, const std::string& r, const ClassTable& table,
                 const std::set<std::string>& closed_classes = {});

/// True when `r` can reach itself through the static call graph.
bool is_recursive(const std::string& cls, const std::string& r, const ClassTable& table);

/// One `attr = default` clause per attribute of the flat class.
std::vector<ObligationClause> def_state(const std::string& cls, const ClassTable& table);

ObligationSet obligations_for(const std::string& cls, const ClassTable& table,
                              const ObligationConfig& config = {});

/// Builds an obligation of the given kind for any routine, regardless of
/// whether the generator would emit it.
Obligation make_obligation(ObligationKind kind, const std::string& cls, const std::string& routine,
                           const ClassTable& table);

}  // namespace invariantlab
