// Partial invariants, inhibitions, and the inhibition rule's sanity checks.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "invariantlab/class_table.hpp"

namespace invariantlab {

struct PartialInvariant {
  std::string cls;
  ExportSet filter;
  std::vector<InvariantClause> clauses;  // flat invariant order
};

/// Clauses of `cls`'s flat invariant whose unqualified features are all
/// exported no more widely than `e`.
PartialInvariant partial_invariant(const std::string& cls, const ExportSet& e,
                                   const ClassTable& table);

/// Partial invariant for routine `r` of `cls`, filtered by r's export set.
PartialInvariant inv_r(const std::string& cls, const std::string& r, const ClassTable& table);

/// An occurrence of `tag.query` in an invariant clause of `inhibited`, where
/// `tag` has a type based on `inhibitor`.
struct Inhibition {
  std::string inhibitor;
  std::string inhibited;
  std::string tag;
  std::string query;
  std::string clause;  // label of the source clause
  SourcePos pos;
};

std::vector<Inhibition> extract_inhibitions(const ClassTable& table);

/// Routines of `cls` that may change the value of `feature`: direct
/// assigners, then anything calling them unqualified.
std::set<std::string> modifier_closure(const std::string& cls, const std::string& feature,
                                       const ClassTable& table);

enum class ExternalSanity { Modifier, Type };
enum class InternalSanity { Strict, Literal };

const char* to_string(ExternalSanity v);
const char* to_string(InternalSanity v);

struct SanityDiagnostic {
  enum class Clause { External, Internal };

  Inhibition inhibition;
  Clause clause = Clause::External;
  std::string feature_class;
  std::string feature;
  std::string explanation;
};

const char* to_string(SanityDiagnostic::Clause c);

std::vector<SanityDiagnostic> check_external_sanity(const Inhibition& i, const ClassTable& table,
                                                    ExternalSanity variant);
std::vector<SanityDiagnostic> check_internal_sanity(const Inhibition& i, const ClassTable& table,
                                                    InternalSanity variant);

struct InhibitionConfig {
  ExternalSanity external = ExternalSanity::Modifier;
  InternalSanity internal = InternalSanity::Strict;
};

std::vector<SanityDiagnostic> check_inhibition_rule(const ClassTable& table,
                                                    const InhibitionConfig& config = {});

}  // namespace invariantlab
