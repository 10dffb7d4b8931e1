// Privileges, classic information hiding, and the export consistency rule.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "invariantlab/class_table.hpp"

namespace invariantlab {

/// Class name -> features of that class a client may call.
using Privilege = std::map<std::string, std::set<std::string>>;

enum class PrivilegeScope {
  Full,          // explicit elements plus every public feature
  ExplicitOnly,  // only elements coming from selective export clauses
};

Privilege privilege_of(const std::string& cls, const ClassTable& table,
                       PrivilegeScope scope = PrivilegeScope::Full);

bool privilege_leq(const Privilege& p, const Privilege& q);

enum class ConsistencyMode { Cases, ExportSet };
enum class RulePart { BroaderCallee, Precursor, ClassicHiding };

const char* to_string(ConsistencyMode m);
const char* to_string(RulePart r);

struct ConsistencyDiagnostic {
  std::string caller_class;
  std::string caller_routine;  // "<invariant>" for invariant clauses
  std::string callee_class;
  std::string callee_routine;
  SourcePos pos;
  RulePart rule = RulePart::ClassicHiding;
  ConsistencyMode mode = ConsistencyMode::Cases;  // unused for classic hiding
  ExportSet callee_exports;
  ExportSet caller_exports;  // the set checked against; the precursor's for Precursor
  std::string message;
};

/// Qualified calls (and creation calls) whose export set excludes the
/// class whose text contains them. Sorted by position.
std::vector<ConsistencyDiagnostic> check_information_hiding(const ClassTable& table);

std::vector<ConsistencyDiagnostic> check_export_consistency(const ClassTable& table,
                                                            ConsistencyMode mode);

}  // namespace invariantlab
