// Mini-O surface syntax: parsing and canonical pretty printing.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "invariantlab/ast.hpp"

namespace invariantlab {

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  SourcePos pos;
  std::string message;
  Severity severity = Severity::Error;
};

struct ParseResult {
  std::vector<ClassDecl> classes;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const;
};

/// Parses a whole `.minio` source. On error, parsing resumes at the next
/// `class` keyword so that several errors can be reported at once; classes
/// containing errors are dropped.
ParseResult parse(std::string_view text, std::string file = {});

/// Canonical source form of a class; re-parses to a structurally equal
/// declaration.
std::string pretty_print(const ClassDecl& c);
std::string pretty_print(const std::vector<ClassDecl>& classes);

/// Expression text with the minimum parentheses needed to re-parse it.
std::string expr_to_string(const ExprPtr& e);
std::string instr_to_string(const Instr& i);

}  // namespace invariantlab
