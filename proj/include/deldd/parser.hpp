#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deldd/errors.hpp"
#include "deldd/formula.hpp"
#include "deldd/knowledge.hpp"

namespace deldd {

/// Reference to a variable or agent that was never declared.
class UndeclaredIdentifierError : public ParseError {
 public:
  UndeclaredIdentifierError(const std::string& name, std::size_t line, std::size_t column)
      : ParseError("undeclared identifier '" + name + "'", line, column), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct Query {
  enum class Kind { Valid, Where, True };
  Kind kind = Kind::Valid;
  DelFormula formula;
  std::optional<State> state;  // TRUE? only
  std::size_t line = 0;
};

/// Parsed `.kmodel` file. Variables are numbered in declaration order.
struct ModelFile {
  Vocabulary vocabulary;
  BoolFormula law;
  std::vector<std::string> agents;
  std::vector<std::vector<VarId>> observed;
  std::vector<Query> queries;

  KnowledgeStructure structure(Backend backend) const;
};

/// file := VARS ident {"," ident} LAW formula {OBS ident ":" [ident {"," ident}]} {query}
/// query := ("VALID?" | "WHERE?") formula | "TRUE?" "{" [ident {[","] ident}] "}" formula
/// formula := Top | Bot | ident | "~" formula | "(" formula op formula {op formula} ")"
///          | "K" ident formula | "Kw" ident formula | "[!" formula "]" formula | "[?!" formula "]" formula
/// op := "&" | "|" | "->" | "^"; a parenthesized chain must repeat one operator, and "->" takes two operands.
/// Comments run from "--" to the end of the line.
ModelFile parse_model(std::string_view text);

/// Formula-only entry point; `agents` are the names usable after K and Kw.
DelFormula parse_formula(std::string_view text, const Vocabulary& vocab, const std::vector<std::string>& agents);

/// Prints in the input syntax; parse_formula(print_formula(f)) == f for formulas built from the grammar.
std::string print_formula(const DelFormula& f, const Vocabulary& vocab, const std::vector<std::string>& agents);

/// One line per query, in file order:
///   VALID? <formula> : true|false
///   WHERE? <formula> : {..} {..}        (sorted; "none" when empty)
///   TRUE? {..} <formula> : true|false
/// Throws InvalidSceneError when a TRUE? state violates the law.
std::vector<std::string> check_file(const ModelFile& file, Backend backend = {});

}  // namespace deldd
