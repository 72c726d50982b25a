#ifndef HW_PARSE_HPP
#define HW_PARSE_HPP

// Text parsers for the clause and formula languages. The exact grammar is
// documented in docs/grammar.md. '%' starts a line comment in clause files.

#include <map>
#include <string>
#include <vector>

#include "hw/error.hpp"
#include "hw/logic.hpp"

namespace hw {

// Tracks the arity of every predicate and term symbol seen while parsing.
// Reusing a symbol with a different arity raises ArityError. One session
// normally spans a whole file so conflicts across lines are caught.
class AritySession {
 public:
  void check_predicate(const std::string& name, int arity, int line, int column);
  void check_term_symbol(const std::string& name, int arity, int line, int column);

  const std::map<std::string, int>& predicates() const { return predicates_; }

 private:
  std::map<std::string, int> predicates_;
  std::map<std::string, int> term_symbols_;
};

Clause parse_clause(const std::string& text);
Clause parse_clause(const std::string& text, AritySession& session);

FormulaPtr parse_formula(const std::string& text);
FormulaPtr parse_formula(const std::string& text, AritySession& session);

// One clause per line; '%' comments and blank lines are skipped.
std::vector<Clause> parse_clause_file(const std::string& path);
std::vector<Clause> parse_clauses(const std::string& text);
std::vector<Clause> parse_clauses(const std::string& text, AritySession& session);

// A formula file holds a single formula, possibly spanning lines.
FormulaPtr parse_formula_file(const std::string& path);

// True for names in the reserved Skolem namespace (sk1, sk2, ...).
bool is_skolem_name(const std::string& name);

}  // namespace hw

#endif
