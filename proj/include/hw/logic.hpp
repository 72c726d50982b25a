#ifndef HW_LOGIC_HPP
#define HW_LOGIC_HPP

// Terms, atoms, clauses and a restricted first-order formula language.
// All values are immutable once built and safe to share across threads.

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <map>
#include <string>
#include <vector>

namespace hw {

using SymbolSet = std::set<std::string>;

struct Term {
  enum class Kind { Variable, Constant, Function };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // nonempty only for Kind::Function

  static Term var(std::string name) { return {Kind::Variable, std::move(name), {}}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name), {}}; }
  static Term func(std::string name, std::vector<Term> args) {
    return {Kind::Function, std::move(name), std::move(args)};
  }

  bool is_ground() const;
  int depth() const;  // constants and variables have depth 1

  bool operator==(const Term&) const = default;
  std::strong_ordering operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  int max_term_depth() const;  // 0 for propositional atoms

  bool operator==(const Atom&) const = default;
  std::strong_ordering operator<=>(const Atom&) const = default;
};

// head empty means bottom; body empty means the head is a (disjunctive) fact.
struct Clause {
  std::vector<Atom> head;
  std::vector<Atom> body;
  int id = -1;

  bool operator==(const Clause& o) const { return head == o.head && body == o.body; }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, Not, And, Or, Implies, Forall, Exists };

  Kind kind;
  Atom atom;                      // Kind::Atom only
  std::vector<FormulaPtr> kids;   // Not: 1, Implies: 2, And/Or: >= 2
  std::vector<std::string> vars;  // quantifiers only

  static FormulaPtr make_atom(Atom a);
  static FormulaPtr make_not(FormulaPtr f);
  static FormulaPtr make_and(std::vector<FormulaPtr> fs);
  static FormulaPtr make_or(std::vector<FormulaPtr> fs);
  static FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr quantify(Kind k, std::vector<std::string> vars, FormulaPtr body);
};

using Substitution = std::map<std::string, Term>;

Term substitute(const Term& t, const Substitution& s);
Atom substitute(const Atom& a, const Substitution& s);

// Rendering in the concrete syntax accepted by the parsers.
std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Clause& c);  // includes the trailing '.'
std::string render(const Formula& f);
std::string render(const Substitution& s);

bool structurally_equal(const Formula& a, const Formula& b);

// Predicate symbols occurring in a value; function and constant symbols are excluded.
SymbolSet symbols_of(const Formula& f);
SymbolSet symbols_of(const std::vector<Clause>& cs);

void collect_free_vars(const Formula& f, std::set<std::string>& out);

// Embedding-lookup canonical form: lowercase, spaces to underscores.
std::string canonical_symbol(const std::string& s);

}  // namespace hw

#endif
