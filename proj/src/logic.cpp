#include "hw/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hw {

bool Term::is_ground() const {
  if (kind == Kind::Variable) return false;
  for (const auto& a : args)
    if (!a.is_ground()) return false;
  return true;
}

int Term::depth() const {
  int d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d + 1;
}

bool Atom::is_ground() const {
  for (const auto& a : args)
    if (!a.is_ground()) return false;
  return true;
}

int Atom::max_term_depth() const {
  int d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d;
}

FormulaPtr Formula::make_atom(Atom a) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->atom = std::move(a);
  return f;
}

FormulaPtr Formula::make_not(FormulaPtr g) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->kids = {std::move(g)};
  return f;
}

static FormulaPtr make_nary(Formula::Kind k, std::vector<FormulaPtr> fs) {
  if (fs.size() == 1) return fs[0];
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = std::move(fs);
  return f;
}

FormulaPtr Formula::make_and(std::vector<FormulaPtr> fs) { return make_nary(Kind::And, std::move(fs)); }
FormulaPtr Formula::make_or(std::vector<FormulaPtr> fs) { return make_nary(Kind::Or, std::move(fs)); }

FormulaPtr Formula::make_implies(FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Implies;
  f->kids = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr Formula::quantify(Kind k, std::vector<std::string> vars, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->vars = std::move(vars);
  f->kids = {std::move(body)};
  return f;
}

Term substitute(const Term& t, const Substitution& s) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = s.find(t.name);
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Function: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(substitute(a, s));
      return Term::func(t.name, std::move(args));
    }
  }
  return t;
}

Atom substitute(const Atom& a, const Substitution& s) {
  Atom out;
  out.predicate = a.predicate;
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(substitute(t, s));
  return out;
}

std::string render(const Term& t) {
  if (t.kind != Term::Kind::Function) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += render(t.args[i]);
  }
  return out + ")";
}

std::string render(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += render(a.args[i]);
  }
  return out + ")";
}

std::string render(const Clause& c) {
  std::string out;
  if (c.head.empty()) {
    out = "false";
  } else {
    for (std::size_t i = 0; i < c.head.size(); ++i) {
      if (i) out += " ; ";
      out += render(c.head[i]);
    }
  }
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      out += render(c.body[i]);
    }
  }
  return out + ".";
}

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

void render_formula(const Formula& f, std::string& out, int outer) {
  int prec = precedence(f.kind);
  bool paren = prec < outer;
  switch (f.kind) {
    case Formula::Kind::Atom:
      out += render(f.atom);
      return;
    case Formula::Kind::Not:
      out += "~";
      render_formula(*f.kids[0], out, precedence(Formula::Kind::Not));
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      if (paren) out += "(";
      const char* op = f.kind == Formula::Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += op;
        render_formula(*f.kids[i], out, prec + (i ? 1 : 0));
      }
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::Implies:
      if (paren) out += "(";
      render_formula(*f.kids[0], out, prec + 1);
      out += " => ";
      render_formula(*f.kids[1], out, prec);
      if (paren) out += ")";
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += f.kind == Formula::Kind::Forall ? "all " : "exists ";
      for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ", ";
        out += f.vars[i];
      }
      out += " (";
      render_formula(*f.kids[0], out, 0);
      out += ")";
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_formula(f, out, 0);
  return out;
}

std::string render(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += v + "->" + render(t);
  }
  return out + "}";
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.vars != b.vars || a.kids.size() != b.kids.size()) return false;
  if (a.kind == Formula::Kind::Atom) return a.atom == b.atom;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!structurally_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

static void collect_symbols(const Formula& f, SymbolSet& out) {
  if (f.kind == Formula::Kind::Atom) {
    out.insert(f.atom.predicate);
    return;
  }
  for (const auto& k : f.kids) collect_symbols(*k, out);
}

SymbolSet symbols_of(const Formula& f) {
  SymbolSet out;
  collect_symbols(f, out);
  return out;
}

SymbolSet symbols_of(const std::vector<Clause>& cs) {
  SymbolSet out;
  for (const auto& c : cs) {
    for (const auto& a : c.head) out.insert(a.predicate);
    for (const auto& a : c.body) out.insert(a.predicate);
  }
  return out;
}

static void free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::vector<const Term*> stack;
      for (const auto& t : f.atom.args) stack.push_back(&t);
      while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        if (t->kind == Term::Kind::Variable && !bound.count(t->name)) out.insert(t->name);
        for (const auto& a : t->args) stack.push_back(&a);
      }
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::vector<std::string> added;
      for (const auto& v : f.vars)
        if (bound.insert(v).second) added.push_back(v);
      free_vars(*f.kids[0], bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
    default:
      for (const auto& k : f.kids) free_vars(*k, bound, out);
  }
}

void collect_free_vars(const Formula& f, std::set<std::string>& out) {
  std::set<std::string> bound;
  free_vars(f, bound, out);
}

std::string canonical_symbol(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ') {
      out += '_';
    } else {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

}  // namespace hw
