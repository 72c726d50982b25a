#include "hw/clausify.hpp"

#include <algorithm>
#include <set>

#include "hw/error.hpp"

namespace hw {

namespace {

// Literal-level NNF node: quantifier-free after skolemization.
struct Literal {
  bool positive;
  Atom atom;
  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

FormulaPtr to_nnf(const FormulaPtr& f, bool positive) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      return positive ? f : Formula::make_not(f);
    case Formula::Kind::Not:
      return to_nnf(f->kids[0], !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool conj = (f->kind == Formula::Kind::And) == positive;
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(to_nnf(k, positive));
      return conj ? Formula::make_and(std::move(kids)) : Formula::make_or(std::move(kids));
    }
    case Formula::Kind::Implies: {
      // a => b becomes ~a | b before the polarity is applied.
      std::vector<FormulaPtr> kids{to_nnf(f->kids[0], !positive), to_nnf(f->kids[1], positive)};
      return positive ? Formula::make_or(std::move(kids)) : Formula::make_and(std::move(kids));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool forall = (f->kind == Formula::Kind::Forall) == positive;
      return Formula::quantify(forall ? Formula::Kind::Forall : Formula::Kind::Exists, f->vars,
                               to_nnf(f->kids[0], positive));
    }
  }
  throw FragmentError("unsupported formula construct");
}

// Clause skeleton during distribution: a set of literals.
using ProtoClause = std::vector<Literal>;

class Skolemizer {
 public:
  explicit Skolemizer(SkolemSession& session) : session_(session) {}

  // Walks the NNF tree left to right, replacing existential variables with
  // Skolem terms over the universals in scope, and renaming any rebinding
  // of an already-used variable name apart.
  FormulaPtr run(const FormulaPtr& f) { return walk(f); }

 private:
  FormulaPtr walk(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Atom:
        return Formula::make_atom(substitute(f->atom, subst_));
      case Formula::Kind::Not:
        return Formula::make_not(walk(f->kids[0]));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<FormulaPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(walk(k));
        return f->kind == Formula::Kind::And ? Formula::make_and(std::move(kids))
                                             : Formula::make_or(std::move(kids));
      }
      case Formula::Kind::Forall: {
        std::vector<std::pair<std::string, Term>> saved;
        for (const auto& v : f->vars) {
          std::string name = unique_name(v);
          saved.emplace_back(v, bind(v, Term::var(name)));
          universals_.push_back(Term::var(name));
        }
        FormulaPtr body = walk(f->kids[0]);
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
          universals_.pop_back();
          restore(it->first, it->second);
        }
        return body;
      }
      case Formula::Kind::Exists: {
        std::vector<std::pair<std::string, Term>> saved;
        for (const auto& v : f->vars) {
          Term witness = universals_.empty()
                             ? Term::constant(session_.fresh())
                             : Term::func(session_.fresh(), universals_);
          saved.emplace_back(v, bind(v, std::move(witness)));
        }
        FormulaPtr body = walk(f->kids[0]);
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) restore(it->first, it->second);
        return body;
      }
      case Formula::Kind::Implies:
        break;
    }
    throw FragmentError("implication survived NNF conversion");
  }

  std::string unique_name(const std::string& v) {
    if (used_.insert(v).second) return v;
    for (int i = 2;; ++i) {
      std::string candidate = v + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

  Term bind(const std::string& v, Term t) {
    Term old;
    auto it = subst_.find(v);
    if (it != subst_.end()) old = it->second;
    subst_[v] = std::move(t);
    return old;
  }

  void restore(const std::string& v, const Term& old) {
    if (old.name.empty()) {
      subst_.erase(v);
    } else {
      subst_[v] = old;
    }
  }

  SkolemSession& session_;
  Substitution subst_;
  std::vector<Term> universals_;
  std::set<std::string> used_;
};

// Distributes Or over And. Output: list of literal lists (conjunction of
// disjunctions). Exponential in the worst case, fine for this fragment.
std::vector<ProtoClause> to_cnf(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      return {{Literal{true, f->atom}}};
    case Formula::Kind::Not:
      return {{Literal{false, f->kids[0]->atom}}};
    case Formula::Kind::And: {
      std::vector<ProtoClause> out;
      for (const auto& k : f->kids) {
        auto sub = to_cnf(k);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case Formula::Kind::Or: {
      std::vector<ProtoClause> acc{{}};
      for (const auto& k : f->kids) {
        auto sub = to_cnf(k);
        std::vector<ProtoClause> next;
        next.reserve(acc.size() * sub.size());
        for (const auto& a : acc) {
          for (const auto& b : sub) {
            ProtoClause merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw FragmentError("quantifier survived skolemization");
  }
}

}  // namespace

std::vector<Clause> clausify(const Formula& f, SkolemSession& skolems) {
  std::set<std::string> free;
  collect_free_vars(f, free);
  if (!free.empty()) throw FragmentError("cannot clausify an open formula");

  auto self = std::make_shared<Formula>(f);
  FormulaPtr nnf = to_nnf(self, true);
  FormulaPtr ground = Skolemizer(skolems).run(nnf);

  std::vector<Clause> out;
  for (auto& proto : to_cnf(ground)) {
    // Drop duplicate literals; drop the whole clause if it is a tautology.
    ProtoClause lits;
    bool tautology = false;
    for (const auto& l : proto) {
      if (std::find(lits.begin(), lits.end(), l) != lits.end()) continue;
      if (std::find(lits.begin(), lits.end(), Literal{!l.positive, l.atom}) != lits.end()) {
        tautology = true;
        break;
      }
      lits.push_back(l);
    }
    if (tautology) continue;
    Clause c;
    for (auto& l : lits) {
      (l.positive ? c.head : c.body).push_back(std::move(l.atom));
    }
    c.id = static_cast<int>(out.size());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Clause> clausify(const Formula& f) {
  SkolemSession session;
  return clausify(f, session);
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Variable) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) term_vars(a, out);
}

}  // namespace

std::vector<RangeViolation> check_range_restricted(const std::vector<Clause>& cs) {
  std::vector<RangeViolation> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::set<std::string> body_vars;
    for (const auto& a : cs[i].body)
      for (const auto& t : a.args) term_vars(t, body_vars);
    std::set<std::string> head_vars;
    for (const auto& a : cs[i].head)
      for (const auto& t : a.args) term_vars(t, head_vars);
    for (const auto& v : head_vars) {
      if (!body_vars.count(v))
        out.push_back({static_cast<int>(i), cs[i].id, v});
    }
  }
  return out;
}

}  // namespace hw
