#include "hw/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

#include "hw/clausify.hpp"
#include "hw/error.hpp"

namespace hw {

const char* to_string(SatStatus s) {
  switch (s) {
    case SatStatus::Refuted: return "refuted";
    case SatStatus::Saturated: return "saturated";
    case SatStatus::ResourcesExhausted: return "resources_exhausted";
  }
  return "?";
}

AtomIndex::AtomIndex(const std::vector<Atom>& atoms) {
  for (const auto& a : atoms) insert(a);
}

bool AtomIndex::contains(const Atom& a) const { return keys_.count(render(a)) != 0; }

bool AtomIndex::insert(const Atom& a) {
  if (!keys_.insert(render(a)).second) return false;
  by_predicate_[a.predicate].push_back(static_cast<int>(atoms_.size()));
  atoms_.push_back(a);
  return true;
}

void AtomIndex::truncate(std::size_t size) {
  while (atoms_.size() > size) {
    const Atom& a = atoms_.back();
    keys_.erase(render(a));
    auto& ids = by_predicate_[a.predicate];
    ids.pop_back();  // indices per predicate are in insertion order
    if (ids.empty()) by_predicate_.erase(a.predicate);
    atoms_.pop_back();
  }
}

const std::vector<int>* AtomIndex::with_predicate(const std::string& p) const {
  auto it = by_predicate_.find(p);
  return it == by_predicate_.end() ? nullptr : &it->second;
}

namespace {

bool match_term(const Term& pattern, const Term& ground, Substitution& s) {
  switch (pattern.kind) {
    case Term::Kind::Variable: {
      auto [it, inserted] = s.emplace(pattern.name, ground);
      return inserted || it->second == ground;
    }
    case Term::Kind::Constant:
      return ground.kind == Term::Kind::Constant && ground.name == pattern.name;
    case Term::Kind::Function: {
      if (ground.kind != Term::Kind::Function || ground.name != pattern.name ||
          ground.args.size() != pattern.args.size())
        return false;
      for (std::size_t i = 0; i < pattern.args.size(); ++i)
        if (!match_term(pattern.args[i], ground.args[i], s)) return false;
      return true;
    }
  }
  return false;
}

bool match_atom(const Atom& pattern, const Atom& ground, Substitution& s) {
  if (pattern.predicate != ground.predicate || pattern.args.size() != ground.args.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term(pattern.args[i], ground.args[i], s)) return false;
  return true;
}

// Backtracking enumeration over body literals. When required_index >= 0 a
// match is kept only if its maximum matched atom index equals it.
void enumerate_matches(const std::vector<Atom>& body, const AtomIndex& atoms, std::size_t pos,
                       Substitution& current, int max_used, int required_index,
                       std::vector<Substitution>& out) {
  if (pos == body.size()) {
    if (required_index < 0 || max_used == required_index) out.push_back(current);
    return;
  }
  const std::vector<int>* candidates = atoms.with_predicate(body[pos].predicate);
  if (!candidates) return;
  for (int idx : *candidates) {
    if (required_index >= 0 && idx > required_index) break;
    Substitution trial = current;
    if (!match_atom(body[pos], atoms.atoms()[idx], trial))
      continue;
    enumerate_matches(body, atoms, pos + 1, trial, std::max(max_used, idx), required_index, out);
  }
}

}  // namespace

std::vector<Substitution> match_body(const std::vector<Atom>& body, const AtomIndex& atoms) {
  std::vector<Substitution> out;
  Substitution current;
  enumerate_matches(body, atoms, 0, current, -1, -1, out);
  return out;
}

std::vector<Substitution> match_body_new(const std::vector<Atom>& body, const AtomIndex& atoms,
                                         int required_index) {
  std::vector<Substitution> out;
  Substitution current;
  enumerate_matches(body, atoms, 0, current, -1, required_index, out);
  return out;
}

ExtendOutcome hyper_extend(const Branch& branch, const Clause& clause) {
  if (branch.closed) return {};
  AtomIndex index(branch.atoms);
  for (const auto& subst : match_body(clause.body, index)) {
    if (clause.head.empty()) return {ExtendOutcome::Kind::Closed, {}};
    bool satisfied = false;
    std::vector<Atom> heads;
    heads.reserve(clause.head.size());
    for (const auto& h : clause.head) {
      Atom ground = substitute(h, subst);
      if (index.contains(ground)) {
        satisfied = true;
        break;
      }
      heads.push_back(std::move(ground));
    }
    if (satisfied) continue;  // regularity: this instance is already true here
    ExtendOutcome out{ExtendOutcome::Kind::Extended, {}};
    for (auto& h : heads) {
      Branch child = branch;
      child.atoms.push_back(std::move(h));
      out.children.push_back(std::move(child));
    }
    return out;
  }
  return {};
}

namespace {

void check_input(const std::vector<Clause>& cs) {
  auto violations = check_range_restricted(cs);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw RangeRestrictionError("clause " + std::to_string(v.clause_index) +
                                " is not range-restricted: head variable " + v.variable +
                                " does not occur in the body");
  }
  std::map<std::string, int> pred_arity;
  std::map<std::string, int> term_arity;
  auto check_term = [&](const Term& t, auto&& self) -> void {
    if (t.kind == Term::Kind::Variable) return;
    auto [it, inserted] = term_arity.emplace(t.name, static_cast<int>(t.args.size()));
    if (!inserted && it->second != static_cast<int>(t.args.size()))
      throw ArityError("term symbol '" + t.name + "' used with inconsistent arity");
    for (const auto& a : t.args) self(a, self);
  };
  for (const auto& c : cs) {
    for (const auto* part : {&c.head, &c.body}) {
      for (const auto& a : *part) {
        auto [it, inserted] = pred_arity.emplace(a.predicate, static_cast<int>(a.args.size()));
        if (!inserted && it->second != static_cast<int>(a.args.size()))
          throw ArityError("predicate '" + a.predicate + "' used with inconsistent arity");
        for (const auto& t : a.args) check_term(t, check_term);
      }
    }
  }
}

struct Candidate {
  int clause;
  Substitution subst;
};

class Tableau {
 public:
  Tableau(const std::vector<Clause>& cs, const Limits& limits) : clauses_(cs), limits_(limits) {
    // Candidates are keyed by clause position, not clause.id, which callers
    // may leave unset.
    for (std::size_t pos = 0; pos < cs.size(); ++pos) {
      for (const auto& b : cs[pos].body) {
        auto& ids = body_index_[b.predicate];
        if (ids.empty() || ids.back() != static_cast<int>(pos)) ids.push_back(static_cast<int>(pos));
      }
    }
  }

  SaturationResult run() {
    auto started = std::chrono::steady_clock::now();
    seed_queue();
    SaturationResult result;
    result.stats.branches_opened = 1;

    while (true) {
      if (queue_.empty()) {
        // Branch saturated: a model unless extensions were clipped on it.
        result.status = branch_clipped_ ? SatStatus::ResourcesExhausted : SatStatus::Saturated;
        result.model = atoms_.atoms();
        break;
      }
      if (out_of_budget(started)) {
        result.status = SatStatus::ResourcesExhausted;
        result.model = atoms_.atoms();
        break;
      }
      Candidate cand = queue_.front();
      queue_.pop_front();
      const Clause& clause = clauses_[cand.clause];

      if (clause.head.empty()) {
        stats_.extensions++;
        stats_.branches_closed++;
        if (!backtrack()) {
          if (any_clip_) {
            // Closures are sound, but clipped extensions may hide an open
            // branch, so an all-closed tableau cannot claim a refutation.
            result.status = SatStatus::ResourcesExhausted;
          } else {
            result.status = SatStatus::Refuted;
          }
          break;
        }
        continue;
      }

      std::vector<Atom> heads;
      heads.reserve(clause.head.size());
      bool satisfied = false;
      for (const auto& h : clause.head) {
        Atom ground = substitute(h, cand.subst);
        assert(ground.is_ground());
        if (atoms_.contains(ground)) {
          satisfied = true;
          break;
        }
        heads.push_back(std::move(ground));
      }
      if (satisfied) continue;

      std::vector<Atom> within;
      for (auto& h : heads) {
        if (h.max_term_depth() > limits_.max_term_depth ||
            atoms_.size() >= limits_.max_branch_atoms) {
          branch_clipped_ = true;
          any_clip_ = true;
        } else {
          within.push_back(std::move(h));
        }
      }
      if (within.empty()) continue;

      stats_.extensions++;
      if (within.size() > 1) {
        stats_.branches_opened += within.size();
        choice_points_.push_back(
            {atoms_.size(), queue_, std::move(within), 1, branch_clipped_});
        add_atom(choice_points_.back().heads[0]);
      } else {
        add_atom(within[0]);
      }
    }

    result.stats.extensions = stats_.extensions;
    result.stats.branches_opened = stats_.branches_opened;
    result.stats.branches_closed = stats_.branches_closed;
    result.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (result.status == SatStatus::Refuted) result.model.clear();
    return result;
  }

 private:
  struct ChoicePoint {
    std::size_t atom_count;
    std::deque<Candidate> queue;
    std::vector<Atom> heads;
    std::size_t next;
    bool clipped_before;
  };

  void seed_queue() {
    for (std::size_t pos = 0; pos < clauses_.size(); ++pos)
      if (clauses_[pos].body.empty()) queue_.push_back({static_cast<int>(pos), {}});
  }

  bool out_of_budget(std::chrono::steady_clock::time_point started) {
    if (limits_.max_extensions && stats_.extensions >= limits_.max_extensions) return true;
    if (++ticks_ % 64 == 0) {
      double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      if (elapsed > limits_.timeout_seconds) return true;
    }
    return false;
  }

  void add_atom(const Atom& a) {
    int index = static_cast<int>(atoms_.size());
    bool fresh = atoms_.insert(a);
    assert(fresh);
    (void)fresh;
    auto it = body_index_.find(a.predicate);
    if (it == body_index_.end()) return;
    for (int cid : it->second) {
      for (auto& subst : match_body_new(clauses_[cid].body, atoms_, index))
        queue_.push_back({cid, std::move(subst)});
    }
  }

  bool backtrack() {
    while (!choice_points_.empty()) {
      ChoicePoint& cp = choice_points_.back();
      if (cp.next < cp.heads.size()) {
        atoms_.truncate(cp.atom_count);
        queue_ = cp.queue;
        branch_clipped_ = cp.clipped_before;
        const Atom& head = cp.heads[cp.next++];
        add_atom(head);
        return true;
      }
      choice_points_.pop_back();
    }
    return false;
  }

  const std::vector<Clause>& clauses_;
  Limits limits_;
  AtomIndex atoms_;
  std::deque<Candidate> queue_;
  std::vector<ChoicePoint> choice_points_;
  std::map<std::string, std::vector<int>> body_index_;  // predicate -> clause positions
  SaturationStats stats_;
  std::uint64_t ticks_ = 0;
  bool branch_clipped_ = false;
  bool any_clip_ = false;
};

}  // namespace

SaturationResult saturate(const std::vector<Clause>& cs, const Limits& limits) {
  if (limits.timeout_seconds <= 0 || limits.max_term_depth <= 0 || limits.max_branch_atoms == 0)
    throw Error("saturation limits must be positive");
  check_input(cs);
  return Tableau(cs, limits).run();
}

}  // namespace hw
