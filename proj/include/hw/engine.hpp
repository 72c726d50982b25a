#ifndef HW_ENGINE_HPP
#define HW_ENGINE_HPP

// Hypertableau saturation. A branch is grown by extension steps: when every
// body atom of a clause matches ground atoms on the branch under one
// substitution, the instantiated head atoms are added, one child branch per
// disjunct. A branch extending an empty-head clause closes. An open branch
// with no applicable extension is a (partial) model of the clause set.
//
// Search order is depth-first over the leftmost open branch; candidate
// extensions are processed through a FIFO queue so no applicable clause is
// starved. A saturation run is single-threaded and owns its tableau; it is
// safe to run many saturations concurrently over a shared clause set.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hw/logic.hpp"

namespace hw {

struct Limits {
  double timeout_seconds = 30.0;
  int max_term_depth = 5;
  std::size_t max_branch_atoms = 1u << 20;
  std::uint64_t max_extensions = 0;  // 0 = no extension budget; tests set this for determinism
};

enum class SatStatus { Refuted, Saturated, ResourcesExhausted };

const char* to_string(SatStatus s);

struct SaturationStats {
  std::uint64_t extensions = 0;       // candidate applications that changed the tableau
  std::uint64_t branches_opened = 1;  // the root branch counts as opened
  std::uint64_t branches_closed = 0;
  double elapsed_seconds = 0.0;
};

struct SaturationResult {
  SatStatus status = SatStatus::ResourcesExhausted;
  std::vector<Atom> model;  // atoms of the reported open branch, empty when refuted
  SaturationStats stats;
};

// Ground atoms in insertion order with a predicate-keyed index.
class AtomIndex {
 public:
  AtomIndex() = default;
  explicit AtomIndex(const std::vector<Atom>& atoms);

  bool contains(const Atom& a) const;
  bool insert(const Atom& a);  // false if already present
  void truncate(std::size_t size);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<int>* with_predicate(const std::string& p) const;

 private:
  std::vector<Atom> atoms_;
  std::unordered_set<std::string> keys_;
  std::map<std::string, std::vector<int>> by_predicate_;
};

// All substitutions making every body atom a member of `atoms`, enumerated
// in deterministic order: body literals left to right, candidate atoms in
// insertion order. An empty body yields the empty substitution.
std::vector<Substitution> match_body(const std::vector<Atom>& body, const AtomIndex& atoms);

// As above but keeps only matches whose newest matched atom is exactly
// `required_index`; used to enumerate each match once as atoms arrive.
std::vector<Substitution> match_body_new(const std::vector<Atom>& body, const AtomIndex& atoms,
                                         int required_index);

// A root-to-leaf path of the tableau.
struct Branch {
  std::vector<Atom> atoms;
  bool closed = false;
};

struct ExtendOutcome {
  enum class Kind { Extended, Closed, NotApplicable };
  Kind kind = Kind::NotApplicable;
  std::vector<Branch> children;  // one per head disjunct when Extended
};

// One extension step against a single clause, using the first substitution
// (in match_body order) not blocked by regularity.
ExtendOutcome hyper_extend(const Branch& branch, const Clause& clause);

// cs must be range-restricted and arity-consistent; throws otherwise.
SaturationResult saturate(const std::vector<Clause>& cs, const Limits& limits);

}  // namespace hw

#endif
