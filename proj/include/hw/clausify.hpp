#ifndef HW_CLAUSIFY_HPP
#define HW_CLAUSIFY_HPP

// Clausification of the restricted formula language: negation normal form,
// Skolemization, distribution to clauses with disjunctive heads. Skolem
// symbols come from the reserved namespace sk1, sk2, ... and are assigned in
// deterministic left-to-right order, so identical input yields identical
// output.

#include <string>
#include <vector>

#include "hw/logic.hpp"

namespace hw {

// Allocates Skolem names. Share one session across every formula that may
// end up in the same saturation run; merging distinct witnesses under one
// name is unsound.
class SkolemSession {
 public:
  explicit SkolemSession(int next = 1) : next_(next) {}
  std::string fresh() { return "sk" + std::to_string(next_++); }
  int next_index() const { return next_; }

 private:
  int next_;
};

// f must be closed. Throws FragmentError otherwise.
std::vector<Clause> clausify(const Formula& f, SkolemSession& skolems);
std::vector<Clause> clausify(const Formula& f);  // fresh session starting at sk1

struct RangeViolation {
  int clause_index = -1;  // position in the checked list
  int clause_id = -1;
  std::string variable;   // head variable with no body occurrence
};

std::vector<RangeViolation> check_range_restricted(const std::vector<Clause>& cs);

}  // namespace hw

#endif
