#ifndef HW_KB_HPP
#define HW_KB_HPP

// Triple ingestion and the indexed axiom store. Each triple (subject,
// relation, object) becomes one axiom
//
//   all X (subject(X) => exists Y (relation(X,Y) & object(Y)))
//
// with the relation a binary predicate and subject/object unary predicates.
// A loaded knowledge base is immutable and shareable across readers; the
// per-axiom clause cache is filled lazily behind a mutex.

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hw/clausify.hpp"
#include "hw/logic.hpp"

namespace hw {

struct Triple {
  std::string subject;
  std::string relation;
  std::string object;

  auto operator<=>(const Triple&) const = default;
};

Triple canonicalize(const Triple& t);  // lowercase, spaces to underscores, trimmed

FormulaPtr triple_to_axiom(const Triple& t);

struct IngestReport {
  std::size_t records = 0;
  std::size_t duplicates = 0;
  struct BadRecord {
    std::size_t line;
    std::string message;
  };
  std::vector<BadRecord> bad;
};

class KnowledgeBase {
 public:
  struct Axiom {
    int id;
    FormulaPtr formula;
    SymbolSet symbols;
    int skolem_offset;  // first Skolem index used when clausifying this axiom
    int skolem_count;
  };

  // Appends an axiom unless an identical formula is already present.
  // Returns the axiom id, or -1 if it was a duplicate.
  int add_axiom(FormulaPtr f);

  std::size_t size() const { return axioms_.size(); }
  const Axiom& axiom(int id) const { return axioms_.at(id); }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  const std::vector<int>& formulas_containing(const std::string& symbol) const;
  int occurrence_count(const std::string& symbol) const;
  SymbolSet symbols() const;

  // Arity a symbol is used with as a predicate, if any.
  std::optional<int> predicate_arity(const std::string& symbol) const;

  // Clauses of one axiom. Skolem names depend only on the axiom's position,
  // so the cache may be filled in any order by any thread.
  const std::vector<Clause>& clauses_for(int id) const;

  // First Skolem index not reserved by any axiom; sessions for formulas
  // that will be saturated together with this KB must start here.
  int skolem_watermark() const { return skolem_watermark_; }

  void save(const std::string& path) const;
  static KnowledgeBase load(const std::string& path);

 private:
  void record_arities(const Formula& f);

  std::vector<Axiom> axioms_;
  std::map<std::string, std::vector<int>> symbol_index_;
  std::map<std::string, int> occurrence_count_;
  std::map<std::string, std::string> dedup_;  // rendered formula -> present
  std::map<std::string, int> predicate_arity_;
  int skolem_watermark_ = 1;

  struct ClauseCache {
    std::mutex mutex;
    std::map<int, std::vector<Clause>> entries;
  };
  std::unique_ptr<ClauseCache> cache_ = std::make_unique<ClauseCache>();
};

// Reads relation,subject,object records (comma or tab separated, one per
// line). Malformed records throw FormatError unless skip_bad is set, in
// which case they are collected in the report.
KnowledgeBase ingest_triples(std::istream& in, bool skip_bad, IngestReport* report = nullptr);
KnowledgeBase ingest_triple_file(const std::string& path, bool skip_bad,
                                 IngestReport* report = nullptr);

}  // namespace hw

#endif
