#ifndef HW_COPA_HPP
#define HW_COPA_HPP

// Two-alternative cause/effect problems: run a wandering process per
// alternative and choose the one whose result lands closer to the premise.
// Problems and reports are JSON Lines; see docs/formats.md.

#include <optional>
#include <string>
#include <vector>

#include "hw/wander.hpp"

namespace hw {

// Premise and alternatives are either a formula or a bare symbol set.
struct CopaStatement {
  FormulaPtr formula;  // null when given as symbols
  SymbolSet symbols;   // always populated (symbols_of(formula) when parsed)
};

struct CopaProblem {
  int id = 0;
  enum class Asks { Cause, Effect } asks = Asks::Cause;
  CopaStatement premise;
  std::vector<CopaStatement> alternatives;  // exactly 2
  std::optional<int> gold;                  // 1 or 2
};

enum class ScoringStrategy { FinalFocus, ChainUnion, Discounted };

struct AlternativeScore {
  bool defined = false;
  double value = 0.0;
  std::vector<SymbolSet> chain;
  std::string error;  // when !defined
};

struct CopaRow {
  int id = 0;
  AlternativeScore scores[2];
  int choice = 0;  // 1 or 2; 0 when unscored
  bool tie = false;
  std::optional<int> gold;
};

struct CopaReport {
  std::vector<CopaRow> rows;
  std::size_t unscored = 0;
  std::optional<double> accuracy;  // present when every scored problem has a gold label
};

std::vector<CopaProblem> parse_copa(const std::string& path);
std::vector<CopaProblem> parse_copa_text(const std::string& text);

AlternativeScore score_alternative(const SymbolSet& premise_symbols, const CopaStatement& alt,
                                   const KnowledgeBase& kb, const EmbeddingStore& store,
                                   const WanderParams& params,
                                   ScoringStrategy strategy = ScoringStrategy::FinalFocus);

// choice = argmax score; an exact tie goes to alternative 1 with the tie
// flag set.
int choose_from_scores(double score1, double score2, bool* tie = nullptr);

CopaRow solve(const CopaProblem& problem, const KnowledgeBase& kb, const EmbeddingStore& store,
              const WanderParams& params, ScoringStrategy strategy = ScoringStrategy::FinalFocus);

CopaReport run_copa(const std::vector<CopaProblem>& problems, const KnowledgeBase& kb,
                    const EmbeddingStore& store, const WanderParams& params,
                    ScoringStrategy strategy = ScoringStrategy::FinalFocus);

std::string report_to_jsonl(const CopaReport& report);

}  // namespace hw

#endif
