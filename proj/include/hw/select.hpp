#ifndef HW_SELECT_HPP
#define HW_SELECT_HPP

// Premise selection over the knowledge base: similarity-interval selection
// driven by the embedding, and occurrence-count (SInE-style) selection that
// uses syntactic criteria only. Pure functions over immutable inputs.

#include <vector>

#include "hw/embedding.hpp"
#include "hw/kb.hpp"
#include "hw/logic.hpp"

namespace hw {

struct SelectionParams {
  double sim_low = 0.3;
  double sim_high = 0.95;
  double expand_threshold = 0.7;
  double sine_tolerance = 1.5;  // >= 1
  int sine_depth = 2;
  int max_axioms = 2000;
  bool oov_pass = false;  // let symbols without vectors through the interval filter
};

// ctx plus every candidate symbol some context symbol is at least
// `threshold`-similar to. Candidates are restricted to the given set when
// provided (callers pass the KB vocabulary). Context symbols without
// vectors pass through unexpanded.
SymbolSet expand_context(const SymbolSet& ctx, const EmbeddingStore& store, double threshold,
                         const SymbolSet* restrict_to = nullptr);

// Similarity-interval selection. The context is expanded first; candidate
// axioms contain at least one expanded-context symbol; an axiom survives iff
// every one of its predicate symbols outside the expanded context has
// max-cosine to the context within [sim_low, sim_high]. Unembedded symbols
// fail the test unless params.oov_pass. Result is ordered by best
// similarity descending (axioms whose symbols are all in the context rank
// as 1.0), ties by axiom id, capped at max_axioms.
std::vector<int> semantic_select(const SymbolSet& ctx, const KnowledgeBase& kb,
                                 const EmbeddingStore& store, const SelectionParams& params);

// SInE-style triggering: symbol s triggers axiom a iff s occurs in a and
// occurrence_count(s) <= tolerance * min occurrence count over a's symbols.
// Starts from ctx and iterates up to sine_depth trigger levels, adding the
// symbols of newly selected axioms each level. Result in (level, axiom id)
// order, capped at max_axioms.
std::vector<int> syntactic_select(const SymbolSet& ctx, const KnowledgeBase& kb,
                                  const SelectionParams& params);

}  // namespace hw

#endif
