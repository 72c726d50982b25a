#ifndef HW_WANDER_HPP
#define HW_WANDER_HPP

// The wandering loop. Each round: select knowledge for the current context,
// saturate it together with the driving formula, extract the predicate
// symbols the model added, cluster them by embedding, rank the clusters by
// similarity to the context, pick one as the next focus, and continue from
// a simple formula built over the focus symbols. Runs are sequential by
// nature; independent runs may share the KB and embedding store.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hw/embedding.hpp"
#include "hw/engine.hpp"
#include "hw/kb.hpp"
#include "hw/kmeans.hpp"
#include "hw/select.hpp"

namespace hw {

enum class FocusPick { Middle, Nearest, Farthest, Index };

enum class ClusterRank { MeanPairs, Centroid };

struct WanderParams {
  SelectionParams selection;
  Limits limits;
  int max_rounds = 10;
  int cluster_divisor = 4;
  FocusPick pick = FocusPick::Middle;
  int pick_index = 0;  // FocusPick::Index only
  ClusterRank rank = ClusterRank::MeanPairs;
  std::uint64_t seed = 42;
  bool accumulate_visited = false;
};

struct RankedCluster {
  std::vector<std::string> members;
  double context_similarity;  // see ClusterRank; -1 when no pair is embedded
};

struct Round {
  int index = 0;
  SymbolSet context;
  std::vector<int> selected;
  SatStatus engine_status = SatStatus::ResourcesExhausted;
  std::size_t model_size = 0;
  SymbolSet extracted;        // model predicates minus context (and visited)
  SymbolSet skipped;          // extracted symbols not clusterable (no vector or non-unary)
  std::size_t clusterable = 0;
  std::vector<RankedCluster> clusters;  // in ranked order
  SymbolSet focus;
  bool terminated = false;
};

struct WanderResult {
  std::vector<SymbolSet> chain;  // chain[0] = symbols of the initial formula
  std::vector<Round> trace;
};

// Cluster count: max(1, floor(n / divisor)), 0 when n is 0.
std::size_t choose_k(std::size_t n, std::size_t divisor);

// Sorts clusters by similarity to the context, descending; ties broken by
// the lexicographically smallest member.
std::vector<RankedCluster> rank_clusters(const std::vector<KMeansCluster>& clusters,
                                         const SymbolSet& ctx, const EmbeddingStore& store,
                                         ClusterRank aggregate = ClusterRank::MeanPairs);

const RankedCluster& pick_focus(const std::vector<RankedCluster>& ranked, FocusPick pick,
                                int index = 0);

// exists X (s1(X) & s2(X) & ...) over the focus symbols in lexicographic
// order. Throws on an empty focus.
FormulaPtr focus_formula(const SymbolSet& focus);

WanderResult wander(const Formula& f, const KnowledgeBase& kb, const EmbeddingStore& store,
                    const WanderParams& params);

// One JSON object per round, schema field "v" = 1. Byte-identical for
// identical runs.
std::string trace_to_jsonl(const WanderResult& result);

// `{dog, chew, bone} -> {animal, animals}` rendering of the chain.
std::string render_chain(const std::vector<SymbolSet>& chain);

}  // namespace hw

#endif
