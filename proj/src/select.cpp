#include "hw/select.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace hw {

SymbolSet expand_context(const SymbolSet& ctx, const EmbeddingStore& store, double threshold,
                         const SymbolSet* restrict_to) {
  SymbolSet out = ctx;
  for (const auto& c : ctx) {
    auto vec = store.lookup_vector(c);
    if (!vec) continue;
    for (const auto& [symbol, sim] : store.similar_symbols(c, threshold, restrict_to, false)) {
      (void)sim;
      out.insert(symbol);
    }
  }
  return out;
}

std::vector<int> semantic_select(const SymbolSet& ctx, const KnowledgeBase& kb,
                                 const EmbeddingStore& store, const SelectionParams& params) {
  SymbolSet kb_symbols = kb.symbols();
  SymbolSet ectx = expand_context(ctx, store, params.expand_threshold, &kb_symbols);

  std::vector<int> candidates;
  for (const auto& s : ectx)
    for (int id : kb.formulas_containing(s)) candidates.push_back(id);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Interval test is per symbol; compute each distinct outside-context
  // symbol's best similarity once, in parallel over the symbol list.
  std::vector<std::string> outside;
  for (int id : candidates)
    for (const auto& s : kb.axiom(id).symbols)
      if (!ectx.count(s)) outside.push_back(s);
  std::sort(outside.begin(), outside.end());
  outside.erase(std::unique(outside.begin(), outside.end()), outside.end());

  std::vector<double> best(outside.size());
  std::vector<char> embedded(outside.size());
  const std::int64_t n = static_cast<std::int64_t>(outside.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto sim = store.max_cosine_to(ectx, outside[i]);
    embedded[i] = sim.has_value();
    best[i] = sim.value_or(0.0);
  }
  std::map<std::string, std::pair<bool, double>> similarity;
  for (std::size_t i = 0; i < outside.size(); ++i)
    similarity[outside[i]] = {embedded[i] != 0, best[i]};

  struct Scored {
    int id;
    double score;
  };
  std::vector<Scored> survivors;
  for (int id : candidates) {
    bool ok = true;
    double score = 1.0;  // axioms fully inside the context are maximally on-topic
    bool any_outside = false;
    for (const auto& s : kb.axiom(id).symbols) {
      if (ectx.count(s)) continue;
      const auto& [has_vec, sim] = similarity.at(s);
      if (!has_vec) {
        if (!params.oov_pass) {
          ok = false;
          break;
        }
        continue;
      }
      if (sim < params.sim_low || sim > params.sim_high) {
        ok = false;
        break;
      }
      if (!any_outside || sim > score) score = sim;
      any_outside = true;
    }
    if (ok) survivors.push_back({id, any_outside ? score : 1.0});
  }

  std::stable_sort(survivors.begin(), survivors.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (static_cast<int>(survivors.size()) > params.max_axioms)
    survivors.resize(params.max_axioms);

  std::vector<int> out;
  out.reserve(survivors.size());
  for (const auto& s : survivors) out.push_back(s.id);
  return out;
}

std::vector<int> syntactic_select(const SymbolSet& ctx, const KnowledgeBase& kb,
                                  const SelectionParams& params) {
  // Per-axiom minimum occurrence count, the rarity reference for triggering.
  std::map<int, int> min_occ;
  auto axiom_min = [&](int id) {
    auto it = min_occ.find(id);
    if (it != min_occ.end()) return it->second;
    int m = 0;
    bool first = true;
    for (const auto& s : kb.axiom(id).symbols) {
      int occ = kb.occurrence_count(s);
      if (first || occ < m) m = occ;
      first = false;
    }
    min_occ[id] = m;
    return m;
  };

  std::vector<int> selected;
  std::set<int> selected_set;
  SymbolSet frontier = ctx;
  SymbolSet known = ctx;

  for (int depth = 0; depth < params.sine_depth && !frontier.empty(); ++depth) {
    std::vector<int> level;
    for (const auto& s : frontier) {
      int occ = kb.occurrence_count(s);
      if (occ == 0) continue;
      for (int id : kb.formulas_containing(s)) {
        if (selected_set.count(id)) continue;
        if (static_cast<double>(occ) <= params.sine_tolerance * axiom_min(id))
          level.push_back(id);
      }
    }
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());

    SymbolSet next;
    for (int id : level) {
      if (static_cast<int>(selected.size()) >= params.max_axioms) break;
      selected.push_back(id);
      selected_set.insert(id);
      for (const auto& s : kb.axiom(id).symbols)
        if (!known.count(s)) next.insert(s);
    }
    known.insert(next.begin(), next.end());
    frontier = std::move(next);
    if (static_cast<int>(selected.size()) >= params.max_axioms) break;
  }
  return selected;
}

}  // namespace hw
