#include "hw/wander.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hw/clausify.hpp"
#include "hw/error.hpp"
#include "hw/kernels.hpp"

namespace hw {

std::size_t choose_k(std::size_t n, std::size_t divisor) {
  if (n == 0) return 0;
  return std::max<std::size_t>(1, n / divisor);
}

std::vector<RankedCluster> rank_clusters(const std::vector<KMeansCluster>& clusters,
                                         const SymbolSet& ctx, const EmbeddingStore& store,
                                         ClusterRank aggregate) {
  std::vector<std::vector<float>> ctx_vectors;
  for (const auto& c : ctx) {
    auto v = store.lookup_vector(c);
    if (v) ctx_vectors.push_back(std::move(*v));
  }

  std::vector<RankedCluster> out;
  out.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    RankedCluster rc;
    rc.members = cluster.members;
    if (ctx_vectors.empty() || cluster.members.empty()) {
      rc.context_similarity = -1.0;
      out.push_back(std::move(rc));
      continue;
    }
    if (aggregate == ClusterRank::MeanPairs) {
      double total = 0.0;
      std::size_t pairs = 0;
      for (const auto& m : cluster.members) {
        auto mv = store.lookup_vector(m);
        if (!mv) continue;
        for (const auto& cv : ctx_vectors) {
          total += kernels::dot(mv->data(), cv.data(), store.dimension());
          ++pairs;
        }
      }
      rc.context_similarity = pairs ? total / static_cast<double>(pairs) : -1.0;
    } else {
      // Cosine between the normalized member mean and the normalized
      // context mean.
      auto mean_of = [&](const std::vector<std::vector<float>>& vecs) {
        std::vector<double> mean(store.dimension(), 0.0);
        for (const auto& v : vecs)
          for (int d = 0; d < store.dimension(); ++d) mean[d] += v[d];
        double norm = 0.0;
        for (double x : mean) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0)
          for (double& x : mean) x /= norm;
        return mean;
      };
      std::vector<std::vector<float>> member_vectors;
      for (const auto& m : cluster.members) {
        auto mv = store.lookup_vector(m);
        if (mv) member_vectors.push_back(std::move(*mv));
      }
      if (member_vectors.empty()) {
        rc.context_similarity = -1.0;
      } else {
        auto cm = mean_of(member_vectors);
        auto xm = mean_of(ctx_vectors);
        double sim = 0.0;
        for (int d = 0; d < store.dimension(); ++d) sim += cm[d] * xm[d];
        rc.context_similarity = sim;
      }
    }
    out.push_back(std::move(rc));
  }

  std::stable_sort(out.begin(), out.end(), [](const RankedCluster& a, const RankedCluster& b) {
    if (a.context_similarity != b.context_similarity)
      return a.context_similarity > b.context_similarity;
    std::string am = a.members.empty() ? "" : a.members.front();
    std::string bm = b.members.empty() ? "" : b.members.front();
    return am < bm;
  });
  return out;
}

const RankedCluster& pick_focus(const std::vector<RankedCluster>& ranked, FocusPick pick,
                                int index) {
  if (ranked.empty()) throw Error("pick_focus: no clusters");
  std::size_t m = ranked.size();
  std::size_t i = 0;
  switch (pick) {
    case FocusPick::Middle: i = m / 2; break;
    case FocusPick::Nearest: i = 0; break;
    case FocusPick::Farthest: i = m - 1; break;
    case FocusPick::Index:
      i = static_cast<std::size_t>(std::clamp<int>(index, 0, static_cast<int>(m) - 1));
      break;
  }
  return ranked[i];
}

FormulaPtr focus_formula(const SymbolSet& focus) {
  if (focus.empty()) throw Error("focus_formula: empty focus");
  std::vector<FormulaPtr> atoms;
  for (const auto& s : focus) atoms.push_back(Formula::make_atom({s, {Term::var("X")}}));
  return Formula::quantify(Formula::Kind::Exists, {"X"}, Formula::make_and(std::move(atoms)));
}

namespace {

SymbolSet model_predicates(const std::vector<Atom>& model) {
  SymbolSet out;
  for (const auto& a : model) out.insert(a.predicate);
  return out;
}

}  // namespace

WanderResult wander(const Formula& f, const KnowledgeBase& kb, const EmbeddingStore& store,
                    const WanderParams& params) {
  if (params.max_rounds < 1) throw Error("wander: max_rounds must be at least 1");
  if (params.cluster_divisor < 1) throw Error("wander: cluster_divisor must be at least 1");

  SymbolSet kb_symbols = kb.symbols();
  SkolemSession session(kb.skolem_watermark());

  WanderResult result;
  SymbolSet initial = symbols_of(f);
  result.chain.push_back(initial);

  std::vector<Clause> driving = clausify(f, session);
  {
    auto violations = check_range_restricted(driving);
    if (!violations.empty())
      throw RangeRestrictionError("initial formula clausifies to a non-range-restricted clause");
  }

  SymbolSet context =
      expand_context(initial, store, params.selection.expand_threshold, &kb_symbols);
  SymbolSet visited;

  for (int round = 0; round < params.max_rounds; ++round) {
    Round rec;
    rec.index = round;
    rec.context = context;
    rec.selected = semantic_select(context, kb, store, params.selection);

    std::vector<Clause> clauses = driving;
    for (int id : rec.selected) {
      const auto& axiom_clauses = kb.clauses_for(id);
      clauses.insert(clauses.end(), axiom_clauses.begin(), axiom_clauses.end());
    }
    for (std::size_t i = 0; i < clauses.size(); ++i) clauses[i].id = static_cast<int>(i);

    SaturationResult sat = saturate(clauses, params.limits);
    rec.engine_status = sat.status;
    rec.model_size = sat.model.size();

    SymbolSet derived = model_predicates(sat.model);
    for (const auto& s : context) derived.erase(s);
    if (params.accumulate_visited)
      for (const auto& s : visited) derived.erase(s);
    rec.extracted = derived;

    if (derived.empty()) {
      rec.terminated = true;
      result.trace.push_back(std::move(rec));
      break;
    }

    // Clustering needs a vector per point, and focus symbols must be usable
    // as unary predicates in the next driving formula.
    std::vector<LabeledPoint> points;
    for (const auto& s : derived) {
      auto arity = kb.predicate_arity(s);
      if (arity && *arity != 1) {
        rec.skipped.insert(s);
        continue;
      }
      auto vec = store.lookup_vector(s);
      if (!vec) {
        rec.skipped.insert(s);
        continue;
      }
      points.push_back({s, std::move(*vec)});
    }
    rec.clusterable = points.size();

    if (points.empty()) {
      rec.terminated = true;
      result.trace.push_back(std::move(rec));
      break;
    }

    std::size_t k = choose_k(points.size(), static_cast<std::size_t>(params.cluster_divisor));
    auto clusters =
        kmeans(points, k, mix_seed(params.seed, static_cast<std::uint64_t>(round)));
    rec.clusters = rank_clusters(clusters, context, store, params.rank);
    const RankedCluster& focus = pick_focus(rec.clusters, params.pick, params.pick_index);
    rec.focus = SymbolSet(focus.members.begin(), focus.members.end());

    result.chain.push_back(rec.focus);
    if (params.accumulate_visited) visited.insert(context.begin(), context.end());

    driving = clausify(*focus_formula(rec.focus), session);
    context = rec.focus;
    SymbolSet expanded =
        expand_context(rec.focus, store, params.selection.expand_threshold, &kb_symbols);
    context.insert(expanded.begin(), expanded.end());

    result.trace.push_back(std::move(rec));
  }
  return result;
}

std::string trace_to_jsonl(const WanderResult& result) {
  using json = nlohmann::ordered_json;
  std::string out;
  for (const auto& r : result.trace) {
    json j;
    j["v"] = 1;
    j["round"] = r.index;
    j["context"] = r.context;
    j["selected"] = r.selected;
    j["engine_status"] = to_string(r.engine_status);
    j["model_size"] = r.model_size;
    j["extracted"] = r.extracted;
    j["skipped"] = r.skipped;
    j["clusterable"] = r.clusterable;
    json clusters = json::array();
    for (const auto& c : r.clusters) {
      json jc;
      jc["members"] = c.members;
      jc["context_similarity"] = c.context_similarity;
      clusters.push_back(std::move(jc));
    }
    j["clusters"] = std::move(clusters);
    j["focus"] = r.focus;
    j["terminated"] = r.terminated;
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::string render_chain(const std::vector<SymbolSet>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += " -> ";
    out += "{";
    bool first = true;
    for (const auto& s : chain[i]) {
      if (!first) out += ", ";
      first = false;
      out += s;
    }
    out += "}";
  }
  return out;
}

}  // namespace hw
