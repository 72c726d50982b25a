#include "hw/copa.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hw/error.hpp"
#include "hw/parse.hpp"

namespace hw {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

CopaStatement parse_statement(const json& j, int problem_id, const char* field) {
  CopaStatement out;
  if (j.is_string()) {
    try {
      out.formula = parse_formula(j.get<std::string>());
    } catch (const Error& e) {
      throw FormatError("problem " + std::to_string(problem_id) + ": " + field + ": " + e.what());
    }
    out.symbols = symbols_of(*out.formula);
    return out;
  }
  if (j.is_array()) {
    for (const auto& s : j) {
      if (!s.is_string())
        throw FormatError("problem " + std::to_string(problem_id) + ": " + field +
                          ": symbol list must contain strings");
      out.symbols.insert(canonical_symbol(s.get<std::string>()));
    }
    if (out.symbols.empty())
      throw FormatError("problem " + std::to_string(problem_id) + ": " + field +
                        ": empty symbol list");
    return out;
  }
  throw FormatError("problem " + std::to_string(problem_id) + ": " + field +
                    " must be a formula string or a symbol array");
}

}  // namespace

std::vector<CopaProblem> parse_copa_text(const std::string& text) {
  std::vector<CopaProblem> out;
  std::set<int> ids;
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
    CopaProblem p;
    if (!j.contains("id") || !j["id"].is_number_integer())
      throw FormatError("line " + std::to_string(lineno) + ": missing integer 'id'");
    p.id = j["id"].get<int>();
    if (!ids.insert(p.id).second)
      throw FormatError("duplicate problem id " + std::to_string(p.id));
    std::string asks = j.value("asks", "");
    if (asks == "cause") {
      p.asks = CopaProblem::Asks::Cause;
    } else if (asks == "effect") {
      p.asks = CopaProblem::Asks::Effect;
    } else {
      throw FormatError("problem " + std::to_string(p.id) + ": 'asks' must be cause or effect");
    }
    if (!j.contains("premise"))
      throw FormatError("problem " + std::to_string(p.id) + ": missing 'premise'");
    p.premise = parse_statement(j["premise"], p.id, "premise");
    if (!j.contains("alternatives") || !j["alternatives"].is_array() ||
        j["alternatives"].size() != 2)
      throw FormatError("problem " + std::to_string(p.id) + ": needs exactly 2 alternatives");
    for (const auto& alt : j["alternatives"])
      p.alternatives.push_back(parse_statement(alt, p.id, "alternatives"));
    if (j.contains("gold")) {
      int g = j["gold"].get<int>();
      if (g != 1 && g != 2)
        throw FormatError("problem " + std::to_string(p.id) + ": gold must be 1 or 2");
      p.gold = g;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CopaProblem> parse_copa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_copa_text(buf.str());
}

namespace {

// Mean over the chosen symbol set of the best cosine to any premise symbol.
// Symbols without vectors are skipped; no scoreable symbol leaves the score
// undefined.
std::optional<double> symbol_set_score(const SymbolSet& symbols, const SymbolSet& premise,
                                       const EmbeddingStore& store) {
  double total = 0.0;
  std::size_t counted = 0;
  for (const auto& s : symbols) {
    auto best = store.max_cosine_to(premise, s);
    if (!best) continue;
    total += *best;
    ++counted;
  }
  if (counted == 0) return std::nullopt;
  return total / static_cast<double>(counted);
}

}  // namespace

AlternativeScore score_alternative(const SymbolSet& premise_symbols, const CopaStatement& alt,
                                   const KnowledgeBase& kb, const EmbeddingStore& store,
                                   const WanderParams& params, ScoringStrategy strategy) {
  AlternativeScore out;
  FormulaPtr formula = alt.formula;
  if (!formula) formula = focus_formula(alt.symbols);
  WanderResult run;
  try {
    run = wander(*formula, kb, store, params);
  } catch (const Error& e) {
    out.error = e.what();
    return out;
  }
  out.chain = run.chain;

  std::optional<double> score;
  switch (strategy) {
    case ScoringStrategy::FinalFocus: {
      SymbolSet target;
      if (run.chain.size() > 1) target = run.chain.back();
      if (target.empty())
        for (std::size_t i = 1; i < run.chain.size(); ++i)
          target.insert(run.chain[i].begin(), run.chain[i].end());
      if (target.empty()) target = run.chain.front();
      score = symbol_set_score(target, premise_symbols, store);
      break;
    }
    case ScoringStrategy::ChainUnion: {
      SymbolSet target;
      for (std::size_t i = 1; i < run.chain.size(); ++i)
        target.insert(run.chain[i].begin(), run.chain[i].end());
      if (target.empty()) target = run.chain.front();
      score = symbol_set_score(target, premise_symbols, store);
      break;
    }
    case ScoringStrategy::Discounted: {
      // Geometric weighting of per-round focus scores, later rounds lighter.
      constexpr double kGamma = 0.9;
      double weight = 1.0, total_weight = 0.0, total = 0.0;
      for (std::size_t i = 1; i < run.chain.size(); ++i) {
        auto s = symbol_set_score(run.chain[i], premise_symbols, store);
        if (s) {
          total += weight * *s;
          total_weight += weight;
        }
        weight *= kGamma;
      }
      if (total_weight > 0) {
        score = total / total_weight;
      } else {
        score = symbol_set_score(run.chain.front(), premise_symbols, store);
      }
      break;
    }
  }
  if (!score) {
    out.error = "no scoreable symbol has an embedding vector";
    return out;
  }
  out.defined = true;
  out.value = *score;
  return out;
}

int choose_from_scores(double score1, double score2, bool* tie) {
  if (tie) *tie = score1 == score2;
  return score2 > score1 ? 2 : 1;
}

CopaRow solve(const CopaProblem& problem, const KnowledgeBase& kb, const EmbeddingStore& store,
              const WanderParams& params, ScoringStrategy strategy) {
  CopaRow row;
  row.id = problem.id;
  row.gold = problem.gold;
  for (int i = 0; i < 2; ++i) {
    WanderParams alt_params = params;
    alt_params.seed = mix_seed(params.seed, static_cast<std::uint64_t>(problem.id) * 2 + i);
    row.scores[i] = score_alternative(problem.premise.symbols, problem.alternatives[i], kb, store,
                                      alt_params, strategy);
  }
  if (row.scores[0].defined && row.scores[1].defined)
    row.choice = choose_from_scores(row.scores[0].value, row.scores[1].value, &row.tie);
  return row;
}

CopaReport run_copa(const std::vector<CopaProblem>& problems, const KnowledgeBase& kb,
                    const EmbeddingStore& store, const WanderParams& params,
                    ScoringStrategy strategy) {
  CopaReport report;
  std::size_t correct = 0, with_gold = 0;
  for (const auto& p : problems) {
    CopaRow row = solve(p, kb, store, params, strategy);
    if (row.choice == 0) {
      report.unscored++;
    } else if (row.gold) {
      ++with_gold;
      if (*row.gold == row.choice) ++correct;
    }
    report.rows.push_back(std::move(row));
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CopaRow& a, const CopaRow& b) { return a.id < b.id; });
  if (with_gold > 0)
    report.accuracy = static_cast<double>(correct) / static_cast<double>(with_gold);
  return report;
}

std::string report_to_jsonl(const CopaReport& report) {
  std::string out;
  for (const auto& row : report.rows) {
    ordered_json j;
    j["v"] = 1;
    j["id"] = row.id;
    ordered_json scores = ordered_json::array();
    ordered_json chains = ordered_json::array();
    for (const auto& s : row.scores) {
      if (s.defined) {
        scores.push_back(s.value);
      } else {
        scores.push_back(nullptr);
      }
      ordered_json chain = ordered_json::array();
      for (const auto& link : s.chain) chain.push_back(link);
      chains.push_back(std::move(chain));
    }
    j["scores"] = std::move(scores);
    if (row.choice) {
      j["choice"] = row.choice;
    } else {
      j["choice"] = nullptr;
      ordered_json errors = ordered_json::array();
      for (const auto& s : row.scores) errors.push_back(s.error);
      j["errors"] = std::move(errors);
    }
    j["tie"] = row.tie;
    if (row.gold) {
      j["gold"] = *row.gold;
      if (row.choice) j["correct"] = (*row.gold == row.choice);
    }
    j["chains"] = std::move(chains);
    out += j.dump();
    out += "\n";
  }
  ordered_json summary;
  summary["v"] = 1;
  summary["problems"] = report.rows.size();
  summary["unscored"] = report.unscored;
  if (report.accuracy) summary["accuracy"] = *report.accuracy;
  out += summary.dump();
  out += "\n";
  return out;
}

}  // namespace hw
