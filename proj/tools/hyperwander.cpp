// Umbrella CLI: ingest | embed-info | select | saturate | wander | copa.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hw/clausify.hpp"
#include "hw/copa.hpp"
#include "hw/embedding.hpp"
#include "hw/engine.hpp"
#include "hw/kb.hpp"
#include "hw/parse.hpp"
#include "hw/select.hpp"
#include "hw/wander.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw hw::Error("cannot write: " + path);
  out << content;
}

hw::FocusPick parse_pick(const std::string& name, int& index) {
  if (name == "middle") return hw::FocusPick::Middle;
  if (name == "nearest") return hw::FocusPick::Nearest;
  if (name == "farthest") return hw::FocusPick::Farthest;
  // "index:N"
  if (name.rfind("index:", 0) == 0) {
    index = std::stoi(name.substr(6));
    return hw::FocusPick::Index;
  }
  throw CLI::ValidationError("--pick", "expected middle|nearest|farthest|index:N");
}

int run_ingest(const std::string& triples, const std::string& out_path, bool skip_bad) {
  hw::IngestReport report;
  hw::KnowledgeBase kb = hw::ingest_triple_file(triples, skip_bad, &report);
  kb.save(out_path);
  std::cout << "axioms: " << kb.size() << "\n"
            << "records: " << report.records << "\n"
            << "duplicates: " << report.duplicates << "\n"
            << "skipped: " << report.bad.size() << "\n";
  for (const auto& bad : report.bad)
    std::cerr << "record " << bad.line << ": " << bad.message << "\n";
  return 0;
}

int run_embed_info(const std::string& path) {
  hw::EmbeddingLoadReport report;
  hw::EmbeddingStore store = hw::EmbeddingStore::load(path, &report);
  std::cout << "dimension: " << store.dimension() << "\n"
            << "vocabulary: " << store.size() << "\n"
            << "rejected: " << report.rejected << "\n";
  return 0;
}

int run_saturate(const std::string& clause_path, double timeout, int max_depth,
                 std::uint64_t max_steps, const std::string& model_out) {
  auto clauses = hw::parse_clause_file(clause_path);
  hw::Limits limits;
  limits.timeout_seconds = timeout;
  limits.max_term_depth = max_depth;
  limits.max_extensions = max_steps;
  hw::SaturationResult result = hw::saturate(clauses, limits);
  std::cout << "status: " << hw::to_string(result.status) << "\n"
            << "model atoms: " << result.model.size() << "\n"
            << "extensions: " << result.stats.extensions << "\n"
            << "branches opened: " << result.stats.branches_opened << "\n"
            << "branches closed: " << result.stats.branches_closed << "\n"
            << "elapsed: " << result.stats.elapsed_seconds << "s\n";
  std::vector<std::string> lines;
  lines.reserve(result.model.size());
  for (const auto& a : result.model) lines.push_back(hw::render(a));
  std::sort(lines.begin(), lines.end());
  if (!model_out.empty()) {
    std::string content;
    for (const auto& l : lines) content += l + "\n";
    write_file(model_out, content);
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
  }
  return 0;
}

hw::SymbolSet parse_context(const std::string& csv) {
  hw::SymbolSet ctx;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) ctx.insert(hw::canonical_symbol(item));
  return ctx;
}

int run_select(const std::string& kb_path, const std::string& emb_path, const std::string& context,
               const std::string& mode, const hw::SelectionParams& params) {
  hw::KnowledgeBase kb = hw::KnowledgeBase::load(kb_path);
  hw::SymbolSet ctx = parse_context(context);
  if (ctx.empty()) throw hw::Error("--context must name at least one symbol");
  std::vector<int> ids;
  if (mode == "semantic") {
    hw::EmbeddingStore store = hw::EmbeddingStore::load(emb_path);
    ids = hw::semantic_select(ctx, kb, store, params);
  } else if (mode == "syntactic") {
    ids = hw::syntactic_select(ctx, kb, params);
  } else {
    throw hw::Error("--mode must be semantic or syntactic");
  }
  for (int id : ids) std::cout << id << "\t" << hw::render(*kb.axiom(id).formula) << "\n";
  std::cerr << ids.size() << " axioms selected\n";
  return 0;
}

int run_wander(const std::string& formula_path, const std::string& kb_path,
               const std::string& emb_path, const hw::WanderParams& params,
               const std::string& trace_path) {
  hw::FormulaPtr f = hw::parse_formula_file(formula_path);
  hw::KnowledgeBase kb = hw::KnowledgeBase::load(kb_path);
  hw::EmbeddingStore store = hw::EmbeddingStore::load(emb_path);
  hw::WanderResult result = hw::wander(*f, kb, store, params);
  if (!trace_path.empty()) write_file(trace_path, hw::trace_to_jsonl(result));
  std::cout << hw::render_chain(result.chain) << "\n";
  return 0;
}

int run_copa(const std::string& problems_path, const std::string& kb_path,
             const std::string& emb_path, const hw::WanderParams& params,
             const std::string& scoring, const std::string& report_path,
             const std::string& gold_path) {
  auto problems = hw::parse_copa(problems_path);
  if (!gold_path.empty()) {
    std::ifstream in(gold_path);
    if (!in) throw hw::Error("cannot open gold file: " + gold_path);
    std::map<int, int> gold;
    int id, label;
    while (in >> id >> label) gold[id] = label;
    for (auto& p : problems) {
      auto it = gold.find(p.id);
      if (it != gold.end()) p.gold = it->second;
    }
  }
  hw::ScoringStrategy strategy = hw::ScoringStrategy::FinalFocus;
  if (scoring == "union") {
    strategy = hw::ScoringStrategy::ChainUnion;
  } else if (scoring == "discounted") {
    strategy = hw::ScoringStrategy::Discounted;
  } else if (scoring != "final") {
    throw hw::Error("--scoring must be final, union, or discounted");
  }
  hw::KnowledgeBase kb = hw::KnowledgeBase::load(kb_path);
  hw::EmbeddingStore store = hw::EmbeddingStore::load(emb_path);
  hw::CopaReport report = hw::run_copa(problems, kb, store, params, strategy);
  std::string jsonl = hw::report_to_jsonl(report);
  if (!report_path.empty()) {
    write_file(report_path, jsonl);
  } else {
    std::cout << jsonl;
  }
  if (report.accuracy) std::cerr << "accuracy: " << *report.accuracy << "\n";
  return report.unscored > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypertableau reasoning with premise selection and mind wandering"};
  app.require_subcommand(1);

  std::string triples, kb_path, emb_path, out_path, clause_path, context, mode = "semantic";
  std::string formula_path, trace_path, problems_path, report_path, gold_path;
  std::string pick_name = "middle", scoring = "final";
  bool skip_bad = false;
  double timeout = 30.0;
  int max_depth = 5;
  std::uint64_t max_steps = 0;

  hw::SelectionParams sel;
  hw::WanderParams wp;

  auto* ingest = app.add_subcommand("ingest", "translate triples into a knowledge base");
  ingest->add_option("--triples", triples, "relation,subject,object records")->required();
  ingest->add_option("--out", out_path, "KB file to write")->required();
  ingest->add_flag("--skip-bad", skip_bad, "skip malformed records instead of failing");

  auto* embed_info = app.add_subcommand("embed-info", "inspect an embedding file");
  embed_info->add_option("--embeddings", emb_path)->required();

  auto* saturate = app.add_subcommand("saturate", "saturate a clause file");
  saturate->add_option("--clauses", clause_path)->required();
  saturate->add_option("--timeout", timeout, "wall clock limit in seconds");
  saturate->add_option("--max-depth", max_depth, "term depth bound");
  saturate->add_option("--max-steps", max_steps, "extension budget, 0 = none");
  saturate->add_option("--model-out", out_path, "write the model here, one atom per line");

  auto* select = app.add_subcommand("select", "premise selection over a KB");
  select->add_option("--kb", kb_path)->required();
  select->add_option("--embeddings", emb_path);
  select->add_option("--context", context, "comma-separated context symbols")->required();
  select->add_option("--mode", mode, "semantic or syntactic");
  select->add_option("--lo", sel.sim_low, "similarity interval lower bound");
  select->add_option("--hi", sel.sim_high, "similarity interval upper bound");
  select->add_option("--expand", sel.expand_threshold, "context expansion threshold");
  select->add_option("--tolerance", sel.sine_tolerance, "occurrence tolerance");
  select->add_option("--depth", sel.sine_depth, "trigger depth");
  select->add_option("--max", sel.max_axioms, "axiom cap");
  select->add_flag("--oov-pass", sel.oov_pass, "let unembedded symbols pass the interval filter");

  auto* wander = app.add_subcommand("wander", "run the wandering loop from a formula");
  wander->add_option("--formula", formula_path)->required();
  wander->add_option("--kb", kb_path)->required();
  wander->add_option("--embeddings", emb_path)->required();
  wander->add_option("--rounds", wp.max_rounds);
  wander->add_option("--seed", wp.seed);
  wander->add_option("--pick", pick_name, "middle|nearest|farthest|index:N");
  wander->add_option("--divisor", wp.cluster_divisor);
  wander->add_option("--lo", wp.selection.sim_low);
  wander->add_option("--hi", wp.selection.sim_high);
  wander->add_option("--expand", wp.selection.expand_threshold);
  wander->add_option("--max-axioms", wp.selection.max_axioms);
  wander->add_option("--timeout", wp.limits.timeout_seconds);
  wander->add_option("--max-depth", wp.limits.max_term_depth);
  wander->add_option("--max-steps", wp.limits.max_extensions, "extension budget per round");
  wander->add_flag("--accumulate-visited", wp.accumulate_visited);
  wander->add_option("--trace", trace_path, "JSONL trace output");

  auto* copa = app.add_subcommand("copa", "score two-alternative problems");
  copa->add_option("--problems", problems_path)->required();
  copa->add_option("--kb", kb_path)->required();
  copa->add_option("--embeddings", emb_path)->required();
  copa->add_option("--seed", wp.seed);
  copa->add_option("--rounds", wp.max_rounds);
  copa->add_option("--lo", wp.selection.sim_low);
  copa->add_option("--hi", wp.selection.sim_high);
  copa->add_option("--expand", wp.selection.expand_threshold);
  copa->add_option("--max-steps", wp.limits.max_extensions, "extension budget per round");
  copa->add_option("--scoring", scoring, "final|union|discounted");
  copa->add_option("--report", report_path, "JSONL report output");
  copa->add_option("--gold", gold_path, "gold labels: 'id label' per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest) return run_ingest(triples, out_path, skip_bad);
    if (*embed_info) return run_embed_info(emb_path);
    if (*saturate) return run_saturate(clause_path, timeout, max_depth, max_steps, out_path);
    if (*select) return run_select(kb_path, emb_path, context, mode, sel);
    if (*wander) {
      wp.pick = parse_pick(pick_name, wp.pick_index);
      return run_wander(formula_path, kb_path, emb_path, wp, trace_path);
    }
    if (*copa) {
      wp.pick = parse_pick(pick_name, wp.pick_index);
      return run_copa(problems_path, kb_path, emb_path, wp, scoring, report_path, gold_path);
    }
  } catch (const hw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
