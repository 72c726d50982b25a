#include "hw/kb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "hw/error.hpp"
#include "hw/parse.hpp"

namespace hw {

namespace {

std::string canonical_field(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return canonical_symbol(s.substr(begin, end - begin));
}

bool valid_symbol(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  if (s == "all" || s == "exists" || s == "false") return false;
  if (is_skolem_name(s)) return false;
  return true;
}

// Existential variable count equals the number of Skolem symbols clausify
// will allocate, which lets axiom offsets be assigned without clausifying.
int count_existentials(const Formula& f, bool positive) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::Not:
      return count_existentials(*f.kids[0], !positive);
    case Formula::Kind::Implies:
      return count_existentials(*f.kids[0], !positive) + count_existentials(*f.kids[1], positive);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool existential = (f.kind == Formula::Kind::Exists) == positive;
      int inner = count_existentials(*f.kids[0], positive);
      return inner + (existential ? static_cast<int>(f.vars.size()) : 0);
    }
    default: {
      int total = 0;
      for (const auto& k : f.kids) total += count_existentials(*k, positive);
      return total;
    }
  }
}

}  // namespace

Triple canonicalize(const Triple& t) {
  return {canonical_field(t.subject), canonical_field(t.relation), canonical_field(t.object)};
}

FormulaPtr triple_to_axiom(const Triple& t) {
  Term x = Term::var("X");
  Term y = Term::var("Y");
  FormulaPtr subject = Formula::make_atom({t.subject, {x}});
  FormulaPtr relation = Formula::make_atom({t.relation, {x, y}});
  FormulaPtr object = Formula::make_atom({t.object, {y}});
  FormulaPtr body = Formula::quantify(Formula::Kind::Exists, {"Y"},
                                      Formula::make_and({relation, object}));
  return Formula::quantify(Formula::Kind::Forall, {"X"},
                           Formula::make_implies(subject, body));
}

void KnowledgeBase::record_arities(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) {
    predicate_arity_.emplace(f.atom.predicate, static_cast<int>(f.atom.args.size()));
    return;
  }
  for (const auto& k : f.kids) record_arities(*k);
}

int KnowledgeBase::add_axiom(FormulaPtr f) {
  std::string key = render(*f);
  if (!dedup_.emplace(key, key).second) return -1;
  Axiom ax;
  ax.id = static_cast<int>(axioms_.size());
  ax.formula = std::move(f);
  ax.symbols = symbols_of(*ax.formula);
  ax.skolem_offset = skolem_watermark_;
  ax.skolem_count = count_existentials(*ax.formula, true);
  skolem_watermark_ += ax.skolem_count;
  for (const auto& s : ax.symbols) {
    symbol_index_[s].push_back(ax.id);
    occurrence_count_[s] += 1;
  }
  record_arities(*ax.formula);
  axioms_.push_back(std::move(ax));
  return axioms_.back().id;
}

const std::vector<int>& KnowledgeBase::formulas_containing(const std::string& symbol) const {
  static const std::vector<int> empty;
  auto it = symbol_index_.find(symbol);
  return it == symbol_index_.end() ? empty : it->second;
}

int KnowledgeBase::occurrence_count(const std::string& symbol) const {
  auto it = occurrence_count_.find(symbol);
  return it == occurrence_count_.end() ? 0 : it->second;
}

SymbolSet KnowledgeBase::symbols() const {
  SymbolSet out;
  for (const auto& [s, ids] : symbol_index_) out.insert(s);
  return out;
}

std::optional<int> KnowledgeBase::predicate_arity(const std::string& symbol) const {
  auto it = predicate_arity_.find(symbol);
  if (it == predicate_arity_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Clause>& KnowledgeBase::clauses_for(int id) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->entries.find(id);
  if (it != cache_->entries.end()) return it->second;
  const Axiom& ax = axioms_.at(id);
  SkolemSession session(ax.skolem_offset);
  auto [inserted, fresh] = cache_->entries.emplace(id, clausify(*ax.formula, session));
  return inserted->second;
}

void KnowledgeBase::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write KB file: " + path);
  out << "%kb 1\n";
  for (const auto& ax : axioms_) out << render(*ax.formula) << "\n";
  if (!out) throw Error("error while writing KB file: " + path);
}

KnowledgeBase KnowledgeBase::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open KB file: " + path);
  std::string header;
  std::getline(in, header);
  if (header.rfind("%kb ", 0) != 0)
    throw FormatError("not a KB file (missing %kb header): " + path);
  if (header != "%kb 1") throw FormatError("unsupported KB version: " + header);
  KnowledgeBase kb;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    try {
      kb.add_axiom(parse_formula(line));
    } catch (const Error& e) {
      throw FormatError("KB file " + path + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return kb;
}

KnowledgeBase ingest_triples(std::istream& in, bool skip_bad, IngestReport* report) {
  KnowledgeBase kb;
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || line[0] == '#') continue;
    char sep = line.find('\t') != std::string::npos ? '\t' : ',';
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) fields.push_back(field);
    std::string problem;
    Triple t;
    if (fields.size() != 3) {
      problem = "expected 3 fields, got " + std::to_string(fields.size());
    } else {
      t = canonicalize({fields[1], fields[0], fields[2]});
      for (const auto& s : {t.subject, t.relation, t.object}) {
        if (!valid_symbol(s)) {
          problem = "invalid symbol '" + s + "'";
          break;
        }
      }
    }
    if (!problem.empty()) {
      if (!skip_bad)
        throw FormatError("record " + std::to_string(lineno) + ": " + problem);
      rep.bad.push_back({lineno, problem});
      continue;
    }
    rep.records++;
    if (kb.add_axiom(triple_to_axiom(t)) < 0) rep.duplicates++;
  }
  return kb;
}

KnowledgeBase ingest_triple_file(const std::string& path, bool skip_bad, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open triple file: " + path);
  return ingest_triples(in, skip_bad, report);
}

}  // namespace hw
