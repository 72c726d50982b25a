#include "hw/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hw/error.hpp"
#include "hw/kernels.hpp"

namespace hw {

namespace {

bool normalize(std::vector<float>& v) {
  double norm_sq = 0.0;
  for (float x : v) norm_sq += static_cast<double>(x) * static_cast<double>(x);
  if (norm_sq == 0.0) return false;
  double inv = 1.0 / std::sqrt(norm_sq);
  for (float& x : v) x = static_cast<float>(x * inv);
  return true;
}

std::vector<std::string> split_components(const std::string& symbol) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream ss(symbol);
  while (std::getline(ss, part, '_'))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

}  // namespace

void EmbeddingStore::add(const std::string& symbol, std::vector<float> vec) {
  if (dim_ == 0) dim_ = static_cast<int>(vec.size());
  if (static_cast<int>(vec.size()) != dim_)
    throw DimensionError("vector for '" + symbol + "' has dimension " +
                         std::to_string(vec.size()) + ", store has " + std::to_string(dim_));
  if (!normalize(vec)) throw Error("zero vector for symbol '" + symbol + "'");
  auto [it, inserted] = index_.emplace(symbol, static_cast<int>(symbols_.size()));
  if (!inserted) throw Error("duplicate symbol '" + symbol + "'");
  symbols_.push_back(symbol);
  matrix_.insert(matrix_.end(), vec.begin(), vec.end());
}

EmbeddingStore EmbeddingStore::from_records(
    const std::vector<std::pair<std::string, std::vector<float>>>& records) {
  EmbeddingStore store;
  for (const auto& [symbol, vec] : records) store.add(canonical_symbol(symbol), vec);
  return store;
}

EmbeddingStore EmbeddingStore::load(const std::string& path, EmbeddingLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file: " + path);
  EmbeddingStore store;
  EmbeddingLoadReport local;
  EmbeddingLoadReport& rep = report ? *report : local;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string symbol;
    ss >> symbol;
    std::vector<float> vec;
    float x;
    while (ss >> x) vec.push_back(x);
    if (first_data_line) {
      first_data_line = false;
      // "count dim" header: the symbol field itself is numeric.
      if (vec.size() == 1 &&
          symbol.find_first_not_of("0123456789") == std::string::npos)
        continue;
    }
    if (vec.empty()) {
      rep.rejected++;
      rep.messages.push_back("line " + std::to_string(lineno) + ": no components");
      continue;
    }
    bool zero = std::all_of(vec.begin(), vec.end(), [](float v) { return v == 0.0f; });
    if (zero) {
      rep.rejected++;
      rep.messages.push_back("line " + std::to_string(lineno) + ": zero vector for '" + symbol +
                             "'");
      continue;
    }
    if (store.dim_ != 0 && static_cast<int>(vec.size()) != store.dim_)
      throw DimensionError("line " + std::to_string(lineno) + ": dimension " +
                           std::to_string(vec.size()) + " does not match " +
                           std::to_string(store.dim_));
    store.add(canonical_symbol(symbol), std::move(vec));
    rep.loaded++;
  }
  if (store.size() == 0) throw Error("embedding file has no usable records: " + path);
  return store;
}

bool EmbeddingStore::contains(const std::string& symbol) const {
  return index_.count(canonical_symbol(symbol)) != 0;
}

std::optional<std::vector<float>> EmbeddingStore::lookup_vector(const std::string& symbol) const {
  std::string canonical = canonical_symbol(symbol);
  auto it = index_.find(canonical);
  if (it != index_.end()) {
    const float* r = row(it->second);
    return std::vector<float>(r, r + dim_);
  }
  if (canonical.find('_') == std::string::npos) return std::nullopt;
  std::vector<float> mean(dim_, 0.0f);
  int found = 0;
  for (const auto& part : split_components(canonical)) {
    auto pit = index_.find(part);
    if (pit == index_.end()) continue;
    const float* r = row(pit->second);
    for (int i = 0; i < dim_; ++i) mean[i] += r[i];
    ++found;
  }
  if (found == 0) return std::nullopt;
  for (float& x : mean) x /= static_cast<float>(found);
  if (!normalize(mean)) return std::nullopt;
  return mean;
}

double EmbeddingStore::cosine(const std::string& a, const std::string& b) const {
  auto va = lookup_vector(a);
  if (!va) throw UnknownSymbolError(a);
  auto vb = lookup_vector(b);
  if (!vb) throw UnknownSymbolError(b);
  return kernels::dot(va->data(), vb->data(), dim_);
}

std::vector<std::pair<std::string, double>> EmbeddingStore::similar_symbols(
    const std::string& s, double threshold, const SymbolSet* restrict_to,
    bool exclude_self) const {
  auto query = lookup_vector(s);
  if (!query) throw UnknownSymbolError(s);
  std::string canonical = canonical_symbol(s);

  std::vector<double> sims(symbols_.size());
  kernels::cosine_scan(matrix_.data(), symbols_.size(), dim_, query->data(), sims.data());

  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (sims[i] < threshold) continue;
    const std::string& candidate = symbols_[i];
    if (exclude_self && candidate == canonical) continue;
    if (restrict_to && !restrict_to->count(candidate)) continue;
    out.emplace_back(candidate, sims[i]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

std::optional<double> EmbeddingStore::max_cosine_to(const SymbolSet& context,
                                                    const std::string& s) const {
  auto target = lookup_vector(s);
  if (!target) return std::nullopt;
  std::optional<double> best;
  for (const auto& c : context) {
    auto cv = lookup_vector(c);
    if (!cv) continue;
    double sim = kernels::dot(cv->data(), target->data(), dim_);
    if (!best || sim > *best) best = sim;
  }
  return best;
}

}  // namespace hw
