#ifndef HW_EMBEDDING_HPP
#define HW_EMBEDDING_HPP

// Word-embedding store: symbol -> unit vector, with cosine and
// nearest-neighbor queries. Immutable after construction; queries are
// reentrant. Symbols are canonicalized (lowercase, underscores) on lookup.
//
// Out-of-vocabulary policy: a symbol with underscores falls back to the
// normalized mean of its present component-word vectors; otherwise it is
// absent and callers decide (selection drops such symbols, clustering skips
// them).

#include <optional>
#include <string>
#include <utility>
#include <vector>
#include <map>

#include "hw/logic.hpp"

namespace hw {

struct EmbeddingLoadReport {
  std::size_t loaded = 0;
  std::size_t rejected = 0;  // zero vectors and malformed records
  std::vector<std::string> messages;
};

class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  // Builds a store from raw records, normalizing each vector. Zero vectors
  // and dimension mismatches throw.
  static EmbeddingStore from_records(
      const std::vector<std::pair<std::string, std::vector<float>>>& records);

  // Text format: optional "count dim" header, then one record per line:
  // symbol followed by the components, whitespace separated.
  static EmbeddingStore load(const std::string& path, EmbeddingLoadReport* report = nullptr);

  std::size_t size() const { return symbols_.size(); }
  int dimension() const { return dim_; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  bool contains(const std::string& symbol) const;  // direct entry, no fallback

  // Unit vector for the symbol, applying the underscore fallback.
  std::optional<std::vector<float>> lookup_vector(const std::string& symbol) const;

  // Throws UnknownSymbolError if either side has no vector.
  double cosine(const std::string& a, const std::string& b) const;

  // All symbols with cosine(s, .) >= threshold, sorted by similarity
  // descending then lexicographically. restrict_to limits the candidate
  // vocabulary; exclude_self removes s itself.
  std::vector<std::pair<std::string, double>> similar_symbols(
      const std::string& s, double threshold, const SymbolSet* restrict_to = nullptr,
      bool exclude_self = true) const;

  // Highest cosine from any context symbol with a vector to `s`;
  // nullopt when s (after fallback) or the whole context is unembedded.
  std::optional<double> max_cosine_to(const SymbolSet& context, const std::string& s) const;

  const float* row(std::size_t index) const { return matrix_.data() + index * dim_; }

 private:
  void add(const std::string& symbol, std::vector<float> vec);

  int dim_ = 0;
  std::vector<std::string> symbols_;  // insertion order, rows of matrix_
  std::vector<float> matrix_;
  std::map<std::string, int> index_;
};

}  // namespace hw

#endif
