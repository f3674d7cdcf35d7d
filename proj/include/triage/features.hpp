#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace triage {

using TokenDoc = std::vector<std::string>;

class Vocabulary {
 public:
  Vocabulary() = default;

  // Tokens with corpus frequency >= min_count, indexed in first-appearance
  // order.
  static Vocabulary build(const std::vector<TokenDoc>& docs, std::size_t min_count = 2);

  // Reassemble from persisted parts.
  static Vocabulary from_parts(std::vector<std::string> tokens,
                               std::vector<std::size_t> doc_freq,
                               std::vector<std::size_t> corpus_freq, std::size_t min_count);

  std::size_t size() const { return tokens_.size(); }
  std::size_t min_count() const { return min_count_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  // -1 when out of vocabulary
  long long index_of(const std::string& token) const;
  std::size_t doc_frequency(std::size_t index) const { return doc_freq_[index]; }
  std::size_t corpus_frequency(std::size_t index) const { return corpus_freq_[index]; }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> doc_freq_;
  std::vector<std::size_t> corpus_freq_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t min_count_ = 2;
};

// Sorted (index, weight) pairs, zero weights never stored.
struct SparseVector {
  std::vector<std::pair<std::size_t, double>> entries;
  std::size_t dim = 0;

  double l2_norm() const;
};

SparseVector bow(const TokenDoc& doc, const Vocabulary& vocab);

struct IdfWeights {
  std::vector<double> idf;  // per vocab index
  std::size_t doc_count = 0;
};

// idf(t) = ln((1+N)/(1+df)) + 1
IdfWeights tfidf_fit(const std::vector<TokenDoc>& docs, const Vocabulary& vocab);
// count * idf, then L2-normalized (zero vectors pass through)
SparseVector tfidf_transform(const SparseVector& v, const IdfWeights& idf);

struct LsiModel {
  std::size_t vocab_dim = 0;
  std::size_t k = 0;
  // column-major: projection[j] is left singular vector j (length vocab_dim)
  std::vector<std::vector<double>> projection;
  std::vector<double> singular_values;  // non-increasing
  bool converged = true;
};

// Top-k left singular vectors of the V x N term-document matrix, by seeded
// orthogonal iteration on A*A^T.
LsiModel lsi_fit(const std::vector<SparseVector>& docs, std::size_t k,
                 std::uint64_t seed = 42, double tol = 1e-10, std::size_t max_iter = 1000);

std::vector<double> lsi_project(const SparseVector& v, const LsiModel& model);

}  // namespace triage
