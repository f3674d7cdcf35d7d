#include "triage/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace triage {

Vocabulary Vocabulary::build(const std::vector<TokenDoc>& docs, std::size_t min_count) {
  if (min_count < 1) throw std::runtime_error("vocabulary: min_count must be >= 1");
  Vocabulary v;
  v.min_count_ = min_count;
  std::unordered_map<std::string, std::size_t> corpus_freq;
  std::unordered_map<std::string, std::size_t> doc_freq;
  std::vector<std::string> order;
  for (const auto& doc : docs) {
    std::set<std::string> seen;
    for (const auto& tok : doc) {
      auto [it, fresh] = corpus_freq.try_emplace(tok, 0);
      if (fresh) order.push_back(tok);
      ++it->second;
      seen.insert(tok);
    }
    for (const auto& tok : seen) ++doc_freq[tok];
  }
  for (const auto& tok : order) {
    if (corpus_freq[tok] >= min_count) {
      v.index_[tok] = v.tokens_.size();
      v.tokens_.push_back(tok);
      v.corpus_freq_.push_back(corpus_freq[tok]);
      v.doc_freq_.push_back(doc_freq[tok]);
    }
  }
  return v;
}

Vocabulary Vocabulary::from_parts(std::vector<std::string> tokens,
                                  std::vector<std::size_t> doc_freq,
                                  std::vector<std::size_t> corpus_freq,
                                  std::size_t min_count) {
  if (tokens.size() != doc_freq.size() || tokens.size() != corpus_freq.size())
    throw std::runtime_error("vocabulary: inconsistent persisted parts");
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.doc_freq_ = std::move(doc_freq);
  v.corpus_freq_ = std::move(corpus_freq);
  v.min_count_ = min_count;
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) v.index_[v.tokens_[i]] = i;
  return v;
}

long long Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : static_cast<long long>(it->second);
}

double SparseVector::l2_norm() const {
  double s = 0;
  for (const auto& [i, w] : entries) s += w * w;
  return std::sqrt(s);
}

SparseVector bow(const TokenDoc& doc, const Vocabulary& vocab) {
  std::map<std::size_t, double> counts;
  for (const auto& tok : doc) {
    long long i = vocab.index_of(tok);
    if (i >= 0) counts[static_cast<std::size_t>(i)] += 1.0;
  }
  SparseVector v;
  v.dim = vocab.size();
  v.entries.assign(counts.begin(), counts.end());
  return v;
}

IdfWeights tfidf_fit(const std::vector<TokenDoc>& docs, const Vocabulary& vocab) {
  IdfWeights w;
  w.doc_count = docs.size();
  const double n = static_cast<double>(docs.size());
  w.idf.resize(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    w.idf[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(vocab.doc_frequency(i)))) + 1.0;
  }
  return w;
}

SparseVector tfidf_transform(const SparseVector& v, const IdfWeights& idf) {
  SparseVector out;
  out.dim = v.dim;
  out.entries.reserve(v.entries.size());
  for (const auto& [i, w] : v.entries) {
    double x = w * idf.idf.at(i);
    if (x != 0.0) out.entries.emplace_back(i, x);
  }
  double norm = out.l2_norm();
  if (norm > 0) {
    for (auto& [i, w] : out.entries) w /= norm;
  }
  return out;
}

namespace {

// y += A * x  where A columns are the sparse docs (A is V x N), x length N
void mul_A(const std::vector<SparseVector>& docs, const std::vector<double>& x,
           std::vector<double>& y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t j = 0; j < docs.size(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (const auto& [i, w] : docs[j].entries) y[i] += w * xj;
  }
}

// y = A^T * x, x length V, y length N
void mul_At(const std::vector<SparseVector>& docs, const std::vector<double>& x,
            std::vector<double>& y) {
  for (std::size_t j = 0; j < docs.size(); ++j) {
    double s = 0;
    for (const auto& [i, w] : docs[j].entries) s += w * x[i];
    y[j] = s;
  }
}

// Modified Gram-Schmidt, in place; columns stay in order.
void orthonormalize(std::vector<std::vector<double>>& cols) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0;
      for (std::size_t r = 0; r < cols[j].size(); ++r) dot += cols[i][r] * cols[j][r];
      for (std::size_t r = 0; r < cols[j].size(); ++r) cols[j][r] -= dot * cols[i][r];
    }
    double norm = 0;
    for (double v : cols[j]) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 1e-300) {
      for (double& v : cols[j]) v /= norm;
    }
  }
}

}  // namespace

LsiModel lsi_fit(const std::vector<SparseVector>& docs, std::size_t k, std::uint64_t seed,
                 double tol, std::size_t max_iter) {
  const std::size_t n = docs.size();
  const std::size_t v = docs.empty() ? 0 : docs[0].dim;
  if (k < 1 || k > std::min(v, n))
    throw std::runtime_error("lsi_fit: k must be in [1, min(V, N)]");

  LsiModel model;
  model.vocab_dim = v;
  model.k = k;

  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> q(k, std::vector<double>(v));
  for (auto& col : q)
    for (double& x : col)
      x = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) - 0.5;
  orthonormalize(q);

  std::vector<double> sigma(k, 0.0);
  std::vector<double> tmp_n(n), tmp_v(v);
  model.converged = false;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Z = A A^T Q, column by column
    std::vector<std::vector<double>> z(k, std::vector<double>(v));
    std::vector<double> new_sigma(k);
    for (std::size_t j = 0; j < k; ++j) {
      mul_At(docs, q[j], tmp_n);
      mul_A(docs, tmp_n, z[j]);
    }
    auto prev = q;
    q = z;
    orthonormalize(q);
    // sigma_j = ||A^T q_j||
    for (std::size_t j = 0; j < k; ++j) {
      mul_At(docs, q[j], tmp_n);
      double s = 0;
      for (double x : tmp_n) s += x * x;
      new_sigma[j] = std::sqrt(s);
    }
    double delta = 0;
    for (std::size_t j = 0; j < k; ++j)
      delta = std::max(delta, std::abs(new_sigma[j] - sigma[j]) / (1.0 + new_sigma[j]));
    sigma = new_sigma;
    if (delta < tol) {
      model.converged = true;
      break;
    }
  }

  // order columns by singular value, descending (orthogonal iteration
  // usually delivers them sorted already)
  std::vector<std::size_t> order(k);
  for (std::size_t j = 0; j < k; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });
  for (std::size_t j = 0; j < k; ++j) {
    model.projection.push_back(std::move(q[order[j]]));
    model.singular_values.push_back(sigma[order[j]]);
  }
  return model;
}

std::vector<double> lsi_project(const SparseVector& v, const LsiModel& model) {
  std::vector<double> out(model.k, 0.0);
  for (std::size_t j = 0; j < model.k; ++j) {
    double s = 0;
    for (const auto& [i, w] : v.entries) s += model.projection[j][i] * w;
    out[j] = s;
  }
  return out;
}

}  // namespace triage
