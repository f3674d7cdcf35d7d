#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triage/features.hpp"

namespace triage {

// Row-major dense matrix, rows x dim.
struct EmbMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  EmbMatrix() = default;
  EmbMatrix(std::size_t r, std::size_t d) : rows(r), dim(d), data(r * d, 0.0) {}
  double* row(std::size_t i) { return data.data() + i * dim; }
  const double* row(std::size_t i) const { return data.data() + i * dim; }
};

struct EmbeddingConfig {
  std::size_t dim = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  double subsample = 1e-4;  // frequent-word subsampling threshold
  std::size_t epochs = 10;
  double lr = 0.025;
  double min_lr = 1e-4;
  std::uint64_t seed = 1;
};

struct WordEmbeddings {
  Vocabulary vocab;
  EmbMatrix in;   // word vectors (the embeddings)
  EmbMatrix out;  // context/output vectors
  EmbeddingConfig config;

  std::vector<double> vector_of(const std::string& token) const;
};

struct DocEmbeddings {
  Vocabulary vocab;
  EmbMatrix in;    // word input vectors
  EmbMatrix out;   // output vectors
  EmbMatrix docs;  // trained document vectors
  EmbeddingConfig config;
  std::size_t infer_steps = 20;
  double infer_lr = 0.025;
};

// --- pair losses, exposed so gradients can be finite-difference checked ---

// -log s(u_t . h) - sum_n log s(-u_n . h)
double neg_sampling_loss(const double* h, const EmbMatrix& out, std::size_t target,
                         const std::vector<std::size_t>& negatives);

// Accumulates d(loss)/dh into grad_h and d(loss)/d(out rows) into grad_out
// (same shape as out; only touched rows are written).
void neg_sampling_grad(const double* h, const EmbMatrix& out, std::size_t target,
                       const std::vector<std::size_t>& negatives, double* grad_h,
                       EmbMatrix& grad_out);

double sgns_pair_loss(const EmbMatrix& in, const EmbMatrix& out, std::size_t center,
                      std::size_t context, const std::vector<std::size_t>& negatives);

// PV-DM: h = mean of doc vector and context word input vectors.
double pvdm_loss(const double* doc_vec, const EmbMatrix& in, const EmbMatrix& out,
                 const std::vector<std::size_t>& context, std::size_t center,
                 const std::vector<std::size_t>& negatives);

// --- training ---

WordEmbeddings train_word2vec(const std::vector<TokenDoc>& docs, const EmbeddingConfig& config,
                              std::size_t vocab_min_count = 2);

DocEmbeddings train_doc2vec(const std::vector<TokenDoc>& docs, const EmbeddingConfig& config,
                            std::size_t vocab_min_count = 1);

// Gradient steps on a frozen model; zero vector for docs with no
// in-vocabulary tokens.
std::vector<double> infer_vector(const TokenDoc& doc, const DocEmbeddings& model,
                                 std::uint64_t seed);

// Mean of in-vocabulary word vectors; zero vector when none.
std::vector<double> doc_vector_avg(const TokenDoc& doc, const WordEmbeddings& emb);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace triage
