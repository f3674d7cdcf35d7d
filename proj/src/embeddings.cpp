#include "triage/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace triage {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

// cumulative unigram^0.75 table for negative sampling
std::vector<double> build_negative_cdf(const Vocabulary& vocab) {
  std::vector<double> cdf(vocab.size());
  double total = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    total += std::pow(static_cast<double>(vocab.corpus_frequency(i)), 0.75);
    cdf[i] = total;
  }
  for (double& x : cdf) x /= total;
  return cdf;
}

std::size_t sample_negative(const std::vector<double>& cdf, std::mt19937_64& rng) {
  double u = uniform01(rng);
  auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<std::size_t>(it - cdf.begin());
}

void init_matrix(EmbMatrix& m, std::mt19937_64& rng) {
  const double scale = 0.5 / static_cast<double>(m.dim);
  for (double& x : m.data) x = (uniform01(rng) * 2.0 - 1.0) * scale;
}

// Keep-probability for frequent-word subsampling (word2vec convention).
double keep_prob(double freq_fraction, double threshold) {
  if (threshold <= 0 || freq_fraction <= 0) return 1.0;
  double r = threshold / freq_fraction;
  double p = std::sqrt(r) + r;
  return p < 1.0 ? p : 1.0;
}

}  // namespace

std::vector<double> WordEmbeddings::vector_of(const std::string& token) const {
  long long i = vocab.index_of(token);
  if (i < 0) return {};
  const double* r = in.row(static_cast<std::size_t>(i));
  return std::vector<double>(r, r + in.dim);
}

double neg_sampling_loss(const double* h, const EmbMatrix& out, std::size_t target,
                         const std::vector<std::size_t>& negatives) {
  auto dot = [&](std::size_t row) {
    const double* u = out.row(row);
    double s = 0;
    for (std::size_t d = 0; d < out.dim; ++d) s += u[d] * h[d];
    return s;
  };
  double loss = -std::log(std::max(sigmoid(dot(target)), 1e-300));
  for (std::size_t n : negatives)
    loss += -std::log(std::max(sigmoid(-dot(n)), 1e-300));
  return loss;
}

void neg_sampling_grad(const double* h, const EmbMatrix& out, std::size_t target,
                       const std::vector<std::size_t>& negatives, double* grad_h,
                       EmbMatrix& grad_out) {
  const std::size_t dim = out.dim;
  auto accumulate = [&](std::size_t row, double label) {
    const double* u = out.row(row);
    double s = 0;
    for (std::size_t d = 0; d < dim; ++d) s += u[d] * h[d];
    double g = sigmoid(s) - label;  // d(loss)/d(u.h)
    double* gu = grad_out.row(row);
    for (std::size_t d = 0; d < dim; ++d) {
      grad_h[d] += g * u[d];
      gu[d] += g * h[d];
    }
  };
  accumulate(target, 1.0);
  for (std::size_t n : negatives) accumulate(n, 0.0);
}

double sgns_pair_loss(const EmbMatrix& in, const EmbMatrix& out, std::size_t center,
                      std::size_t context, const std::vector<std::size_t>& negatives) {
  return neg_sampling_loss(in.row(center), out, context, negatives);
}

double pvdm_loss(const double* doc_vec, const EmbMatrix& in, const EmbMatrix& out,
                 const std::vector<std::size_t>& context, std::size_t center,
                 const std::vector<std::size_t>& negatives) {
  const std::size_t dim = in.dim;
  std::vector<double> h(doc_vec, doc_vec + dim);
  for (std::size_t w : context) {
    const double* r = in.row(w);
    for (std::size_t d = 0; d < dim; ++d) h[d] += r[d];
  }
  const double denom = static_cast<double>(context.size() + 1);
  for (double& x : h) x /= denom;
  return neg_sampling_loss(h.data(), out, center, negatives);
}

WordEmbeddings train_word2vec(const std::vector<TokenDoc>& docs, const EmbeddingConfig& config,
                              std::size_t vocab_min_count) {
  WordEmbeddings model;
  model.config = config;
  model.vocab = Vocabulary::build(docs, vocab_min_count);
  if (model.vocab.size() == 0) throw std::runtime_error("train_word2vec: empty vocabulary");

  std::mt19937_64 rng(config.seed);
  model.in = EmbMatrix(model.vocab.size(), config.dim);
  model.out = EmbMatrix(model.vocab.size(), config.dim);
  init_matrix(model.in, rng);

  const auto cdf = build_negative_cdf(model.vocab);
  std::size_t total_tokens = 0;
  for (std::size_t i = 0; i < model.vocab.size(); ++i)
    total_tokens += model.vocab.corpus_frequency(i);

  std::vector<double> grad_h(config.dim);
  const std::size_t total_work = std::max<std::size_t>(1, config.epochs * total_tokens);
  std::size_t processed = 0;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& doc : docs) {
      // map to vocab indexes, with frequent-word subsampling
      std::vector<std::size_t> ids;
      for (const auto& tok : doc) {
        long long i = model.vocab.index_of(tok);
        if (i < 0) continue;
        double f = static_cast<double>(model.vocab.corpus_frequency(i)) /
                   static_cast<double>(total_tokens);
        if (uniform01(rng) < keep_prob(f, config.subsample))
          ids.push_back(static_cast<std::size_t>(i));
      }
      for (std::size_t i = 0; i < ids.size(); ++i) {
        ++processed;
        double lr = config.lr -
                    (config.lr - config.min_lr) * static_cast<double>(processed) /
                        static_cast<double>(total_work);
        if (lr < config.min_lr) lr = config.min_lr;
        std::size_t b = 1 + rng() % config.window;  // dynamic window
        std::size_t lo = i >= b ? i - b : 0;
        std::size_t hi = std::min(ids.size(), i + b + 1);
        for (std::size_t j = lo; j < hi; ++j) {
          if (j == i) continue;
          std::vector<std::size_t> negs;
          negs.reserve(config.negatives);
          while (negs.size() < config.negatives) {
            std::size_t n = sample_negative(cdf, rng);
            if (n != ids[j]) negs.push_back(n);
          }
          std::fill(grad_h.begin(), grad_h.end(), 0.0);
          double* v = model.in.row(ids[i]);
          // inline SGD: update output rows and the center vector
          const std::size_t dim = config.dim;
          auto step = [&](std::size_t row, double label) {
            double* u = model.out.row(row);
            double s = 0;
            for (std::size_t d = 0; d < dim; ++d) s += u[d] * v[d];
            double g = (sigmoid(s) - label) * lr;
            for (std::size_t d = 0; d < dim; ++d) {
              grad_h[d] += g * u[d];
              u[d] -= g * v[d];
            }
          };
          step(ids[j], 1.0);
          for (std::size_t n : negs) step(n, 0.0);
          for (std::size_t d = 0; d < dim; ++d) v[d] -= grad_h[d];
        }
      }
    }
  }
  return model;
}

DocEmbeddings train_doc2vec(const std::vector<TokenDoc>& docs, const EmbeddingConfig& config,
                            std::size_t vocab_min_count) {
  DocEmbeddings model;
  model.config = config;
  model.vocab = Vocabulary::build(docs, vocab_min_count);
  if (model.vocab.size() == 0) throw std::runtime_error("train_doc2vec: empty vocabulary");

  std::mt19937_64 rng(config.seed);
  model.in = EmbMatrix(model.vocab.size(), config.dim);
  model.out = EmbMatrix(model.vocab.size(), config.dim);
  model.docs = EmbMatrix(docs.size(), config.dim);
  init_matrix(model.in, rng);
  init_matrix(model.docs, rng);

  const auto cdf = build_negative_cdf(model.vocab);
  std::size_t total_tokens = 0;
  for (std::size_t i = 0; i < model.vocab.size(); ++i)
    total_tokens += model.vocab.corpus_frequency(i);

  const std::size_t dim = config.dim;
  std::vector<double> h(dim), grad_h(dim);
  const std::size_t total_work = std::max<std::size_t>(1, config.epochs * total_tokens);
  std::size_t processed = 0;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t di = 0; di < docs.size(); ++di) {
      std::vector<std::size_t> ids;
      for (const auto& tok : docs[di]) {
        long long i = model.vocab.index_of(tok);
        if (i < 0) continue;
        double f = static_cast<double>(model.vocab.corpus_frequency(i)) /
                   static_cast<double>(total_tokens);
        if (uniform01(rng) < keep_prob(f, config.subsample))
          ids.push_back(static_cast<std::size_t>(i));
      }
      double* dvec = model.docs.row(di);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        ++processed;
        double lr = config.lr -
                    (config.lr - config.min_lr) * static_cast<double>(processed) /
                        static_cast<double>(total_work);
        if (lr < config.min_lr) lr = config.min_lr;
        std::size_t b = 1 + rng() % config.window;
        std::size_t lo = i >= b ? i - b : 0;
        std::size_t hi = std::min(ids.size(), i + b + 1);
        std::vector<std::size_t> ctx;
        for (std::size_t j = lo; j < hi; ++j)
          if (j != i) ctx.push_back(ids[j]);

        // h = mean(doc vector, context word vectors)
        for (std::size_t d = 0; d < dim; ++d) h[d] = dvec[d];
        for (std::size_t w : ctx) {
          const double* r = model.in.row(w);
          for (std::size_t d = 0; d < dim; ++d) h[d] += r[d];
        }
        const double denom = static_cast<double>(ctx.size() + 1);
        for (double& x : h) x /= denom;

        std::vector<std::size_t> negs;
        negs.reserve(config.negatives);
        while (negs.size() < config.negatives) {
          std::size_t n = sample_negative(cdf, rng);
          if (n != ids[i]) negs.push_back(n);
        }

        std::fill(grad_h.begin(), grad_h.end(), 0.0);
        auto step = [&](std::size_t row, double label) {
          double* u = model.out.row(row);
          double s = 0;
          for (std::size_t d = 0; d < dim; ++d) s += u[d] * h[d];
          double g = (sigmoid(s) - label) * lr;
          for (std::size_t d = 0; d < dim; ++d) {
            grad_h[d] += g * u[d];
            u[d] -= g * h[d];
          }
        };
        step(ids[i], 1.0);
        for (std::size_t n : negs) step(n, 0.0);

        for (std::size_t d = 0; d < dim; ++d) {
          double g = grad_h[d] / denom;
          dvec[d] -= g;
          for (std::size_t w : ctx) model.in.row(w)[d] -= g;
        }
      }
    }
  }
  return model;
}

std::vector<double> infer_vector(const TokenDoc& doc, const DocEmbeddings& model,
                                 std::uint64_t seed) {
  const std::size_t dim = model.config.dim;
  std::vector<std::size_t> ids;
  for (const auto& tok : doc) {
    long long i = model.vocab.index_of(tok);
    if (i >= 0) ids.push_back(static_cast<std::size_t>(i));
  }
  if (ids.empty()) return std::vector<double>(dim, 0.0);

  std::mt19937_64 rng(seed);
  std::vector<double> dvec(dim);
  const double scale = 0.5 / static_cast<double>(dim);
  for (double& x : dvec) x = (uniform01(rng) * 2.0 - 1.0) * scale;

  const auto cdf = build_negative_cdf(model.vocab);
  std::vector<double> h(dim), grad_h(dim);

  for (std::size_t step_i = 0; step_i < model.infer_steps; ++step_i) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::size_t b = 1 + rng() % model.config.window;
      std::size_t lo = i >= b ? i - b : 0;
      std::size_t hi = std::min(ids.size(), i + b + 1);
      std::vector<std::size_t> ctx;
      for (std::size_t j = lo; j < hi; ++j)
        if (j != i) ctx.push_back(ids[j]);

      for (std::size_t d = 0; d < dim; ++d) h[d] = dvec[d];
      for (std::size_t w : ctx) {
        const double* r = model.in.row(w);
        for (std::size_t d = 0; d < dim; ++d) h[d] += r[d];
      }
      const double denom = static_cast<double>(ctx.size() + 1);
      for (double& x : h) x /= denom;

      std::vector<std::size_t> negs;
      while (negs.size() < model.config.negatives) {
        std::size_t n = sample_negative(cdf, rng);
        if (n != ids[i]) negs.push_back(n);
      }

      std::fill(grad_h.begin(), grad_h.end(), 0.0);
      for (std::size_t row_i = 0; row_i <= negs.size(); ++row_i) {
        std::size_t row = row_i == 0 ? ids[i] : negs[row_i - 1];
        double label = row_i == 0 ? 1.0 : 0.0;
        const double* u = model.out.row(row);
        double s = 0;
        for (std::size_t d = 0; d < dim; ++d) s += u[d] * h[d];
        double g = (sigmoid(s) - label) * model.infer_lr;
        for (std::size_t d = 0; d < dim; ++d) grad_h[d] += g * u[d];
      }
      // only the document vector moves
      for (std::size_t d = 0; d < dim; ++d) dvec[d] -= grad_h[d] / denom;
    }
  }
  return dvec;
}

std::vector<double> doc_vector_avg(const TokenDoc& doc, const WordEmbeddings& emb) {
  std::vector<double> out(emb.config.dim, 0.0);
  std::size_t n = 0;
  for (const auto& tok : doc) {
    long long i = emb.vocab.index_of(tok);
    if (i < 0) continue;
    const double* r = emb.in.row(static_cast<std::size_t>(i));
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += r[d];
    ++n;
  }
  if (n) {
    for (double& x : out) x /= static_cast<double>(n);
  }
  return out;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0 || bb == 0) return 0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace triage
