#include <doctest.h>

#include <cmath>
#include <random>

#include "triage/embeddings.hpp"

using namespace triage;

namespace {

// Central finite difference of f at x with step eps.
template <typename F>
double central_diff(F f, double& x, double eps = 1e-6) {
  const double saved = x;
  x = saved + eps;
  double up = f();
  x = saved - eps;
  double down = f();
  x = saved;
  return (up - down) / (2 * eps);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

EmbMatrix random_matrix(std::size_t rows, std::size_t dim, std::mt19937_64& rng) {
  EmbMatrix m(rows, dim);
  std::normal_distribution<double> g(0.0, 0.5);
  for (double& x : m.data) x = g(rng);
  return m;
}

// Two-topic corpus: sentences draw all words from one topic's pool.
std::vector<TokenDoc> topic_corpus(std::mt19937_64& rng, std::size_t sentences) {
  const std::vector<std::string> topic_a = {"quake", "shaking", "epicenter", "aftershock"};
  const std::vector<std::string> topic_b = {"coffee", "brunch", "bakery", "croissant"};
  std::vector<TokenDoc> docs;
  for (std::size_t s = 0; s < sentences; ++s) {
    const auto& pool = (s % 2 == 0) ? topic_a : topic_b;
    TokenDoc d;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 8; ++i) d.push_back(pool[pick(rng)]);
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace

TEST_CASE("neg_sampling_grad matches central finite differences") {
  std::mt19937_64 rng(41);
  const std::size_t dim = 7, rows = 9;
  for (int trial = 0; trial < 10; ++trial) {
    EmbMatrix out = random_matrix(rows, dim, rng);
    std::vector<double> h(dim);
    std::normal_distribution<double> g(0.0, 0.5);
    for (double& x : h) x = g(rng);
    std::size_t target = rng() % rows;
    std::vector<std::size_t> negatives;
    while (negatives.size() < 4) {
      std::size_t n = rng() % rows;
      if (n != target) negatives.push_back(n);
    }

    std::vector<double> grad_h(dim, 0.0);
    EmbMatrix grad_out(rows, dim);
    neg_sampling_grad(h.data(), out, target, negatives, grad_h.data(), grad_out);

    auto loss = [&] { return neg_sampling_loss(h.data(), out, target, negatives); };
    for (std::size_t d = 0; d < dim; ++d) {
      CHECK(rel_err(grad_h[d], central_diff(loss, h[d])) < 1e-4);
    }
    // touched output rows (duplicate negatives accumulate)
    std::vector<std::size_t> touched = negatives;
    touched.push_back(target);
    for (std::size_t row : touched) {
      for (std::size_t d = 0; d < dim; ++d) {
        double fd = central_diff(loss, out.row(row)[d]);
        CHECK(rel_err(grad_out.row(row)[d], fd) < 1e-4);
      }
    }
    // untouched rows stay zero
    for (std::size_t row = 0; row < rows; ++row) {
      if (row == target) continue;
      if (std::find(negatives.begin(), negatives.end(), row) != negatives.end()) continue;
      for (std::size_t d = 0; d < dim; ++d) CHECK(grad_out.row(row)[d] == 0.0);
    }
  }
}

TEST_CASE("sgns_pair_loss gradient w.r.t. the center vector checks out") {
  std::mt19937_64 rng(43);
  const std::size_t dim = 6, rows = 8;
  EmbMatrix in = random_matrix(rows, dim, rng);
  EmbMatrix out = random_matrix(rows, dim, rng);
  std::size_t center = 2, context = 5;
  std::vector<std::size_t> negatives = {0, 3, 7};

  std::vector<double> grad_h(dim, 0.0);
  EmbMatrix grad_out(rows, dim);
  neg_sampling_grad(in.row(center), out, context, negatives, grad_h.data(), grad_out);

  auto loss = [&] { return sgns_pair_loss(in, out, center, context, negatives); };
  for (std::size_t d = 0; d < dim; ++d) {
    CHECK(rel_err(grad_h[d], central_diff(loss, in.row(center)[d])) < 1e-4);
  }
}

TEST_CASE("pvdm_loss gradient w.r.t. the document vector checks out") {
  std::mt19937_64 rng(47);
  const std::size_t dim = 6, rows = 8;
  EmbMatrix in = random_matrix(rows, dim, rng);
  EmbMatrix out = random_matrix(rows, dim, rng);
  std::vector<double> doc(dim);
  std::normal_distribution<double> g(0.0, 0.5);
  for (double& x : doc) x = g(rng);
  std::vector<std::size_t> context = {1, 4, 6};
  std::size_t center = 3;
  std::vector<std::size_t> negatives = {0, 2, 7};

  // analytic: d/d(doc) = grad_h / (|context| + 1), h = mean of doc + context
  std::vector<double> h(doc);
  for (std::size_t w : context) {
    const double* r = in.row(w);
    for (std::size_t d = 0; d < dim; ++d) h[d] += r[d];
  }
  const double denom = static_cast<double>(context.size() + 1);
  for (double& x : h) x /= denom;
  std::vector<double> grad_h(dim, 0.0);
  EmbMatrix grad_out(rows, dim);
  neg_sampling_grad(h.data(), out, center, negatives, grad_h.data(), grad_out);

  auto loss = [&] { return pvdm_loss(doc.data(), in, out, context, center, negatives); };
  for (std::size_t d = 0; d < dim; ++d) {
    CHECK(rel_err(grad_h[d] / denom, central_diff(loss, doc[d])) < 1e-4);
  }
}

TEST_CASE("word2vec pulls co-occurring words together") {
  std::mt19937_64 rng(53);
  auto docs = topic_corpus(rng, 300);
  EmbeddingConfig cfg;
  cfg.dim = 16;
  cfg.window = 4;
  cfg.negatives = 5;
  cfg.subsample = 0;  // tiny vocabulary; keep every token
  cfg.epochs = 30;
  cfg.lr = 0.05;
  cfg.seed = 7;
  WordEmbeddings emb = train_word2vec(docs, cfg, 1);
  REQUIRE(emb.vocab.size() == 8);

  auto cos = [&](const char* a, const char* b) {
    return cosine(emb.vector_of(a), emb.vector_of(b));
  };
  double within = (cos("quake", "shaking") + cos("epicenter", "aftershock") +
                   cos("coffee", "brunch") + cos("bakery", "croissant")) / 4.0;
  double across = (cos("quake", "coffee") + cos("shaking", "bakery") +
                   cos("epicenter", "croissant") + cos("aftershock", "brunch")) / 4.0;
  CHECK(within > across + 0.3);
}

TEST_CASE("doc_vector_avg averages known word vectors") {
  std::mt19937_64 rng(59);
  auto docs = topic_corpus(rng, 40);
  EmbeddingConfig cfg;
  cfg.dim = 8;
  cfg.epochs = 2;
  cfg.subsample = 0;
  WordEmbeddings emb = train_word2vec(docs, cfg, 1);
  auto a = emb.vector_of("quake");
  auto b = emb.vector_of("coffee");
  auto avg = doc_vector_avg({"quake", "coffee", "notaword"}, emb);
  for (std::size_t d = 0; d < cfg.dim; ++d) {
    CHECK(avg[d] == doctest::Approx((a[d] + b[d]) / 2.0).epsilon(1e-12));
  }
  // all-OOV docs get the zero vector
  auto zero = doc_vector_avg({"notaword"}, emb);
  for (double x : zero) CHECK(x == 0.0);
}

TEST_CASE("doc2vec separates documents by topic") {
  std::mt19937_64 rng(61);
  auto docs = topic_corpus(rng, 60);
  EmbeddingConfig cfg;
  cfg.dim = 12;
  cfg.window = 4;
  cfg.subsample = 0;
  cfg.epochs = 300;
  cfg.lr = 0.1;
  cfg.seed = 5;
  DocEmbeddings model = train_doc2vec(docs, cfg, 1);
  REQUIRE(model.docs.rows == docs.size());

  // even indexes are topic A, odd topic B
  auto row = [&](std::size_t i) {
    return std::vector<double>(model.docs.row(i), model.docs.row(i) + cfg.dim);
  };
  double within = 0, across = 0;
  int nw = 0, na = 0;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j) {
      double c = cosine(row(i), row(j));
      if ((i % 2) == (j % 2)) {
        within += c;
        ++nw;
      } else {
        across += c;
        ++na;
      }
    }
  }
  CHECK(within / nw > across / na + 0.3);
}

TEST_CASE("infer_vector lands near the trained vector of the same document") {
  std::mt19937_64 rng(67);
  auto docs = topic_corpus(rng, 60);
  EmbeddingConfig cfg;
  cfg.dim = 12;
  cfg.window = 4;
  cfg.subsample = 0;
  cfg.epochs = 300;
  cfg.lr = 0.1;
  cfg.seed = 5;
  DocEmbeddings model = train_doc2vec(docs, cfg, 1);
  model.infer_steps = 100;
  model.infer_lr = 0.1;

  std::size_t hits = 0, trials = 10;
  for (std::size_t i = 0; i < trials; ++i) {
    auto inferred = infer_vector(docs[i], model, 1000 + i);
    std::vector<double> trained(model.docs.row(i), model.docs.row(i) + cfg.dim);
    if (cosine(inferred, trained) > 0.5) ++hits;
    // and the trained vector of the same document is the nearest neighbour
    std::size_t best = 0;
    double best_cos = -2;
    for (std::size_t j = 0; j < docs.size(); ++j) {
      std::vector<double> cand(model.docs.row(j), model.docs.row(j) + cfg.dim);
      double c = cosine(inferred, cand);
      if (c > best_cos) {
        best_cos = c;
        best = j;
      }
    }
    // any same-topic document is an acceptable neighbour; the wrong topic is not
    if ((best % 2) == (i % 2)) ++hits;
  }
  CHECK(hits >= 2 * trials - 2);  // allow one miss per sub-check
}

TEST_CASE("infer_vector is deterministic in the seed and zero for OOV docs") {
  std::mt19937_64 rng(71);
  auto docs = topic_corpus(rng, 20);
  EmbeddingConfig cfg;
  cfg.dim = 6;
  cfg.epochs = 5;
  cfg.subsample = 0;
  DocEmbeddings model = train_doc2vec(docs, cfg, 1);

  auto a = infer_vector(docs[0], model, 123);
  auto b = infer_vector(docs[0], model, 123);
  CHECK(a == b);
  auto c = infer_vector(docs[0], model, 124);
  CHECK(a != c);

  auto zero = infer_vector({"nope", "nada"}, model, 1);
  for (double x : zero) CHECK(x == 0.0);
}

TEST_CASE("training is bit-reproducible for a fixed seed") {
  std::mt19937_64 rng(73);
  auto docs = topic_corpus(rng, 30);
  EmbeddingConfig cfg;
  cfg.dim = 8;
  cfg.epochs = 3;
  cfg.seed = 9;
  WordEmbeddings w1 = train_word2vec(docs, cfg, 1);
  WordEmbeddings w2 = train_word2vec(docs, cfg, 1);
  CHECK(w1.in.data == w2.in.data);
  CHECK(w1.out.data == w2.out.data);
  DocEmbeddings d1 = train_doc2vec(docs, cfg, 1);
  DocEmbeddings d2 = train_doc2vec(docs, cfg, 1);
  CHECK(d1.docs.data == d2.docs.data);
  CHECK(d1.in.data == d2.in.data);
}

TEST_CASE("cosine handles zero vectors and mismatched content") {
  CHECK(cosine({0, 0}, {1, 2}) == 0.0);
  CHECK(cosine({1, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(cosine({1, 0}, {0, 1}) == doctest::Approx(0.0));
  CHECK(cosine({1, 0}, {-1, 0}) == doctest::Approx(-1.0));
}
