#include "triage/evalreport.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <stdexcept>

#include "triage/csvio.hpp"

namespace triage {

IdSet agreement(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

std::optional<double> paper_recall(std::size_t n_retrieved, std::size_t n_agreed) {
  if (n_retrieved == 0) return std::nullopt;
  return 100.0 * static_cast<double>(n_agreed) / static_cast<double>(n_retrieved);
}

std::optional<double> relevance_ratio(std::size_t n_relevant, std::size_t n_total_despammed) {
  if (n_total_despammed == 0) return std::nullopt;
  return 100.0 * static_cast<double>(n_relevant) / static_cast<double>(n_total_despammed);
}

PrecisionRecall precision_recall(const IdSet& predicted, const IdSet& truth) {
  IdSet hit = agreement(predicted, truth);
  PrecisionRecall pr;
  if (!predicted.empty())
    pr.precision = static_cast<double>(hit.size()) / static_cast<double>(predicted.size());
  if (!truth.empty())
    pr.recall = static_cast<double>(hit.size()) / static_cast<double>(truth.size());
  return pr;
}

std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>> split_labeled(
    std::vector<LabeledExample> examples, double ratio, std::uint64_t seed) {
  if (ratio <= 0 || ratio >= 1) throw std::runtime_error("split_labeled: ratio must be in (0,1)");
  std::mt19937_64 rng(seed);
  for (std::size_t i = examples.size(); i > 1; --i)
    std::swap(examples[i - 1], examples[rng() % i]);
  std::size_t cut = static_cast<std::size_t>(ratio * static_cast<double>(examples.size()));
  std::vector<LabeledExample> train(examples.begin(), examples.begin() + cut);
  std::vector<LabeledExample> test(examples.begin() + cut, examples.end());
  return {std::move(train), std::move(test)};
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "n/a"; }

std::optional<double> parse_opt(const std::string& s) {
  if (s == "n/a") return std::nullopt;
  return std::stod(s);
}

const std::vector<std::string> kHeader = {
    "disaster_id",        "region",         "n_matching",
    "n_learning",         "n_agreement",    "recall_matching",
    "recall_learning",    "relevance_matching", "relevance_learning",
    "spam_ratio"};

}  // namespace

void emit_results(const std::vector<ComparisonRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write results CSV: " + path);
  write_csv_row(out, kHeader);
  for (const auto& r : rows) {
    write_csv_row(out, {r.disaster_id, r.region, std::to_string(r.n_matching),
                        std::to_string(r.n_learning), std::to_string(r.n_agreement),
                        fmt_opt(r.recall_matching), fmt_opt(r.recall_learning),
                        fmt_opt(r.relevance_matching), fmt_opt(r.relevance_learning),
                        fmt(r.spam_ratio)});
  }
  if (!rows.empty()) {
    // unweighted averages over the data rows; n/a cells are skipped
    auto avg_opt = [&](auto get) -> std::optional<double> {
      double s = 0;
      std::size_t n = 0;
      for (const auto& r : rows) {
        auto v = get(r);
        if (v) {
          s += *v;
          ++n;
        }
      }
      if (!n) return std::nullopt;
      return s / static_cast<double>(n);
    };
    double sm = 0, sl = 0, sa = 0, sr = 0;
    for (const auto& r : rows) {
      sm += static_cast<double>(r.n_matching);
      sl += static_cast<double>(r.n_learning);
      sa += static_cast<double>(r.n_agreement);
      sr += r.spam_ratio;
    }
    const double n = static_cast<double>(rows.size());
    write_csv_row(
        out,
        {"average", "all", fmt(sm / n), fmt(sl / n), fmt(sa / n),
         fmt_opt(avg_opt([](const ComparisonRow& r) { return r.recall_matching; })),
         fmt_opt(avg_opt([](const ComparisonRow& r) { return r.recall_learning; })),
         fmt_opt(avg_opt([](const ComparisonRow& r) { return r.relevance_matching; })),
         fmt_opt(avg_opt([](const ComparisonRow& r) { return r.relevance_learning; })),
         fmt(sr / n)});
  }
  if (!out) throw std::runtime_error("write failure: " + path);
}

std::vector<ComparisonRow> parse_results(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.empty() || rows[0] != kHeader)
    throw std::runtime_error("results CSV: unexpected header in " + path);
  std::vector<ComparisonRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != kHeader.size())
      throw std::runtime_error("results CSV: bad row " + std::to_string(i + 1));
    if (r[0] == "average") continue;
    ComparisonRow c;
    c.disaster_id = r[0];
    c.region = r[1];
    c.n_matching = std::stoull(r[2]);
    c.n_learning = std::stoull(r[3]);
    c.n_agreement = std::stoull(r[4]);
    c.recall_matching = parse_opt(r[5]);
    c.recall_learning = parse_opt(r[6]);
    c.relevance_matching = parse_opt(r[7]);
    c.relevance_learning = parse_opt(r[8]);
    c.spam_ratio = std::stod(r[9]);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace triage
