#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "triage/config.hpp"
#include "triage/csvio.hpp"
#include "triage/evalreport.hpp"
#include "triage/learner.hpp"
#include "triage/matchfilter.hpp"
#include "triage/regions.hpp"
#include "triage/sentiment.hpp"
#include "triage/synth.hpp"
#include "triage/text.hpp"
#include "triage/tweet.hpp"

namespace fs = std::filesystem;
using namespace triage;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 usage/config, 2 data, 3 internal
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_meta(const fs::path& out_file, const PipelineConfig& cfg,
                const std::string& subcommand) {
  json j = {{"config_hash", cfg.hash()}, {"seed", cfg.seed}, {"subcommand", subcommand}};
  std::ofstream out(out_file.string() + ".meta.json", std::ios::trunc);
  out << j.dump(2) << '\n';
}

void append_run_log(const PipelineConfig& cfg, const std::string& subcommand) {
  fs::create_directories(cfg.out_dir);
  std::ofstream log(fs::path(cfg.out_dir) / "run.log", std::ios::app);
  log << subcommand << " config_hash=" << cfg.hash() << " seed=" << cfg.seed << '\n';
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " path not configured");
  if (!fs::exists(path)) throw ConfigError(what + " not found: " + path);
}

std::set<std::string> read_id_csv(const std::string& path) {
  auto rows = read_csv_file(path);
  std::set<std::string> ids;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!rows[i].empty() && !rows[i][0].empty()) ids.insert(rows[i][0]);
  return ids;
}

void write_id_csv(const std::set<std::string>& ids, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  write_csv_row(out, {"tweet_id"});
  for (const auto& id : ids) write_csv_row(out, {id});
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// ---------------------------------------------------------------- stages

int cmd_ingest(const PipelineConfig& cfg) {
  require_file(cfg.corpus_path, "corpus");
  LoadReport report;
  Corpus corpus = load_corpus(cfg.corpus_path, &report);
  for (const auto& e : report.errors) std::cerr << "ingest: " << e << '\n';
  fs::create_directories(cfg.out_dir);
  fs::path out = fs::path(cfg.out_dir) / "corpus.jsonl";
  save_corpus(corpus, out.string());
  write_meta(out, cfg, "ingest");
  std::cout << "ingest: " << report.parsed << " tweets parsed, " << report.errors.size()
            << " bad lines of " << report.lines << " total\n";
  return 0;
}

int cmd_despam(const PipelineConfig& cfg, const std::string& in_path) {
  std::string src = in_path.empty() ? (fs::path(cfg.out_dir) / "corpus.jsonl").string() : in_path;
  require_file(src, "corpus (run ingest first or pass --in)");
  Corpus corpus = load_corpus(src);
  DespamResult r = remove_spam(corpus, cfg.spam_threshold);
  fs::create_directories(cfg.out_dir);
  fs::path kept = fs::path(cfg.out_dir) / "despammed.jsonl";
  fs::path removed = fs::path(cfg.out_dir) / "removed.jsonl";
  fs::path stats = fs::path(cfg.out_dir) / "spam_stats.csv";
  save_corpus(r.kept, kept.string());
  save_corpus(r.removed, removed.string());
  {
    std::ofstream out(stats, std::ios::binary | std::ios::trunc);
    write_csv_row(out, {"spam_users", "total_users", "spam_tweets", "total_tweets",
                        "spam_user_ratio", "spam_ratio"});
    write_csv_row(out, {std::to_string(r.stats.spam_user_count),
                        std::to_string(r.stats.total_user_count),
                        std::to_string(r.stats.spam_tweet_count),
                        std::to_string(r.stats.total_tweet_count),
                        fmt2(r.stats.spam_user_ratio()), fmt2(r.stats.spam_ratio())});
  }
  write_meta(kept, cfg, "despam");
  write_meta(stats, cfg, "despam");
  std::cout << "despam: removed " << r.stats.spam_tweet_count << " tweets from "
            << r.stats.spam_user_count << " users (spam ratio " << fmt2(r.stats.spam_ratio())
            << "%)\n";
  return 0;
}

int cmd_regions(const PipelineConfig& cfg) {
  fs::path src = fs::path(cfg.out_dir) / "despammed.jsonl";
  require_file(src.string(), "despammed corpus (run despam first)");
  require_file(cfg.manifest_path, "manifest");
  Corpus corpus = load_corpus(src.string());
  DisasterManifest manifest = load_manifest(cfg.manifest_path);
  CountyGeometry geom;
  if (!cfg.geometry_path.empty()) {
    require_file(cfg.geometry_path, "geometry");
    geom = load_geometry(cfg.geometry_path);
  }
  RegionPartition part = partition(corpus, manifest, geom);
  fs::path aff = fs::path(cfg.out_dir) / "affected.jsonl";
  fs::path unaff = fs::path(cfg.out_dir) / "unaffected.jsonl";
  save_corpus(part.affected, aff.string());
  save_corpus(part.unaffected, unaff.string());
  write_meta(aff, cfg, "regions");
  write_meta(unaff, cfg, "regions");
  std::cout << "regions: affected " << part.affected.size() << ", unaffected "
            << part.unaffected.size() << ", dropped outside " << part.dropped_outside
            << ", out of window " << part.dropped_out_of_window << '\n';
  return 0;
}

int cmd_hashtags_expand(const PipelineConfig& cfg) {
  fs::path src = fs::path(cfg.out_dir) / "despammed.jsonl";
  std::string corpus_path = fs::exists(src) ? src.string() : cfg.corpus_path;
  require_file(corpus_path, "corpus");
  require_file(cfg.manifest_path, "manifest");
  if (cfg.ledger_path.empty()) throw ConfigError("ledger path not configured");
  Corpus corpus = load_corpus(corpus_path);
  DisasterManifest manifest = load_manifest(cfg.manifest_path);
  auto keywords = keywords_for_types(manifest.types, manifest.keyword_overrides);
  auto dict = build_hashtag_dict(corpus);
  auto candidates = expand_candidates(keywords, dict);
  HashtagLedger ledger;
  if (fs::exists(cfg.ledger_path)) ledger = HashtagLedger::load(cfg.ledger_path);
  ledger.merge_candidates(candidates);
  ledger.save(cfg.ledger_path);
  write_meta(cfg.ledger_path, cfg, "hashtags expand");
  std::cout << "hashtags expand: " << candidates.size() << " candidates, "
            << ledger.pending().size() << " pending review\n";
  return 0;
}

int cmd_hashtags_review(const PipelineConfig& cfg, const std::string& ledger_flag,
                        const std::string& corpus_flag) {
  std::string ledger_path = ledger_flag.empty() ? cfg.ledger_path : ledger_flag;
  std::string corpus_path = corpus_flag.empty() ? cfg.corpus_path : corpus_flag;
  require_file(ledger_path, "ledger");
  require_file(corpus_path, "corpus");
  HashtagLedger ledger = HashtagLedger::load(ledger_path);
  Corpus corpus = load_corpus(corpus_path);
  UtcSeconds now = static_cast<UtcSeconds>(std::time(nullptr));
  ReviewResult r = review_session(ledger, ledger_path, corpus, std::cin, std::cout, now);
  std::cout << "\nreview: " << r.accepted << " accepted, " << r.rejected << " rejected, "
            << r.skipped << " skipped, " << ledger.pending().size() << " still pending\n";
  return 0;
}

int cmd_match(const PipelineConfig& cfg, const std::string& region) {
  fs::path src = fs::path(cfg.out_dir) / (region + ".jsonl");
  require_file(src.string(), region + " corpus (run regions first)");
  require_file(cfg.manifest_path, "manifest");
  Corpus corpus = load_corpus(src.string());
  DisasterManifest manifest = load_manifest(cfg.manifest_path);
  auto keywords = keywords_for_types(manifest.types, manifest.keyword_overrides);

  HashtagLedger ledger;
  if (!cfg.ledger_path.empty() && fs::exists(cfg.ledger_path)) {
    ledger = HashtagLedger::load(cfg.ledger_path);
  } else {
    std::cerr << "match: no ledger file, falling back to keyword-only matching\n";
  }
  TermSet terms = final_terms(keywords, ledger);

  auto flags = match_batch(corpus.tweets(), terms, cfg.keyword_match);
  std::set<std::string> matched;
  std::size_t n_conv = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (flags[i]) matched.insert(corpus.tweets()[i].tweet_id);
    if (classify_conventional(corpus.tweets()[i], keywords, manifest.types, manifest.area_name,
                              manifest.official_name))
      ++n_conv;
  }
  fs::path ids_path = fs::path(cfg.out_dir) / ("matching_" + region + ".csv");
  write_id_csv(matched, ids_path);
  write_meta(ids_path, cfg, "match");

  auto imp = improvement(matched.size(), n_conv);
  fs::path summary = fs::path(cfg.out_dir) / ("matching_summary_" + region + ".csv");
  {
    std::ofstream out(summary, std::ios::binary | std::ios::trunc);
    write_csv_row(out, {"region", "n_matching", "n_conventional", "improvement_pct"});
    write_csv_row(out, {region, std::to_string(matched.size()), std::to_string(n_conv),
                        imp ? fmt2(*imp) : "n/a"});
  }
  write_meta(summary, cfg, "match");
  std::cout << "match " << region << ": " << matched.size() << " matched, conventional "
            << n_conv << ", improvement " << (imp ? fmt2(*imp) + "%" : "n/a") << '\n';
  return 0;
}

int cmd_train_relevance(const PipelineConfig& cfg) {
  if (cfg.training_paths.empty()) throw ConfigError("no training paths configured");
  for (const auto& p : cfg.training_paths) require_file(p, "training file");
  require_file(cfg.manifest_path, "manifest");
  DisasterManifest manifest = load_manifest(cfg.manifest_path);
  auto examples = load_training(cfg.training_paths);
  RelevancePipeline pipeline = train_relevance(manifest.types, examples, cfg.relevance);
  if (pipeline.mode == Featurization::tfidf_lsi && !pipeline.lsi.converged)
    std::cerr << "train-relevance: warning, LSI iteration did not fully converge\n";
  fs::create_directories(cfg.out_dir);
  fs::path out = fs::path(cfg.out_dir) / "relevance_pipeline.json";
  save_pipeline(pipeline, out.string());
  write_meta(out, cfg, "train-relevance");
  std::cout << "train-relevance: " << examples.size() << " examples, vocab "
            << pipeline.vocab.size() << ", model saved\n";
  return 0;
}

int cmd_classify(const PipelineConfig& cfg, const std::string& region) {
  fs::path src = fs::path(cfg.out_dir) / (region + ".jsonl");
  fs::path model = fs::path(cfg.out_dir) / "relevance_pipeline.json";
  require_file(src.string(), region + " corpus (run regions first)");
  require_file(model.string(), "relevance pipeline (run train-relevance first)");
  Corpus corpus = load_corpus(src.string());
  RelevancePipeline pipeline = load_pipeline(model.string());
  auto ids = classify_learning(corpus, pipeline);
  fs::path out = fs::path(cfg.out_dir) / ("learning_" + region + ".csv");
  write_id_csv(ids, out);
  write_meta(out, cfg, "classify");
  std::cout << "classify " << region << ": " << ids.size() << " of " << corpus.size()
            << " relevant\n";
  return 0;
}

int cmd_train_sentiment(const PipelineConfig& cfg) {
  require_file(cfg.sentiment_train_path, "sentiment training file");
  auto train = load_sentiment_csv(cfg.sentiment_train_path);
  std::vector<SentimentExample> test;
  if (!cfg.sentiment_test_path.empty()) {
    require_file(cfg.sentiment_test_path, "sentiment test file");
    test = load_sentiment_csv(cfg.sentiment_test_path);
  }
  // prediction texts for the transductive doc2vec feed, when available
  std::vector<std::string> prediction;
  fs::path aff = fs::path(cfg.out_dir) / "affected.jsonl";
  if (fs::exists(aff)) {
    Corpus corpus = load_corpus(aff.string());
    for (const auto& t : corpus.tweets()) prediction.push_back(t.text);
  }
  SentimentTrainResult r =
      train_sentiment(train, test, prediction, cfg.doc2vec, cfg.sentiment_logreg);
  r.model.doc2vec.infer_steps = cfg.infer_steps;
  r.model.doc2vec.infer_lr = cfg.infer_lr;
  fs::create_directories(cfg.out_dir);
  fs::path out = fs::path(cfg.out_dir) / "sentiment_model.json";
  save_sentiment_model(r.model, out.string());
  write_meta(out, cfg, "train-sentiment");
  std::cout << "train-sentiment: accuracy "
            << (r.test_accuracy ? fmt2(100.0 * *r.test_accuracy) + "%" : "n/a") << '\n';
  return 0;
}

int cmd_sentiment(const PipelineConfig& cfg, const std::string& region,
                  const std::string& granularity) {
  fs::path src = fs::path(cfg.out_dir) / (region + ".jsonl");
  fs::path model_path = fs::path(cfg.out_dir) / "sentiment_model.json";
  fs::path ids_path = fs::path(cfg.out_dir) / ("matching_" + region + ".csv");
  require_file(src.string(), region + " corpus");
  require_file(model_path.string(), "sentiment model (run train-sentiment first)");
  require_file(cfg.manifest_path, "manifest");
  Corpus corpus = load_corpus(src.string());
  DisasterManifest manifest = load_manifest(cfg.manifest_path);
  SentimentModel model = load_sentiment_model(model_path.string());

  // sentiment over the disaster-relevant tweets when match ran, else all
  std::vector<Tweet> tweets;
  if (fs::exists(ids_path)) {
    auto ids = read_id_csv(ids_path.string());
    for (const auto& t : corpus.tweets())
      if (ids.count(t.tweet_id)) tweets.push_back(t);
  } else {
    tweets = corpus.tweets();
  }
  auto labels = predict_sentiment(tweets, model);
  BinGranularity gran = granularity == "day" ? BinGranularity::day : BinGranularity::hour;
  auto bins =
      bin_counts(tweets, labels, gran, manifest.window_start(), manifest.window_end());
  fs::path bins_path = fs::path(cfg.out_dir) / ("sentiment_bins_" + region + ".csv");
  write_bins_csv(bins, bins_path.string());
  write_meta(bins_path, cfg, "sentiment");
  std::size_t pos = 0;
  for (auto l : labels)
    if (l == Polarity::positive) ++pos;
  std::cout << "sentiment " << region << ": " << pos << " positive, " << labels.size() - pos
            << " negative over " << bins.size() << " bins\n";
  return 0;
}

int cmd_eval(const PipelineConfig& cfg) {
  require_file(cfg.manifest_path, "manifest");
  DisasterManifest manifest = load_manifest(cfg.manifest_path);
  auto stats_rows = read_csv_file((fs::path(cfg.out_dir) / "spam_stats.csv").string());
  double spam_ratio = stats_rows.size() > 1 ? std::stod(stats_rows[1][5]) : 0.0;

  std::vector<ComparisonRow> rows;
  for (const std::string& region : {"affected", "unaffected"}) {
    fs::path corpus_path = fs::path(cfg.out_dir) / (region + ".jsonl");
    fs::path m_path = fs::path(cfg.out_dir) / ("matching_" + region + ".csv");
    fs::path l_path = fs::path(cfg.out_dir) / ("learning_" + region + ".csv");
    require_file(corpus_path.string(), region + " corpus");
    require_file(m_path.string(), "matching ids for " + region);
    require_file(l_path.string(), "learning ids for " + region);
    Corpus corpus = load_corpus(corpus_path.string());
    auto m = read_id_csv(m_path.string());
    auto l = read_id_csv(l_path.string());
    auto agreed = agreement(m, l);
    ComparisonRow r;
    r.disaster_id = manifest.disaster_id;
    r.region = region;
    r.n_matching = m.size();
    r.n_learning = l.size();
    r.n_agreement = agreed.size();
    r.recall_matching = paper_recall(m.size(), agreed.size());
    r.recall_learning = paper_recall(l.size(), agreed.size());
    r.relevance_matching = relevance_ratio(m.size(), corpus.size());
    r.relevance_learning = relevance_ratio(l.size(), corpus.size());
    r.spam_ratio = spam_ratio;
    rows.push_back(std::move(r));
  }
  fs::path out = fs::path(cfg.out_dir) / "results.csv";
  emit_results(rows, out.string());
  write_meta(out, cfg, "eval");
  std::cout << "eval: wrote " << rows.size() << " rows to " << out.string() << '\n';
  return 0;
}

int cmd_report(const PipelineConfig& cfg) {
  fs::path results = fs::path(cfg.out_dir) / "results.csv";
  require_file(results.string(), "results.csv (run eval first)");
  // improvement plot data from the per-region match summaries
  fs::path imp_path = fs::path(cfg.out_dir) / "improvement.csv";
  std::ofstream out(imp_path, std::ios::binary | std::ios::trunc);
  write_csv_row(out, {"region", "n_matching", "n_conventional", "improvement_pct"});
  for (const std::string& region : {"affected", "unaffected"}) {
    fs::path summary = fs::path(cfg.out_dir) / ("matching_summary_" + region + ".csv");
    if (!fs::exists(summary)) continue;
    auto rows = read_csv_file(summary.string());
    for (std::size_t i = 1; i < rows.size(); ++i) write_csv_row(out, rows[i]);
  }
  out.close();
  write_meta(imp_path, cfg, "report");
  std::cout << "report: results at " << results.string() << ", plot data at "
            << imp_path.string() << '\n';
  return 0;
}

int cmd_demo(PipelineConfig cfg) {
  fs::path data_dir = fs::path(cfg.out_dir) / "demo_data";
  fs::create_directories(data_dir);

  SynthBundle bundle = make_synth_bundle(cfg.seed);
  save_corpus(bundle.corpus, (data_dir / "corpus.jsonl").string());
  save_manifest(bundle.manifest, (data_dir / "manifest.json").string());
  save_geometry(bundle.geometry, (data_dir / "geometry.json").string());
  save_training_csv(bundle.relevance_examples, (data_dir / "training.csv").string());
  auto sent = make_sentiment_corpus(cfg.seed + 1, 300);
  std::vector<SentimentExample> sent_train(sent.begin(), sent.begin() + 200);
  std::vector<SentimentExample> sent_test(sent.begin() + 200, sent.end());
  save_sentiment_csv(sent_train, (data_dir / "sentiment_train.csv").string());
  save_sentiment_csv(sent_test, (data_dir / "sentiment_test.csv").string());

  cfg.corpus_path = (data_dir / "corpus.jsonl").string();
  cfg.manifest_path = (data_dir / "manifest.json").string();
  cfg.geometry_path = (data_dir / "geometry.json").string();
  cfg.ledger_path = (data_dir / "ledger.csv").string();
  cfg.training_paths = {(data_dir / "training.csv").string()};
  cfg.sentiment_train_path = (data_dir / "sentiment_train.csv").string();
  cfg.sentiment_test_path = (data_dir / "sentiment_test.csv").string();
  // demo-scale hyperparameters
  cfg.relevance.lsi_k = 40;
  cfg.doc2vec.dim = 20;
  cfg.doc2vec.epochs = 200;
  cfg.doc2vec.lr = 0.1;

  cmd_ingest(cfg);
  cmd_despam(cfg, "");
  cmd_regions(cfg);
  cmd_hashtags_expand(cfg);
  {
    // unattended stand-in for the interactive review: accept everything
    HashtagLedger ledger = HashtagLedger::load(cfg.ledger_path);
    UtcSeconds now = bundle.manifest.window_end();
    for (const auto* e : ledger.pending())
      ledger.decide(e->hashtag, LedgerStatus::accepted, now, "auto-accepted (demo)");
    ledger.save(cfg.ledger_path);
  }
  cmd_match(cfg, "affected");
  cmd_match(cfg, "unaffected");
  cmd_train_relevance(cfg);
  cmd_classify(cfg, "affected");
  cmd_classify(cfg, "unaffected");
  cmd_eval(cfg);
  cmd_train_sentiment(cfg);
  cmd_sentiment(cfg, "affected", "hour");
  cmd_report(cfg);
  append_run_log(cfg, "demo");
  std::cout << "demo: complete, outputs under " << cfg.out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disaster tweet triage pipeline"};
  app.require_subcommand(1);

  std::string config_path, in_path, out_dir, ledger_flag, corpus_flag;
  std::string region = "affected", granularity = "hour";
  long long seed_flag = -1;
  app.add_option("--config", config_path, "pipeline config JSON (or TRIAGE_CONFIG env)");
  app.add_option("--seed", seed_flag, "override master seed");
  app.add_option("--out", out_dir, "override output directory");

  auto* ingest = app.add_subcommand("ingest", "load and normalize the tweet corpus");
  ingest->add_option("--in", in_path, "corpus JSONL path (overrides config)");
  auto* despam = app.add_subcommand("despam", "remove high-volume spam users");
  despam->add_option("--in", in_path, "corpus JSONL path");
  auto* regions_cmd =
      app.add_subcommand("regions", "partition into affected/unaffected regions");
  auto* hashtags = app.add_subcommand("hashtags", "hashtag expansion and review");
  auto* expand = hashtags->add_subcommand("expand", "expand candidate hashtags into the ledger");
  auto* review = hashtags->add_subcommand("review", "interactively review candidates");
  review->add_option("--ledger", ledger_flag, "ledger CSV path");
  review->add_option("--corpus", corpus_flag, "corpus JSONL path");
  auto* match = app.add_subcommand("match", "matching-based relevance classification");
  match->add_option("--region", region, "affected|unaffected");
  auto* train_rel = app.add_subcommand("train-relevance", "train the learning-based pipeline");
  auto* classify = app.add_subcommand("classify", "learning-based relevance classification");
  classify->add_option("--region", region, "affected|unaffected");
  auto* train_sent = app.add_subcommand("train-sentiment", "train the sentiment classifier");
  auto* sentiment = app.add_subcommand("sentiment", "predict sentiment and emit time bins");
  sentiment->add_option("--region", region, "affected|unaffected");
  sentiment->add_option("--granularity", granularity, "hour|day");
  auto* eval = app.add_subcommand("eval", "compute agreement metrics and the results table");
  auto* report = app.add_subcommand("report", "emit plot-data files");
  auto* demo = app.add_subcommand("demo", "run the full pipeline on a bundled synthetic corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    PipelineConfig cfg;
    if (config_path.empty()) {
      const char* env = std::getenv("TRIAGE_CONFIG");
      if (env) config_path = env;
    }
    if (!config_path.empty()) {
      if (!fs::exists(config_path)) throw ConfigError("config not found: " + config_path);
      cfg = load_config(config_path);
    } else {
      cfg = default_config();
    }
    if (seed_flag >= 0) {
      cfg.seed = static_cast<std::uint64_t>(seed_flag);
      cfg.relevance.seed = cfg.seed;
      cfg.relevance.logreg.seed = cfg.seed;
      cfg.doc2vec.seed = cfg.seed;
      cfg.sentiment_logreg.seed = cfg.seed;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!in_path.empty() && (ingest->parsed() || despam->parsed())) cfg.corpus_path = in_path;

    int rc = 0;
    if (ingest->parsed()) rc = cmd_ingest(cfg);
    else if (despam->parsed()) rc = cmd_despam(cfg, in_path);
    else if (regions_cmd->parsed()) rc = cmd_regions(cfg);
    else if (expand->parsed()) rc = cmd_hashtags_expand(cfg);
    else if (review->parsed()) rc = cmd_hashtags_review(cfg, ledger_flag, corpus_flag);
    else if (hashtags->parsed()) {
      std::cerr << "hashtags: expected a subcommand (expand|review)\n";
      return 1;
    } else if (match->parsed()) rc = cmd_match(cfg, region);
    else if (train_rel->parsed()) rc = cmd_train_relevance(cfg);
    else if (classify->parsed()) rc = cmd_classify(cfg, region);
    else if (train_sent->parsed()) rc = cmd_train_sentiment(cfg);
    else if (sentiment->parsed()) rc = cmd_sentiment(cfg, region, granularity);
    else if (eval->parsed()) rc = cmd_eval(cfg);
    else if (report->parsed()) rc = cmd_report(cfg);
    else if (demo->parsed()) rc = cmd_demo(cfg);
    if (rc == 0 && !demo->parsed()) append_run_log(cfg, argv[1] ? argv[1] : "?");
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
