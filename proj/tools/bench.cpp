// Compares the serial reference kernels with their OpenMP counterparts on
// the synthetic corpus.
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "triage/matchfilter.hpp"
#include "triage/parallel.hpp"
#include "triage/synth.hpp"

using namespace triage;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  SynthBundle bundle = make_synth_bundle(7, 20000);
  const auto& tweets = bundle.corpus.tweets();
  auto keywords = keywords_for_types(bundle.manifest.types);
  TermSet terms;
  terms.keywords = keywords;
  terms.hashtags = {"3amquake", "quakeinsf", "napaquakenow"};

  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("corpus size: %zu tweets\n\n", tweets.size());
  std::printf("%-24s %12s %12s %8s\n", "kernel", "serial (ms)", "openmp (ms)", "speedup");

  {
    double s = time_ms([&] { match_batch(tweets, terms, KeywordMatchMode::substring,
                                         ExecMode::serial); });
    double p = time_ms([&] { match_batch(tweets, terms, KeywordMatchMode::substring,
                                         ExecMode::openmp); });
    std::printf("%-24s %12.2f %12.2f %7.2fx\n", "match_batch", s, p, s / p);
    auto a = match_batch(tweets, terms, KeywordMatchMode::substring, ExecMode::serial);
    auto b = match_batch(tweets, terms, KeywordMatchMode::substring, ExecMode::openmp);
    if (a != b) {
      std::fprintf(stderr, "match_batch: serial/openmp results differ!\n");
      return 1;
    }
  }
  {
    double s = time_ms([&] { assign_county_batch(tweets, bundle.geometry, ExecMode::serial); });
    double p = time_ms([&] { assign_county_batch(tweets, bundle.geometry, ExecMode::openmp); });
    std::printf("%-24s %12.2f %12.2f %7.2fx\n", "assign_county_batch", s, p, s / p);
    auto a = assign_county_batch(tweets, bundle.geometry, ExecMode::serial);
    auto b = assign_county_batch(tweets, bundle.geometry, ExecMode::openmp);
    if (a != b) {
      std::fprintf(stderr, "assign_county_batch: serial/openmp results differ!\n");
      return 1;
    }
  }
  std::printf("\nserial and openmp kernels agree.\n");
  return 0;
}
