#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "triage/regions.hpp"
#include "triage/tweet.hpp"

namespace triage {

enum class ExecMode { serial, openmp };

// Process-wide default for the batch kernels; the serial path is the
// reference implementation the parallel one is tested against.
ExecMode default_exec_mode();
void set_default_exec_mode(ExecMode mode);

// Writes results by index, so output order is independent of scheduling.
template <typename Out, typename F>
std::vector<Out> map_indexed(std::size_t n, F&& f, ExecMode mode) {
  std::vector<Out> out(n);
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

// Per-tweet county: pre-tagged county_fips wins, else point-in-polygon
// lookup; nullopt when the tweet has no usable location.
std::vector<std::optional<std::string>> assign_county_batch(const std::vector<Tweet>& tweets,
                                                            const CountyGeometry& geom,
                                                            ExecMode mode);
std::vector<std::optional<std::string>> assign_county_batch(const std::vector<Tweet>& tweets,
                                                            const CountyGeometry& geom);

}  // namespace triage
