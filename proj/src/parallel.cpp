#include "triage/parallel.hpp"

namespace triage {

namespace {
ExecMode g_mode = ExecMode::openmp;
}

ExecMode default_exec_mode() { return g_mode; }
void set_default_exec_mode(ExecMode mode) { g_mode = mode; }

std::vector<std::optional<std::string>> assign_county_batch(const std::vector<Tweet>& tweets,
                                                            const CountyGeometry& geom,
                                                            ExecMode mode) {
  return map_indexed<std::optional<std::string>>(
      tweets.size(),
      [&](std::size_t i) -> std::optional<std::string> {
        const Tweet& t = tweets[i];
        if (t.county_fips) return t.county_fips;
        if (t.lat && t.lon) return assign_county(*t.lat, *t.lon, geom);
        return std::nullopt;
      },
      mode);
}

std::vector<std::optional<std::string>> assign_county_batch(const std::vector<Tweet>& tweets,
                                                            const CountyGeometry& geom) {
  return assign_county_batch(tweets, geom, g_mode);
}

}  // namespace triage
