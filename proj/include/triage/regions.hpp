#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triage/timeutil.hpp"
#include "triage/tweet.hpp"

namespace triage {

struct DisasterManifest {
  std::string disaster_id;
  std::string fema_code;
  std::set<std::string> types;  // earthquake, flood, wildfire
  UtcSeconds start_date = 0;    // 00:00 UTC of the start day
  int duration_days = 1;
  std::set<std::string> affected_fips;
  std::set<std::string> vicinity_fips;
  std::vector<std::string> keyword_overrides;
  std::string area_name;      // e.g. "napa"
  std::string official_name;  // e.g. "napaearthquake"

  UtcSeconds window_start() const { return start_date; }
  UtcSeconds window_end() const { return start_date + duration_days * kSecondsPerDay; }
};

DisasterManifest load_manifest(const std::string& path);

struct Point {
  double lon = 0;
  double lat = 0;
};

// Closed rings, first vertex == last.
using Ring = std::vector<Point>;

struct CountyGeometry {
  // FIPS -> polygons (outer rings only; even-odd rule handles holes as
  // separate rings)
  std::map<std::string, std::vector<Ring>> counties;
};

CountyGeometry load_geometry(const std::string& path);  // GeoJSON, property FIPS

// Even-odd ray casting; boundary points count as inside.
bool point_in_ring(const Point& p, const Ring& ring);

// Lowest FIPS whose any polygon contains the point.
std::optional<std::string> assign_county(double lat, double lon, const CountyGeometry& geom);

struct RegionPartition {
  Corpus affected;
  Corpus unaffected;
  std::size_t dropped_outside = 0;
  std::size_t dropped_out_of_window = 0;
};

RegionPartition partition(const Corpus& corpus, const DisasterManifest& manifest,
                          const CountyGeometry& geom);

}  // namespace triage
