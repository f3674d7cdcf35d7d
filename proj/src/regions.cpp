#include "triage/regions.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "triage/parallel.hpp"

namespace triage {

using nlohmann::json;

DisasterManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  json j = json::parse(in);
  DisasterManifest m;
  m.disaster_id = j.at("disaster_id").get<std::string>();
  m.fema_code = j.value("fema_code", std::string{});
  for (const auto& t : j.at("types")) m.types.insert(t.get<std::string>());
  auto start = parse_iso8601(j.at("start_date").get<std::string>());
  if (!start) throw std::runtime_error("manifest: bad start_date");
  m.start_date = floor_day(*start);
  m.duration_days = j.at("duration_days").get<int>();
  for (const auto& f : j.at("affected_fips")) m.affected_fips.insert(f.get<std::string>());
  for (const auto& f : j.at("vicinity_fips")) m.vicinity_fips.insert(f.get<std::string>());
  if (j.contains("keyword_overrides"))
    for (const auto& k : j.at("keyword_overrides"))
      m.keyword_overrides.push_back(k.get<std::string>());
  m.area_name = j.value("area_name", std::string{});
  m.official_name = j.value("official_name", std::string{});
  if (m.types.empty()) throw std::runtime_error("manifest: types must be nonempty");
  if (m.duration_days < 1) throw std::runtime_error("manifest: duration_days must be >= 1");
  for (const auto& f : m.affected_fips) {
    if (!m.vicinity_fips.count(f))
      throw std::runtime_error("manifest: affected FIPS " + f + " not in vicinity set");
  }
  return m;
}

namespace {

Ring parse_ring(const json& coords) {
  Ring ring;
  for (const auto& pt : coords) {
    ring.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
  }
  if (ring.size() < 4) throw std::runtime_error("geometry: ring with < 3 distinct vertices");
  const Point& a = ring.front();
  const Point& b = ring.back();
  if (a.lon != b.lon || a.lat != b.lat)
    throw std::runtime_error("geometry: ring not closed");
  return ring;
}

}  // namespace

CountyGeometry load_geometry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open geometry: " + path);
  json j = json::parse(in);
  CountyGeometry geom;
  for (const auto& feat : j.at("features")) {
    std::string fips = feat.at("properties").at("FIPS").get<std::string>();
    const auto& g = feat.at("geometry");
    std::string type = g.at("type").get<std::string>();
    auto& polys = geom.counties[fips];
    if (type == "Polygon") {
      for (const auto& ring : g.at("coordinates")) polys.push_back(parse_ring(ring));
    } else if (type == "MultiPolygon") {
      for (const auto& poly : g.at("coordinates"))
        for (const auto& ring : poly) polys.push_back(parse_ring(ring));
    } else {
      throw std::runtime_error("geometry: unsupported type " + type);
    }
  }
  return geom;
}

namespace {

bool on_segment(const Point& p, const Point& a, const Point& b) {
  double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool point_in_ring(const Point& p, const Ring& ring) {
  bool inside = false;
  for (size_t i = 0, n = ring.size() - 1; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[i + 1];
    if (on_segment(p, a, b)) return true;
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      double x = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

std::optional<std::string> assign_county(double lat, double lon, const CountyGeometry& geom) {
  Point p{lon, lat};
  for (const auto& [fips, polys] : geom.counties) {  // map is FIPS-ordered
    for (const Ring& ring : polys) {
      if (point_in_ring(p, ring)) return fips;
    }
  }
  return std::nullopt;
}

RegionPartition partition(const Corpus& corpus, const DisasterManifest& manifest,
                          const CountyGeometry& geom) {
  // fail fast when geometry is needed but absent
  for (const Tweet& t : corpus.tweets()) {
    if (!t.county_fips && !t.lat) continue;  // no location at all -> dropped later
    if (!t.county_fips) {
      bool have_geom = false;
      for (const auto& f : manifest.vicinity_fips)
        if (geom.counties.count(f)) have_geom = true;
      if (!have_geom)
        throw std::runtime_error(
            "partition: tweets without pre-assigned FIPS but no vicinity geometry loaded");
      break;
    }
  }

  const auto fips = assign_county_batch(corpus.tweets(), geom);
  std::vector<Tweet> affected, unaffected;
  RegionPartition part;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Tweet& t = corpus.tweets()[i];
    if (t.timestamp < manifest.window_start() || t.timestamp >= manifest.window_end()) {
      ++part.dropped_out_of_window;
      continue;
    }
    const auto& f = fips[i];
    if (!f) {
      ++part.dropped_outside;
    } else if (manifest.affected_fips.count(*f)) {
      affected.push_back(t);
    } else if (manifest.vicinity_fips.count(*f)) {
      unaffected.push_back(t);
    } else {
      ++part.dropped_outside;
    }
  }
  part.affected = Corpus(std::move(affected));
  part.unaffected = Corpus(std::move(unaffected));
  return part;
}

}  // namespace triage
