#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace triage {

// Epoch seconds, UTC. All day/hour arithmetic in this project is UTC.
using UtcSeconds = std::int64_t;

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::int64_t kSecondsPerHour = 3600;

// Days since 1970-01-01 for a civil date (Hinnant's algorithm).
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS", optional trailing 'Z',
// and the paper-style "MM-DD-YYYY" date.
std::optional<UtcSeconds> parse_iso8601(const std::string& s);

std::string format_iso8601(UtcSeconds t);

inline UtcSeconds floor_day(UtcSeconds t) {
  std::int64_t d = t >= 0 ? t / kSecondsPerDay : (t - kSecondsPerDay + 1) / kSecondsPerDay;
  return d * kSecondsPerDay;
}

inline UtcSeconds floor_hour(UtcSeconds t) {
  std::int64_t h = t >= 0 ? t / kSecondsPerHour : (t - kSecondsPerHour + 1) / kSecondsPerHour;
  return h * kSecondsPerHour;
}

}  // namespace triage
