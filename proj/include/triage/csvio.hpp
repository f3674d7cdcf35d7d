#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace triage {

// RFC-4180-ish CSV: quoted fields may contain commas, quotes ("" escape)
// and newlines.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace triage
