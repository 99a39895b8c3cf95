#pragma once

#include <string>
#include <vector>

namespace heislap {

// Shortest exact decimal form of a double: printf "%.17g" round-trips
// bit-exactly through strtod, so re-parsing and re-emitting a report is
// byte-identical.
std::string fp17(double v);

std::string csv_join(const std::vector<std::string>& fields);
std::vector<std::string> csv_split(const std::string& line);

double parse_double(const std::string& field, const std::string& what);

}  // namespace heislap
