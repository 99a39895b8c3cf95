#include "heislap/numio.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "heislap/errors.hpp"

namespace heislap {

std::string fp17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, const std::string& what) {
  if (field.empty()) throw config_error("empty numeric field: " + what);
  char* end = nullptr;
  double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw config_error("cannot parse '" + field + "' as a number: " + what);
  return v;
}

}  // namespace heislap
