#include "socnewton/textio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace socnewton {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& token, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  // strtod reports ERANGE for gradual underflow as well; subnormal results are
  // exact round trips of what the writer produced, so only overflow is an error.
  const bool overflow = errno == ERANGE && std::abs(v) == HUGE_VAL;
  if (end != token.c_str() + token.size() || token.empty() || overflow) {
    throw ParseError(where + ": expected a real number, got '" + token + "'");
  }
  return v;
}

long long parse_integer(const std::string& token, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE) {
    throw ParseError(where + ": expected an integer, got '" + token + "'");
  }
  return v;
}

}  // namespace socnewton
