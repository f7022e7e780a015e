#pragma once

#include <string>
#include <vector>

#include "socnewton/errors.hpp"

// Small text helpers shared by the file formats: canonical double formatting,
// CSV quoting, and strict numeric parsing.

namespace socnewton {

// Canonical shortest-round-trip-safe formatting (printf %.17g). Writing a
// parsed value back always reproduces the same bytes.
std::string format_double(double v);

// RFC-4180 quoting: fields containing comma, quote, or newline are wrapped in
// double quotes with inner quotes doubled; other fields pass through.
std::string csv_quote(const std::string& field);

std::vector<std::string> split_whitespace(const std::string& line);

// Strict parsers: the whole token must be consumed. `where` names the source
// position for the ParseError message.
double parse_double(const std::string& token, const std::string& where);
long long parse_integer(const std::string& token, const std::string& where);

}  // namespace socnewton
