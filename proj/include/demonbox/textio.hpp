#pragma once

#include <string>

namespace demonbox {

// Locale-independent decimal text with enough digits to round-trip exactly.
std::string fmt_double(double v);
std::string fmt_int(long long v);

// Strict numeric parsing; the whole string must be consumed.  "inf" and
// "infinite" are accepted for doubles.  Throws ConfigError on junk.
double parse_double(const std::string& s);
long long parse_int(const std::string& s);
bool parse_bool(const std::string& s);

}  // namespace demonbox
