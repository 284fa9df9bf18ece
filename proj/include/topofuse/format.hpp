#pragma once

#include <string>

namespace topofuse {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_real(double value);

/// Strict full-string parse; throws ArgumentError on trailing garbage.
double parse_real(const std::string& text);

}  // namespace topofuse
