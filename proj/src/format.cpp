#include "topofuse/format.hpp"

#include <array>
#include <charconv>
#include <system_error>

#include "topofuse/errors.hpp"

namespace topofuse {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw ArgumentError("cannot format value");
  return std::string(buf.data(), end);
}

double parse_real(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ArgumentError("not a number: '" + text + "'");
  }
  return value;
}

}  // namespace topofuse
