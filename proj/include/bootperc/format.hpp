#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace bootperc {

// Shortest round-trip decimal form (printf %.17g equivalent without the
// trailing noise): what the CSV writers use for coordinates.
inline std::string fmt_round_trip(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_sig(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string fmt_sig17(double v) { return fmt_sig(v, 17); }
inline std::string fmt_sig10(double v) { return fmt_sig(v, 10); }

}  // namespace bootperc
