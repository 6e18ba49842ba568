#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace railplan {

// Fixed-notation formatting with 6 significant digits. Values >= 1e6 keep all
// integer digits (no scientific notation in CSV output).
inline std::string format_sig6(double v) {
  if (v == 0.0 || !std::isfinite(v)) {
    return std::isfinite(v) ? "0" : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
  }
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  int decimals = 5 - exponent;
  if (decimals < 0) decimals = 0;
  if (decimals > 17) decimals = 17;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s(buf);
  // trim trailing zeros but keep at least one digit after the point
  if (s.find('.') != std::string::npos) {
    size_t last = s.find_last_not_of('0');
    if (s[last] == '.') last--;
    s.erase(last + 1);
  }
  return s;
}

inline std::string format_int(std::int64_t v) { return std::to_string(v); }

}  // namespace railplan
