#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "realposet/errors.hpp"

namespace rp {

using Rat = boost::rational<long long>;

// Parses "num/den" or a bare integer "num". Throws ValueOutOfRange on
// malformed input or a zero denominator.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ValueOutOfRange("empty rational literal");
  const auto slash = s.find('/');
  const std::string num_part = s.substr(0, slash);
  errno = 0;
  char* end = nullptr;
  const long long num = std::strtoll(num_part.c_str(), &end, 10);
  if (errno != 0 || end == num_part.c_str() || *end != '\0')
    throw ValueOutOfRange("bad rational literal: " + s);
  long long den = 1;
  if (slash != std::string::npos) {
    const std::string den_part = s.substr(slash + 1);
    errno = 0;
    den = std::strtoll(den_part.c_str(), &end, 10);
    if (errno != 0 || den_part.empty() || end == den_part.c_str() || *end != '\0')
      throw ValueOutOfRange("bad rational literal: " + s);
    if (den == 0) throw ValueOutOfRange("zero denominator: " + s);
  }
  return Rat(num, den);
}

// Formats as "num/den", or as "num" when the denominator is 1.
inline std::string format_rat(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace rp
