#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace imean {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// num/den in lowest terms (mpq_class(num, den) does not reduce).
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" in lowest terms with q > 0, or "p" when q = 1.
std::string to_string(const Rational& q);
// Accepts "p", "p/q" and "-p/q"; throws MalformedInput otherwise or on q = 0.
Rational parse_rational(std::string_view text);

}  // namespace imean
