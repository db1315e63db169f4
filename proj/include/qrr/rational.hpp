#ifndef QRR_RATIONAL_HPP
#define QRR_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "errors.hpp"

namespace qrr {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponent = std::int64_t;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw config_error("not a rational: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Exact integer value of r; throws if r has a denominator.
inline Exponent to_exponent(const Rational& r) {
  if (!is_integer(r)) throw domain_error("non-integral exponent " + to_string(r));
  if (!r.get_num().fits_slong_p()) throw domain_error("exponent out of range");
  return r.get_num().get_si();
}

} // namespace qrr

#endif
