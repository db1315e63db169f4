#ifndef QRR_TEST_UTIL_HPP
#define QRR_TEST_UTIL_HPP

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "qrr/qrr.hpp"

namespace qrr::test {

// Coefficients of q^from .. q^to as strings, for readable failure output.
inline std::vector<std::string> coeffs(const LaurentSeries& s, Exponent from, Exponent to) {
  std::vector<std::string> out;
  for (Exponent e = from; e <= to; ++e) out.push_back(to_string(s.coeff(e)));
  return out;
}

// Series as a polynomial, without the O-term and with "3q^2" for "3*q^2".
inline std::string shown(const LaurentSeries& s) {
  std::string t = to_string(s);
  t.erase(t.rfind(" + O(q^"));
  std::erase(t, '*');
  return t;
}

inline std::string shown(const Rational& r) { return to_string(r); }

inline std::vector<std::string> ints(std::initializer_list<long> v) {
  std::vector<std::string> out;
  for (long x : v) out.push_back(std::to_string(x));
  return out;
}

inline LaurentSeries poly(std::initializer_list<long> cs, Exponent order, Exponent first = 0) {
  std::vector<Rational> d;
  for (long c : cs) d.emplace_back(c);
  return LaurentSeries::from_dense(first, d, order);
}

inline LaurentSeries series(const std::string& text, Exponent order) { return parse_series_expr(text).eval(order); }

inline ::testing::AssertionResult same_through(const LaurentSeries& a, const LaurentSeries& b, Exponent n) {
  if (a.order() < n || b.order() < n)
    return ::testing::AssertionFailure() << "reliable orders " << a.order() << ", " << b.order() << " below " << n;
  if (auto bad = ls_first_mismatch(a, b, n))
    return ::testing::AssertionFailure() << "differ at q^" << *bad << ": " << to_string(a.coeff(*bad)) << " vs "
                                         << to_string(b.coeff(*bad));
  return ::testing::AssertionSuccess();
}

inline const Catalog& cat() { return builtin_catalog(); }

inline const Family& fam(const std::string& id) {
  const Family* f = cat().family(id);
  if (!f) throw std::runtime_error("no family " + id);
  return *f;
}

inline SequenceWindow window(const std::string& family, const std::string& name, Exponent lo, Exponent hi,
                             Exponent order) {
  return sequence_range(fam(family).finitization(name)->spec(order), lo, hi, order);
}

} // namespace qrr::test

#endif
