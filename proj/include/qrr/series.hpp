#ifndef QRR_SERIES_HPP
#define QRR_SERIES_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace qrr {

// Truncated Laurent series in q with exact rational coefficients.
//
// Every coefficient of q^e with e <= order() is known exactly; nothing above
// order() is stored. Terms are kept sparse and sorted by exponent, with no
// zero coefficients.
class LaurentSeries {
public:
  using Term = std::pair<Exponent, Rational>;

  LaurentSeries() = default;

  static LaurentSeries zero(Exponent order) {
    LaurentSeries s;
    s.order_ = order;
    return s;
  }

  static LaurentSeries monomial(const Rational& c, Exponent e, Exponent order) {
    LaurentSeries s = zero(order);
    if (c != 0 && e <= order) s.terms_.emplace_back(e, c);
    return s;
  }

  static LaurentSeries constant(const Rational& c, Exponent order) { return monomial(c, 0, order); }

  // Combines duplicate exponents and drops terms above order.
  static LaurentSeries from_terms(std::vector<Term> terms, Exponent order) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentSeries s = zero(order);
    for (auto& t : terms) {
      if (t.first > order) break;
      t.second.canonicalize();  // mpq_class(n, d) does not reduce
      if (!s.terms_.empty() && s.terms_.back().first == t.first)
        s.terms_.back().second += t.second;
      else
        s.terms_.push_back(std::move(t));
      if (s.terms_.back().second == 0) s.terms_.pop_back();
    }
    return s;
  }

  // Dense coefficients for q^first, q^(first+1), ...
  static LaurentSeries from_dense(Exponent first, const std::vector<Rational>& cs, Exponent order) {
    LaurentSeries s = zero(order);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      Exponent e = first + static_cast<Exponent>(k);
      if (e > order) break;
      Rational c = cs[k];
      c.canonicalize();
      if (c != 0) s.terms_.emplace_back(e, std::move(c));
    }
    return s;
  }

  Exponent order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::optional<Exponent> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
  }

  // Smallest exponent that may be nonzero: valuation, or order+1 for zero.
  Exponent lead() const { return terms_.empty() ? order_ + 1 : terms_.front().first; }

  Rational coeff(Exponent e) const {
    if (e > order_)
      throw precision_error("coefficient of q^" + std::to_string(e) + " requested beyond order " +
                            std::to_string(order_));
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, Exponent x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return 0;
  }

  LaurentSeries truncated(Exponent order) const {
    if (order > order_)
      throw precision_error("cannot raise order " + std::to_string(order_) + " to " + std::to_string(order));
    LaurentSeries s = zero(order);
    for (const auto& t : terms_) {
      if (t.first > order) break;
      s.terms_.push_back(t);
    }
    return s;
  }

  bool all_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return is_integer(t.second); });
  }

  bool operator==(const LaurentSeries& o) const { return order_ == o.order_ && terms_ == o.terms_; }

private:
  std::vector<Term> terms_;
  Exponent order_ = 0;
};

inline LaurentSeries ls_neg(const LaurentSeries& a) {
  std::vector<LaurentSeries::Term> ts = a.terms();
  for (auto& t : ts) t.second = -t.second;
  return LaurentSeries::from_terms(std::move(ts), a.order());
}

inline LaurentSeries ls_add(const LaurentSeries& a, const LaurentSeries& b) {
  Exponent order = std::min(a.order(), b.order());
  std::vector<LaurentSeries::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  auto i = a.terms().begin(), ie = a.terms().end();
  auto j = b.terms().begin(), je = b.terms().end();
  while (i != ie || j != je) {
    if (j == je || (i != ie && i->first < j->first)) {
      if (i->first > order) break;
      out.push_back(*i++);
    } else if (i == ie || j->first < i->first) {
      if (j->first > order) break;
      out.push_back(*j++);
    } else {
      if (i->first > order) break;
      Rational c = i->second + j->second;
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i, ++j;
    }
  }
  return LaurentSeries::from_terms(std::move(out), order);
}

inline LaurentSeries ls_sub(const LaurentSeries& a, const LaurentSeries& b) { return ls_add(a, ls_neg(b)); }

inline LaurentSeries ls_scale(const LaurentSeries& a, const Rational& c) {
  if (c == 0) return LaurentSeries::zero(a.order());
  std::vector<LaurentSeries::Term> ts = a.terms();
  for (auto& t : ts) t.second *= c;
  return LaurentSeries::from_terms(std::move(ts), a.order());
}

// Multiplication by the exact monomial q^k.
inline LaurentSeries ls_shift(const LaurentSeries& a, Exponent k) {
  std::vector<LaurentSeries::Term> ts = a.terms();
  for (auto& t : ts) t.first += k;
  return LaurentSeries::from_terms(std::move(ts), a.order() + k);
}

inline LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b) {
  const Exponent order = std::min(a.order() + b.lead(), b.order() + a.lead());
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(order);
  const Exponent base = a.lead() + b.lead();
  if (order < base) return LaurentSeries::zero(order);
  const std::size_t width = static_cast<std::size_t>(order - base + 1);
  // Iterate over the sparser operand in the outer loop.
  const LaurentSeries& x = a.terms().size() <= b.terms().size() ? a : b;
  const LaurentSeries& y = &x == &a ? b : a;

  std::vector<LaurentSeries::Term> out;
  if (a.all_integral() && b.all_integral()) {
    std::vector<Integer> acc(width);
    for (const auto& [ex, cx] : x.terms()) {
      const Integer& nx = cx.get_num();
      for (const auto& [ey, cy] : y.terms()) {
        Exponent e = ex + ey;
        if (e > order) break;
        mpz_addmul(acc[e - base].get_mpz_t(), nx.get_mpz_t(), cy.get_num().get_mpz_t());
      }
    }
    for (std::size_t k = 0; k < width; ++k)
      if (acc[k] != 0) out.emplace_back(base + static_cast<Exponent>(k), Rational(acc[k]));
  } else {
    std::vector<Rational> acc(width);
    Rational tmp;
    for (const auto& [ex, cx] : x.terms()) {
      for (const auto& [ey, cy] : y.terms()) {
        Exponent e = ex + ey;
        if (e > order) break;
        mpq_mul(tmp.get_mpq_t(), cx.get_mpq_t(), cy.get_mpq_t());
        acc[e - base] += tmp;
      }
    }
    for (std::size_t k = 0; k < width; ++k)
      if (acc[k] != 0) out.emplace_back(base + static_cast<Exponent>(k), std::move(acc[k]));
  }
  return LaurentSeries::from_terms(std::move(out), order);
}

// Multiplicative inverse. A series q^v(c + ...) known to order N has an inverse
// known to order N - 2v.
inline LaurentSeries ls_invert(const LaurentSeries& a) {
  if (a.is_zero()) throw domain_error("inverse of a zero series");
  const Exponent v = *a.valuation();
  const Exponent order = a.order() - 2 * v;
  const Exponent rel = a.order() - v;  // number of known coefficients minus one
  std::vector<Rational> ad(static_cast<std::size_t>(rel + 1));
  for (const auto& [e, c] : a.terms()) ad[e - v] = c;
  const Rational& a0 = ad[0];
  std::vector<Rational> bd(ad.size());

  if (a.all_integral() && (a0 == 1 || a0 == -1)) {
    const bool neg = a0 < 0;
    std::vector<Integer> ai(ad.size()), bi(ad.size());
    std::vector<std::size_t> nz;  // nonzero positions of a beyond the lead
    for (std::size_t k = 0; k < ad.size(); ++k) {
      ai[k] = ad[k].get_num();
      if (k > 0 && ai[k] != 0) nz.push_back(k);
    }
    bi[0] = neg ? -1 : 1;
    Integer s;
    for (std::size_t k = 1; k < ai.size(); ++k) {
      s = 0;
      for (std::size_t j : nz) {
        if (j > k) break;
        mpz_addmul(s.get_mpz_t(), ai[j].get_mpz_t(), bi[k - j].get_mpz_t());
      }
      bi[k] = neg ? Integer(s) : Integer(-s);
    }
    for (std::size_t k = 0; k < ai.size(); ++k) bd[k] = bi[k];
  } else {
    Rational inv0 = 1 / a0;
    Rational s, tmp;
    bd[0] = inv0;
    for (std::size_t k = 1; k < ad.size(); ++k) {
      s = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (ad[j] == 0) continue;
        mpq_mul(tmp.get_mpq_t(), ad[j].get_mpq_t(), bd[k - j].get_mpq_t());
        s += tmp;
      }
      bd[k] = -s * inv0;
    }
  }
  return LaurentSeries::from_dense(-v, bd, order);
}

inline LaurentSeries ls_div(const LaurentSeries& a, const LaurentSeries& b) { return ls_mul(a, ls_invert(b)); }

inline LaurentSeries ls_pow(const LaurentSeries& a, unsigned k) {
  if (k == 0) return LaurentSeries::constant(1, a.order());
  LaurentSeries r = a;
  for (unsigned i = 1; i < k; ++i) r = ls_mul(r, a);
  return r;
}

// First exponent <= upto where a and b differ, or nullopt if they agree.
// Throws precision_error when upto exceeds either reliable order.
inline std::optional<Exponent> ls_first_mismatch(const LaurentSeries& a, const LaurentSeries& b, Exponent upto) {
  if (upto > a.order() || upto > b.order())
    throw precision_error("comparison to q^" + std::to_string(upto) + " but orders are " +
                          std::to_string(a.order()) + " and " + std::to_string(b.order()));
  auto i = a.terms().begin(), ie = a.terms().end();
  auto j = b.terms().begin(), je = b.terms().end();
  while (i != ie || j != je) {
    Exponent e;
    if (j == je || (i != ie && i->first < j->first)) {
      e = i->first;
    } else if (i == ie || j->first < i->first) {
      e = j->first;
    } else {
      if (i->second != j->second && i->first <= upto) return i->first;
      ++i, ++j;
      continue;
    }
    return e <= upto ? std::optional<Exponent>(e) : std::nullopt;
  }
  return std::nullopt;
}

inline bool ls_eq_up_to(const LaurentSeries& a, const LaurentSeries& b, Exponent upto) {
  return !ls_first_mismatch(a, b, upto).has_value();
}

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return ls_add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return ls_sub(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a) { return ls_neg(a); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return ls_mul(a, b); }
inline LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return ls_div(a, b); }

inline std::string to_string(const LaurentSeries& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  if (first) os << "0";
  os << " + O(q^" << s.order() + 1 << ")";
  return os.str();
}

} // namespace qrr

#endif
