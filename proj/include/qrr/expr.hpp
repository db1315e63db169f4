#ifndef QRR_EXPR_HPP
#define QRR_EXPR_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "series.hpp"

namespace qrr {

// c * q^(u*k + v) * z^zdeg, where k is an index variable (n, m or a row i).
struct AffineTerm {
  Rational coeff = 1;
  Exponent u = 0;
  Exponent v = 0;
  int zdeg = 0;

  Exponent exponent_at(Exponent k) const { return u * k + v; }
  bool operator==(const AffineTerm&) const = default;
};

// Finite sum of AffineTerms. Used for recurrence coefficients c_i(n), band
// entries, functional-equation factors and constant Laurent polynomials.
struct IndexPoly {
  std::vector<AffineTerm> terms;

  bool operator==(const IndexPoly&) const = default;

  int zdeg() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.zdeg);
    return d;
  }
  bool is_constant() const {
    for (const auto& t : terms)
      if (t.u != 0) return false;
    return true;
  }

  // Coefficient of z^j with the index variable set to k, as a series to `order`.
  LaurentSeries z_part(int j, Exponent k, Exponent order) const {
    std::vector<LaurentSeries::Term> ts;
    for (const auto& t : terms)
      if (t.zdeg == j) ts.emplace_back(t.exponent_at(k), t.coeff);
    return LaurentSeries::from_terms(std::move(ts), order);
  }

  LaurentSeries at(Exponent k, Exponent order) const {
    if (zdeg() != 0) throw config_error("z-dependent polynomial evaluated without z");
    return z_part(0, k, order);
  }

  // Value with z replaced by q^zexp.
  LaurentSeries at_z(Exponent k, Exponent zexp, Exponent order) const {
    std::vector<LaurentSeries::Term> ts;
    for (const auto& t : terms) ts.emplace_back(t.exponent_at(k) + zexp * t.zdeg, t.coeff);
    return LaurentSeries::from_terms(std::move(ts), order);
  }

  LaurentSeries constant(Exponent order) const { return at(0, order); }
};

namespace detail {

class PolyParser {
public:
  PolyParser(std::string_view text, char var) : var_(var) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  IndexPoly parse() {
    IndexPoly p;
    if (s_.empty()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      AffineTerm t = term();
      t.coeff *= sign;
      p.terms.push_back(std::move(t));
    }
    return p;
  }

private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw config_error("cannot parse '" + s_ + "' at " + std::to_string(pos_) + ": " + why);
  }

  Integer integer() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    if (digits.empty()) fail("expected digits");
    return Integer(digits);
  }

  AffineTerm term() {
    AffineTerm t;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer num = integer();
      Integer den = 1;
      if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        get();
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      t.coeff = Rational(num, den);
      t.coeff.canonicalize();
      any = true;
      if (peek() == '*') get();
    }
    while (peek() == 'q' || peek() == 'z') {
      any = true;
      char f = get();
      if (f == 'z') {
        int k = 1;
        if (peek() == '^') {
          get();
          k = static_cast<int>(integer().get_si());
        }
        t.zdeg += k;
      } else {
        Exponent u = 0, v = 1;
        if (peek() == '^') {
          get();
          std::tie(u, v) = exponent();
        }
        t.u += u;
        t.v += v;
      }
      if (peek() == '*') get();
    }
    if (!any) fail("expected a term");
    return t;
  }

  std::pair<Exponent, Exponent> exponent() {
    if (peek() != '{') {
      int sign = 1;
      if (peek() == '-') {
        get();
        sign = -1;
      }
      return {0, sign * integer().get_si()};
    }
    get();
    Exponent u = 0, v = 0;
    bool first = true;
    while (peek() != '}') {
      if (peek() == '\0') fail("unterminated exponent");
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected + or - in exponent");
      }
      first = false;
      Exponent k = 1;
      bool digits = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        k = integer().get_si();
        digits = true;
      }
      if (peek() == var_) {
        get();
        u += sign * k;
      } else {
        if (!digits) fail(std::string("expected variable ") + var_);
        v += sign * k;
      }
    }
    get();
    return {u, v};
  }

  std::string s_;
  std::size_t pos_ = 0;
  char var_;
};

inline std::string format_affine(Exponent u, Exponent v, char var) {
  std::string out;
  if (u != 0) {
    if (u == -1)
      out += "-";
    else if (u != 1)
      out += std::to_string(u);
    out += var;
  }
  if (v != 0 || u == 0) {
    if (u != 0 && v > 0) out += "+";
    out += std::to_string(v);
  }
  return out;
}

} // namespace detail

// Grammar: terms like "1", "-1/2", "q^2", "zq^{2i-1}", "q^{n-1}", "2q", "q^-1",
// joined by + and -. The index variable is `var`.
inline IndexPoly parse_index_poly(std::string_view text, char var = 'n') {
  return detail::PolyParser(text, var).parse();
}

inline std::string format_index_poly(const IndexPoly& p, char var = 'n') {
  std::string out;
  bool first = true;
  for (const auto& t : p.terms) {
    Rational mag = abs(t.coeff);
    if (t.coeff < 0)
      out += "-";
    else if (!first)
      out += "+";
    first = false;
    bool has_q = t.u != 0 || t.v != 0;
    bool bare = t.zdeg == 0 && !has_q;
    if (mag != 1 || bare) out += mag.get_str();
    if (t.zdeg == 1) out += "z";
    if (t.zdeg > 1) out += "z^" + std::to_string(t.zdeg);
    if (has_q) {
      out += "q";
      if (t.u == 0) {
        if (t.v != 1) out += "^" + std::to_string(t.v);
      } else {
        out += "^{" + detail::format_affine(t.u, t.v, var) + "}";
      }
    }
  }
  if (first) out = "0";
  return out;
}

// Ratio of two constant Laurent polynomials, e.g. "-q/(1-q)" or "1-q^-1".
struct SeriesExpr {
  IndexPoly num;
  IndexPoly den;  // empty means 1

  bool operator==(const SeriesExpr&) const = default;

  LaurentSeries eval(Exponent order) const {
    if (den.terms.empty()) return num.constant(order);
    auto low = [](const IndexPoly& p) {
      Exponent v = 0;
      for (const auto& t : p.terms) v = std::min(v, t.v);
      return v;
    };
    auto high = [](const IndexPoly& p) {
      Exponent v = 0;
      for (const auto& t : p.terms) v = std::max(v, t.v);
      return v;
    };
    // Work deeper so the quotient still reaches `order`.
    Exponent work = order + 2 * (high(den) - low(den)) - low(num) + 2;
    LaurentSeries q = ls_div(num.constant(work), den.constant(work));
    return q.truncated(std::min(order, q.order()));
  }
};

inline SeriesExpr parse_series_expr(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto strip = [](std::string x) {
    if (x.size() >= 2 && x.front() == '(' && x.back() == ')') x = x.substr(1, x.size() - 2);
    return x;
  };
  SeriesExpr e;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == '/' && i + 1 < s.size() && s[i + 1] == '(') {
      e.num = parse_index_poly(strip(s.substr(0, i)), 'n');
      e.den = parse_index_poly(strip(s.substr(i + 1)), 'n');
      if (!e.num.is_constant() || !e.den.is_constant() || e.num.zdeg() || e.den.zdeg())
        throw config_error("series value must be constant: '" + s + "'");
      return e;
    }
  }
  e.num = parse_index_poly(strip(s), 'n');
  if (!e.num.is_constant() || e.num.zdeg()) throw config_error("series value must be constant: '" + s + "'");
  return e;
}

inline std::string format_series_expr(const SeriesExpr& e) {
  if (e.den.terms.empty()) return format_index_poly(e.num);
  auto wrap = [](const IndexPoly& p) {
    std::string x = format_index_poly(p);
    return p.terms.size() > 1 ? "(" + x + ")" : x;
  };
  return wrap(e.num) + "/(" + format_index_poly(e.den) + ")";
}

} // namespace qrr

#endif
