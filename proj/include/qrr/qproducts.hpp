#ifndef QRR_QPRODUCTS_HPP
#define QRR_QPRODUCTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "expr.hpp"

namespace qrr {

// sign * q^exp
struct QMonomial {
  int sign = 1;
  Exponent exp = 0;
  bool operator==(const QMonomial&) const = default;
};

// u*k + v for an index variable k.
struct Affine {
  Exponent u = 0;
  Exponent v = 0;
  Exponent at(Exponent k) const { return u * k + v; }
  bool operator==(const Affine&) const = default;
};

// (arg; q^step)_L where L is affine in an index variable, or infinite.
struct PochSpec {
  QMonomial arg;
  Exponent step = 1;
  std::optional<Affine> length;  // nullopt: infinite product

  bool operator==(const PochSpec&) const = default;
  bool infinite() const { return !length.has_value(); }
};

// Finite product (a;q^b)_n. For n < 0 this is prod_{j=1}^{-n} (1 - a q^{-bj})^{-1}.
inline LaurentSeries poch_finite(const QMonomial& a, Exponent step, Exponent n, Exponent order) {
  auto factor = [&](Exponent e) {
    // 1 - sign*q^e
    return LaurentSeries::from_terms({{0, Rational(1)}, {e, Rational(-a.sign)}}, order);
  };
  LaurentSeries acc = LaurentSeries::constant(1, order);
  if (n >= 0) {
    for (Exponent j = 0; j < n; ++j) {
      LaurentSeries f = factor(a.exp + step * j);
      if (f.is_zero()) return LaurentSeries::zero(order);
      acc = ls_mul(acc, f);
    }
    return acc;
  }
  for (Exponent j = 1; j <= -n; ++j) {
    LaurentSeries f = factor(a.exp - step * j);
    if (f.is_zero()) throw domain_error("finite Pochhammer with negative length has a zero factor");
    acc = ls_mul(acc, f);
  }
  return ls_invert(acc);
}

// (a;q^b)_inf truncated at `order`. Needs a positive exponent in the argument.
inline LaurentSeries poch_infinite(const QMonomial& a, Exponent step, Exponent order) {
  if (a.exp < 1 || step < 1) throw domain_error("infinite Pochhammer needs arg exponent >= 1 and step >= 1");
  LaurentSeries acc = LaurentSeries::constant(1, order);
  for (Exponent e = a.exp; e <= order; e += step)
    acc = ls_mul(acc, LaurentSeries::from_terms({{0, Rational(1)}, {e, Rational(-a.sign)}}, order));
  return acc;
}

inline LaurentSeries eval_poch(const PochSpec& p, Exponent k, Exponent order) {
  if (p.infinite()) return poch_infinite(p.arg, p.step, order);
  return poch_finite(p.arg, p.step, p.length->at(k), order);
}

// a*m^2 + b*m + c with rational coefficients; must be integral where used.
struct ExponentForm {
  Rational a = 0, b = 0, c = 0;
  bool operator==(const ExponentForm&) const = default;
  Exponent at(Exponent m) const {
    Rational e = a * m * m + b * m + c;
    if (!is_integer(e)) throw config_error("non-integral prefactor exponent at m=" + std::to_string(m));
    return to_exponent(e);
  }
};

enum class SignForm { plus, minus, alternating, alternating_shifted };  // +1, -1, (-1)^m, (-1)^(m-1)

inline int sign_at(SignForm s, Exponent m) {
  int alt = (m % 2 == 0) ? 1 : -1;
  switch (s) {
    case SignForm::plus: return 1;
    case SignForm::minus: return -1;
    case SignForm::alternating: return alt;
    case SignForm::alternating_shifted: return -alt;
  }
  return 1;
}

// sign(m) * q^{e(m)} * prod finite_numer * prod scalar_numer / (prod finite_denom * prod scalar_denom)
// Finite Pochhammer lengths are affine in m; scalars are fixed Laurent polynomials.
struct PrefactorSpec {
  SignForm sign = SignForm::plus;
  ExponentForm exponent;
  std::vector<PochSpec> finite_numer, finite_denom;
  std::vector<IndexPoly> scalar_numer, scalar_denom;
  bool operator==(const PrefactorSpec&) const = default;

  // Most negative valuation this can take on m in [lo, hi]; used to pad work orders.
  Exponent min_valuation(Exponent lo, Exponent hi) const {
    Exponent best = 0;
    for (Exponent m = lo; m <= hi; ++m) best = std::min(best, exponent.at(m));
    return best;
  }
};

inline LaurentSeries eval_prefactor(const PrefactorSpec& p, Exponent m, Exponent order) {
  LaurentSeries num = LaurentSeries::monomial(sign_at(p.sign, m), p.exponent.at(m), order);
  LaurentSeries den = LaurentSeries::constant(1, order);
  for (const auto& f : p.finite_numer) num = ls_mul(num, eval_poch(f, m, order));
  for (const auto& f : p.scalar_numer) num = ls_mul(num, f.constant(order));
  for (const auto& f : p.finite_denom) den = ls_mul(den, eval_poch(f, m, order));
  for (const auto& f : p.scalar_denom) den = ls_mul(den, f.constant(order));
  if (p.finite_denom.empty() && p.scalar_denom.empty()) return num;
  return ls_div(num, den);
}

// Quotient of Pochhammer symbols with no index dependence (usually infinite ones).
struct ProductExpr {
  std::vector<PochSpec> numer, denom;
  bool operator==(const ProductExpr&) const = default;

  // True when this is 1 / prod (q^a; q^b)_inf with every argument sign +1.
  bool is_partition_product() const {
    if (!numer.empty()) return false;
    for (const auto& p : denom)
      if (!p.infinite() || p.arg.sign != 1) return false;
    return true;
  }
};

inline LaurentSeries eval_product_expr(const ProductExpr& e, Exponent order) {
  LaurentSeries num = LaurentSeries::constant(1, order);
  LaurentSeries den = LaurentSeries::constant(1, order);
  for (const auto& f : e.numer) num = ls_mul(num, eval_poch(f, 0, order));
  for (const auto& f : e.denom) den = ls_mul(den, eval_poch(f, 0, order));
  if (e.denom.empty()) return num;
  return ls_div(num, den);
}

// (a n^2 + b n m + c n + d m + e) / den, with den in {1, 2}.
struct ExponentForm2 {
  Exponent den = 1;
  Exponent a = 0, b = 0, c = 0, d = 0, e = 0;
  bool operator==(const ExponentForm2&) const = default;

  Exponent at(Exponent n, Exponent m) const {
    Exponent top = a * n * n + b * n * m + c * n + d * m + e;
    if (top % den != 0) throw config_error("non-integral summand exponent at n=" + std::to_string(n));
    return top / den;
  }
};

// sign(n) q^{e(n,m)} prod numer / prod denom, Pochhammer lengths affine in n.
struct SummandSpec {
  bool alternating = false;  // extra (-1)^n
  ExponentForm2 exponent;
  std::vector<PochSpec> numer, denom;
  bool operator==(const SummandSpec&) const = default;
};

inline std::string format_poch(const PochSpec& p, char var) {
  std::string a = (p.arg.sign < 0 ? "-" : "");
  if (p.arg.exp == 0)
    a += "1";
  else
    a += p.arg.exp == 1 ? "q" : "q^" + std::to_string(p.arg.exp);
  std::string b = p.step == 1 ? "q" : "q^" + std::to_string(p.step);
  std::string len = p.infinite() ? "inf" : detail::format_affine(p.length->u, p.length->v, var);
  return "(" + a + ";" + b + ")_" + len;
}

} // namespace qrr

#endif
