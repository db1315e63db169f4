#ifndef QRR_DETERMINANT_HPP
#define QRR_DETERMINANT_HPP

#include <optional>
#include <vector>

#include "expr.hpp"

namespace qrr {

// Banded matrix with -1 on the subdiagonal. Rows are numbered from 1; each entry
// is an IndexPoly in the row index i, at most linear in z.
struct BandSpec {
  IndexPoly diag;
  IndexPoly super1;
  std::optional<IndexPoly> super2;
  bool operator==(const BandSpec&) const = default;
};

// sum_{k <= zdeg} z^k * coeffs[k](q)
struct BivariateSeries {
  std::vector<LaurentSeries> z;

  int zdeg() const { return static_cast<int>(z.size()) - 1; }
  Exponent order() const {
    Exponent o = z.empty() ? 0 : z[0].order();
    for (const auto& s : z) o = std::min(o, s.order());
    return o;
  }

  static BivariateSeries constant(const Rational& c, int zdeg, Exponent order) {
    BivariateSeries b;
    b.z.assign(static_cast<std::size_t>(zdeg) + 1, LaurentSeries::zero(order));
    b.z[0] = LaurentSeries::constant(c, order);
    return b;
  }
};

inline BivariateSeries bv_add(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries r = a;
  for (std::size_t k = 0; k < r.z.size(); ++k) r.z[k] = ls_add(a.z[k], b.z[k]);
  return r;
}

inline BivariateSeries bv_sub(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries r = a;
  for (std::size_t k = 0; k < r.z.size(); ++k) r.z[k] = ls_sub(a.z[k], b.z[k]);
  return r;
}

inline BivariateSeries bv_mul(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries r;
  Exponent order = std::min(a.order(), b.order());
  r.z.assign(a.z.size(), LaurentSeries::zero(order));
  for (std::size_t i = 0; i < a.z.size(); ++i) {
    if (a.z[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < r.z.size(); ++j) {
      if (b.z[j].is_zero()) continue;
      r.z[i + j] = ls_add(r.z[i + j], ls_mul(a.z[i], b.z[j]));
    }
  }
  return r;
}

// Entry `e` at row i as a bivariate series.
inline BivariateSeries band_entry(const IndexPoly& e, Exponent i, int zdeg, Exponent order) {
  BivariateSeries b;
  for (int k = 0; k <= zdeg; ++k) b.z.push_back(e.z_part(k, i, order));
  return b;
}

// Multiply by an entry without materialising it: cheaper for sparse entries.
inline BivariateSeries bv_mul_entry(const IndexPoly& e, Exponent i, const BivariateSeries& d, Exponent order) {
  BivariateSeries r;
  r.z.assign(d.z.size(), LaurentSeries::zero(order));
  for (int k = 0; k <= e.zdeg(); ++k) {
    LaurentSeries c = e.z_part(k, i, order);
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j + k < r.z.size(); ++j) {
      if (d.z[j].is_zero()) continue;
      r.z[j + k] = ls_add(r.z[j + k], ls_mul(c, d.z[j]));
    }
  }
  return r;
}

// Expansion along the last column:
// D_n = diag(n) D_{n-1} + super1(n-1) D_{n-2} + super2(n-2) D_{n-3}, D_0 = 1.
inline std::vector<BivariateSeries> band_determinants(const BandSpec& s, Exponent n, int zdeg, Exponent order) {
  std::vector<BivariateSeries> d;
  d.push_back(BivariateSeries::constant(1, zdeg, order));
  for (Exponent k = 1; k <= n; ++k) {
    BivariateSeries x = bv_mul_entry(s.diag, k, d[k - 1], order);
    if (k >= 2) x = bv_add(x, bv_mul_entry(s.super1, k - 1, d[k - 2], order));
    if (k >= 3 && s.super2) x = bv_add(x, bv_mul_entry(*s.super2, k - 2, d[k - 3], order));
    d.push_back(std::move(x));
  }
  return d;
}

inline BivariateSeries det_band_recursive(const BandSpec& s, Exponent n, int zdeg, Exponent order) {
  if (n < 0) throw config_error("determinant size must be non-negative");
  return band_determinants(s, n, zdeg, order).back();
}

// D_n with z = q^zexp, as a plain series. D_{-1} is 0 by convention.
inline LaurentSeries det_band_at(const BandSpec& s, Exponent n, Exponent zexp, Exponent order) {
  if (n < 0) return LaurentSeries::zero(order);
  std::vector<LaurentSeries> d{LaurentSeries::constant(1, order)};
  for (Exponent k = 1; k <= n; ++k) {
    LaurentSeries x = ls_mul(s.diag.at_z(k, zexp, order), d[k - 1]);
    if (k >= 2) x = ls_add(x, ls_mul(s.super1.at_z(k - 1, zexp, order), d[k - 2]));
    if (k >= 3 && s.super2) x = ls_add(x, ls_mul(s.super2->at_z(k - 2, zexp, order), d[k - 3]));
    d.push_back(std::move(x));
  }
  return d.back();
}

namespace detail {

// Laplace expansion along the first remaining row.
inline BivariateSeries laplace(const std::vector<std::vector<std::optional<BivariateSeries>>>& a, std::size_t row,
                               std::vector<bool>& used, int zdeg, Exponent order) {
  const std::size_t n = a.size();
  if (row == n) return BivariateSeries::constant(1, zdeg, order);
  BivariateSeries acc = BivariateSeries::constant(0, zdeg, order);
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    if (used[col]) continue;
    if (a[row][col]) {
      used[col] = true;
      BivariateSeries minor = laplace(a, row + 1, used, zdeg, order);
      used[col] = false;
      BivariateSeries t = bv_mul(*a[row][col], minor);
      acc = sign > 0 ? bv_add(acc, t) : bv_sub(acc, t);
    }
    sign = -sign;  // sign follows the position among remaining columns
  }
  return acc;
}

} // namespace detail

// Independent evaluation by cofactor expansion of the explicit matrix (n <= 8).
inline BivariateSeries det_direct(const BandSpec& s, Exponent n, int zdeg, Exponent order) {
  if (n < 0 || n > 8) throw config_error("det_direct supports 0 <= n <= 8");
  const std::size_t sz = static_cast<std::size_t>(n);
  std::vector<std::vector<std::optional<BivariateSeries>>> a(sz, std::vector<std::optional<BivariateSeries>>(sz));
  for (std::size_t r = 0; r < sz; ++r) {
    Exponent i = static_cast<Exponent>(r) + 1;
    a[r][r] = band_entry(s.diag, i, zdeg, order);
    if (r + 1 < sz) {
      a[r][r + 1] = band_entry(s.super1, i, zdeg, order);
      a[r + 1][r] = BivariateSeries::constant(-1, zdeg, order);
    }
    if (r + 2 < sz && s.super2) a[r][r + 2] = band_entry(*s.super2, i, zdeg, order);
  }
  std::vector<bool> used(sz, false);
  return detail::laplace(a, 0, used, zdeg, order);
}

// F(z) = lim D_n(z), coefficientwise in z, through q^order.
inline BivariateSeries f_from_determinant(const BandSpec& s, int zdeg, Exponent order, int guard = 3) {
  const Exponent budget = 4 * order + 50;
  std::vector<BivariateSeries> d{BivariateSeries::constant(1, zdeg, order)};
  int quiet = 0;
  for (Exponent k = 1; k <= budget; ++k) {
    BivariateSeries x = bv_mul_entry(s.diag, k, d.back(), order);
    if (k >= 2) x = bv_add(x, bv_mul_entry(s.super1, k - 1, d[d.size() - 2], order));
    if (k >= 3 && s.super2) x = bv_add(x, bv_mul_entry(*s.super2, k - 2, d[d.size() - 3], order));
    bool still = true;
    for (std::size_t j = 0; j < x.z.size(); ++j)
      if (ls_sub(x.z[j], d.back().z[j]).lead() <= order) still = false;
    d.push_back(std::move(x));
    if (d.size() > 3) d.erase(d.begin());
    quiet = still ? quiet + 1 : 0;
    if (quiet >= guard) {
      if (d.back().order() < order) throw precision_error("determinant lost precision");
      return d.back();
    }
  }
  throw precision_error("determinant did not stabilise within " + std::to_string(budget) + " rows");
}

// sum_j a_j q^{k j}. `tail_bound` is a lower bound on the valuation of every
// omitted term a_j q^{kj}, j > zdeg; it must exceed `order`.
inline LaurentSeries substitute_z(const BivariateSeries& f, Exponent k, Exponent tail_bound, Exponent order) {
  if (tail_bound <= order)
    throw precision_error("z-truncation at degree " + std::to_string(f.zdeg()) + " too low for q^" +
                          std::to_string(order));
  LaurentSeries acc = LaurentSeries::zero(order);
  for (int j = 0; j <= f.zdeg(); ++j) acc = ls_add(acc, ls_shift(f.z[static_cast<std::size_t>(j)], k * j));
  if (acc.order() < order) throw precision_error("substitution lost precision");
  return acc.truncated(order);
}

// One term alpha(z) F(z q^shift) of a functional equation; alpha is linear in z.
struct FunctionalTerm {
  IndexPoly factor;
  Exponent shift = 0;
  bool operator==(const FunctionalTerm&) const = default;
};

struct BivariateMismatch {
  int zdeg = 0;
  Exponent exponent = 0;
};

// First coefficient where F(z) - sum alpha_j(z) F(z q^{b_j}) is nonzero.
inline std::optional<BivariateMismatch> functional_equation_check(const BivariateSeries& f,
                                                                  const std::vector<FunctionalTerm>& terms,
                                                                  Exponent order) {
  if (f.order() < order) throw precision_error("F known only to q^" + std::to_string(f.order()));
  for (int k = 0; k <= f.zdeg(); ++k) {
    LaurentSeries rhs = LaurentSeries::zero(order);
    for (const auto& t : terms) {
      for (int a = 0; a <= std::min(k, t.factor.zdeg()); ++a) {
        LaurentSeries c = t.factor.z_part(a, 0, order);
        if (c.is_zero()) continue;
        LaurentSeries fk = ls_shift(f.z[static_cast<std::size_t>(k - a)], t.shift * (k - a));
        rhs = ls_add(rhs, ls_mul(c, fk));
      }
    }
    if (auto bad = ls_first_mismatch(f.z[static_cast<std::size_t>(k)], rhs, order)) return BivariateMismatch{k, *bad};
  }
  return std::nullopt;
}

// a_0 and the ratio a_n / a_{n-1}, each a quotient of products of IndexPolys in n.
struct CoefficientLaw {
  std::vector<IndexPoly> a0_numer, a0_denom, ratio_numer, ratio_denom;
  bool operator==(const CoefficientLaw&) const = default;
};

inline LaurentSeries law_quotient(const std::vector<IndexPoly>& numer, const std::vector<IndexPoly>& denom,
                                  Exponent n, Exponent order) {
  LaurentSeries a = LaurentSeries::constant(1, order), b = LaurentSeries::constant(1, order);
  for (const auto& p : numer) a = ls_mul(a, p.at(n, order));
  for (const auto& p : denom) b = ls_mul(b, p.at(n, order));
  return ls_div(a, b);
}

// First n <= nmax where a_n from the determinant disagrees with the closed-form law.
inline std::optional<BivariateMismatch> coefficient_law_check(const BivariateSeries& f, const CoefficientLaw& law,
                                                              int nmax, Exponent order) {
  const Exponent work = order + 4 * static_cast<Exponent>(nmax) + 8;
  LaurentSeries a = law_quotient(law.a0_numer, law.a0_denom, 0, work);
  for (int n = 0; n <= std::min(nmax, f.zdeg()); ++n) {
    if (n > 0) a = ls_mul(a, law_quotient(law.ratio_numer, law.ratio_denom, n, work));
    if (a.order() < order) throw precision_error("coefficient law lost precision");
    if (auto bad = ls_first_mismatch(f.z[static_cast<std::size_t>(n)], a, order)) return BivariateMismatch{n, *bad};
  }
  return std::nullopt;
}

} // namespace qrr

#endif
