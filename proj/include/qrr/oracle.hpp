#ifndef QRR_ORACLE_HPP
#define QRR_ORACLE_HPP

// Slow reference evaluators used to cross-check the main engine. They avoid the
// engine's series inversion and memoisation on purpose.

#include <cstdint>
#include <string>
#include <vector>

#include "determinant.hpp"
#include "qproducts.hpp"

namespace qrr::oracle {

// Dense power series with non-negative exponents 0..order.
using Dense = std::vector<Rational>;

struct OracleResult {
  LaurentSeries value;
  std::string method;
  std::uint64_t cost = 0;  // dense multiplications or DP updates
};

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// 1/(1 - c q^e) = sum_k c^k q^{ek}, e >= 1.
inline Dense geometric(int sign, Exponent e, Exponent order) {
  Dense r(static_cast<std::size_t>(order + 1));
  Rational c = 1;
  for (Exponent k = 0; k * e <= order; ++k) {
    r[static_cast<std::size_t>(k * e)] = c;
    c *= sign;
  }
  return r;
}

inline Dense binomial(int sign, Exponent e, Exponent order) {
  Dense r(static_cast<std::size_t>(order + 1));
  r[0] = 1;
  if (e <= order) r[static_cast<std::size_t>(e)] -= sign;
  return r;
}

// Term-by-term sum of the summand through q^order, for non-negative exponents.
inline OracleResult oracle_sum(const SummandSpec& s, Exponent m, Exponent order) {
  if (order < 0) throw domain_error("oracle order must be non-negative");
  std::uint64_t cost = 0;
  Dense total(static_cast<std::size_t>(order + 1));
  for (Exponent n = 0;; ++n) {
    Exponent ex = s.exponent.at(n, m);
    Exponent next = s.exponent.at(n + 1, m);
    if (ex > order && next >= ex) break;
    if (ex < 0) throw domain_error("oracle needs non-negative exponents");
    if (ex > order) continue;
    Dense t(static_cast<std::size_t>(order + 1));
    t[static_cast<std::size_t>(ex)] = (s.alternating && n % 2) ? -1 : 1;
    for (const auto& p : s.numer) {
      Exponent len = p.length->at(n);
      if (len < 0) throw domain_error("oracle needs non-negative lengths");
      for (Exponent j = 0; j < len; ++j, ++cost) t = dense_mul(t, binomial(p.arg.sign, p.arg.exp + p.step * j, order));
    }
    for (const auto& p : s.denom) {
      Exponent len = p.length->at(n);
      if (len < 0) throw domain_error("oracle needs non-negative lengths");
      for (Exponent j = 0; j < len; ++j) {
        Exponent e = p.arg.exp + p.step * j;
        if (e < 1) throw domain_error("oracle needs positive factor exponents");
        t = dense_mul(t, geometric(p.arg.sign, e, order));
        ++cost;
      }
    }
    for (std::size_t k = 0; k < t.size(); ++k) total[k] += t[k];
  }
  return {LaurentSeries::from_dense(0, total, order), "direct-summation", cost};
}

// 1 / prod (q^a; q^b)_inf counted as partitions with parts from the allowed residues.
inline OracleResult oracle_partition_product(const ProductExpr& e, Exponent order) {
  if (!e.is_partition_product()) throw config_error("not a pure reciprocal product with positive arguments");
  std::uint64_t cost = 0;
  std::vector<Integer> p(static_cast<std::size_t>(order + 1));
  p[0] = 1;
  for (const auto& f : e.denom) {
    for (Exponent part = f.arg.exp; part <= order; part += f.step)
      for (Exponent x = part; x <= order; ++x, ++cost) p[static_cast<std::size_t>(x)] += p[static_cast<std::size_t>(x - part)];
  }
  Dense d(p.begin(), p.end());
  return {LaurentSeries::from_dense(0, d, order), "partition-count", cost};
}

inline BivariateSeries oracle_det(const BandSpec& s, Exponent n, int zdeg, Exponent order) {
  return det_direct(s, n, zdeg, order);
}

} // namespace qrr::oracle

#endif
