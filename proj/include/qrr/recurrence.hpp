#ifndef QRR_RECURRENCE_HPP
#define QRR_RECURRENCE_HPP

#include <map>
#include <optional>
#include <vector>

#include "expr.hpp"

namespace qrr {

// c(k) = sum_j c_j q^{u_j k + v_j}
using CoeffFunc = IndexPoly;

// X_k = sum_{i=1}^{order} coeffs[i-1](k) * X_{k-i}, started from `order`
// consecutive initial values.
struct RecurrenceSpec {
  std::vector<CoeffFunc> coeffs;
  std::map<Exponent, LaurentSeries> inits;

  int order() const { return static_cast<int>(coeffs.size()); }
};

// Values X_first .. X_{first+size-1}.
struct SequenceWindow {
  RecurrenceSpec spec;
  Exponent first = 0;
  std::vector<LaurentSeries> values;

  Exponent last() const { return first + static_cast<Exponent>(values.size()) - 1; }
  bool contains(Exponent k) const { return k >= first && k <= last(); }
  const LaurentSeries& at(Exponent k) const {
    if (!contains(k))
      throw config_error("sequence index " + std::to_string(k) + " outside [" + std::to_string(first) + ", " +
                         std::to_string(last()) + "]");
    return values[static_cast<std::size_t>(k - first)];
  }
};

inline void check_spec(const RecurrenceSpec& spec) {
  if (spec.order() < 1) throw config_error("recurrence needs at least one coefficient");
  if (static_cast<int>(spec.inits.size()) != spec.order())
    throw config_error("recurrence of order " + std::to_string(spec.order()) + " has " +
                       std::to_string(spec.inits.size()) + " initial values");
  Exponent expect = spec.inits.begin()->first;
  for (const auto& [k, v] : spec.inits)
    if (k != expect++) throw config_error("initial values must be at consecutive indices");
}

inline SequenceWindow make_window(const RecurrenceSpec& spec, Exponent order) {
  check_spec(spec);
  SequenceWindow w{spec, spec.inits.begin()->first, {}};
  for (const auto& [k, v] : spec.inits) w.values.push_back(v.order() > order ? v.truncated(order) : v);
  return w;
}

inline LaurentSeries recurrence_step(const RecurrenceSpec& spec, const SequenceWindow& w, Exponent k,
                                     Exponent order) {
  LaurentSeries x = LaurentSeries::zero(order);
  for (int i = 1; i <= spec.order(); ++i) {
    const CoeffFunc& c = spec.coeffs[i - 1];
    LaurentSeries ck = c.at(k, order);
    if (ck.is_zero()) continue;
    x = ls_add(x, ls_mul(ck, w.at(k - i)));
  }
  return x;
}

inline void extend_forward(SequenceWindow& w, Exponent upto, Exponent order) {
  while (w.last() < upto) {
    Exponent k = w.last() + 1;
    w.values.push_back(recurrence_step(w.spec, w, k, order));
  }
}

// X_{k-order} = (X_k - sum_{i<order} c_i(k) X_{k-i}) / c_order(k)
inline void extend_backward(SequenceWindow& w, Exponent downto, Exponent order) {
  const int r = w.spec.order();
  while (w.first > downto) {
    Exponent k = w.first - 1 + r;
    LaurentSeries rest = w.at(k);
    for (int i = 1; i < r; ++i) rest = ls_sub(rest, ls_mul(w.spec.coeffs[i - 1].at(k, order), w.at(k - i)));
    LaurentSeries lead = w.spec.coeffs[r - 1].at(k, order);
    if (lead.is_zero()) throw domain_error("trailing recurrence coefficient vanishes at index " + std::to_string(k));
    w.values.insert(w.values.begin(), ls_div(rest, lead));
    --w.first;
  }
}

inline SequenceWindow unroll_forward(const RecurrenceSpec& spec, Exponent upto, Exponent order) {
  SequenceWindow w = make_window(spec, order);
  extend_forward(w, upto, order);
  return w;
}

inline SequenceWindow sequence_range(const RecurrenceSpec& spec, Exponent lo, Exponent hi, Exponent order) {
  SequenceWindow w = make_window(spec, order);
  extend_backward(w, lo, order);
  extend_forward(w, hi, order);
  return w;
}

// lim X_n: unroll until `guard` consecutive differences vanish through q^order.
inline LaurentSeries sequence_limit(const RecurrenceSpec& spec, Exponent order, int guard = 3) {
  // Negative powers in the initial values eat precision in the first steps.
  Exponent low = 0;
  for (const auto& [k, v] : spec.inits) low = std::min(low, v.lead());
  const Exponent work = order - 2 * low;
  SequenceWindow w = make_window(spec, work);
  const Exponent budget = 4 * order + 50;
  int quiet = 0;
  for (Exponent steps = 0; steps < budget; ++steps) {
    extend_forward(w, w.last() + 1, work);
    const LaurentSeries& cur = w.values.back();
    const LaurentSeries& prev = w.values[w.values.size() - 2];
    if (cur.order() < order || prev.order() < order)
      throw precision_error("sequence values lost precision below q^" + std::to_string(order));
    LaurentSeries d = ls_sub(cur, prev);
    quiet = d.lead() > order ? quiet + 1 : 0;
    if (quiet >= guard) return cur.truncated(order);
    // Keep the window short; only the last `order` values matter.
    if (w.values.size() > static_cast<std::size_t>(spec.order()) + 2) {
      w.values.erase(w.values.begin());
      ++w.first;
    }
  }
  throw precision_error("sequence did not stabilise within " + std::to_string(budget) + " steps");
}

// P_m Q_{m-1} - P_{m-1} Q_m
inline LaurentSeries casoratian2(const SequenceWindow& p, const SequenceWindow& q, Exponent m) {
  return ls_sub(ls_mul(p.at(m), q.at(m - 1)), ls_mul(p.at(m - 1), q.at(m)));
}

inline LaurentSeries det3(const LaurentSeries a[3][3]) {
  auto m2 = [&](int r0, int r1, int c0, int c1) {
    return ls_sub(ls_mul(a[r0][c0], a[r1][c1]), ls_mul(a[r0][c1], a[r1][c0]));
  };
  LaurentSeries t0 = ls_mul(a[0][0], m2(1, 2, 1, 2));
  LaurentSeries t1 = ls_mul(a[0][1], m2(1, 2, 0, 2));
  LaurentSeries t2 = ls_mul(a[0][2], m2(1, 2, 0, 1));
  return ls_add(ls_sub(t0, t1), t2);
}

// det of rows m-1, m, m+1 of (P, Q, R)
inline LaurentSeries casoratian3(const SequenceWindow& p, const SequenceWindow& q, const SequenceWindow& r,
                                 Exponent m) {
  LaurentSeries a[3][3];
  for (int i = 0; i < 3; ++i) {
    a[i][0] = p.at(m - 1 + i);
    a[i][1] = q.at(m - 1 + i);
    a[i][2] = r.at(m - 1 + i);
  }
  return det3(a);
}

struct Connection2 {
  LaurentSeries lambda, mu;
};

struct Connection3 {
  LaurentSeries lambda, mu, nu;
};

// Solve lambda P_k + mu Q_k = D_{k-m} for k = m, m+1, with d0 = D_0 and d1 = D_1.
// If `closed` is given it must equal the Casoratian at index m+1 (the system's
// determinant up to sign); a disagreement throws consistency_error.
inline Connection2 connection_coeffs2(const SequenceWindow& p, const SequenceWindow& q, const LaurentSeries& d0,
                                      const LaurentSeries& d1, Exponent m,
                                      const std::optional<LaurentSeries>& closed = std::nullopt) {
  LaurentSeries w = casoratian2(p, q, m + 1);  // P_{m+1}Q_m - P_m Q_{m+1}
  if (closed) {
    Exponent upto = std::min(w.order(), closed->order());
    if (auto bad = ls_first_mismatch(w, *closed, upto))
      throw consistency_error("Casoratian differs from its closed form at q^" + std::to_string(*bad));
  }
  if (w.is_zero()) throw precision_error("connection system vanishes through q^" + std::to_string(w.order()));
  // lambda = (d1 Q_m - d0 Q_{m+1}) / w, mu = (d0 P_{m+1} - d1 P_m) / w
  LaurentSeries inv = ls_invert(w);
  Connection2 c;
  c.lambda = ls_mul(ls_sub(ls_mul(d1, q.at(m)), ls_mul(d0, q.at(m + 1))), inv);
  c.mu = ls_mul(ls_sub(ls_mul(d0, p.at(m + 1)), ls_mul(d1, p.at(m))), inv);
  return c;
}

// Solve lambda P_k + mu Q_k + nu R_k = d[k-m+1] for k = m-1, m, m+1 by Cramer's rule.
inline Connection3 connection_coeffs3(const SequenceWindow& p, const SequenceWindow& q, const SequenceWindow& r,
                                      const LaurentSeries d[3], Exponent m,
                                      const std::optional<LaurentSeries>& closed = std::nullopt) {
  LaurentSeries a[3][3];
  for (int i = 0; i < 3; ++i) {
    a[i][0] = p.at(m - 1 + i);
    a[i][1] = q.at(m - 1 + i);
    a[i][2] = r.at(m - 1 + i);
  }
  LaurentSeries w = det3(a);
  if (closed) {
    Exponent upto = std::min(w.order(), closed->order());
    if (auto bad = ls_first_mismatch(w, *closed, upto))
      throw consistency_error("Casoratian differs from its closed form at q^" + std::to_string(*bad));
  }
  if (w.is_zero()) throw precision_error("connection system vanishes through q^" + std::to_string(w.order()));
  LaurentSeries inv = ls_invert(w);
  LaurentSeries sol[3];
  for (int col = 0; col < 3; ++col) {
    LaurentSeries b[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b[i][j] = j == col ? d[i] : a[i][j];
    sol[col] = ls_mul(det3(b), inv);
  }
  return {sol[0], sol[1], sol[2]};
}

struct RecurrenceCheck {
  bool holds = true;
  std::optional<Exponent> first_failure;  // index k where the relation breaks
  std::optional<Exponent> exponent;       // first mismatching power of q there
};

// Does target_k = sum_i coeffs[i-1](k) source_{k-i} hold for k in [lo, hi] through q^order?
inline RecurrenceCheck verify_relation_holds(const SequenceWindow& target, const SequenceWindow& source,
                                             const std::vector<CoeffFunc>& coeffs, Exponent lo, Exponent hi,
                                             Exponent order) {
  RecurrenceCheck out;
  for (Exponent k = lo; k <= hi; ++k) {
    LaurentSeries rhs = LaurentSeries::zero(order);
    for (std::size_t i = 1; i <= coeffs.size(); ++i) {
      const LaurentSeries& x = source.at(k - static_cast<Exponent>(i));
      Exponent pad = std::max<Exponent>(0, -x.lead());
      rhs = ls_add(rhs, ls_mul(coeffs[i - 1].at(k, order + pad), x));
    }
    const LaurentSeries& lhs = target.at(k);
    Exponent upto = std::min({order, lhs.order(), rhs.order()});
    if (upto < order) throw precision_error("recurrence check lost precision at index " + std::to_string(k));
    if (auto bad = ls_first_mismatch(lhs, rhs, order)) {
      out.holds = false;
      out.first_failure = k;
      out.exponent = bad;
      return out;
    }
  }
  return out;
}

inline RecurrenceCheck verify_recurrence_holds(const SequenceWindow& w, const std::vector<CoeffFunc>& coeffs,
                                               Exponent lo, Exponent hi, Exponent order) {
  return verify_relation_holds(w, w, coeffs, lo, hi, order);
}

} // namespace qrr

#endif
