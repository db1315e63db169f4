#ifndef QRR_VERIFY_HPP
#define QRR_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"

namespace qrr {

inline constexpr int kReportSchemaVersion = 1;

enum class Outcome { verified, mismatch, precision_error };

inline std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::verified: return "verified";
    case Outcome::mismatch: return "mismatch";
    case Outcome::precision_error: return "precision-error";
  }
  return "?";
}

// nullopt: not applicable to this record.
struct ComponentChecks {
  std::optional<bool> casoratian;
  std::optional<bool> coeff_recursion;
  std::optional<bool> functional_equation;

  bool any_failed() const {
    return (casoratian && !*casoratian) || (coeff_recursion && !*coeff_recursion) ||
           (functional_equation && !*functional_equation);
  }
};

struct VerificationReport {
  std::string id;
  std::optional<Exponent> m;
  Exponent order = 0;
  Outcome outcome = Outcome::verified;
  std::optional<Exponent> first_mismatch;
  std::optional<Rational> lhs_coeff, rhs_coeff;
  std::optional<double> elapsed_ms;
  ComponentChecks components;
  std::string detail;

  bool passed() const { return outcome == Outcome::verified && !components.any_failed(); }
};

namespace detail {

// Calls fn(W) with growing working orders W until the result is known through q^N.
template <class Fn>
LaurentSeries adaptive(Exponent N, Exponent pad, Fn&& fn, const std::string& what) {
  Exponent W = N + std::max<Exponent>(pad, 0) + 8;
  Exponent got = 0;
  for (int attempt = 0; attempt < 5; ++attempt) {
    LaurentSeries r;
    try {
      r = fn(W);
    } catch (const precision_error&) {
      W *= 2;
      continue;
    }
    got = r.order();
    if (got >= N) return r.truncated(N);
    W += (N - got) + 8;
  }
  throw precision_error(what + ": reliable only to q^" + std::to_string(got) + ", need q^" + std::to_string(N));
}

} // namespace detail

// ---------------------------------------------------------------- left side

// One summand term, known through q^order.
inline LaurentSeries eval_summand_term(const SummandSpec& s, Exponent n, Exponent m, Exponent order) {
  Exponent e = s.exponent.at(n, m);
  if (e > order) return LaurentSeries::zero(order);
  Exponent rel = order - e;
  LaurentSeries num = LaurentSeries::constant((s.alternating && n % 2) ? -1 : 1, rel);
  LaurentSeries den = LaurentSeries::constant(1, rel);
  for (const auto& p : s.numer) num = ls_mul(num, eval_poch(p, n, rel));
  for (const auto& p : s.denom) den = ls_mul(den, eval_poch(p, n, rel));
  LaurentSeries t = s.denom.empty() ? num : ls_div(num, den);
  return ls_shift(t, e);
}

inline LaurentSeries eval_lhs_sum(const IdentityRecord& r, Exponent m, Exponent N) {
  const SummandSpec& s = r.lhs;
  if (s.exponent.a <= 0) throw config_error(r.id + ": summand exponent needs a positive n^2 coefficient");
  LaurentSeries acc = LaurentSeries::zero(N);
  for (Exponent n = 0;; ++n) {
    Exponent e = s.exponent.at(n, m);
    if (e > N && s.exponent.at(n + 1, m) >= e) break;
    if (e > N) continue;
    LaurentSeries t = eval_summand_term(s, n, m, N);
    if (t.order() < N) throw precision_error(r.id + ": summand term n=" + std::to_string(n) + " lost precision");
    acc = ls_add(acc, t);
  }
  return acc;
}

// ---------------------------------------------------------------- right side

// Value of a record's named sequence at index k, from its printed recurrence.
inline LaurentSeries sequence_value(const SequenceDef& def, Exponent k, Exponent order) {
  RecurrenceSpec spec = def.spec(order);
  Exponent lo = std::min(k, spec.inits.begin()->first);
  Exponent hi = std::max(k, spec.inits.rbegin()->first);
  return sequence_range(spec, lo, hi, order).at(k);
}

inline Exponent sequence_index(const RhsTermSpec& t, Exponent m) { return t.fixed_index ? t.shift : m + t.shift; }

inline LaurentSeries eval_rhs_at(const IdentityRecord& r, Exponent m, Exponent W) {
  std::map<std::string, SequenceWindow> windows;
  LaurentSeries acc = LaurentSeries::zero(W);
  for (const auto& t : r.rhs) {
    LaurentSeries term = eval_product_expr(t.product, W);
    if (!t.sequence.empty()) {
      Exponent k = sequence_index(t, m);
      auto it = windows.find(t.sequence);
      if (it == windows.end()) {
        const SequenceDef* def = r.sequence(t.sequence);
        if (!def) throw config_error(r.id + ": unknown sequence " + t.sequence);
        RecurrenceSpec spec = def->spec(W);
        it = windows.emplace(t.sequence, make_window(spec, W)).first;
      }
      SequenceWindow& w = it->second;
      if (k < w.first) extend_backward(w, k, W);
      if (k > w.last()) extend_forward(w, k, W);
      term = ls_mul(term, w.at(k));
    }
    term = ls_mul(term, eval_prefactor(t.prefactor, m, W));
    acc = ls_add(acc, term);
  }
  return acc;
}

inline LaurentSeries eval_rhs(const IdentityRecord& r, Exponent m, Exponent N) {
  Exponent pad = 0;
  for (const auto& t : r.rhs) pad = std::max(pad, -t.prefactor.min_valuation(m, m));
  return detail::adaptive(N, pad, [&](Exponent W) { return eval_rhs_at(r, m, W); }, r.id + " right side");
}

// ---------------------------------------------------------------- proof machinery

inline const Family& family_of(const Catalog& c, const IdentityRecord& r) {
  const Family* f = r.family.empty() ? nullptr : c.family(r.family);
  if (!f) throw config_error(r.id + " has no family");
  return *f;
}

inline std::vector<SequenceWindow> finitization_windows(const Family& f, Exponent lo, Exponent hi, Exponent order) {
  std::vector<SequenceWindow> out;
  for (const auto& s : f.finitizations) out.push_back(sequence_range(s.spec(order), lo, hi, order));
  return out;
}

inline int finitization_index(const Family& f, const std::string& name) {
  for (std::size_t i = 0; i < f.finitizations.size(); ++i)
    if (f.finitizations[i].name == name) return static_cast<int>(i);
  throw config_error("family " + f.id + " has no finitization '" + name + "'");
}

// Casoratian of the finitizations at m: P_mQ_{m-1}-P_{m-1}Q_m, or the 3x3 determinant
// over rows m-1, m, m+1.
inline LaurentSeries casoratian_value(const Family& f, const std::vector<SequenceWindow>& w, Exponent m) {
  if (w.size() == 2) return casoratian2(w[0], w[1], m);
  if (w.size() == 3) return casoratian3(w[0], w[1], w[2], m);
  throw config_error("family " + f.id + ": Casoratian needs 2 or 3 finitizations");
}

// Connection coefficients K_i(m): D_{k-m+d_offset}(q^{z_step m}) = sum_i K_i(m) X^{(i)}_k.
inline std::vector<LaurentSeries> connection_at(const Family& f, const std::vector<SequenceWindow>& w, Exponent m,
                                                Exponent order) {
  if (!f.band) throw config_error("family " + f.id + " has no determinant");
  const Exponent zexp = f.z_step * m;
  if (w.size() == 2) {
    LaurentSeries d0 = det_band_at(*f.band, f.d_offset, zexp, order);
    LaurentSeries d1 = det_band_at(*f.band, f.d_offset + 1, zexp, order);
    Connection2 c = connection_coeffs2(w[0], w[1], d0, d1, m);
    return {c.lambda, c.mu};
  }
  if (w.size() == 3) {
    LaurentSeries d[3];
    for (int i = 0; i < 3; ++i) d[i] = det_band_at(*f.band, f.d_offset - 1 + i, zexp, order);
    Connection3 c = connection_coeffs3(w[0], w[1], w[2], d, m);
    return {c.lambda, c.mu, c.nu};
  }
  throw config_error("family " + f.id + ": connection needs 2 or 3 finitizations");
}

namespace detail {

struct ConnectionCache {
  const Family& fam;
  const std::vector<SequenceWindow>& windows;
  Exponent order;
  std::map<Exponent, std::vector<LaurentSeries>> memo;

  const std::vector<LaurentSeries>& at(Exponent m) {
    auto it = memo.find(m);
    if (it == memo.end()) it = memo.emplace(m, connection_at(fam, windows, m, order)).first;
    return it->second;
  }
};

inline std::pair<Exponent, Exponent> window_span(const IdentityRecord& r, Exponent mlo, Exponent mhi) {
  Exponent lo = mlo - 3, hi = mhi + 3;
  for (const auto& t : r.lhs_via_f) hi = std::max(hi, mhi + t.shift + 3);
  return {std::min<Exponent>(lo, -3), hi};
}

// sum_j c_j(m) K_i(m+j) for each channel i
inline std::vector<LaurentSeries> combined_channels(const IdentityRecord& r, ConnectionCache& cc, Exponent m,
                                                    Exponent order) {
  std::vector<LaurentSeries> k(cc.windows.size(), LaurentSeries::zero(order));
  for (const auto& ft : r.lhs_via_f) {
    LaurentSeries c = ft.coeff.at(m, order);
    const auto& km = cc.at(m + ft.shift);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = ls_add(k[i], ls_mul(c, km[i]));
  }
  return k;
}

inline LaurentSeries rebuilt_sequence_at(const IdentityRecord& r, const Family& f, const RhsTermSpec& t,
                                         ConnectionCache& cc, Exponent m, Exponent order) {
  std::vector<LaurentSeries> k = combined_channels(r, cc, m, order);
  LaurentSeries acc = LaurentSeries::zero(order);
  for (const auto& [name, wt] : t.channels) acc = ls_add(acc, ls_scale(k[finitization_index(f, name)], wt));
  return ls_div(acc, eval_prefactor(t.prefactor, m, order));
}

} // namespace detail

// First mismatch between the Casoratian and its closed form at m, or nullopt.
inline std::optional<Exponent> casoratian_check(const Family& f, Exponent m, Exponent N) {
  if (!f.casoratian) throw config_error("family " + f.id + " has no Casoratian closed form");
  LaurentSeries got = detail::adaptive(N, 0, [&](Exponent W) {
    auto w = finitization_windows(f, std::min<Exponent>(m - 2, -2), m + 2, W);
    return casoratian_value(f, w, m);
  }, "Casoratian of " + f.id);
  LaurentSeries closed = detail::adaptive(N, 0, [&](Exponent W) { return eval_prefactor(*f.casoratian, m, W); },
                                          "closed form of " + f.id);
  return ls_first_mismatch(got, closed, N);
}

// prefactor_t(m)^{-1} sum_i w_{t,i} sum_j c_j K_i(m+j): the sequence value the proof predicts.
inline LaurentSeries rebuilt_sequence_value(const Catalog& c, const IdentityRecord& r, const RhsTermSpec& t,
                                            Exponent m, Exponent N) {
  const Family& f = family_of(c, r);
  if (t.channels.empty()) throw config_error(r.id + ": term has no connection channels");
  auto [lo, hi] = detail::window_span(r, m, m);
  return detail::adaptive(N, 2 * N / 3, [&](Exponent W) {
    auto w = finitization_windows(f, lo, hi, W);
    detail::ConnectionCache cc{f, w, W, {}};
    return detail::rebuilt_sequence_at(r, f, t, cc, m, W);
  }, r.id + " rebuilt " + t.sequence);
}

// sum_j c_j(m) sum_i K_i(m+j) X^{(i)}_inf, the left side assembled from the determinant.
inline LaurentSeries reconstruct_lhs(const Catalog& c, const IdentityRecord& r, Exponent m, Exponent N) {
  const Family& f = family_of(c, r);
  if (!f.band || r.lhs_via_f.empty()) throw config_error(r.id + ": no determinant form of the left side");
  auto [lo, hi] = detail::window_span(r, m, m);
  return detail::adaptive(N, 2 * N / 3, [&](Exponent W) {
    auto w = finitization_windows(f, lo, hi, W);
    detail::ConnectionCache cc{f, w, W, {}};
    std::vector<LaurentSeries> k = detail::combined_channels(r, cc, m, W);
    LaurentSeries acc = LaurentSeries::zero(W);
    for (std::size_t i = 0; i < k.size(); ++i)
      acc = ls_add(acc, ls_mul(k[i], sequence_limit(f.finitizations[i].spec(W), W)));
    return acc;
  }, r.id + " reconstruction");
}

struct SequenceRecursionResult {
  std::string name;
  bool inits_ok = true;
  RecurrenceCheck recursion;
  std::optional<Exponent> bad_init;  // index of the first disagreeing initial value

  bool holds() const { return inits_ok && recursion.holds; }
};

// Rebuild each RHS sequence from connection coefficients for m in [m_lo, mmax] and
// test it against the record's printed initial values and recursion.
inline std::vector<SequenceRecursionResult> sequence_recursion_check(const Catalog& c, const IdentityRecord& r,
                                                                     Exponent mmax, Exponent N) {
  family_of(c, r);
  std::vector<SequenceRecursionResult> out;
  for (const auto& t : r.rhs) {
    if (t.sequence.empty() || t.channels.empty()) continue;
    bool seen = false;
    for (const auto& o : out) seen = seen || o.name == t.sequence;
    if (seen) continue;
    const SequenceDef& def = *r.sequence(t.sequence);
    SequenceWindow rebuilt{def.spec(N), r.m_lo + t.shift, {}};
    // negative powers in the recursion coefficients cost precision
    const Exponent W = N + N / 2 + 10;
    for (Exponent m = r.m_lo; m <= mmax; ++m) rebuilt.values.push_back(rebuilt_sequence_value(c, r, t, m, W));
    SequenceRecursionResult res;
    res.name = t.sequence;
    for (const auto& [k, v] : def.inits) {
      if (!rebuilt.contains(k)) continue;
      if (ls_first_mismatch(rebuilt.at(k), v.eval(N), N)) {
        res.inits_ok = false;
        res.bad_init = k;
        break;
      }
    }
    Exponent from = std::max(rebuilt.first + def.order(), def.inits.rbegin()->first + 1);
    if (from <= rebuilt.last()) res.recursion = verify_recurrence_holds(rebuilt, def.coeffs, from, rebuilt.last(), N);
    out.push_back(res);
  }
  return out;
}

// ---------------------------------------------------------------- checks

struct FamilyFacts {
  std::optional<bool> functional_equation;
  std::string detail;
};

inline FamilyFacts family_facts(const Family& f, Exponent N, int zdeg = 6) {
  FamilyFacts out;
  if (!f.band || f.functional_equation.empty()) return out;
  try {
    BivariateSeries F = f_from_determinant(*f.band, zdeg, N);
    auto bad = functional_equation_check(F, f.functional_equation, N);
    out.functional_equation = !bad.has_value();
    if (bad)
      out.detail = "functional equation fails at z^" + std::to_string(bad->zdeg) + " q^" + std::to_string(bad->exponent);
  } catch (const std::runtime_error& e) {
    out.functional_equation = false;
    out.detail = e.what();
  }
  return out;
}

struct CheckOptions {
  bool components = true;
  bool timings = false;
};

namespace detail {

inline void note(std::string& detail, const std::string& msg) {
  if (!detail.empty()) detail += "; ";
  detail += msg;
}

inline void attach_components(const Catalog& c, const IdentityRecord& r, Exponent m, Exponent N,
                              const FamilyFacts& facts, VerificationReport& rep) {
  const Family* f = r.family.empty() ? nullptr : c.family(r.family);
  if (!f || !f->band) return;
  if (f->casoratian) {
    try {
      auto bad = casoratian_check(*f, m, N);
      rep.components.casoratian = !bad.has_value();
      if (bad) note(rep.detail, "Casoratian closed form fails at q^" + std::to_string(*bad));
    } catch (const std::runtime_error& e) {
      rep.components.casoratian = false;
      note(rep.detail, std::string("Casoratian: ") + e.what());
    }
  }
  bool any = false, ok = true;
  for (const auto& t : r.rhs) {
    if (t.sequence.empty() || t.channels.empty()) continue;
    any = true;
    try {
      LaurentSeries rebuilt = rebuilt_sequence_value(c, r, t, m, N);
      LaurentSeries printed = sequence_value(*r.sequence(t.sequence), sequence_index(t, m), N + 8);
      if (auto bad = ls_first_mismatch(rebuilt, printed, N)) {
        ok = false;
        note(rep.detail, t.sequence + "_" + std::to_string(sequence_index(t, m)) +
                             " differs from its rebuilt value at q^" + std::to_string(*bad));
      }
    } catch (const std::runtime_error& e) {
      ok = false;
      note(rep.detail, t.sequence + ": " + e.what());
    }
  }
  if (any) rep.components.coeff_recursion = ok;
  rep.components.functional_equation = facts.functional_equation;
  if (facts.functional_equation && !*facts.functional_equation) note(rep.detail, facts.detail);
}

} // namespace detail

// LHS against RHS at one m (nullopt for base records), plus proof component checks.
inline VerificationReport check_identity(const Catalog& c, const IdentityRecord& r, std::optional<Exponent> m,
                                         Exponent N, const CheckOptions& opt = {},
                                         const FamilyFacts* facts = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = r.id;
  rep.order = N;
  if (r.kind == RecordKind::generalization) {
    if (!m) throw config_error(r.id + " needs a value of m");
    rep.m = m;
  }
  const Exponent mm = m.value_or(0);
  try {
    LaurentSeries lhs = eval_lhs_sum(r, mm, N);
    LaurentSeries rhs = eval_rhs(r, mm, N);
    if (auto bad = ls_first_mismatch(lhs, rhs, N)) {
      rep.outcome = Outcome::mismatch;
      rep.first_mismatch = bad;
      rep.lhs_coeff = lhs.coeff(*bad);
      rep.rhs_coeff = rhs.coeff(*bad);
    }
  } catch (const precision_error& e) {
    rep.outcome = Outcome::precision_error;
    rep.detail = e.what();
  } catch (const domain_error& e) {
    rep.outcome = Outcome::precision_error;
    rep.detail = e.what();
  }
  if (opt.components && r.kind == RecordKind::generalization) {
    FamilyFacts local;
    if (!facts && !r.family.empty())
      if (const Family* f = c.family(r.family)) local = family_facts(*f, N);
    detail::attach_components(c, r, mm, N, facts ? *facts : local, rep);
  }
  if (opt.timings)
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------- suites

struct SuiteConfig {
  std::optional<std::vector<std::string>> ids;  // nullopt: every record
  std::optional<std::pair<Exponent, Exponent>> m_range;
  Exponent order = 60;
  unsigned jobs = 1;
  CheckOptions check;
};

// An as-printed record with its variants; exactly one member should verify.
struct ErrataOutcome {
  struct Member {
    std::string id;
    bool passed = false;
    std::optional<Exponent> first_m, first_exponent;  // first failing report
  };
  std::vector<Member> members;  // as-printed first
  std::string verified;         // the single passing member, if exactly one
  bool ok = false;
};

struct SuiteResult {
  Exponent order = 0;
  std::vector<VerificationReport> reports;
  std::vector<ErrataOutcome> errata;
  std::vector<std::string> unexpected;  // non-errata records with a failing report
  int exit_code = 0;
};

inline std::vector<const IdentityRecord*> select_records(const Catalog& c, const SuiteConfig& cfg) {
  std::vector<const IdentityRecord*> out;
  if (!cfg.ids) {
    for (const auto& r : c.records) out.push_back(&r);
    return out;
  }
  for (const auto& id : *cfg.ids) out.push_back(&c.at(id));
  return out;
}

inline SuiteResult run_suite(const Catalog& c, const SuiteConfig& cfg) {
  struct Task {
    const IdentityRecord* rec;
    std::optional<Exponent> m;
  };
  std::vector<Task> tasks;
  std::vector<const IdentityRecord*> recs = select_records(c, cfg);
  for (const auto* r : recs) {
    if (r->kind == RecordKind::base) {
      tasks.push_back({r, std::nullopt});
      continue;
    }
    Exponent lo = cfg.m_range ? cfg.m_range->first : r->m_lo;
    Exponent hi = cfg.m_range ? cfg.m_range->second : r->m_hi;
    for (Exponent m = lo; m <= hi; ++m) tasks.push_back({r, m});
  }

  // Family-level facts are shared by every part and every m.
  std::map<std::string, FamilyFacts> facts;
  if (cfg.check.components)
    for (const auto* r : recs)
      if (r->kind == RecordKind::generalization && !r->family.empty() && !facts.count(r->family))
        if (const Family* f = c.family(r->family)) facts.emplace(r->family, family_facts(*f, cfg.order));

  SuiteResult out;
  out.order = cfg.order;
  out.reports.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      auto it = facts.find(t.rec->family);
      out.reports[i] = check_identity(c, *t.rec, t.m, cfg.order, cfg.check, it == facts.end() ? nullptr : &it->second);
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::stable_sort(out.reports.begin(), out.reports.end(), [](const auto& a, const auto& b) {
    return std::pair(a.id, a.m.value_or(-1)) < std::pair(b.id, b.m.value_or(-1));
  });

  auto first_failure = [&](const std::string& id) -> const VerificationReport* {
    for (const auto& rep : out.reports)
      if (rep.id == id && !rep.passed()) return &rep;
    return nullptr;
  };
  auto selected = [&](const std::string& id) {
    return std::any_of(recs.begin(), recs.end(), [&](const auto* r) { return r->id == id; });
  };

  bool precision = false, failed = false;
  std::vector<std::string> grouped;
  for (const auto* r : recs) {
    const IdentityRecord* head = c.errata_head(*r);
    if (head) {
      if (std::find(grouped.begin(), grouped.end(), head->id) != grouped.end()) continue;
      grouped.push_back(head->id);
      ErrataOutcome e;
      std::vector<const IdentityRecord*> group{head};
      for (const auto* v : c.variants(*head)) group.push_back(v);
      for (const auto* g : group) {
        if (!selected(g->id)) continue;
        ErrataOutcome::Member mem;
        mem.id = g->id;
        const VerificationReport* bad = first_failure(g->id);
        mem.passed = bad == nullptr;
        if (bad) {
          mem.first_m = bad->m;
          mem.first_exponent = bad->first_mismatch;
        }
        if (mem.passed) e.verified = g->id;
        e.members.push_back(mem);
      }
      std::size_t passing = 0;
      for (const auto& mem : e.members) passing += mem.passed;
      // A group only partly selected cannot be judged; its failures are not counted.
      bool complete = e.members.size() == group.size();
      e.ok = passing == 1;
      if (passing != 1) e.verified.clear();
      if (complete && !e.ok) failed = true;
      out.errata.push_back(e);
      continue;
    }
    bool bad = false;
    for (const auto& rep : out.reports) {
      if (rep.id != r->id) continue;
      if (rep.outcome == Outcome::precision_error) precision = true;
      if (!rep.passed()) bad = true;
    }
    if (bad) {
      out.unexpected.push_back(r->id);
      failed = true;
    }
  }
  out.exit_code = precision ? 2 : failed ? 1 : 0;
  return out;
}

// ---------------------------------------------------------------- output

inline nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json j{{"id", r.id}, {"order", r.order}, {"outcome", outcome_name(r.outcome)}};
  if (r.m) j["m"] = *r.m;
  if (r.first_mismatch) {
    j["first_mismatch_exponent"] = *r.first_mismatch;
    j["lhs_coeff"] = to_string(*r.lhs_coeff);
    j["rhs_coeff"] = to_string(*r.rhs_coeff);
  }
  auto tri = [](const std::optional<bool>& b) { return b ? nlohmann::json(*b) : nlohmann::json(nullptr); };
  j["components"] = {{"casoratian", tri(r.components.casoratian)},
                     {"coeff_recursion", tri(r.components.coeff_recursion)},
                     {"functional_equation", tri(r.components.functional_equation)}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

inline nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports, Exponent order) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return {{"schema_version", kReportSchemaVersion}, {"order", order}, {"reports", arr}};
}

inline nlohmann::json suite_to_json(const SuiteResult& s) {
  nlohmann::json j = reports_to_json(s.reports, s.order);
  std::size_t verified = 0, mismatch = 0, prec = 0;
  for (const auto& r : s.reports) {
    if (r.outcome == Outcome::verified) ++verified;
    if (r.outcome == Outcome::mismatch) ++mismatch;
    if (r.outcome == Outcome::precision_error) ++prec;
  }
  nlohmann::json errata = nlohmann::json::array();
  for (const auto& e : s.errata) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& mem : e.members) {
      nlohmann::json x{{"id", mem.id}, {"verified", mem.passed}};
      if (!mem.passed) {
        x["first_failing_m"] = mem.first_m ? nlohmann::json(*mem.first_m) : nlohmann::json(nullptr);
        x["first_mismatch_exponent"] = mem.first_exponent ? nlohmann::json(*mem.first_exponent) : nlohmann::json(nullptr);
      }
      members.push_back(x);
    }
    nlohmann::json x{{"members", members}, {"exactly_one_verifies", e.ok}};
    x["verified"] = e.ok ? nlohmann::json(e.verified) : nlohmann::json(nullptr);
    errata.push_back(x);
  }
  j["summary"] = {{"reports", s.reports.size()}, {"verified", verified},   {"mismatch", mismatch},
                  {"precision_error", prec},     {"errata", errata},       {"unexpected_failures", s.unexpected},
                  {"exit_code", s.exit_code}};
  return j;
}

inline std::string format_report(const VerificationReport& r) {
  std::string s = r.id;
  if (r.m) s += " m=" + std::to_string(*r.m);
  s += " N=" + std::to_string(r.order) + " " + outcome_name(r.outcome);
  if (r.first_mismatch)
    s += " at q^" + std::to_string(*r.first_mismatch) + " (lhs " + to_string(*r.lhs_coeff) + ", rhs " +
         to_string(*r.rhs_coeff) + ")";
  auto part = [](const char* name, const std::optional<bool>& b) -> std::string {
    if (!b) return "";
    return std::string(" ") + name + (*b ? "=ok" : "=FAIL");
  };
  std::string comps = part("casoratian", r.components.casoratian) + part("recursion", r.components.coeff_recursion) +
                      part("functional-eq", r.components.functional_equation);
  if (!comps.empty()) s += " [" + comps.substr(1) + "]";
  if (r.elapsed_ms) s += " " + std::to_string(static_cast<long>(*r.elapsed_ms)) + "ms";
  if (!r.detail.empty() && !r.passed()) s += " -- " + r.detail;
  return s;
}

} // namespace qrr

#endif
