#ifndef QRR_CATALOG_HPP
#define QRR_CATALOG_HPP

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "determinant.hpp"
#include "qproducts.hpp"
#include "recurrence.hpp"

namespace qrr {

inline constexpr int kCatalogFormatVersion = 1;

// A named sequence given by a recurrence in its own index, exactly as printed.
struct SequenceDef {
  std::string name;
  std::vector<CoeffFunc> coeffs;
  std::map<Exponent, SeriesExpr> inits;    // exactly coeffs.size() consecutive values
  std::map<Exponent, SeriesExpr> printed;  // further printed values, checked not used
  std::string limit_of;                    // base record whose right side is lim X_n
  std::string printed_label;               // label on the printed display if it differs from name
  bool operator==(const SequenceDef&) const = default;

  int order() const { return static_cast<int>(coeffs.size()); }

  RecurrenceSpec spec(Exponent order) const {
    RecurrenceSpec s;
    s.coeffs = coeffs;
    for (const auto& [k, v] : inits) s.inits.emplace(k, v.eval(order));
    return s;
  }
};

// prefactor(m) * X_{m+shift} * product, where X is a named sequence (or 1).
struct RhsTermSpec {
  PrefactorSpec prefactor;
  std::string sequence;                      // empty: coefficient 1
  Exponent shift = 0;
  bool fixed_index = false;                  // use X_shift regardless of m
  ProductExpr product;
  std::map<std::string, Rational> channels;  // weights of connection coefficients feeding this term
  bool operator==(const RhsTermSpec&) const = default;
};

// Proof machinery shared by the parts of one theorem.
struct Family {
  std::string id;
  std::optional<BandSpec> band;
  Exponent z_step = 1;    // D is evaluated at z = q^{z_step * m}
  Exponent d_offset = 0;  // row k of the connection system is D_{k-m+d_offset}
  std::vector<SequenceDef> finitizations;
  std::optional<PrefactorSpec> casoratian;
  std::vector<FunctionalTerm> functional_equation;
  std::optional<CoefficientLaw> law;
  bool operator==(const Family&) const = default;

  const SequenceDef* finitization(const std::string& name) const {
    for (const auto& s : finitizations)
      if (s.name == name) return &s;
    return nullptr;
  }
};

enum class RecordKind { base, generalization };
enum class RecordStatus { as_printed, variant };

// c * F(q^{z_step (m + shift)})
struct FTerm {
  IndexPoly coeff;
  Exponent shift = 0;
  bool operator==(const FTerm&) const = default;
};

struct IdentityRecord {
  std::string id;
  RecordKind kind = RecordKind::base;
  RecordStatus status = RecordStatus::as_printed;
  std::string variant_of;
  std::string family;
  std::string note;
  SummandSpec lhs;
  std::vector<FTerm> lhs_via_f;
  std::vector<RhsTermSpec> rhs;
  std::vector<SequenceDef> sequences;
  Exponent m_lo = 0, m_hi = 0;
  std::vector<std::pair<Exponent, std::string>> specializations;
  bool operator==(const IdentityRecord&) const = default;

  const SequenceDef* sequence(const std::string& name) const {
    for (const auto& s : sequences)
      if (s.name == name) return &s;
    return nullptr;
  }
};

struct Catalog {
  int format_version = kCatalogFormatVersion;
  std::vector<Family> families;
  std::vector<IdentityRecord> records;
  bool operator==(const Catalog&) const = default;

  const IdentityRecord* find(const std::string& id) const {
    for (const auto& r : records)
      if (r.id == id) return &r;
    return nullptr;
  }
  const IdentityRecord& at(const std::string& id) const {
    if (auto r = find(id)) return *r;
    throw config_error("unknown identity id '" + id + "'");
  }
  const Family* family(const std::string& id) const {
    for (const auto& f : families)
      if (f.id == id) return &f;
    return nullptr;
  }
  // Alternate readings of an as-printed record, in catalog order.
  std::vector<const IdentityRecord*> variants(const IdentityRecord& r) const {
    std::vector<const IdentityRecord*> out;
    for (const auto& o : records)
      if (o.status == RecordStatus::variant && o.variant_of == r.id) out.push_back(&o);
    return out;
  }
  // The as-printed record heading r's errata group, or nullptr if r is in none.
  const IdentityRecord* errata_head(const IdentityRecord& r) const {
    if (r.status == RecordStatus::variant) return find(r.variant_of);
    return variants(r).empty() ? nullptr : &r;
  }
};

namespace detail {

using nlohmann::json;

inline const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw config_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Exponent to_int(const json& j) {
  if (!j.is_number_integer()) throw config_error("expected integer, got " + j.dump());
  return j.get<Exponent>();
}

inline Rational to_rat(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw config_error("expected rational, got " + j.dump());
}

inline json from_rat(const Rational& r) { return to_string(r); }

inline PochSpec poch_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw config_error("Pochhammer must be [sign, exponent, step, length]: " + j.dump());
  PochSpec p;
  p.arg.sign = static_cast<int>(to_int(j[0]));
  if (p.arg.sign != 1 && p.arg.sign != -1) throw config_error("Pochhammer sign must be +-1");
  p.arg.exp = to_int(j[1]);
  p.step = to_int(j[2]);
  if (p.step < 1) throw config_error("Pochhammer step must be positive");
  if (j[3].is_string()) {
    if (j[3].get<std::string>() != "inf") throw config_error("length must be \"inf\" or [u, v]");
  } else {
    if (!j[3].is_array() || j[3].size() != 2) throw config_error("length must be \"inf\" or [u, v]");
    p.length = Affine{to_int(j[3][0]), to_int(j[3][1])};
  }
  return p;
}

inline json poch_to(const PochSpec& p) {
  json len = p.infinite() ? json("inf") : json::array({p.length->u, p.length->v});
  return json::array({p.arg.sign, p.arg.exp, p.step, len});
}

inline std::vector<PochSpec> pochs_from(const json& j, const char* key) {
  std::vector<PochSpec> out;
  if (j.contains(key))
    for (const auto& x : j.at(key)) out.push_back(poch_from(x));
  return out;
}

inline json pochs_to(const std::vector<PochSpec>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(poch_to(p));
  return a;
}

inline std::vector<IndexPoly> polys_from(const json& j, const char* key, char var) {
  std::vector<IndexPoly> out;
  if (j.contains(key))
    for (const auto& x : j.at(key)) out.push_back(parse_index_poly(x.get<std::string>(), var));
  return out;
}

inline json polys_to(const std::vector<IndexPoly>& v, char var) {
  json a = json::array();
  for (const auto& p : v) a.push_back(format_index_poly(p, var));
  return a;
}

inline ProductExpr product_from(const json& j) {
  return ProductExpr{pochs_from(j, "numer"), pochs_from(j, "denom")};
}

inline json product_to(const ProductExpr& e) {
  return json{{"numer", pochs_to(e.numer)}, {"denom", pochs_to(e.denom)}};
}

inline SignForm sign_from(const std::string& s) {
  if (s == "+1") return SignForm::plus;
  if (s == "-1") return SignForm::minus;
  if (s == "(-1)^m") return SignForm::alternating;
  if (s == "(-1)^(m-1)") return SignForm::alternating_shifted;
  throw config_error("unknown sign form '" + s + "'");
}

inline std::string sign_to(SignForm s) {
  switch (s) {
    case SignForm::plus: return "+1";
    case SignForm::minus: return "-1";
    case SignForm::alternating: return "(-1)^m";
    case SignForm::alternating_shifted: return "(-1)^(m-1)";
  }
  return "+1";
}

// {"den": d, "num": [a, b, c]} meaning (a m^2 + b m + c) / d
inline ExponentForm exponent_from(const json& j) {
  Exponent den = j.contains("den") ? to_int(j.at("den")) : 1;
  const json& n = need(j, "num");
  if (!n.is_array() || n.size() != 3) throw config_error("prefactor exponent needs 3 numerators");
  ExponentForm f{Rational(to_int(n[0]), den), Rational(to_int(n[1]), den), Rational(to_int(n[2]), den)};
  f.a.canonicalize();
  f.b.canonicalize();
  f.c.canonicalize();
  return f;
}

inline json exponent_to(const ExponentForm& f) {
  Integer den = lcm(lcm(f.a.get_den(), f.b.get_den()), f.c.get_den());
  auto num = [&](const Rational& r) { return Rational(r * den).get_num().get_si(); };
  return json{{"den", den.get_si()}, {"num", json::array({num(f.a), num(f.b), num(f.c)})}};
}

inline PrefactorSpec prefactor_from(const json& j) {
  PrefactorSpec p;
  if (j.contains("sign")) p.sign = sign_from(j.at("sign").get<std::string>());
  if (j.contains("exponent")) p.exponent = exponent_from(j.at("exponent"));
  p.finite_numer = pochs_from(j, "finite_numer");
  p.finite_denom = pochs_from(j, "finite_denom");
  p.scalar_numer = polys_from(j, "scalar_numer", 'm');
  p.scalar_denom = polys_from(j, "scalar_denom", 'm');
  return p;
}

inline json prefactor_to(const PrefactorSpec& p) {
  return json{{"sign", sign_to(p.sign)},
              {"exponent", exponent_to(p.exponent)},
              {"finite_numer", pochs_to(p.finite_numer)},
              {"finite_denom", pochs_to(p.finite_denom)},
              {"scalar_numer", polys_to(p.scalar_numer, 'm')},
              {"scalar_denom", polys_to(p.scalar_denom, 'm')}};
}

inline std::map<Exponent, SeriesExpr> values_from(const json& j, const char* key) {
  std::map<Exponent, SeriesExpr> out;
  if (!j.contains(key)) return out;
  for (const auto& [k, v] : j.at(key).items()) {
    Exponent idx;
    try {
      idx = std::stoll(k);
    } catch (...) {
      throw config_error("sequence index '" + k + "' is not an integer");
    }
    out.emplace(idx, parse_series_expr(v.get<std::string>()));
  }
  return out;
}

inline json values_to(const std::map<Exponent, SeriesExpr>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = format_series_expr(v);
  return o;
}

inline SequenceDef sequence_from(const json& j, char var) {
  SequenceDef s;
  s.name = need(j, "name").get<std::string>();
  s.coeffs = polys_from(j, "coeffs", var);
  s.inits = values_from(j, "inits");
  s.printed = values_from(j, "printed");
  if (j.contains("limit_of")) s.limit_of = j.at("limit_of").get<std::string>();
  if (j.contains("printed_label")) s.printed_label = j.at("printed_label").get<std::string>();
  return s;
}

inline json sequence_to(const SequenceDef& s, char var) {
  json j{{"name", s.name}, {"coeffs", polys_to(s.coeffs, var)}, {"inits", values_to(s.inits)},
         {"printed", values_to(s.printed)}};
  if (!s.limit_of.empty()) j["limit_of"] = s.limit_of;
  if (!s.printed_label.empty()) j["printed_label"] = s.printed_label;
  return j;
}

inline SummandSpec summand_from(const json& j) {
  SummandSpec s;
  s.alternating = j.value("alternating", false);
  const json& e = need(j, "exponent");
  s.exponent.den = e.contains("den") ? to_int(e.at("den")) : 1;
  if (s.exponent.den != 1 && s.exponent.den != 2) throw config_error("summand exponent denominator must be 1 or 2");
  const json& n = need(e, "num");
  if (!n.is_array() || n.size() != 5) throw config_error("summand exponent needs 5 numerators");
  s.exponent.a = to_int(n[0]);
  s.exponent.b = to_int(n[1]);
  s.exponent.c = to_int(n[2]);
  s.exponent.d = to_int(n[3]);
  s.exponent.e = to_int(n[4]);
  s.numer = pochs_from(j, "numer");
  s.denom = pochs_from(j, "denom");
  return s;
}

inline json summand_to(const SummandSpec& s) {
  const auto& e = s.exponent;
  return json{{"alternating", s.alternating},
              {"exponent", {{"den", e.den}, {"num", json::array({e.a, e.b, e.c, e.d, e.e})}}},
              {"numer", pochs_to(s.numer)},
              {"denom", pochs_to(s.denom)}};
}

inline RhsTermSpec rhs_term_from(const json& j) {
  RhsTermSpec t;
  if (j.contains("prefactor")) t.prefactor = prefactor_from(j.at("prefactor"));
  t.sequence = j.value("sequence", std::string());
  t.shift = j.contains("shift") ? to_int(j.at("shift")) : 0;
  t.fixed_index = j.value("fixed_index", false);
  t.product = product_from(need(j, "product"));
  if (j.contains("channels"))
    for (const auto& [k, v] : j.at("channels").items()) t.channels.emplace(k, to_rat(v));
  return t;
}

inline json rhs_term_to(const RhsTermSpec& t) {
  json ch = json::object();
  for (const auto& [k, v] : t.channels) ch[k] = from_rat(v);
  return json{{"prefactor", prefactor_to(t.prefactor)}, {"sequence", t.sequence}, {"shift", t.shift},
              {"fixed_index", t.fixed_index}, {"product", product_to(t.product)}, {"channels", ch}};
}

inline Family family_from(const json& j) {
  Family f;
  f.id = need(j, "id").get<std::string>();
  if (j.contains("band") && !j.at("band").is_null()) {
    const json& b = j.at("band");
    BandSpec s;
    s.diag = parse_index_poly(need(b, "diag").get<std::string>(), 'i');
    s.super1 = parse_index_poly(need(b, "super1").get<std::string>(), 'i');
    if (b.contains("super2") && !b.at("super2").is_null())
      s.super2 = parse_index_poly(b.at("super2").get<std::string>(), 'i');
    f.band = s;
  }
  f.z_step = j.contains("z_step") ? to_int(j.at("z_step")) : 1;
  f.d_offset = j.contains("d_offset") ? to_int(j.at("d_offset")) : 0;
  for (const auto& s : j.value("finitizations", json::array())) f.finitizations.push_back(sequence_from(s, 'n'));
  if (j.contains("casoratian") && !j.at("casoratian").is_null()) f.casoratian = prefactor_from(j.at("casoratian"));
  for (const auto& t : j.value("functional_equation", json::array())) {
    if (!t.is_array() || t.size() != 2) throw config_error("functional equation term must be [factor, shift]");
    f.functional_equation.push_back({parse_index_poly(t[0].get<std::string>(), 'n'), to_int(t[1])});
  }
  if (j.contains("coefficient_law") && !j.at("coefficient_law").is_null()) {
    const json& l = j.at("coefficient_law");
    CoefficientLaw law;
    law.a0_numer = polys_from(need(l, "a0"), "numer", 'n');
    law.a0_denom = polys_from(need(l, "a0"), "denom", 'n');
    law.ratio_numer = polys_from(need(l, "ratio"), "numer", 'n');
    law.ratio_denom = polys_from(need(l, "ratio"), "denom", 'n');
    f.law = law;
  }
  return f;
}

inline json family_to(const Family& f) {
  json j{{"id", f.id}, {"z_step", f.z_step}, {"d_offset", f.d_offset}};
  if (f.band) {
    json b{{"diag", format_index_poly(f.band->diag, 'i')}, {"super1", format_index_poly(f.band->super1, 'i')}};
    b["super2"] = f.band->super2 ? json(format_index_poly(*f.band->super2, 'i')) : json(nullptr);
    j["band"] = b;
  } else {
    j["band"] = nullptr;
  }
  json fs = json::array();
  for (const auto& s : f.finitizations) fs.push_back(sequence_to(s, 'n'));
  j["finitizations"] = fs;
  j["casoratian"] = f.casoratian ? prefactor_to(*f.casoratian) : json(nullptr);
  json fe = json::array();
  for (const auto& t : f.functional_equation) fe.push_back(json::array({format_index_poly(t.factor), t.shift}));
  j["functional_equation"] = fe;
  if (f.law)
    j["coefficient_law"] = {{"a0", {{"numer", polys_to(f.law->a0_numer, 'n')}, {"denom", polys_to(f.law->a0_denom, 'n')}}},
                            {"ratio",
                             {{"numer", polys_to(f.law->ratio_numer, 'n')}, {"denom", polys_to(f.law->ratio_denom, 'n')}}}};
  else
    j["coefficient_law"] = nullptr;
  return j;
}

inline IdentityRecord record_from(const json& j) {
  IdentityRecord r;
  r.id = need(j, "id").get<std::string>();
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "base")
    r.kind = RecordKind::base;
  else if (kind == "generalization")
    r.kind = RecordKind::generalization;
  else
    throw config_error("record " + r.id + ": unknown kind '" + kind + "'");
  std::string status = j.value("status", std::string("as-printed"));
  if (status == "as-printed")
    r.status = RecordStatus::as_printed;
  else if (status == "variant")
    r.status = RecordStatus::variant;
  else
    throw config_error("record " + r.id + ": unknown status '" + status + "'");
  r.variant_of = j.value("variant_of", std::string());
  r.family = j.value("family", std::string());
  r.note = j.value("note", std::string());
  r.lhs = summand_from(need(j, "lhs"));
  for (const auto& t : j.value("lhs_via_f", json::array())) {
    if (!t.is_array() || t.size() != 2) throw config_error("record " + r.id + ": lhs_via_f term must be [coeff, shift]");
    r.lhs_via_f.push_back({parse_index_poly(t[0].get<std::string>(), 'm'), to_int(t[1])});
  }
  for (const auto& t : need(j, "rhs")) r.rhs.push_back(rhs_term_from(t));
  for (const auto& s : j.value("sequences", json::array())) r.sequences.push_back(sequence_from(s, 'm'));
  if (j.contains("m_range")) {
    const json& mr = j.at("m_range");
    r.m_lo = to_int(mr.at(0));
    r.m_hi = to_int(mr.at(1));
  }
  for (const auto& s : j.value("specializations", json::array()))
    r.specializations.emplace_back(to_int(s.at(0)), s.at(1).get<std::string>());
  return r;
}

inline json record_to(const IdentityRecord& r) {
  json j{{"id", r.id},
         {"kind", r.kind == RecordKind::base ? "base" : "generalization"},
         {"status", r.status == RecordStatus::as_printed ? "as-printed" : "variant"},
         {"lhs", summand_to(r.lhs)},
         {"m_range", json::array({r.m_lo, r.m_hi})}};
  if (!r.variant_of.empty()) j["variant_of"] = r.variant_of;
  if (!r.family.empty()) j["family"] = r.family;
  if (!r.note.empty()) j["note"] = r.note;
  json vf = json::array();
  for (const auto& t : r.lhs_via_f) vf.push_back(json::array({format_index_poly(t.coeff, 'm'), t.shift}));
  j["lhs_via_f"] = vf;
  json rhs = json::array();
  for (const auto& t : r.rhs) rhs.push_back(rhs_term_to(t));
  j["rhs"] = rhs;
  json seqs = json::array();
  for (const auto& s : r.sequences) seqs.push_back(sequence_to(s, 'm'));
  j["sequences"] = seqs;
  json sp = json::array();
  for (const auto& [m, id] : r.specializations) sp.push_back(json::array({m, id}));
  j["specializations"] = sp;
  return j;
}

} // namespace detail

// Structural checks that make every record evaluable.
inline void validate_catalog(const Catalog& c) {
  if (c.format_version != kCatalogFormatVersion)
    throw config_error("unsupported catalog format version " + std::to_string(c.format_version));
  std::set<std::string> ids, fams;
  for (const auto& f : c.families)
    if (!fams.insert(f.id).second) throw config_error("duplicate family id '" + f.id + "'");
  for (const auto& r : c.records)
    if (!ids.insert(r.id).second) throw config_error("duplicate record id '" + r.id + "'");

  auto check_seq = [&](const SequenceDef& s, const std::string& where) {
    if (s.coeffs.empty()) throw config_error(where + ": sequence " + s.name + " has no recurrence");
    if (static_cast<int>(s.inits.size()) != s.order())
      throw config_error(where + ": sequence " + s.name + " needs " + std::to_string(s.order()) + " initial values");
    Exponent k = s.inits.begin()->first;
    for (const auto& [idx, v] : s.inits)
      if (idx != k++) throw config_error(where + ": sequence " + s.name + " initial values not consecutive");
    for (const auto& p : s.coeffs)
      if (p.zdeg() != 0) throw config_error(where + ": sequence " + s.name + " coefficient mentions z");
    if (!s.limit_of.empty() && !c.find(s.limit_of))
      throw config_error(where + ": sequence " + s.name + " limit refers to unknown record " + s.limit_of);
  };
  auto check_product = [&](const ProductExpr& e, const std::string& where) {
    for (const auto* v : {&e.numer, &e.denom})
      for (const auto& p : *v)
        if (p.infinite() && p.arg.exp < 1) throw config_error(where + ": infinite product argument needs exponent >= 1");
  };

  for (const auto& f : c.families) {
    for (const auto& s : f.finitizations) check_seq(s, "family " + f.id);
    if (f.band && f.band->diag.zdeg() > 1) throw config_error("family " + f.id + ": band entries must be linear in z");
    if (f.z_step < 1) throw config_error("family " + f.id + ": z_step must be positive");
  }

  for (const auto& r : c.records) {
    const std::string where = "record " + r.id;
    for (const auto* v : {&r.lhs.numer, &r.lhs.denom})
      for (const auto& p : *v) {
        if (p.infinite()) throw config_error(where + ": summand Pochhammers must be finite");
        if (p.arg.exp < 1) throw config_error(where + ": summand Pochhammer arguments need exponent >= 1");
      }
    if (r.rhs.empty()) throw config_error(where + ": empty right side");
    for (const auto& t : r.rhs) {
      check_product(t.product, where);
      if (!t.sequence.empty() && !r.sequence(t.sequence))
        throw config_error(where + ": unknown sequence '" + t.sequence + "'");
    }
    for (const auto& s : r.sequences) check_seq(s, where);
    if (!r.family.empty() && !c.family(r.family)) throw config_error(where + ": unknown family " + r.family);
    if (r.status == RecordStatus::variant) {
      const IdentityRecord* o = c.find(r.variant_of);
      if (!o) throw config_error(where + ": variant of unknown record " + r.variant_of);
      if (o->status != RecordStatus::as_printed) throw config_error(where + ": variant of a variant");
    }
    if (r.kind == RecordKind::base) {
      if (r.lhs.exponent.b != 0 || r.lhs.exponent.d != 0) throw config_error(where + ": base summand depends on m");
      if (!r.specializations.empty()) throw config_error(where + ": base record with specializations");
    } else {
      if (r.m_lo > r.m_hi) throw config_error(where + ": empty m range");
      for (const auto& [m, id] : r.specializations) {
        if (m < r.m_lo || m > r.m_hi) throw config_error(where + ": specialization m=" + std::to_string(m) + " outside range");
        const IdentityRecord* b = c.find(id);
        if (!b || b->kind != RecordKind::base) throw config_error(where + ": specialization target " + id + " is not a base record");
      }
    }
  }
}

inline Catalog catalog_from_json(const nlohmann::json& j) {
  Catalog c;
  if (!j.is_object() || !j.contains("format_version")) throw config_error("catalog has no format_version");
  c.format_version = static_cast<int>(detail::to_int(j.at("format_version")));
  if (c.format_version != kCatalogFormatVersion)
    throw config_error("unsupported catalog format version " + std::to_string(c.format_version));
  for (const auto& f : j.value("families", nlohmann::json::array())) c.families.push_back(detail::family_from(f));
  for (const auto& r : detail::need(j, "records")) c.records.push_back(detail::record_from(r));
  validate_catalog(c);
  return c;
}

inline nlohmann::json catalog_to_json(const Catalog& c) {
  nlohmann::json fams = nlohmann::json::array(), recs = nlohmann::json::array();
  for (const auto& f : c.families) fams.push_back(detail::family_to(f));
  for (const auto& r : c.records) recs.push_back(detail::record_to(r));
  return {{"format_version", c.format_version}, {"families", fams}, {"records", recs}};
}

inline Catalog catalog_parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("catalog is not valid JSON: ") + e.what());
  }
  try {
    return catalog_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("malformed catalog: ") + e.what());
  }
}

inline Catalog catalog_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return catalog_parse(ss.str());
}

inline std::string catalog_serialize(const Catalog& c) { return catalog_to_json(c).dump(1); }

inline std::vector<std::string> catalog_list(const Catalog& c) {
  std::vector<std::string> out;
  for (const auto& r : c.records) out.push_back(r.id);
  return out;
}

// The base-shaped record obtained by fixing m.
inline IdentityRecord specialize(const IdentityRecord& r, Exponent m) {
  if (r.kind != RecordKind::generalization) throw config_error(r.id + " is not a generalization");
  if (m < r.m_lo || m > r.m_hi) throw config_error("m=" + std::to_string(m) + " outside the range of " + r.id);
  IdentityRecord s = r;
  s.id = r.id + "@m=" + std::to_string(m);
  s.kind = RecordKind::base;
  s.status = RecordStatus::as_printed;
  s.variant_of.clear();
  s.specializations.clear();
  s.lhs_via_f.clear();
  s.m_lo = s.m_hi = 0;
  auto& e = s.lhs.exponent;
  e.c += e.b * m;
  e.e += e.d * m;
  e.b = e.d = 0;
  for (auto& t : s.rhs) {
    auto& p = t.prefactor;
    int sg = sign_at(p.sign, m);
    p.sign = sg > 0 ? SignForm::plus : SignForm::minus;
    p.exponent = ExponentForm{0, 0, p.exponent.at(m)};
    for (auto* v : {&p.finite_numer, &p.finite_denom})
      for (auto& f : *v) f.length = Affine{0, f.length->at(m)};
    if (!t.sequence.empty() && !t.fixed_index) {
      t.shift += m;
      t.fixed_index = true;
    }
    t.channels.clear();
  }
  return s;
}

} // namespace qrr

#endif
