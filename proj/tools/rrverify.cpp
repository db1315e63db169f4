// rrverify: command-line front end for the identity verifier.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrr/qrr.hpp"

namespace {

using namespace qrr;

constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;

Exponent default_order(Exponent fallback) {
  if (const char* env = std::getenv("QRR_ORDER")) {
    try {
      return std::stoll(env);
    } catch (...) {
      throw config_error(std::string("QRR_ORDER is not an integer: ") + env);
    }
  }
  return fallback;
}

// "A..B" or a single integer.
std::pair<Exponent, Exponent> parse_range(const std::string& s) {
  try {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
      Exponent v = std::stoll(s);
      return {v, v};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw config_error("bad range '" + s + "', expected A..B");
  }
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) out.push_back(part);
  return out;
}

struct Globals {
  std::string catalog_path;
  const Catalog& catalog() {
    if (catalog_path.empty()) return builtin_catalog();
    if (!loaded) loaded = catalog_load(catalog_path);
    return *loaded;
  }
  std::optional<Catalog> loaded;
};

int cmd_list(Globals& g, const std::string& kind, const std::string& format) {
  const Catalog& c = g.catalog();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : c.records) {
    std::string k = r.kind == RecordKind::base ? "base" : "generalization";
    if (!kind.empty() && kind != k) continue;
    if (format == "json") {
      nlohmann::json j{{"id", r.id}, {"kind", k}, {"status", r.status == RecordStatus::variant ? "variant" : "as-printed"}};
      if (r.kind == RecordKind::generalization) j["m_range"] = {r.m_lo, r.m_hi};
      if (!r.variant_of.empty()) j["variant_of"] = r.variant_of;
      arr.push_back(j);
    } else {
      std::cout << r.id << "\t" << k;
      if (r.kind == RecordKind::generalization) std::cout << "\tm=" << r.m_lo << ".." << r.m_hi;
      if (r.status == RecordStatus::variant) std::cout << "\tvariant of " << r.variant_of;
      std::cout << "\n";
    }
  }
  if (format == "json") std::cout << arr.dump(1) << "\n";
  return 0;
}

int exit_for(const std::vector<VerificationReport>& reps) {
  bool prec = false, bad = false;
  for (const auto& r : reps) {
    if (r.outcome == Outcome::precision_error) prec = true;
    if (!r.passed()) bad = true;
  }
  return prec ? kExitConfig : bad ? kExitMismatch : 0;
}

int cmd_check(Globals& g, const std::string& id, const std::string& mrange, Exponent order, const std::string& format,
              bool components, bool timings) {
  const Catalog& c = g.catalog();
  const IdentityRecord& r = c.at(id);
  CheckOptions opt{components, timings};
  std::vector<VerificationReport> reps;
  if (r.kind == RecordKind::base) {
    if (!mrange.empty()) throw config_error(id + " is a base identity; --m does not apply");
    reps.push_back(check_identity(c, r, std::nullopt, order, opt));
  } else {
    auto [lo, hi] = mrange.empty() ? std::pair(r.m_lo, r.m_hi) : parse_range(mrange);
    FamilyFacts facts;
    if (components && !r.family.empty())
      if (const Family* f = c.family(r.family)) facts = family_facts(*f, order);
    for (Exponent m = lo; m <= hi; ++m) reps.push_back(check_identity(c, r, m, order, opt, &facts));
  }
  if (format == "json")
    std::cout << reports_to_json(reps, order).dump(1) << "\n";
  else
    for (const auto& rep : reps) std::cout << format_report(rep) << "\n";
  return exit_for(reps);
}

int cmd_suite(Globals& g, Exponent order, unsigned jobs, const std::string& format, const std::string& ids,
              const std::string& kind, const std::string& mrange, bool components, bool timings,
              const std::string& output) {
  const Catalog& c = g.catalog();
  SuiteConfig cfg;
  cfg.order = order;
  cfg.jobs = jobs;
  cfg.check = {components, timings};
  if (!mrange.empty()) cfg.m_range = parse_range(mrange);
  if (!ids.empty() || !kind.empty()) {
    std::vector<std::string> sel;
    if (!ids.empty()) sel = split_ids(ids);
    else
      for (const auto& r : c.records)
        if ((r.kind == RecordKind::base) == (kind == "base")) sel.push_back(r.id);
    cfg.ids = sel;
  }
  SuiteResult res = run_suite(c, cfg);
  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw config_error("cannot write '" + output + "'");
  }
  std::ostream& out = output.empty() ? out : file;
  if (format == "json") {
    out << suite_to_json(res).dump(1) << "\n";
  } else {
    for (const auto& rep : res.reports) out << format_report(rep) << "\n";
    for (const auto& e : res.errata) {
      out << "errata group " << e.members.front().id << ": "
                << (e.ok ? e.verified + " verifies" : std::string("NOT exactly one member verifies")) << "\n";
      for (const auto& mem : e.members) {
        if (mem.passed) continue;
        out << "  " << mem.id << " fails";
        if (mem.first_m) out << " at m=" << *mem.first_m;
        if (mem.first_exponent) out << ", first mismatch q^" << *mem.first_exponent;
        out << "\n";
      }
    }
    std::size_t ok = 0;
    for (const auto& rep : res.reports) ok += rep.passed();
    out << ok << "/" << res.reports.size() << " reports pass";
    if (!res.unexpected.empty()) {
      out << "; unexpected failures:";
      for (const auto& id : res.unexpected) out << " " << id;
    }
    out << "\n";
  }
  return res.exit_code;
}

int cmd_casoratian(Globals& g, const std::string& id, Exponent max_m, Exponent order) {
  const Catalog& c = g.catalog();
  const IdentityRecord& r = c.at(id);
  const Family& f = family_of(c, r);
  if (!f.casoratian) throw config_error("family " + f.id + " has no Casoratian closed form");
  bool all = true;
  for (Exponent m = 1; m <= max_m; ++m) {
    auto bad = casoratian_check(f, m, order);
    all = all && !bad;
    std::cout << f.id << " m=" << m << " ";
    if (bad)
      std::cout << "FAIL at q^" << *bad << "\n";
    else
      std::cout << "ok " << to_string(eval_prefactor(*f.casoratian, m, std::min<Exponent>(order, 12))) << "\n";
  }
  return all ? 0 : kExitMismatch;
}

int cmd_oracle(Globals& g, const std::string& id, Exponent order, std::optional<Exponent> m) {
  const Catalog& c = g.catalog();
  const IdentityRecord& r = c.at(id);
  Exponent mm = 0;
  if (r.kind == RecordKind::generalization) {
    mm = m.value_or(r.m_lo);
    if (mm < r.m_lo || mm > r.m_hi) throw config_error("m outside the range of " + id);
  }
  oracle::OracleResult lhs = oracle::oracle_sum(r.lhs, mm, order);
  LaurentSeries rhs = eval_rhs(r, mm, order);
  std::optional<oracle::OracleResult> part;
  if (r.kind == RecordKind::base && r.rhs.size() == 1 && r.rhs[0].product.is_partition_product())
    part = oracle::oracle_partition_product(r.rhs[0].product, order);
  std::cout << "# " << id;
  if (r.kind == RecordKind::generalization) std::cout << " m=" << mm;
  std::cout << " N=" << order << "\n# k\tlhs(" << lhs.method << ")\trhs(engine)";
  if (part) std::cout << "\trhs(" << part->method << ")";
  std::cout << "\n";
  bool agree = true;
  for (Exponent k = 0; k <= order; ++k) {
    Rational a = lhs.value.coeff(k), b = rhs.coeff(k);
    agree = agree && a == b;
    std::cout << k << "\t" << to_string(a) << "\t" << to_string(b);
    if (part) {
      Rational p = part->value.coeff(k);
      agree = agree && p == a;
      std::cout << "\t" << to_string(p);
    }
    std::cout << "\n";
  }
  std::cout << "# " << (agree ? "sides agree" : "sides DIFFER") << " through q^" << order << "\n";
  return agree ? 0 : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify q-series identities of Rogers-Ramanujan type to a fixed order"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--catalog", g.catalog_path, "Catalog JSON file (default: built-in catalog)");

  std::string kind, format = "text", id, mrange, ids, output;
  Exponent order = -1, max_m = 15;
  unsigned jobs = 1;
  bool no_components = false, timings = false;
  std::optional<Exponent> single_m;

  auto* list = app.add_subcommand("list", "List catalog records");
  list->add_option("--kind", kind, "base or generalization")->check(CLI::IsMember({"base", "generalization"}));
  list->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* check = app.add_subcommand("check", "Verify one identity");
  check->add_option("--id", id)->required();
  check->add_option("--m", mrange, "m or A..B (generalizations)");
  check->add_option("--order", order, "Truncation order N (env QRR_ORDER)");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--no-components", no_components, "Skip proof component checks");
  check->add_flag("--timings", timings, "Include elapsed times");

  auto* suite = app.add_subcommand("suite", "Verify many identities");
  suite->add_option("--order", order, "Truncation order N (env QRR_ORDER)");
  suite->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  suite->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  suite->add_option("--ids", ids, "Comma-separated record ids");
  suite->add_option("--kind", kind)->check(CLI::IsMember({"base", "generalization"}));
  suite->add_option("--m", mrange, "Override the m range, A..B");
  suite->add_flag("--no-components", no_components, "Skip proof component checks");
  suite->add_flag("--timings", timings, "Include elapsed times (output no longer reproducible)");
  suite->add_option("-o,--output", output, "Write the report to a file instead of stdout");

  auto* cas = app.add_subcommand("casoratian", "Check a family's Casoratian closed form for m = 1..M");
  cas->add_option("--id", id)->required();
  cas->add_option("--max-m", max_m)->check(CLI::Range(1, 1000));
  cas->add_option("--order", order, "Truncation order N (env QRR_ORDER)");

  auto* orc = app.add_subcommand("oracle", "Print both sides' coefficients using the oracle evaluators");
  orc->add_option("--id", id)->required();
  orc->add_option("--order", order, "Truncation order N")->required();
  orc->add_option("--m", single_m, "m for generalizations (default: lower end of range)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (order < 0) order = default_order(60);
    if (order < 0) throw config_error("order must be non-negative");
    if (*list) return cmd_list(g, kind, format);
    if (*check) return cmd_check(g, id, mrange, order, format, !no_components, timings);
    if (*suite) return cmd_suite(g, order, jobs, format, ids, kind, mrange, !no_components, timings, output);
    if (*cas) return cmd_casoratian(g, id, max_m, order);
    if (*orc) return cmd_oracle(g, id, order, single_m);
  } catch (const std::exception& e) {
    std::cerr << "rrverify: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
