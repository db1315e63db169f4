#include <algorithm>

#include "test_util.hpp"

using namespace qrr;
using namespace qrr::test;

namespace {

bool same_record_series(const IdentityRecord& a, const IdentityRecord& b, Exponent N) {
  return ls_eq_up_to(eval_lhs_sum(a, 0, N), eval_lhs_sum(b, 0, N), N) &&
         ls_eq_up_to(eval_rhs(a, 0, N), eval_rhs(b, 0, N), N);
}

nlohmann::json catalog_json() { return catalog_to_json(cat()); }

} // namespace

TEST(CatalogList, ContainsExpectedIds) {
  auto ids = catalog_list(cat());
  for (const char* id : {"thm2.1", "thm3.5.2", "A.36", "GIS", "RR-1.2", "RR-1.3", "MSZ-2.5", "BMS-2.7"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  EXPECT_EQ(ids, catalog_list(cat()));
}

TEST(CatalogList, Counts) {
  std::size_t gen = 0, base = 0, gen_printed = 0;
  for (const auto& r : cat().records) {
    if (r.kind == RecordKind::generalization) {
      ++gen;
      gen_printed += r.status == RecordStatus::as_printed;
    } else if (r.status == RecordStatus::as_printed) {
      ++base;
    }
  }
  // thm2.1, 2.2, 2.4, 2.8 and GIS are single records; thm2.3, 2.5, 2.6, 2.7 and 3.1 to 3.5 come in two parts.
  EXPECT_EQ(gen_printed, 23u);
  EXPECT_GE(base, 33u);
  EXPECT_GT(gen, gen_printed);
}

TEST(CatalogGet, A34) {
  const auto& r = cat().at("A.34");
  ASSERT_EQ(r.lhs.numer.size(), 1u);
  EXPECT_EQ(format_poch(r.lhs.numer[0], 'n'), "(-q;q^2)_n");
  ASSERT_EQ(r.lhs.denom.size(), 1u);
  EXPECT_EQ(format_poch(r.lhs.denom[0], 'n'), "(q^2;q^2)_n");
  EXPECT_EQ(r.lhs.exponent.at(3, 0), 15);
  ASSERT_EQ(r.rhs.size(), 1u);
  std::vector<std::string> den;
  for (const auto& p : r.rhs[0].product.denom) den.push_back(format_poch(p, 'n'));
  EXPECT_EQ(den, (std::vector<std::string>{"(q^3;q^8)_inf", "(q^4;q^8)_inf", "(q^5;q^8)_inf"}));
}

TEST(CatalogGet, Thm21Specializations) {
  const auto& s = cat().at("thm2.1").specializations;
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], std::make_pair(Exponent{1}, std::string("A.8")));
  EXPECT_EQ(s[1], std::make_pair(Exponent{0}, std::string("A.13")));
}

TEST(CatalogGet, UnknownId) { EXPECT_THROW(cat().at("nonexistent"), config_error); }

TEST(Specialize, Thm24AtZeroIsA36) {
  EXPECT_TRUE(same_record_series(specialize(cat().at("thm2.4"), 0), cat().at("A.36"), 60));
}

TEST(Specialize, Thm22AtOneIsA16) {
  EXPECT_TRUE(same_record_series(specialize(cat().at("thm2.2"), 1), cat().at("A.16"), 60));
}

TEST(Specialize, OutOfRange) {
  const auto& r = cat().at("thm2.4");
  EXPECT_THROW(specialize(r, r.m_hi + 1), config_error);
  EXPECT_THROW(specialize(cat().at("A.36"), 0), config_error);
}

TEST(Specialize, SubstitutesEveryForm) {
  auto s = specialize(cat().at("thm2.1"), 3);
  EXPECT_EQ(s.kind, RecordKind::base);
  EXPECT_EQ(s.lhs.exponent.b, 0);
  EXPECT_EQ(s.lhs.exponent.d, 0);
  for (const auto& t : s.rhs) {
    EXPECT_TRUE(t.fixed_index);
    EXPECT_EQ(t.shift, 2);
  }
  EXPECT_TRUE(ls_eq_up_to(eval_rhs(s, 0, 40), eval_rhs(cat().at("thm2.1"), 3, 40), 40));
}

TEST(CatalogRoundTrip, SerializeThenParseIsIdentical) {
  Catalog again = catalog_parse(catalog_serialize(cat()));
  EXPECT_TRUE(again == cat());
  EXPECT_EQ(catalog_serialize(again), catalog_serialize(cat()));
}

TEST(CatalogValidation, RejectsBadFiles) {
  EXPECT_THROW(catalog_parse("not json"), config_error);
  EXPECT_THROW(catalog_parse("{}"), config_error);

  auto j = catalog_json();
  j["format_version"] = 99;
  EXPECT_THROW(catalog_from_json(j), config_error);

  j = catalog_json();
  j["records"].push_back(j["records"][0]);
  EXPECT_THROW(catalog_from_json(j), config_error);

  j = catalog_json();
  for (auto& r : j["records"])
    if (r["id"] == "thm3.4.1-variant") r["variant_of"] = "no-such-record";
  EXPECT_THROW(catalog_from_json(j), config_error);

  j = catalog_json();
  for (auto& r : j["records"])
    if (r["id"] == "thm2.1") r["specializations"] = nlohmann::json::array({nlohmann::json::array({40, "A.8"})});
  EXPECT_THROW(catalog_from_json(j), config_error);

  j = catalog_json();
  for (auto& r : j["records"])
    if (r["id"] == "thm2.1") r["rhs"][0]["sequence"] = "Z";
  EXPECT_THROW(catalog_from_json(j), config_error);
}

TEST(CatalogErrata, GroupsAreWellFormed) {
  const auto& c = cat();
  for (const char* head : {"MSZ-2.5", "thm3.4.1", "thm3.4.2", "thm3.5.1", "thm3.5.2"}) {
    const auto& r = c.at(head);
    EXPECT_EQ(c.errata_head(r), &r);
    EXPECT_FALSE(c.variants(r).empty()) << head;
    for (const auto* v : c.variants(r)) EXPECT_EQ(c.errata_head(*v), &r);
  }
  EXPECT_EQ(c.variants(c.at("thm3.5.2")).size(), 3u);
  EXPECT_EQ(c.errata_head(c.at("thm2.1")), nullptr);
}

TEST(CatalogProperties, EveryReferenceResolves) {
  for (const auto& r : cat().records) {
    for (const auto& t : r.rhs)
      if (!t.sequence.empty()) {
        EXPECT_NE(r.sequence(t.sequence), nullptr) << r.id;
      }
    if (r.kind == RecordKind::generalization) {
      const Family& f = family_of(cat(), r);
      for (const auto& t : r.rhs)
        for (const auto& [name, w] : t.channels) EXPECT_NO_THROW(finitization_index(f, name)) << r.id;
    }
  }
}

TEST(CatalogProperties, SummandValuationEqualsExponent) {
  for (const auto& r : cat().records) {
    Exponent lo = r.kind == RecordKind::base ? 0 : r.m_lo, hi = r.kind == RecordKind::base ? 0 : r.m_hi;
    for (Exponent m = lo; m <= hi; ++m)
      for (Exponent n = 0; n <= 4; ++n) {
        auto t = eval_summand_term(r.lhs, n, m, 40);
        if (t.is_zero()) continue;
        EXPECT_EQ(*t.valuation(), r.lhs.exponent.at(n, m)) << r.id << " n=" << n << " m=" << m;
      }
  }
}
