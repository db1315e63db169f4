#include "test_util.hpp"

using namespace qrr;
using namespace qrr::test;

namespace {

::testing::AssertionResult same_bv(const BivariateSeries& a, const BivariateSeries& b, Exponent n) {
  if (a.z.size() != b.z.size()) return ::testing::AssertionFailure() << "z-degrees differ";
  for (std::size_t k = 0; k < a.z.size(); ++k) {
    auto r = same_through(a.z[k], b.z[k], n);
    if (!r) return r << " (z^" << k << ")";
  }
  return ::testing::AssertionSuccess();
}

std::vector<const Family*> banded() {
  std::vector<const Family*> out;
  for (const auto& f : cat().families)
    if (f.band) out.push_back(&f);
  return out;
}

} // namespace

TEST(DetRecursive, Examples) {
  auto d1 = det_band_recursive(*fam("thm2.1").band, 1, 2, 20);
  EXPECT_EQ(shown(d1.z[0]), "1");
  EXPECT_EQ(shown(d1.z[1]), "1");
  EXPECT_TRUE(d1.z[2].is_zero());

  auto d2 = det_band_recursive(*fam("thm3.1").band, 2, 2, 20);
  EXPECT_EQ(shown(d2.z[0]), "1 - q + q^3 + q^4");
  EXPECT_EQ(shown(d2.z[1]), "q^2");

  auto d0 = det_band_recursive(*fam("thm2.2").band, 0, 3, 20);
  EXPECT_EQ(shown(d0.z[0]), "1");
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(d0.z[static_cast<std::size_t>(k)].is_zero());
}

TEST(DetRecursive, PrintedThreeTermRecursions) {
  // thm2.1: D_n = (1 + z q^{n-1}) D_{n-1} + z q^{n-1} D_{n-2}
  const BandSpec& b = *fam("thm2.1").band;
  auto ds = band_determinants(b, 8, 6, 30);
  for (Exponent n = 2; n <= 8; ++n) {
    auto want = bv_add(bv_mul_entry(parse_index_poly("1+zq^{i-1}", 'i'), n, ds[n - 1], 30),
                       bv_mul_entry(parse_index_poly("zq^{i-1}", 'i'), n, ds[n - 2], 30));
    EXPECT_TRUE(same_bv(ds[n], want, 30)) << n;
  }
  // thm2.2: D_n = (1 - q^2 + z q^{2n-1}) D_{n-1} + q^2 D_{n-2}
  const BandSpec& b2 = *fam("thm2.2").band;
  auto es = band_determinants(b2, 8, 6, 30);
  for (Exponent n = 2; n <= 8; ++n) {
    auto want = bv_add(bv_mul_entry(parse_index_poly("1-q^2+zq^{2i-1}", 'i'), n, es[n - 1], 30),
                       bv_mul_entry(parse_index_poly("q^2", 'i'), n, es[n - 2], 30));
    EXPECT_TRUE(same_bv(es[n], want, 30)) << n;
  }
}

TEST(DetDirect, MatchesRecursiveOnSmallCases) {
  for (const Family* f : banded())
    for (Exponent n = 0; n <= 2; ++n)
      EXPECT_TRUE(same_bv(det_direct(*f->band, n, 3, 20), det_band_recursive(*f->band, n, 3, 20), 20)) << f->id;
  EXPECT_TRUE(same_bv(det_direct(*fam("thm2.2").band, 3, 3, 20), det_band_recursive(*fam("thm2.2").band, 3, 3, 20), 20));
  EXPECT_TRUE(same_bv(det_direct(*fam("thm3.1").band, 4, 4, 20), det_band_recursive(*fam("thm3.1").band, 4, 4, 20), 20));
}

TEST(DetDirect, OversizeRejected) { EXPECT_THROW(det_direct(*fam("thm2.1").band, 9, 2, 10), config_error); }

TEST(FFromDeterminant, Thm21CoefficientClosedForm) {
  // a_n = (-q;q)_n q^{n(n-1)/2} / (q;q)_n
  const Exponent N = 40;
  auto F = f_from_determinant(*fam("thm2.1").band, 6, N);
  for (Exponent n = 0; n <= 6; ++n) {
    auto want = ls_div(ls_shift(poch_finite({-1, 1}, 1, n, N + 30), n * (n - 1) / 2), poch_finite({1, 1}, 1, n, N + 30));
    EXPECT_TRUE(same_through(F.z[static_cast<std::size_t>(n)], want, N)) << n;
  }
}

TEST(FFromDeterminant, Thm22ConstantTerm) {
  auto F = f_from_determinant(*fam("thm2.2").band, 2, 40);
  EXPECT_TRUE(same_through(F.z[0], ls_invert(poly({1, 0, 1}, 40)), 40));
}

TEST(FFromDeterminant, ZeroDegreeIsLimitOfDn0) {
  for (const Family* f : banded()) {
    auto F = f_from_determinant(*f->band, 0, 30);
    auto d = det_band_recursive(*f->band, 150, 0, 30);
    EXPECT_TRUE(same_through(F.z[0], d.z[0], 30)) << f->id;
  }
}

TEST(SubstituteZ, Examples) {
  BivariateSeries f{{poly({1, 1}, 10), poly({0, 0, 3}, 10)}};
  EXPECT_EQ(shown(substitute_z(f, 0, 11, 10)), "1 + q + 3q^2");
  EXPECT_THROW(substitute_z(f, 0, 10, 10), precision_error);
}

TEST(SubstituteZ, Thm24AtZeroIsA36) {
  // a_7 q^0 has valuation 7^2 > 40
  const Exponent N = 40;
  auto F = f_from_determinant(*fam("thm2.4").band, 6, N);
  EXPECT_TRUE(same_through(substitute_z(F, 0, 49, N), oracle::oracle_sum(cat().at("A.36").lhs, 0, N).value, N));
}

TEST(SubstituteZ, Thm22CombinationIsA16) {
  // F(q^2) + q^2 F(q^4); every a_j has non-negative valuation, so a_j q^{2j} with j > 21 is beyond q^40.
  const Exponent N = 40;
  auto F = f_from_determinant(*fam("thm2.2").band, 21, N);
  for (const auto& a : F.z) EXPECT_TRUE(a.is_zero() || *a.valuation() >= 0);
  auto lhs = ls_add(substitute_z(F, 2, 44, N), ls_shift(substitute_z(F, 4, 88, N), 2)).truncated(N);
  EXPECT_TRUE(same_through(lhs, oracle::oracle_sum(cat().at("A.16").lhs, 0, N).value, N));
}

TEST(FunctionalEquation, CatalogExamplesHold) {
  auto F1 = f_from_determinant(*fam("thm2.1").band, 6, 40);
  EXPECT_FALSE(functional_equation_check(F1, fam("thm2.1").functional_equation, 40).has_value());
  auto F3 = f_from_determinant(*fam("thm3.1").band, 6, 40);
  EXPECT_FALSE(functional_equation_check(F3, fam("thm3.1").functional_equation, 40).has_value());
}

TEST(FunctionalEquation, PerturbationDetected) {
  auto F = f_from_determinant(*fam("thm2.1").band, 4, 30);
  F.z[2] = ls_add(F.z[2], LaurentSeries::monomial(1, 7, 30));
  auto bad = functional_equation_check(F, fam("thm2.1").functional_equation, 30);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->zdeg, 2);
}

TEST(DeterminantProperties, SubstitutionCoherence) {
  // substitute_z(F, k) = lim D_n(q^k); the tail bound assumes each a_j has non-negative valuation.
  const Exponent N = 30;
  for (const Family* f : banded())
    for (Exponent k : {1, 2, 4}) {
      int zdeg = static_cast<int>(N / k) + 1;
      auto F = f_from_determinant(*f->band, zdeg, N);
      for (const auto& a : F.z) ASSERT_TRUE(a.is_zero() || *a.valuation() >= 0) << f->id;
      Exponent tail = (zdeg + 1) * k;
      auto direct = det_band_at(*f->band, 150, k, N);
      EXPECT_TRUE(same_through(substitute_z(F, k, tail, N), direct, N)) << f->id << " k=" << k;
    }
}
