#include "test_util.hpp"

using namespace qrr;
using namespace qrr::test;

namespace {

PochSpec inf(int sign, Exponent e, Exponent step) { return PochSpec{{sign, e}, step, std::nullopt}; }

} // namespace

TEST(OracleSum, AgreesWithSparseEvaluator) {
  const auto& r = cat().at("thm2.1");
  for (Exponent m = 0; m <= 3; ++m)
    EXPECT_TRUE(same_through(oracle::oracle_sum(r.lhs, m, 40).value, eval_lhs_sum(r, m, 40), 40)) << m;
}

TEST(OracleSum, A39AgainstItsProduct) {
  const auto& r = cat().at("A.39");
  EXPECT_TRUE(same_through(oracle::oracle_sum(r.lhs, 0, 20).value, eval_rhs(r, 0, 20), 20));
}

TEST(OracleSum, OrderZero) { EXPECT_EQ(shown(oracle::oracle_sum(cat().at("A.36").lhs, 0, 0).value), "1"); }

TEST(OraclePartition, Counts) {
  auto p = oracle::oracle_partition_product(ProductExpr{{}, {inf(1, 1, 1)}}, 10);
  EXPECT_EQ(coeffs(p.value, 0, 10), ints({1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42}));
  EXPECT_EQ(p.method, "partition-count");
  auto rr = oracle::oracle_partition_product(ProductExpr{{}, {inf(1, 1, 5), inf(1, 4, 5)}}, 10);
  EXPECT_EQ(coeffs(rr.value, 0, 10), ints({1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6}));
}

TEST(OraclePartition, EmptyAndUnsupported) {
  EXPECT_EQ(shown(oracle::oracle_partition_product(ProductExpr{}, 5).value), "1");
  EXPECT_THROW(oracle::oracle_partition_product(ProductExpr{{inf(1, 1, 1)}, {}}, 5), config_error);
  EXPECT_THROW(oracle::oracle_partition_product(ProductExpr{{}, {inf(-1, 1, 2)}}, 5), config_error);
}

TEST(OraclePartition, AgreesWithProductEvaluator) {
  for (const auto& r : cat().records)
    for (const auto& t : r.rhs)
      if (t.product.is_partition_product() && !t.product.denom.empty()) {
        EXPECT_TRUE(same_through(oracle::oracle_partition_product(t.product, 40).value, eval_product_expr(t.product, 40), 40))
            << r.id;
      }
}

TEST(OracleDet, AgreesWithRecursion) {
  for (const auto& f : cat().families) {
    if (!f.band) continue;
    for (Exponent n = 0; n <= 6; ++n) {
      auto a = oracle::oracle_det(*f.band, n, 3, 20), b = det_band_recursive(*f.band, n, 3, 20);
      ASSERT_EQ(a.z.size(), b.z.size());
      for (std::size_t k = 0; k < a.z.size(); ++k) EXPECT_TRUE(same_through(a.z[k], b.z[k], 20)) << f.id << " n=" << n << " z^" << k;
    }
  }
  EXPECT_EQ(shown(oracle::oracle_det(*fam("thm2.1").band, 0, 2, 10).z[0]), "1");
}
