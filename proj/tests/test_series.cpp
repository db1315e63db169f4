#include <random>

#include "test_util.hpp"

using namespace qrr;
using namespace qrr::test;

TEST(Rational, LowestTermsAndPositiveDenominator) {
  Rational r = parse_rational("6/-4");
  EXPECT_EQ(shown(r), "-3/2");
  EXPECT_GT(r.get_den(), 0);
  EXPECT_EQ(shown(parse_rational("0/7")), "0");
  EXPECT_EQ(parse_rational("0/7").get_den(), 1);
  EXPECT_THROW(parse_rational("1/0"), config_error);
  EXPECT_THROW(parse_rational("abc"), config_error);
}

TEST(Monomial, Examples) {
  auto one = LaurentSeries::monomial(1, 0, 10);
  EXPECT_EQ(shown(one), "1");
  EXPECT_EQ(one.order(), 10);
  auto neg = LaurentSeries::monomial(-1, -3, 10);
  EXPECT_EQ(neg.coeff(-3), -1);
  EXPECT_EQ(*neg.valuation(), -3);
  auto half = LaurentSeries::monomial(Rational(1, 2), 0, 5);
  EXPECT_EQ(half.coeff(0), Rational(1, 2));
  auto z = LaurentSeries::monomial(0, 4, 7);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.order(), 7);
  EXPECT_FALSE(z.valuation().has_value());
}

TEST(Add, CancellationAndOrder) {
  EXPECT_EQ(shown(ls_add(poly({1, 1}, 10), poly({-1}, 10))), "q");
  auto a = ls_add(LaurentSeries::monomial(1, -1, 10), LaurentSeries::monomial(1, 1, 10));
  EXPECT_EQ(a.coeff(-1), 1);
  EXPECT_EQ(a.coeff(1), 1);
  EXPECT_EQ(a.terms().size(), 2u);
  auto b = ls_add(poly({1, -1}, 5), LaurentSeries::monomial(1, 1, 3));
  EXPECT_EQ(shown(b), "1");
  EXPECT_EQ(b.order(), 3);
}

TEST(Mul, Examples) {
  const Exponent N = 12;
  std::vector<Rational> geo(N + 1, Rational(1));
  auto g = LaurentSeries::from_dense(0, geo, N);
  auto p = ls_mul(poly({1, -1}, N), g);
  EXPECT_TRUE(same_through(p, LaurentSeries::constant(1, N), N));

  EXPECT_EQ(coeffs(ls_mul(poly({1, 1}, 10), poly({1, 0, 1}, 10)), 0, 4), ints({1, 1, 1, 1, 0}));

  auto s = ls_mul(LaurentSeries::monomial(1, -2, 100), poly({1, 2, 3}, 5));
  EXPECT_EQ(s.order(), 3);
  EXPECT_EQ(s.coeff(-2), 1);
}

TEST(Mul, ZeroAbsorbs) {
  auto z = ls_mul(LaurentSeries::zero(10), poly({1, 2}, 10));
  EXPECT_TRUE(z.is_zero());
}

TEST(Invert, Examples) {
  auto g = ls_invert(poly({1, -1}, 8));
  EXPECT_EQ(coeffs(g, 0, 8), ints({1, 1, 1, 1, 1, 1, 1, 1, 1}));
  auto m = ls_invert(LaurentSeries::monomial(1, 2, 10));
  EXPECT_EQ(shown(m), "q^-2");
  EXPECT_EQ(*m.valuation(), -2);
  EXPECT_EQ(m.order(), 6);
  auto h = ls_invert(poly({1, 0, 1}, 8));
  EXPECT_EQ(coeffs(h, 0, 8), ints({1, 0, -1, 0, 1, 0, -1, 0, 1}));
  EXPECT_THROW(ls_invert(LaurentSeries::zero(5)), domain_error);
}

TEST(Invert, RationalLeadingCoefficient) {
  auto a = ls_add(LaurentSeries::constant(2, 10), LaurentSeries::monomial(1, 1, 10));
  auto b = ls_invert(a);
  EXPECT_EQ(b.coeff(0), Rational(1, 2));
  EXPECT_EQ(b.coeff(1), Rational(-1, 4));
  EXPECT_TRUE(same_through(ls_mul(a, b), LaurentSeries::constant(1, 10), 10));
}

TEST(EqUpTo, Examples) {
  EXPECT_TRUE(ls_eq_up_to(poly({1, 1}, 10), poly({1, 1}, 10), 10));
  auto bad = ls_first_mismatch(poly({1, 1}, 10), poly({1, 2}, 10), 10);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(*bad, 1);
  EXPECT_THROW(ls_first_mismatch(poly({1}, 5), poly({1}, 8), 6), precision_error);
}

namespace {

LaurentSeries random_series(std::mt19937& rng, Exponent order) {
  std::uniform_int_distribution<int> coef(-3, 3), low(-2, 2), len(0, 6);
  Exponent v = low(rng);
  std::vector<LaurentSeries::Term> ts;
  int n = len(rng);
  for (int k = 0; k < n; ++k) {
    int c = coef(rng);
    if (c) ts.emplace_back(v + k, Rational(c, 1 + (k % 2)));
  }
  return LaurentSeries::from_terms(ts, order);
}

bool normalized(const LaurentSeries& s) {
  Exponent prev = std::numeric_limits<Exponent>::min();
  for (const auto& [e, c] : s.terms()) {
    if (c == 0 || e > s.order() || e <= prev) return false;
    prev = e;
  }
  return true;
}

} // namespace

TEST(SeriesProperties, RingAxiomsOnRandomSeries) {
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_series(rng, 12), b = random_series(rng, 10), c = random_series(rng, 14);
    auto ab = ls_mul(a, b), ba = ls_mul(b, a);
    EXPECT_EQ(ab.order(), ba.order());
    EXPECT_TRUE(ls_eq_up_to(ab, ba, ab.order()));

    auto l = ls_mul(ls_mul(a, b), c), r = ls_mul(a, ls_mul(b, c));
    Exponent n = std::min(l.order(), r.order());
    EXPECT_TRUE(ls_eq_up_to(l, r, n)) << "associativity, trial " << trial;

    auto d1 = ls_mul(a, ls_add(b, c)), d2 = ls_add(ls_mul(a, b), ls_mul(a, c));
    n = std::min(d1.order(), d2.order());
    EXPECT_TRUE(ls_eq_up_to(d1, d2, n)) << "distributivity, trial " << trial;

    EXPECT_TRUE(ls_eq_up_to(ls_add(a, b), ls_add(b, a), std::min(a.order(), b.order())));
    for (const auto& s : {ab, l, r, d1, d2, ls_sub(a, a)}) EXPECT_TRUE(normalized(s));
    EXPECT_TRUE(ls_sub(a, a).is_zero());
  }
}

TEST(SeriesProperties, UnitTimesInverseIsOne) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto u = random_series(rng, 15);
    if (u.is_zero()) continue;
    auto inv = ls_invert(u);
    EXPECT_EQ(*inv.valuation(), -*u.valuation());
    auto p = ls_mul(u, inv);
    EXPECT_TRUE(normalized(inv));
    EXPECT_TRUE(ls_eq_up_to(p, LaurentSeries::constant(1, p.order()), p.order())) << "trial " << trial;
  }
}

TEST(SeriesProperties, ReliableOrderNeverOverstated) {
  // Truncating inputs lower must not change any coefficient the result claims to know.
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_series(rng, 20), b = random_series(rng, 20);
    auto full = ls_mul(a, b);
    auto cut = ls_mul(a.truncated(4), b.truncated(4));
    EXPECT_LE(cut.order(), full.order());
    EXPECT_TRUE(ls_eq_up_to(full, cut, cut.order())) << "trial " << trial;
    if (!a.truncated(4).is_zero()) {
      auto ia = ls_invert(a), ic = ls_invert(a.truncated(4));
      EXPECT_TRUE(ls_eq_up_to(ia, ic, ic.order())) << "trial " << trial;
    }
  }
}
