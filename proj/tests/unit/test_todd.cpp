#include <gtest/gtest.h>

#include <random>

#include "birkhoff/todd.hpp"

using namespace birkhoff;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

std::vector<Rational> fast(const std::vector<Rational>& xi, std::size_t order) {
  ToddEvaluator ev(order);
  std::vector<mpq_class> out;
  ev.evaluate(std::span<const Rational>(xi), order, out);
  std::vector<Rational> r;
  for (auto& v : out) r.push_back(Rational(v));
  return r;
}

}  // namespace

TEST(Bernoulli, FirstValues) {
  BernoulliTable b(8);
  EXPECT_EQ(b.bernoulli(0), q(1));
  EXPECT_EQ(b.bernoulli(1), q(1, 2));
  EXPECT_EQ(b.bernoulli(2), q(1, 6));
  EXPECT_EQ(b.bernoulli(3), q(0));
  EXPECT_EQ(b.bernoulli(4), q(-1, 30));
  EXPECT_EQ(b.bernoulli(8), q(-1, 30));
}

TEST(GSeries, ExpansionOfXOverOneMinusExpMinusX) {
  EXPECT_EQ(g_series(q(1), 3), TruncatedSeries(3, {q(1), q(1, 2), q(1, 12), q(0)}));
  EXPECT_EQ(g_series(q(2), 2), TruncatedSeries(2, {q(1), q(1), q(1, 3)}));
}

TEST(Todd, DegreeZeroIsOne) {
  EXPECT_EQ(todd_values(std::vector<Rational>{q(5), q(-7)}, 2).values[0], q(1));
}

TEST(Todd, LowDegreesOnSmallInputs) {
  EXPECT_EQ(todd_values(std::vector<Rational>{q(1), q(2), q(3)}, 1).values[1], q(3));
  auto ones = todd_values(std::vector<Rational>{q(1), q(1), q(1)}, 3).values;
  EXPECT_EQ(ones[2], q(1));
  EXPECT_EQ(ones[3], q(3, 8));
}

TEST(Todd, SymmetricHomogeneousAndMatchesClosedForms) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rational> xi{q(num(rng), den(rng)), q(num(rng), den(rng)), q(num(rng), den(rng))};
    auto td = todd_values(xi, 3).values;
    std::vector<Rational> rotated{xi[2], xi[0], xi[1]};
    EXPECT_EQ(todd_values(rotated, 3).values, td);

    const Rational s = q(num(rng) | 1, den(rng));
    std::vector<Rational> scaled{xi[0] * s, xi[1] * s, xi[2] * s};
    auto tds = todd_values(scaled, 3).values;
    for (unsigned long j = 0; j <= 3; ++j) EXPECT_EQ(tds[j], td[j] * pow(s, j));

    const Rational c1 = xi[0] + xi[1] + xi[2];
    const Rational c2 = xi[0] * xi[1] + xi[0] * xi[2] + xi[1] * xi[2];
    EXPECT_EQ(td[1], c1 / q(2));
    EXPECT_EQ(td[2], (c1 * c1 + c2) / q(12));
    EXPECT_EQ(td[3], c1 * c2 / q(24));
  }
}

TEST(Todd, FastEvaluatorAgreesWithSeriesProduct) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 50);
  for (std::size_t k = 1; k <= 16; k += 3) {
    std::vector<Rational> xi;
    while (xi.size() < k) {
      long p = num(rng);
      if (p != 0) xi.push_back(q(p, den(rng)));
    }
    EXPECT_EQ(fast(xi, k), todd_values(xi, k).values) << k;
  }
}

TEST(Todd, FastEvaluatorOnIntegers) {
  ToddEvaluator ev(4);
  std::vector<Integer> xi{Integer(1), Integer(1), Integer(1)};
  std::vector<mpq_class> out;
  ev.evaluate(std::span<const Integer>(xi), 3, out);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(Rational(out[3]), q(3, 8));
}
