#include <gtest/gtest.h>

#include "birkhoff/ehrhart.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/mgf.hpp"
#include "birkhoff/oracle.hpp"
#include "birkhoff/verify.hpp"

using namespace birkhoff;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

Polynomial face_polynomial(int n, const ZeroPattern& z, const FaceWeights& w) {
  auto terms = face_terms(n, 0, z, w);
  auto s = summarize_terms(terms);
  return ehrhart_polynomial(terms, s.max_rays, GenericVector(n)).polynomial;
}

}  // namespace

TEST(BirkhoffTerms, Counts) {
  EXPECT_EQ(birkhoff_terms(2, 0).collect().size(), 2u);
  auto three = birkhoff_terms(3, 2).collect();
  EXPECT_EQ(three.size(), 18u);
  for (const auto& t : three) {
    EXPECT_EQ(t.rays.size(), 4u);
    EXPECT_EQ(t.sign, 1);
  }
  auto four = summarize_terms(birkhoff_terms(4, 0));
  EXPECT_EQ(four.term_count, 384u);
  EXPECT_EQ(four.max_rays, 9);
}

TEST(BirkhoffTerms, TwoByTwoExactly) {
  auto terms = birkhoff_terms(2, 0).collect();
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].vertex, Permutation::identity(2));
  EXPECT_EQ(terms[0].rays, std::vector<RayMatrix>{RayMatrix(2, {-1, 1, 1, -1})});
  EXPECT_EQ(terms[1].vertex, Permutation({1, 0}));
  EXPECT_EQ(terms[1].rays, std::vector<RayMatrix>{RayMatrix(2, {1, -1, -1, 1})});
}

TEST(BirkhoffTerms, RejectsBadRoot) {
  EXPECT_THROW(birkhoff_terms(3, 3), InvalidInput);
  EXPECT_THROW(birkhoff_terms(1, 0), InvalidInput);
}

TEST(BirkhoffTerms, SlotsAreRandomAccess) {
  auto src = birkhoff_terms(4, 1);
  auto all = src.collect();
  for (std::size_t k = 0; k < all.size(); k += 37) EXPECT_EQ(*src.term_at(k), all[k]);
}

TEST(BirkhoffTerms, RaysAreLinearlyIndependent) {
  for (const auto& term : birkhoff_terms(3, 0).collect()) {
    // Top-left blocks determine the rays; they must span the 4-space.
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : term.rays) {
      std::vector<Integer> row;
      const auto block = drop_last_row_column(r);
      for (auto v : block.entries()) row.emplace_back(static_cast<long>(v));
      rows.push_back(row);
    }
    EXPECT_NE(integer_determinant(rows), 0);
  }
}

TEST(FaceTerms, EmptyPatternIsTheFullStream) {
  EXPECT_EQ(face_terms(3, 1, ZeroPattern::none(3)).collect(), birkhoff_terms(3, 1).collect());
}

TEST(FaceTerms, VerticesAvoidTheZeros) {
  auto src = face_terms(3, 0, ZeroPattern(3, {{0, 0}}));
  EXPECT_EQ(src.vertices().size(), 4u);
  for (const auto& v : src.vertices()) EXPECT_NE(v(0), 0);
}

TEST(FaceTerms, DiagonalFreeFaceIsASegment) {
  auto p = face_polynomial(3, ZeroPattern(3, {{0, 0}, {1, 1}, {2, 2}}),
                           FaceWeights::standard(ZeroPattern(3, {{0, 0}, {1, 1}, {2, 2}})));
  EXPECT_EQ(p, Polynomial({q(1), q(1)}));
}

TEST(FaceTerms, EmptyFaceThrows) {
  EXPECT_THROW(face_terms(3, 0, ZeroPattern(3, {{0, 0}, {0, 1}, {0, 2}})), EmptyFace);
  EXPECT_THROW(face_terms(3, 0, ZeroPattern(3, {{0, 0}}), FaceWeights({1, 2})), InvalidInput);
}

TEST(FaceTerms, RaysStayIndependentAndWithinBound) {
  auto src = face_terms(4, 0, ZeroPattern::cry(4));
  src.for_each([&](const ConeTerm& t) {
    EXPECT_LE(t.rays.size(), 9u);
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : t.rays) {
      std::vector<Integer> row;
      const auto block = drop_last_row_column(r);
      for (auto v : block.entries()) row.emplace_back(static_cast<long>(v));
      rows.push_back(row);
    }
    // Gram determinant of independent rows is positive.
    std::vector<std::vector<Integer>> gram(rows.size(), std::vector<Integer>(rows.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b)
        for (std::size_t k = 0; k < rows[a].size(); ++k) gram[a][b] += rows[a][k] * rows[b][k];
    EXPECT_GT(integer_determinant(gram), 0);
  });
}

TEST(FaceWeights, Validation) {
  EXPECT_THROW(FaceWeights({3}), InvalidInput);
  EXPECT_THROW(FaceWeights({2, 2}), InvalidInput);
  EXPECT_THROW(FaceWeights({0}), InvalidInput);
  EXPECT_EQ(FaceWeights::reversed(ZeroPattern(3, {{0, 0}, {1, 1}})).values(), (std::vector<std::int64_t>{2, 1}));
}

TEST(FaceWeights, LimitDoesNotDependOnWeights) {
  for (int n : {3, 4}) {
    ZeroPattern z(n, {{0, 0}});
    EXPECT_EQ(face_polynomial(n, z, FaceWeights({1})), face_polynomial(n, z, FaceWeights({64})));
  }
  for (int n : {4, 5}) {
    auto z = ZeroPattern::cry(n);
    EXPECT_EQ(face_polynomial(n, z, FaceWeights::standard(z)), face_polynomial(n, z, FaceWeights::reversed(z))) << n;
  }
  ZeroPattern mixed(4, {{0, 1}, {1, 0}, {2, 3}});
  EXPECT_EQ(face_polynomial(4, mixed, FaceWeights::standard(mixed)),
            face_polynomial(4, mixed, FaceWeights::reversed(mixed)));
}

TEST(EvaluateMgf, TwoByTwoAtAFixedPoint) {
  SquareMatrix<Rational> z(2, {q(2), q(3), q(5), q(7)});
  auto terms = birkhoff_terms(2, 0).collect();
  EXPECT_EQ(evaluate_term(terms[0], 1, z), q(-196));
  EXPECT_EQ(evaluate_term(terms[1], 1, z), q(225));
  EXPECT_EQ(evaluate_mgf(terms, 1, z), q(29));
}

TEST(EvaluateMgf, SumOverPermutationsAtTOne) {
  RandomPoints gen(99);
  auto src = birkhoff_terms(3, 0);
  int done = 0;
  while (done < 5) {
    auto z = gen.matrix(3);
    Rational expected = 0;
    for (const auto& s : all_permutations(3)) expected += z(0, s(0)) * z(1, s(1)) * z(2, s(2));
    try {
      EXPECT_EQ(evaluate_mgf(src, 1, z), expected);
      ++done;
    } catch (const PoleEncountered&) {
    }
  }
}

TEST(EvaluateMgf, AllOnesIsAPole) {
  SquareMatrix<Rational> ones(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ones(i, j) = q(1);
  EXPECT_THROW(evaluate_mgf(birkhoff_terms(3, 0), 1, ones), PoleEncountered);
}

TEST(EvaluateMgf, RootIndependence) {
  EXPECT_TRUE(check_root_independence(3).passed);
  EXPECT_TRUE(check_root_independence(4, 3).passed);
}

TEST(EvaluateMgf, BrionIdentity) {
  for (int n : {2, 3})
    for (long t : {1L, 2L}) EXPECT_TRUE(check_brion(n, t).passed) << n << " " << t;
}

TEST(EvaluateMgf, BrionIdentityOnAFace) {
  ZeroPattern z(3, {{0, 0}});
  auto src = face_terms(3, 0, z);
  for (long t : {1L, 2L}) {
    auto points = enumerate_points(3, t, z);
    std::string detail;
    EXPECT_TRUE(agree_at_random_points(
        3, 5, 21,
        [&](const SquareMatrix<Rational>& y) { return std::pair{evaluate_mgf(src, t, y), monomial_sum(points, y)}; },
        detail))
        << detail;
  }
}

TEST(TermJson, RoundTrip) {
  for (const auto& t : birkhoff_terms(3, 0).collect()) EXPECT_EQ(term_from_json(term_json(t)), t);
  auto j = term_json(birkhoff_terms(2, 0).collect()[1]);
  EXPECT_EQ(j.dump(), R"({"sign":1,"vertex":[2,1],"rays":[[1,-1,-1,1]]})");
}
