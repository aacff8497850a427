#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <set>

#include "netgames/error.hpp"
#include "netgames/simnet.hpp"

namespace netgames {
namespace {

using Vec = std::vector<double>;

TEST(Indices, WorkedPair) {
  const Vec v{1.5, -2.1};
  const Vec r{3.5, -1.6};
  // Common mass 1.5 + 1.6, union 3.5 + 2.1, smaller total 3.6.
  EXPECT_NEAR(jaccard_signed(v, r), 31.0 / 56.0, 1e-12);
  EXPECT_NEAR(interiority_signed(v, r), 31.0 / 36.0, 1e-12);
  EXPECT_NEAR(coincidence(v, r, 1.0), (31.0 / 56.0) * (31.0 / 36.0), 1e-12);
  EXPECT_NEAR(coincidence(v, r, 2.0), std::pow(31.0 / 56.0, 2) * (31.0 / 36.0), 1e-12);
}

TEST(Indices, OppositeSignsShareNothing) {
  const Vec v{1.0, -1.0};
  const Vec r{-1.0, 1.0};
  EXPECT_EQ(jaccard_signed(v, r), 0.0);
  EXPECT_EQ(interiority_signed(v, r), 0.0);
}

TEST(Indices, Regularization) {
  const Vec v{1.0, 0.0};
  const Vec r{0.0, 1.0};
  // (0 + 1) / (2 + 1)
  EXPECT_NEAR(coincidence(v, r, 1.0, 1.0), 0.0, 1e-15);  // interiority is 0
  const Vec a{2.0, 1.0};
  const Vec b{1.0, 1.0};
  EXPECT_NEAR(coincidence(a, b, 1.0, 1.0), (2.0 + 1.0) / (3.0 + 1.0) * 1.0, 1e-12);
}

TEST(Indices, Errors) {
  const Vec zero{0.0, 0.0};
  const Vec one{1.0, 0.0};
  EXPECT_THROW(jaccard_signed(zero, zero), UndefinedSimilarity);
  EXPECT_THROW(interiority_signed(zero, one), UndefinedSimilarity);
  EXPECT_NO_THROW(jaccard_signed(zero, one));
  const Vec three{1.0, 2.0, 3.0};
  EXPECT_THROW(jaccard_signed(one, three), InvalidInput);
  EXPECT_THROW(coincidence(one, one, 0.0), InvalidParameter);
  EXPECT_THROW(coincidence(one, one, 1.0, -1.0), InvalidParameter);
}

// Integer vectors as explicit multisets: entry i contributes |x| copies of
// the token (i, sign(x)).
std::multiset<std::pair<int, int>> expand(const std::vector<int>& v) {
  std::multiset<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    for (int k = 0; k < std::abs(v[i]); ++k) out.insert({i, v[i] > 0 ? 1 : -1});
  }
  return out;
}

TEST(Indices, MatchMultisetExpansion) {
  std::mt19937 gen(42);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = len(gen);
    std::vector<int> a(n);
    std::vector<int> b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = entry(gen);
      b[i] = entry(gen);
    }
    const auto ma = expand(a);
    const auto mb = expand(b);
    if (ma.empty() || mb.empty()) continue;
    std::vector<std::pair<int, int>> common;
    std::vector<std::pair<int, int>> all;
    std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(common));
    std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(all));
    const Vec va(a.begin(), a.end());
    const Vec vb(b.begin(), b.end());
    const double nc = static_cast<double>(common.size());
    EXPECT_NEAR(jaccard_signed(va, vb), nc / static_cast<double>(all.size()), 1e-12);
    EXPECT_NEAR(interiority_signed(va, vb),
                nc / static_cast<double>(std::min(ma.size(), mb.size())), 1e-12);
  }
}

TEST(Indices, RandomPairProperties) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> len(1, 8);
  std::normal_distribution<double> entry(0.0, 2.0);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 10'000; ++trial) {
    const int n = len(gen);
    Vec v(n);
    Vec r(n);
    for (int i = 0; i < n; ++i) {
      v[i] = entry(gen);
      r[i] = entry(gen);
    }
    const double j = jaccard_signed(v, r);
    const double in = interiority_signed(v, r);
    ASSERT_EQ(j, jaccard_signed(r, v));
    ASSERT_EQ(in, interiority_signed(r, v));
    ASSERT_GE(j, 0.0);
    ASSERT_LE(j, 1.0);
    ASSERT_GE(in, 0.0);
    ASSERT_LE(in, 1.0 + 1e-15);
    ASSERT_LE(j, in + 1e-15);

    const double c = scale(gen);
    Vec cv = v;
    Vec cr = r;
    for (auto& x : cv) x *= c;
    for (auto& x : cr) x *= c;
    ASSERT_NEAR(jaccard_signed(cv, cr), j, 1e-12);
    ASSERT_NEAR(interiority_signed(cv, cr), in, 1e-12);

    ASSERT_NEAR(jaccard_signed(v, v), 1.0, 1e-15);
    ASSERT_NEAR(coincidence(v, v, 3.0), 1.0, 1e-15);

    double prev = coincidence(v, r, 0.5);
    ASSERT_EQ(prev, coincidence(r, v, 0.5));
    for (double d : {1.0, 1.5, 2.0, 4.0, 8.0}) {
      const double cur = coincidence(v, r, d);
      ASSERT_GE(cur, 0.0);
      ASSERT_LE(cur, 1.0);
      ASSERT_LE(cur, prev + 1e-15);
      prev = cur;
    }
  }
}

FeatureMatrix sample_matrix() {
  FeatureMatrix m({"a", "b", "c", "d"}, 3);
  const double values[4][3] = {{1, 10, -3}, {2, 20, 5}, {4, 25, 0}, {9, 5, 1}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 3; ++c) m.at(r, c) = values[r][c];
  }
  return m;
}

TEST(Normalize, StandardizeHasZeroMeanUnitStd) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> entry(50.0, 30.0);
  for (int trial = 0; trial < 50; ++trial) {
    FeatureMatrix m({"a", "b", "c", "d", "e", "f", "g"}, 4);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = entry(gen);
    }
    const auto z = standardize(m);
    EXPECT_EQ(z.normalization(), Normalization::Standardized);
    for (std::size_t c = 0; c < z.cols(); ++c) {
      const auto col = z.column(c);
      double mean = 0.0;
      for (double x : col) mean += x;
      mean /= static_cast<double>(col.size());
      double ss = 0.0;
      for (double x : col) ss += (x - mean) * (x - mean);
      EXPECT_NEAR(mean, 0.0, 1e-9);
      EXPECT_NEAR(std::sqrt(ss / static_cast<double>(col.size())), 1.0, 1e-9);
    }
  }
}

TEST(Normalize, Variants) {
  const auto m = sample_matrix();
  const auto z = standardize(m);
  const auto means = m.column_means();
  EXPECT_DOUBLE_EQ(means[0], 4.0);
  const auto rc = normalize(m, Normalization::StandardizedRecentered);
  const auto sh = normalize(m, Normalization::Shifted, 1.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      EXPECT_DOUBLE_EQ(rc.at(r, c), z.at(r, c) + means[c]);
      EXPECT_DOUBLE_EQ(sh.at(r, c), z.at(r, c) + 1.0);
    }
  }
  EXPECT_EQ(normalize(m, Normalization::Raw).at(3, 1), 5.0);
  EXPECT_EQ(parse_normalization(to_string(Normalization::Shifted)), Normalization::Shifted);
  EXPECT_THROW(parse_normalization("minmax"), InvalidParameter);
}

TEST(Normalize, ConstantColumnsAreFlagged) {
  FeatureMatrix m({"a", "b", "c"}, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    m.at(r, 0) = static_cast<double>(r);
    m.at(r, 1) = 7.0;
    m.at(r, 2) = 0.0;
  }
  EXPECT_EQ(constant_columns(m), (std::vector<std::size_t>{1, 2}));
  EXPECT_THROW(standardize(m), InvalidInput);
  const std::vector<std::size_t> drop{2, 1};
  const auto kept = m.drop_columns(drop);
  EXPECT_EQ(kept.cols(), 1U);
  EXPECT_NO_THROW(standardize(kept));
}

TEST(Matrix, SelectRows) {
  const auto m = sample_matrix();
  const std::vector<std::size_t> rows{3, 0};
  const auto s = m.select_rows(rows);
  EXPECT_EQ(s.labels(), (std::vector<std::string>{"d", "a"}));
  EXPECT_EQ(s.at(0, 0), 9.0);
  const std::vector<std::size_t> bad{4};
  EXPECT_THROW(m.select_rows(bad), InvalidParameter);
}

TEST(Network, WeightsAreCoincidences) {
  const auto z = standardize(sample_matrix());
  const auto net = build_similarity_network(z, 1.0);
  ASSERT_EQ(net.size(), 4U);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(net.weight(i, i), 0.0);
    EXPECT_FALSE(net.has_edge(i, i));
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_EQ(net.weight(i, j), net.weight(j, i));
      EXPECT_NEAR(net.weight(i, j), coincidence(z.row(i), z.row(j), 1.0), 1e-15);
      EXPECT_TRUE(net.has_edge(i, j));
    }
  }
}

TEST(Network, ThresholdPrunes) {
  const auto z = standardize(sample_matrix());
  const auto full = build_similarity_network(z, 1.0);
  const auto none = build_similarity_network(z, 1.0, 0.0, 1.0);
  const auto half = build_similarity_network(z, 1.0, 0.0, 0.1);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      EXPECT_FALSE(none.has_edge(i, j));
      EXPECT_EQ(half.has_edge(i, j), full.weight(i, j) >= 0.1);
    }
  }
}

TEST(Network, TwoRowsAndErrors) {
  FeatureMatrix m({"x", "y"}, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 2;
  const auto net = build_similarity_network(m, 1.0);
  EXPECT_NEAR(net.weight(0, 1), (3.0 / 4.0) * 1.0, 1e-12);
  EXPECT_THROW(build_similarity_network(m, 0.0), InvalidParameter);
  EXPECT_THROW(build_similarity_network(m, 1.0, -0.5), InvalidParameter);
  EXPECT_THROW(build_similarity_network(m, 1.0, 0.0, 1.5), InvalidParameter);
  FeatureMatrix single({"x"}, 2);
  EXPECT_THROW(build_similarity_network(single, 1.0), InvalidParameter);
  FeatureMatrix zeros({"p", "q"}, 2);
  EXPECT_THROW(build_similarity_network(zeros, 1.0), UndefinedSimilarity);
}

}  // namespace
}  // namespace netgames
