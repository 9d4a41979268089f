#include <gtest/gtest.h>

#include <cmath>

#include "moonshine/arith.hpp"
#include "moonshine/etalab.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/module.hpp"
#include "moonshine/rademacher.hpp"
#include "test_support.hpp"

using namespace moonshine;
using moonshine::testing::reference;

TEST(Kloosterman, SmallModuli) {
  EXPECT_DOUBLE_EQ(kloosterman(5, 7, 1), 1.0);
  EXPECT_NEAR(kloosterman(-1, 1, 2), 1.0, 1e-12);
  EXPECT_NEAR(kloosterman(-1, 1, 3), 2.0, 1e-12);
}

TEST(Kloosterman, AgainstOracle) {
  for (const auto& row : reference()["kloosterman"]) {
    const auto m = row[0].get<std::int64_t>(), n = row[1].get<std::int64_t>(), c = row[2].get<std::int64_t>();
    EXPECT_NEAR(kloosterman(m, n, c), row[3].get<double>(), 1e-9) << m << " " << n << " " << c;
  }
}

TEST(Kloosterman, WeilRange) {
  for (std::int64_t c = 1; c <= 60; ++c)
    for (std::int64_t n = 1; n <= 5; ++n) EXPECT_LE(std::abs(kloosterman(-1, n, c)), arith::euler_phi(c) + 1e-9);
}

TEST(Bessel, Values) {
  EXPECT_NEAR(bessel_i1(1e-6) / 1e-6, 0.5, 1e-9);
  EXPECT_NEAR(bessel_i1(2.0), 1.5906368546, 1e-9);
  EXPECT_GT(bessel_i1(3.0), bessel_i1(2.0));
  for (const auto& [x, v] : reference()["bessel_i1"].items())
    EXPECT_NEAR(bessel_i1(std::stod(x)) / v.get<double>(), 1.0, 1e-13) << x;
}

TEST(Rademacher, HeckeJEstimates) {
  EXPECT_NEAR(coeff_estimate_hecke_j(1, 1).value / 196884.0, 1.0, 1e-6);
  EXPECT_NEAR(coeff_estimate_hecke_j(2, 1).value / 42987520.0, 1.0, 1e-6);
  EXPECT_NEAR(coeff_estimate_hecke_j(1, 2).value / 21493760.0, 1.0, 1e-6);
  const auto e = coeff_estimate_hecke_j(1, 3, 200);
  EXPECT_EQ(e.cutoff_c, 200);
  EXPECT_GE(e.tail_bound, 0.0);
}

TEST(Rademacher, HauptmodulEstimates) {
  const auto e7 = coeff_estimate_hauptmodul(7, 1);
  EXPECT_NEAR(e7.value, 2.0, 1e-2);
  EXPECT_NEAR(coeff_estimate_hauptmodul(1, 4).value, coeff_estimate_hecke_j(1, 4).value, 1e-6);
  const auto batch = coeff_estimates_hauptmodul(5, 6);
  for (std::int64_t n = 1; n <= 6; ++n) EXPECT_NEAR(batch[n - 1].value, coeff_estimate_hauptmodul(5, n).value, 1e-9);
  // Coefficients with large absolute value are reproduced closely.
  const QSeries T2 = hauptmodul(2, 21);
  EXPECT_NEAR(coeff_estimate_hauptmodul(2, 20).value / T2.coeff(20).get_d(), 1.0, 1e-4);
}

TEST(Asymptotics, BAndCe) {
  const QSeries b = bbar(2, 12, 401);
  const double exact = b.coeff(400).get_d() / std::pow(2.0, 144.0);
  EXPECT_NEAR(exact / asymptotic_b(2, 12, 400), 1.0, 0.2);
  EXPECT_LT(asymptotic_b(2, 12, 50), asymptotic_b(2, 12, 51));
  // t_m = m h / (m - 1) gives the exponent sqrt(h n) for every m
  const double r2 = std::log(asymptotic_b(2, 12, 300)) - std::log(asymptotic_b(2, 12, 400));
  const double r3 = std::log(asymptotic_b(3, 9, 300)) - std::log(asymptotic_b(3, 9, 400));
  EXPECT_NEAR(r2, r3, 1e-6 * std::abs(r2));
  const double ce = asymptotic_c_e(1, 1);
  EXPECT_GT(ce, 196884.0 / 2);
  EXPECT_LT(ce, 196884.0 * 2);
  EXPECT_LT(asymptotic_c_e(1, 5), asymptotic_c_e(2, 5));
  const QSeries J = j_function(401);
  double prev = 0;
  for (std::int64_t n : {100, 200, 400}) {
    const double dev = std::abs(J.coeff(n).get_d() / asymptotic_c_e(1, n) - 1.0);
    if (prev > 0) EXPECT_LT(dev, prev);
    prev = dev;
  }
}

TEST(Bounds, ElementaryBounds) {
  const QSeries J = j_function(51);
  const QSeries T7 = hauptmodul(7, 51);
  for (std::int64_t n = 1; n <= 50; ++n) {
    // past n = 40 the margin is below double resolution
    EXPECT_LE(j_lower_bound(n), J.coeff(n).get_d() * (1 + 1e-14)) << n;
    EXPECT_GE(cg_upper_bound(7, n), std::abs(T7.coeff(n).get_d())) << n;
  }
  EXPECT_GT(j_lower_bound(2), 0.0);
}

TEST(Bounds, Thresholds) {
  EXPECT_LE(nonneg_threshold({{1, 1}, {7, 2400}}), 2);
  EXPECT_EQ(nonneg_threshold({{1, 1}}), 1);
  EXPECT_GT(nonneg_bound({{1, 1}, {7, 2400}}, 2), 0.0);
  // monotone beyond the threshold on a sample grid
  const std::map<std::int64_t, std::int64_t> z2_13 = {{1, 1}, {2, 8191}};
  const auto n0 = nonneg_threshold(z2_13);
  for (std::int64_t n = n0; n < n0 + 1000; ++n) ASSERT_GT(nonneg_bound(z2_13, n), 0.0) << n;
}

TEST(Bounds, PublishedGroupsHaveSmallThresholds) {
  for (const auto& s : genus_zero_shapes(default_classification_region())) {
    if (!in_published_table(s)) continue;
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& [v, c] : element_order_counts(s)) counts[v] = c.get_si();
    ASSERT_LE(nonneg_threshold(counts), 100) << s.to_string();
  }
}
