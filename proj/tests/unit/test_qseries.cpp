#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "moonshine/error.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/series_io.hpp"
#include "test_support.hpp"

using namespace moonshine;
using moonshine::testing::big_list;
using moonshine::testing::random_series;
using moonshine::testing::reference;

TEST(QSeries, WindowInvariants) {
  QSeries a(-2, {1, 2, 3});
  EXPECT_EQ(a.valuation(), -2);
  EXPECT_EQ(a.precision(), 1);
  EXPECT_EQ(a.coeff(0), 3);
  EXPECT_EQ(a.coeff(-5), 0);
  EXPECT_THROW(a.coeff(1), PrecisionExhausted);
}

TEST(QSeries, ProductTruncationRule) {
  const QSeries a(-1, std::vector<Integer>(5, 1));
  const QSeries b(2, std::vector<Integer>(10, 1));
  const QSeries c = a * b;
  EXPECT_EQ(c.valuation(), 1);
  EXPECT_EQ(c.precision(), std::min(a.precision() + b.valuation(), b.precision() + a.valuation()));
}

TEST(QSeries, JSquaredConstantTerm) {
  const QSeries j = j_function(5);
  EXPECT_EQ((j * j).coeff(0), 393768);
}

TEST(QSeries, Identities) {
  const QSeries f = j_function(20);
  EXPECT_TRUE(agree(f + QSeries::zero(-1, 20), f));
  EXPECT_TRUE(agree(f * QSeries::one(30), f));
  const QSeries one_minus_q(0, {1, -1, 0, 0, 0, 0, 0, 0});
  const QSeries geom(0, std::vector<Integer>(8, 1));
  EXPECT_TRUE(agree(one_minus_q * geom, QSeries::one(8)));
}

TEST(QSeries, DisjointWindowTruncates) {
  const QSeries a(0, {1});
  const QSeries b(-3, {1});
  EXPECT_TRUE(agree(a - QSeries(5, {1}), a));
  EXPECT_NO_THROW(a * b);
}

TEST(QSeries, InvertDelta) {
  const QSeries d = delta(30);
  const QSeries inv = invert(d);
  EXPECT_EQ(inv.valuation(), -1);
  EXPECT_EQ(inv.coeff(-1), 1);
  EXPECT_EQ(inv.coeff(0), 24);
  EXPECT_TRUE(agree(invert(inv), d));
  EXPECT_TRUE(agree(d * inv, QSeries::one(29)));
  const QSeries geom = invert(QSeries(0, {1, -1, 0, 0, 0, 0}));
  for (std::int64_t n = 0; n < 6; ++n) EXPECT_EQ(geom.coeff(n), 1);
  EXPECT_THROW(invert(QSeries(0, {2, 1})), DomainError);
}

TEST(QSeries, Rescale) {
  const QSeries d = delta(10);
  const QSeries d2 = rescale(d, 2);
  EXPECT_EQ(d2.coeff(2), 1);
  EXPECT_EQ(d2.coeff(3), 0);
  EXPECT_EQ(d2.coeff(4), -24);
  EXPECT_EQ(d2.precision(), 2 * (d.precision() - 1) + 1);
  EXPECT_TRUE(agree(rescale(d, 1), d));
  EXPECT_TRUE(agree(rescale(rescale(d, 2), 3), rescale(d, 6)));
}

TEST(QSeries, EtaExpansion) {
  const QSeries e = eta_expansion(10);
  const std::vector<int> expect = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0};
  for (std::int64_t n = 0; n < 10; ++n) EXPECT_EQ(e.coeff(n), expect[n]) << n;
  EXPECT_TRUE(agree(e * invert(e), QSeries::one(10)));
}

TEST(QSeries, EtaMatchesPentagonalNumbers) {
  const std::int64_t N = 1001;
  std::vector<int> expect(N, 0);
  for (std::int64_t k = -40; k <= 40; ++k) {
    const std::int64_t p = k * (3 * k - 1) / 2;
    if (p >= 0 && p < N) expect[p] = (k % 2 == 0) ? 1 : -1;
  }
  const QSeries e = eta_expansion(N);
  for (std::int64_t n = 0; n < N; ++n) ASSERT_EQ(e.coeff(n), expect[n]) << n;
}

TEST(QSeries, ModularFormsAgainstOracle) {
  const auto& ref = reference();
  const auto j = big_list(ref["j"]);
  const QSeries J = j_function(static_cast<std::int64_t>(j.size()) - 1);
  for (std::size_t i = 0; i < j.size(); ++i) EXPECT_EQ(J.coeff(static_cast<std::int64_t>(i) - 1), j[i]);
  const auto d = big_list(ref["delta"]);
  const QSeries D = delta(static_cast<std::int64_t>(d.size()) + 1);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(D.coeff(static_cast<std::int64_t>(i) + 1), d[i]);
  const auto e4 = big_list(ref["e4"]);
  const auto e6 = big_list(ref["e6"]);
  const QSeries E4 = eisenstein(4, 20), E6 = eisenstein(6, 20);
  for (std::int64_t n = 0; n < 20; ++n) {
    EXPECT_EQ(E4.coeff(n), e4[n]);
    EXPECT_EQ(E6.coeff(n), e6[n]);
  }
  const auto eta = big_list(ref["eta"]);
  const QSeries ETA = eta_expansion(static_cast<std::int64_t>(eta.size()));
  for (std::size_t i = 0; i < eta.size(); ++i) EXPECT_EQ(ETA.coeff(static_cast<std::int64_t>(i)), eta[i]);
}

TEST(QSeries, PrintedCoefficients) {
  const QSeries J = j_function(3);
  EXPECT_EQ(J.coeff(-1), 1);
  EXPECT_EQ(J.coeff(0), 0);
  EXPECT_EQ(J.coeff(1), 196884);
  EXPECT_EQ(J.coeff(2), 21493760);
  EXPECT_EQ(delta(3).coeff(2), -24);
  EXPECT_EQ(eisenstein(4, 2).coeff(1), 240);
  EXPECT_EQ(eisenstein(6, 2).coeff(1), -504);
}

TEST(QSeries, EisensteinDeltaRelation) {
  for (std::int64_t P : {2, 17, 120, 400}) {
    const QSeries E4 = eisenstein(4, P), E6 = eisenstein(6, P), D = delta(P);
    EXPECT_TRUE(agree(pow(E4, 3) - pow(E6, 2), Integer(1728) * D)) << P;
    const QSeries J = j_function(P - 1);
    EXPECT_TRUE(agree(J * D, pow(E4, 3) - Integer(744) * D)) << P;
  }
}

TEST(QSeries, KroneckerMatchesSchoolbook) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, 0, 60 + trial * 7, 20 + trial * 5);
    const auto b = random_series(rng, 0, 50 + trial * 11, 3 + trial);
    const std::size_t n = static_cast<std::size_t>(std::min(a.size(), b.size()));
    EXPECT_EQ(detail::convolve_schoolbook(a.coefficients(), b.coefficients(), n),
              detail::convolve_kronecker(a.coefficients(), b.coefficients(), n));
  }
}

TEST(QSeriesProperty, RingAxioms) {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> val(-3, 3), len(1, 40), bits(1, 70);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_series(rng, val(rng), len(rng), bits(rng));
    const auto b = random_series(rng, val(rng), len(rng), bits(rng));
    const auto c = random_series(rng, val(rng), len(rng), bits(rng));
    ASSERT_TRUE(agree(a + b, b + a));
    ASSERT_TRUE(agree((a + b) + c, a + (b + c)));
    ASSERT_TRUE(agree(a * b, b * a));
    ASSERT_TRUE(agree((a * b) * c, a * (b * c)));
    ASSERT_TRUE(agree(a * (b + c), a * b + a * c));
    ASSERT_TRUE(agree(a - a, QSeries::zero(a.valuation(), a.precision())));
  }
}

TEST(QSeriesRational, ExactDivision) {
  const QSeries a(0, {6, 12, -18});
  QSeries out = QSeries::zero(0, 1);
  ASSERT_TRUE(divide_exact(a, 6, out));
  EXPECT_EQ(out.coeff(2), -3);
  EXPECT_FALSE(divide_exact(a, 4, out));
  const QSeriesRational r = divide(a, 4);
  EXPECT_FALSE(is_integral(r));
  EXPECT_EQ(r.coeff(0), Rational(3, 2));
  EXPECT_THROW(to_integer(r), DomainError);
  EXPECT_TRUE(agree(to_integer(divide(a, 3)), QSeries(0, {2, 4, -6})));
}

TEST(SeriesIo, RoundTrip) {
  const QSeries J = j_function(40);
  const QSeries back = parse_series(format_series(J));
  EXPECT_EQ(back.valuation(), J.valuation());
  EXPECT_EQ(back.precision(), J.precision());
  EXPECT_TRUE(agree(back, J));
  EXPECT_EQ(pretty(QSeries(-1, {1, 0, 82, 8952}), 3), "q^-1 + 82q + 8952q^2 + O(q^3)");
  EXPECT_THROW(parse_series("not a series"), ParseError);
}
