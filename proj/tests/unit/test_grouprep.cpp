#include <gtest/gtest.h>

#include "moonshine/arith.hpp"
#include "moonshine/cyclotomic.hpp"
#include "moonshine/error.hpp"
#include "moonshine/grouprep.hpp"

using namespace moonshine;

TEST(Cyclotomic, Arithmetic) {
  const Cyclotomic z3 = Cyclotomic::root(3, 1);
  const Cyclotomic s = Cyclotomic::integer(1) + z3 + z3 * z3;
  EXPECT_TRUE(s.is_integer());
  EXPECT_EQ(s.to_integer(), 0);
  const Cyclotomic i = Cyclotomic::root(4, 1);
  EXPECT_EQ((i * i).to_integer(), -1);
  EXPECT_EQ((i * i.conj()).to_integer(), 1);
  EXPECT_FALSE(i.is_integer());
  EXPECT_THROW(i.to_integer(), DomainError);
  const Cyclotomic mixed = z3 * i;
  EXPECT_EQ(mixed.conductor(), 12);
  EXPECT_NEAR(std::abs(mixed.numeric()), 1.0, 1e-12);
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<Integer>{1, -1, 1}));
}

TEST(AbelianShape, ParseAndFormat) {
  const auto g = parse_shape("Z/2 x Z/4^2");
  EXPECT_EQ(g.order(), 32);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_EQ(g.height(2), 2);
  EXPECT_EQ(g.to_string(), "Z/2 x Z/4^2");
  EXPECT_EQ(parse_shape(g.to_string()), g);
  EXPECT_EQ(parse_shape("1").order(), 1);
  EXPECT_EQ(parse_shape("Z/7^4").cyclic_factors(), (std::vector<std::int64_t>{7, 7, 7, 7}));
  EXPECT_THROW(parse_shape("Z/6"), ParseError);
  EXPECT_THROW(parse_shape("Q/2"), ParseError);
}

TEST(AbelianShape, OrderCounts) {
  const auto c = element_order_counts(parse_shape("Z/7^4"));
  EXPECT_EQ(c.at(1), 1);
  EXPECT_EQ(c.at(7), 2400);
  const auto d = element_order_counts(parse_shape("Z/2 x Z/4"));
  EXPECT_EQ(d.at(2), 3);
  EXPECT_EQ(d.at(4), 4);
  static const std::size_t partitions[] = {1, 1, 2, 3, 5, 7, 11};
  for (std::int64_t n = 1; n <= 64; ++n) {
    std::size_t k = 1;
    for (const auto& [p, e] : arith::factor(n)) k *= partitions[e];
    EXPECT_EQ(abelian_shapes_of_order(n).size(), k) << n;
  }
}

TEST(Lemma43, ProfilesOnCyclicGroup) {
  const auto profiles = enumerate_profiles(parse_shape("Z/4"));
  Integer total = 0;
  for (const auto& p : profiles) total += p.count;
  EXPECT_EQ(total, 4);
  EXPECT_EQ(profiles.size(), 3u);
}

TEST(Lemma43, FormulaMatchesBruteForceSmall) {
  for (std::int64_t n = 1; n <= 200; ++n)
    for (const auto& g : abelian_shapes_of_order(n)) {
      const auto bad = lemma43_mismatch(g);
      ASSERT_FALSE(bad.has_value()) << g.to_string() << " character " << *bad;
    }
}

TEST(Lemma43, TorsionDepthOnSquareShape) {
  // (Z/p^2)^2: a character of order p^2 still sees p-torsion when it is
  // nontrivial there; order sums must match the brute force.
  for (const char* s : {"Z/4^2", "Z/9^2", "Z/2 x Z/8", "Z/3 x Z/9 x Z/27"}) {
    const auto g = parse_shape(s);
    EXPECT_FALSE(lemma43_mismatch(g).has_value()) << s;
  }
}

TEST(ClassData, S4Summaries) {
  const ClassData s4 = s4_class_data();
  EXPECT_TRUE(validate_class_data(s4));
  EXPECT_EQ(s4.group_order(), 24);
  EXPECT_EQ(s4.dims, (std::vector<std::int64_t>{1, 1, 2, 3, 3}));
  const std::vector<std::map<std::int64_t, Integer>> expect = {
      {{1, 1}, {2, 9}, {3, 8}, {4, 6}},  {{1, 1}, {2, -3}, {3, 8}, {4, -6}}, {{1, 2}, {2, 6}, {3, -8}, {4, 0}},
      {{1, 3}, {2, 3}, {3, 0}, {4, -6}}, {{1, 3}, {2, -9}, {3, 0}, {4, 6}},
  };
  for (std::size_t i = 0; i < 5; ++i) {
    auto a = character_summary(s4, i).a;
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    auto e = expect[i];
    std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(a, e) << i;
  }
  const auto c = element_order_counts(s4);
  EXPECT_EQ(c.at(2), 9);
  EXPECT_EQ(c.at(3), 8);
  EXPECT_EQ(c.at(4), 6);
}

TEST(ClassData, Validation) {
  ClassData bad = s4_class_data();
  bad.classes[1].chi[1] = Cyclotomic::integer(1);
  EXPECT_THROW(validate_class_data(bad), DomainError);
  for (const char* s : {"Z/3", "Z/2 x Z/4", "Z/7^2", "Z/2^2 x Z/9"}) EXPECT_TRUE(validate_class_data(abelian_class_data(parse_shape(s)))) << s;
}
