#include <gtest/gtest.h>

#include <filesystem>

#include "moonshine/error.hpp"
#include "moonshine/io.hpp"
#include "test_support.hpp"

using namespace moonshine;
using moonshine::testing::data_path;

namespace fs = std::filesystem;

TEST(GroupJson, ShippedFiles) {
  const auto z7 = load_group(data_path("groups/z7_4.json"));
  ASSERT_TRUE(z7.abelian.has_value());
  EXPECT_EQ(z7.order(), 2401);
  const auto s4 = load_group(data_path("groups/s4.json"));
  ASSERT_TRUE(s4.classes.has_value());
  EXPECT_EQ(s4.order(), 24);
  EXPECT_EQ(s4.classes->dims, (std::vector<std::int64_t>{1, 1, 2, 3, 3}));
  const auto z = load_group(data_path("groups/z2_2_z9.json"));
  EXPECT_EQ(z.abelian->to_string(), parse_shape("Z/2^2 x Z/9").to_string());
}

TEST(GroupJson, RoundTrip) {
  for (const auto& g : {GroupDescriptor::from_shape(parse_shape("Z/3 x Z/9")),
                        GroupDescriptor::from_classes(s4_class_data()),
                        GroupDescriptor::from_classes(abelian_class_data(parse_shape("Z/5")))}) {
    const auto back = parse_group(group_to_json(g));
    EXPECT_EQ(back.order(), g.order());
    EXPECT_EQ(back.order_counts(), g.order_counts());
    EXPECT_EQ(character_blocks(back).size(), character_blocks(g).size());
    if (g.classes) {
      ASSERT_TRUE(back.classes.has_value());
      for (std::size_t i = 0; i < g.classes->classes.size(); ++i)
        for (std::size_t k = 0; k < g.classes->dims.size(); ++k)
          EXPECT_EQ(back.classes->classes[i].chi[k], g.classes->classes[i].chi[k]);
    }
  }
}

TEST(GroupJson, Rejects) {
  EXPECT_THROW(parse_group("{"), ParseError);
  EXPECT_THROW(parse_group(R"({"name": "x"})"), ParseError);
  EXPECT_THROW(parse_group(R"({"name": "x", "abelian": "Z/6"})"), ParseError);
}

TEST(EtaJson, RoundTrip) {
  const EtaQuotient e{6, {{1, 5}, {2, -1}, {3, 1}, {6, -5}}, 0};
  EXPECT_EQ(parse_eta_quotient(eta_quotient_to_json(e)), e);
}

TEST(CongruenceJson, ParseSingleAndList) {
  const auto one = parse_congruence_specs(R"({"terms": [[1, 1], [7, -1]], "modulus": 2401})");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].spec.modulus, 2401);
  EXPECT_FALSE(one[0].prefix.has_value());
  const auto two = parse_congruence_specs(
      R"([{"terms": [[1, 1], [2, -1]], "modulus": "4096", "prefix": 10}, {"terms": [[1, 1], [13, -1]], "modulus": 169}])");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].spec.modulus, 4096);
  EXPECT_EQ(two[0].prefix, std::optional<std::int64_t>(10));
  const auto cert = verify_congruence(two[1].spec.terms, two[1].spec.modulus);
  const auto j = congruence_certificates_to_json({cert});
  EXPECT_NE(j.find("pass"), std::string::npos);
}

TEST(CertificateJson, RoundTrip) {
  const auto g = GroupDescriptor::from_shape(parse_shape("Z/7^4"));
  const auto c = certify(hauptmodul_assignment(g, 10), g, 10);
  const auto back = parse_module_certificate(module_certificate_to_json(c, 10));
  EXPECT_EQ(back.pass, c.pass);
  EXPECT_EQ(back.integral, c.integral);
  EXPECT_EQ(back.limit.kind, c.limit.kind);
  for (std::int64_t n = 1; n < 10; ++n) EXPECT_EQ(proportions(back, n), proportions(c, n)) << n;
  EXPECT_EQ(proportions(back, -1), proportions(c, -1));
}

TEST(AssignmentFiles, RoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "moonshine_io_test";
  fs::remove_all(dir);
  const auto g = GroupDescriptor::from_classes(s4_class_data());
  const auto R = theorem12_construct(g, 7, 20);
  save_assignment(dir, g, R);
  const auto [g2, R2] = load_assignment(dir);
  EXPECT_EQ(g2.order(), 24);
  EXPECT_EQ(R2.depth, R.depth);
  ASSERT_EQ(R2.by_order.size(), R.by_order.size());
  for (const auto& [m, e] : R.by_order) EXPECT_TRUE(agree(R2.by_order.at(m).series, e.series)) << m;
  const auto c = certify(R2, g2, 20);
  EXPECT_EQ(c.integral, certify(R, g, 20, false).integral);
  EXPECT_FALSE(c.level_check.has_value());
  fs::remove_all(dir);
  EXPECT_THROW(load_assignment(dir), ParseError);
}
