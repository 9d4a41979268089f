#include <gtest/gtest.h>

#include <cmath>

#include "moonshine/error.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/module.hpp"

using namespace moonshine;

namespace {

const GroupDescriptor& z7_4() {
  static const auto g = GroupDescriptor::from_shape(parse_shape("Z/7^4"));
  return g;
}

const GroupDescriptor& s4() {
  static const auto g = GroupDescriptor::from_classes(s4_class_data());
  return g;
}

std::map<std::string, QSeries> by_class_label(const ClassData& d, const TraceAssignment& R) {
  std::map<std::string, QSeries> out;
  for (const auto& c : d.classes)
    out.emplace(c.label, R.keying == TraceAssignment::Keying::order ? R.by_order.at(c.order).series
                                                                      : R.by_class.at(c.label).series);
  return out;
}

void expect_round_trip(const GroupDescriptor& g, const TraceAssignment& R) {
  ASSERT_TRUE(g.classes.has_value());
  const auto F = multiplicity_series(g, character_blocks(g), R);
  const auto back = reconstruct_traces(*g.classes, F);
  for (const auto& [label, s] : by_class_label(*g.classes, R)) EXPECT_TRUE(agree(back.at(label), s)) << label;
}

}  // namespace

TEST(Module, Z7HauptmodulMultiplicities) {
  const auto R = hauptmodul_assignment(z7_4(), 10);
  EXPECT_EQ(R.depth, 1);
  EXPECT_EQ(R.by_order.size(), 2u);
  const auto blocks = character_blocks(z7_4());
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].label, "trivial");
  EXPECT_EQ(blocks[1].count, 2400);
  const auto F = multiplicity_series(z7_4(), blocks, R);
  const QSeries f = to_integer(F[1]);
  EXPECT_EQ(f.coeff(-1), 0);
  EXPECT_EQ(f.coeff(0), 0);
  EXPECT_EQ(f.coeff(1), 82);
  EXPECT_EQ(f.coeff(2), 8952);
  EXPECT_EQ(f.coeff(3), 359975);
  EXPECT_EQ(f.coeff(4), 8432260);
  const QSeries T1 = hauptmodul(1, 10), T7 = hauptmodul(7, 10);
  EXPECT_TRUE(agree(F[0], divide(T1 + Integer(2400) * T7, 2401)));
}

TEST(Module, Z7Certificate) {
  const auto c = certify(hauptmodul_assignment(z7_4(), 10), z7_4(), 10);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(c.integral);
  EXPECT_EQ(c.integrality_regime, "all n (Sturm certificates)");
  ASSERT_TRUE(c.threshold_n0.has_value());
  EXPECT_LE(*c.threshold_n0, 2);
  EXPECT_EQ(c.level_check, std::optional<bool>(true));
  EXPECT_EQ(c.limit.kind, ProfileKind::regular);
  ASSERT_TRUE(c.limit.exact.has_value());
  EXPECT_EQ((*c.limit.exact)[1], Rational(1, 2401));
  const auto d = proportions(c, 1);
  EXPECT_EQ(d[0], Rational(7, 16407));
  EXPECT_EQ(std::floor(d[0].get_d() * 1e8), 42664);
  EXPECT_EQ(proportions(c, -1)[0], 1);
}

TEST(Module, HauptmodulAssignmentErrors) {
  EXPECT_THROW(hauptmodul_assignment(GroupDescriptor::from_shape(parse_shape("Z/11")), 5), DomainError);
  const auto R = hauptmodul_assignment(s4(), 5);
  EXPECT_EQ(R.by_order.size(), 4u);
}

TEST(Module, TrivialGroup) {
  const auto g = GroupDescriptor::from_shape(parse_shape("1"));
  const auto R = hauptmodul_assignment(g, 10);
  const auto F = multiplicity_series(g, character_blocks(g), R);
  ASSERT_EQ(F.size(), 1u);
  EXPECT_TRUE(agree(to_integer(F[0]), j_function(10)));
}

TEST(Module, BbarAndExponents) {
  EXPECT_EQ(h_of(s4()), 6);
  EXPECT_EQ(t_exponent(2, 6), 12);
  EXPECT_EQ(t_exponent(3, 6), 9);
  EXPECT_EQ(t_exponent(4, 6), 8);
  EXPECT_THROW(t_exponent(3, 1), DomainError);
  const QSeries b = bbar(2, 1, 5);
  EXPECT_EQ(b.coeff(1), 4096);
  EXPECT_EQ(b.coeff(2), 4096 * 24);
  for (std::int64_t m : {2, 3, 4}) {
    const std::int64_t t = t_exponent(m, 6);
    const QSeries bm = bbar(m, t, 6 * m + 2);
    EXPECT_EQ(bm.order(), t * (m - 1)) << m;
  }
}

TEST(Module, S4Theorem12) {
  const auto R = theorem12_construct(s4(), 7, 40);
  EXPECT_EQ(R.depth, 7);
  const QSeries& R1 = R.by_order.at(1).series;
  EXPECT_EQ(R1.coeff(-7), 1);
  EXPECT_EQ(R1.coeff(1), 7 * j_function(8).coeff(7));
  for (std::int64_t m : {2, 3, 4})
    EXPECT_TRUE(agree(R.by_order.at(m).series, R1 - Integer(24) * bbar(m, t_exponent(m, 6), 40))) << m;
  const auto F = multiplicity_series(s4(), character_blocks(s4()), R);
  const QSeries expect = R1 - Integer(9) * bbar(2, 12, 40) - Integer(8) * bbar(3, 9, 40) - Integer(6) * bbar(4, 8, 40);
  EXPECT_TRUE(agree(to_integer(F[0]), expect));
  EXPECT_TRUE(agree(to_integer(F[1]), Integer(3) * bbar(2, 12, 40) - Integer(8) * bbar(3, 9, 40) +
                                          Integer(6) * bbar(4, 8, 40)));
  EXPECT_THROW(theorem12_construct(s4(), 6, 10), DomainError);
}

TEST(Module, S4LiftAndRegularize) {
  const auto base = theorem12_construct(s4(), 7, 401);
  EXPECT_EQ(find_lift_prime(base, s4(), 400), 113);
  EXPECT_THROW(hecke_lift(base, s4(), 3), DomainError);
  EXPECT_THROW(hecke_lift(base, s4(), 7), DomainError);
  EXPECT_THROW(hecke_lift(base, s4(), 1), DomainError);
  const auto lifted = theorem12_construct(s4(), 7, 10, 113);
  EXPECT_EQ(lifted.depth, 791);
  const QSeries J = j_function(hecke_input_precision(791, 10));
  EXPECT_TRUE(agree(lifted.by_order.at(1).series, hecke(J, 791)));
  const auto c = certify(lifted, s4(), 10);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.limit.kind, ProfileKind::trivial);
  const auto reg = regularize(lifted, s4(), 797, 10);
  EXPECT_EQ(reg.depth, 797);
  const auto cr = certify(reg, s4(), 10);
  EXPECT_TRUE(cr.pass);
  EXPECT_EQ(cr.limit.kind, ProfileKind::regular);
  const std::vector<Rational> regular = {Rational(1, 10), Rational(1, 10), Rational(1, 5), Rational(3, 10),
                                         Rational(3, 10)};
  ASSERT_TRUE(cr.limit.exact.has_value());
  EXPECT_EQ(*cr.limit.exact, regular);
  EXPECT_NEAR(proportions(cr, 1)[0].get_d(), 0.1229, 1e-4);
  EXPECT_EQ(proportions(cr, -797), regular);
}

TEST(Module, LiftPreservesIntegrality) {
  const auto base = theorem12_construct(s4(), 7, hecke_input_precision(5, 12));
  const auto lifted = hecke_lift(base, s4(), 5);
  EXPECT_EQ(lifted.depth, 35);
  const auto c = certify(lifted, s4(), 12);
  EXPECT_TRUE(c.integral);
  expect_round_trip(s4(), lifted);
}

TEST(Module, FindLiftPrimeWithoutNegatives) {
  EXPECT_EQ(find_lift_prime(hauptmodul_assignment(z7_4(), 60), z7_4(), 50), 2);
}

TEST(Module, TensorTraces) {
  const QSeries J = j_function(12);
  EXPECT_TRUE(agree(tensor_trace({3}, 12), rescale(J, 3)));
  EXPECT_TRUE(agree(tensor_trace({1, 1}, 12), J * J));
  const auto R = tensor_assignment(s4(), 12);
  EXPECT_EQ(R.keying, TraceAssignment::Keying::cls);
  EXPECT_TRUE(agree(R.by_class.at("(1234)").series, rescale(J, 4)));
  EXPECT_TRUE(agree(R.by_class.at("(12)(34)").series, rescale(J, 2) * rescale(J, 2)));
  const auto c = certify(R, s4(), 12);
  EXPECT_TRUE(c.integral);
  EXPECT_TRUE(c.nonnegative);
}

TEST(ModuleProperty, OrthogonalityRoundTrip) {
  expect_round_trip(s4(), hauptmodul_assignment(s4(), 20));
  expect_round_trip(s4(), theorem12_construct(s4(), 7, 30));
  expect_round_trip(s4(), tensor_assignment(s4(), 15));
  for (const char* shape : {"Z/7^2", "Z/2 x Z/4", "Z/3 x Z/9"}) {
    const auto g = GroupDescriptor::from_classes(abelian_class_data(parse_shape(shape)));
    expect_round_trip(g, hauptmodul_assignment(g, 20));
  }
}

TEST(ModuleProperty, NontrivialAbelianBlocksHaveNoPolarPart) {
  for (const char* shape : {"Z/7^4", "Z/2^3 x Z/3", "Z/5 x Z/25", "Z/13^2"}) {
    const auto g = GroupDescriptor::from_shape(parse_shape(shape));
    const auto blocks = character_blocks(g);
    const auto F = multiplicity_series(g, blocks, hauptmodul_assignment(g, 5));
    for (std::size_t i = 1; i < F.size(); ++i) {
      EXPECT_EQ(F[i].coeff(-1), 0) << shape;
      EXPECT_EQ(F[i].coeff(0), 0) << shape;
    }
  }
}

TEST(ModuleProperty, ClassKeyedAgreesWithOrderKeyed) {
  for (const char* shape : {"Z/2 x Z/4", "Z/3^2"}) {
    const auto s = parse_shape(shape);
    const auto ga = GroupDescriptor::from_shape(s);
    const auto gc = GroupDescriptor::from_classes(abelian_class_data(s));
    const auto ca = certify(hauptmodul_assignment(ga, 20), ga, 20, false);
    const auto cc = certify(hauptmodul_assignment(gc, 20), gc, 20, false);
    EXPECT_EQ(ca.integral, cc.integral);
    EXPECT_EQ(ca.nonnegative, cc.nonnegative);
    EXPECT_EQ(proportions(ca, 3)[0], proportions(cc, 3)[0]);
  }
}

TEST(Classification, Samples) {
  const auto check = [](const char* shape, bool accepted) {
    const auto e = classify_shape(parse_shape(shape));
    EXPECT_EQ(e.accepted, accepted) << shape << ": " << e.reason;
    EXPECT_EQ(in_published_table(parse_shape(shape)), accepted) << shape;
    return e;
  };
  check("Z/7^4", true);
  check("Z/5^5", true);
  check("Z/13^2", true);
  check("Z/2^13", true);
  check("Z/7^5", false);
  check("Z/13^3", false);
  const auto e = check("Z/2^14", false);
  EXPECT_TRUE(e.integral);
  EXPECT_FALSE(e.nonnegative);
}

TEST(Classification, PublishedTableFamilies) {
  EXPECT_TRUE(in_published_table(parse_shape("Z/16^2")));
  EXPECT_TRUE(in_published_table(parse_shape("Z/2 x Z/3 x Z/9")));
  EXPECT_FALSE(in_published_table(parse_shape("Z/2 x Z/3^2 x Z/9")));
  EXPECT_TRUE(in_published_table(parse_shape("Z/3 x Z/25")) == false);
  EXPECT_TRUE(in_published_table(parse_shape("Z/5^3 x Z/25")));
  EXPECT_FALSE(in_published_table(parse_shape("Z/5 x Z/25^2")));
}
