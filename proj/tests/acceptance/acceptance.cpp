// Acceptance runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moonshine/arith.hpp"
#include "moonshine/congruence.hpp"
#include "moonshine/etalab.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/module.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/rademacher.hpp"
#include "test_support.hpp"

using namespace moonshine;
using moonshine::testing::random_series;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

void exact_expansions(Outcome& o) {
  const QSeries J = j_function(3);
  o.require(J.coeff(1) == 196884 && J.coeff(2) == 21493760, "J coefficients");
  o.require(delta(3).coeff(2) == -24, "Delta q^2");
  const QSeries T7 = hauptmodul(7, 2);
  o.require(T7.coeff(-1) == 1 && T7.coeff(0) == 0 && T7.coeff(1) == 2, "T7 = q^-1 + 2q");
  o.detail << "c(1)=" << J.coeff(1) << " c(2)=" << J.coeff(2) << " T7(1)=" << T7.coeff(1);
}

void replicability(Outcome& o) {
  const QSeries J = j_function(hecke_input_precision(3, 50));
  const auto F2 = faber_polynomial(J, 2), F3 = faber_polynomial(J, 3);
  o.require(F2 == std::vector<Integer>{-393768, 0, 1}, "F2");
  o.require(F3 == std::vector<Integer>{-64481280, -590652, 0, 1}, "F3");
  for (std::int64_t m : {2, 3}) {
    const QSeries lhs = evaluate_polynomial(m == 2 ? F2 : F3, J), rhs = hecke(J, m);
    for (std::int64_t n = -m; n < 50; ++n) o.require(lhs.coeff(n) == rhs.coeff(n), "F_m(J) = J|mT(m)");
  }
  o.detail << "F2, F3 match through q^49";
}

void appendix_a(Outcome& o) {
  const auto& table = hauptmodul_congruence_table();
  o.require(table.size() == 14, "14 rows");
  int maximal = 0;
  for (const auto& row : table) {
    const auto c = verify_congruence(row.terms, row.modulus);
    o.require(c.status == CertificateStatus::pass, format_combination(row.terms));
    bool all_fail = true;
    for (const auto& [p, e] : arith::factor(row.modulus.get_si()))
      all_fail = all_fail && verify_congruence(row.terms, row.modulus * p).status == CertificateStatus::fail;
    o.require(all_fail, "maximality of " + format_combination(row.terms));
    maximal += all_fail;
  }
  o.detail << table.size() << " rows pass, " << maximal << " maximal";
}

void theorem13(Outcome& o) {
  struct Case {
    std::vector<std::int64_t> levels;
    std::int64_t p;
    int k;
    std::vector<Integer> printed;
  };
  const std::vector<Case> cases = {
      {{1, 2, 4, 8, 16}, 2, 25, {1, 7940351, 22091520, 4308992, 32768000}},
      {{1, 3, 9}, 3, 12, {1, 527795, 3645}},
      {{1, 5, 25}, 5, 6, {1, 13124, 2500}},
      {{1, 7}, 7, 4, {1, -1}},
      {{1, 13}, 13, 2, {1, -1}},
  };
  for (const auto& c : cases) {
    const std::int64_t prefix = conservative_prefix(c.levels);
    const auto r = max_prime_power_relation(c.levels, c.p, prefix);
    o.require(r.k == c.k, "k for p=" + std::to_string(c.p));
    const Integer pk = arith::ipow(c.p, static_cast<unsigned>(c.k));
    LevelCombination found, printed;
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
      found.emplace_back(c.levels[i], r.witness[i]);
      printed.emplace_back(c.levels[i], c.printed[i]);
    }
    o.require(verify_congruence(found, pk, prefix).status == CertificateStatus::pass, "found witness holds");
    // kernel mod p^k is not one-dimensional; the printed witness must lie in the same solution set
    o.require(verify_congruence(printed, pk, prefix).status == CertificateStatus::pass, "printed witness holds");
    o.detail << c.p << "^" << r.k;
    bool same = true;
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
      Integer d = r.witness[i] - c.printed[i];
      same = same && mpz_divisible_p(d.get_mpz_t(), pk.get_mpz_t());
    }
    if (!same) o.detail << " (witness " << format_combination(found) << ")";
    o.detail << "; ";
  }
}

void z7_module(Outcome& o) {
  const auto g = GroupDescriptor::from_shape(parse_shape("Z/7^4"));
  const auto R = hauptmodul_assignment(g, 10);
  const auto F = multiplicity_series(g, character_blocks(g), R);
  o.require(F.size() == 2, "two blocks");
  const QSeries f = to_integer(F[1]);
  o.require(f.coeff(1) == 82 && f.coeff(2) == 8952 && f.coeff(3) == 359975 && f.coeff(4) == 8432260,
            "(T1 - T7)/2401");
  const auto c = certify(R, g, 10);
  o.require(c.pass && c.integral && c.nonnegative, "certificate");
  o.require(c.threshold_n0 && *c.threshold_n0 <= 2, "n0 <= 2");
  const double d = proportions(c, 1)[0].get_d();
  o.require(std::floor(d * 1e8) == 42664, "delta digits");
  o.detail << "F = " << f.coeff(1) << "q + " << f.coeff(2) << "q^2 + ..., n0=" << c.threshold_n0.value_or(-1)
           << ", delta=" << d;
}

void table1(Outcome& o) {
  const auto entries = classify_abelian(default_classification_region());
  std::size_t accepted = 0;
  for (const auto& e : entries) {
    accepted += e.accepted;
    if (e.accepted != in_published_table(e.shape)) {
      o.require(false, "membership");
      o.detail << (e.accepted ? "accepted, not in table: " : "in table, rejected: ") << e.shape.to_string() << "; ";
    }
  }
  const auto z2 = classify_shape(parse_shape("Z/2^14"));
  o.require(z2.integral && !z2.nonnegative && !z2.accepted, "(Z/2)^14 rejected by nonnegativity");
  for (const char* s : {"Z/5^5", "Z/7^4", "Z/13^2"}) o.require(classify_shape(parse_shape(s)).accepted, s);
  o.detail << entries.size() << " shapes, " << accepted << " accepted";
}

void s4_depth_one(Outcome& o) {
  const std::vector<std::pair<LevelCombination, Integer>> pairs = {
      {{{1, 1}, {2, -1}}, 8}, {{{1, 1}, {3, -1}}, 3}, {{{1, 1}, {4, -1}}, 4}, {{{2, 1}, {4, -1}}, 4}};
  for (const auto& [t, m] : pairs) {
    const auto c = verify_congruence(t, m, 23);
    o.require(c.status == CertificateStatus::pass, format_combination(t));
  }
  const ClassData s4 = s4_class_data();
  for (std::size_t i = 0; i < s4.num_characters(); ++i) {
    LevelCombination t;
    for (const auto& [r, a] : character_summary(s4, i).a)
      if (a != 0) t.emplace_back(r, a);
    o.require(verify_congruence(t, 24, 23).status == CertificateStatus::pass, format_combination(t) + " mod 24");
  }
  const auto g = GroupDescriptor::from_classes(s4);
  o.require(certify(hauptmodul_assignment(g, 24), g, 24).pass, "depth-one certificate");
  o.detail << "4 pairwise and 5 character congruences pass on prefix 23";
}

void s4_theorem12(Outcome& o) {
  const auto g = GroupDescriptor::from_classes(s4_class_data());
  const auto base = theorem12_construct(g, 7, 401);
  const Integer r1 = base.by_order.at(1).series.coeff(1);
  o.require(r1 == Integer("44656994071935"), "R1 q-coefficient");
  o.detail << "R1(1)=" << r1 << "; ";
  const auto F = multiplicity_series(g, character_blocks(g), base);
  const QSeries expect = base.by_order.at(1).series - Integer(9) * bbar(2, 12, 401) -
                         Integer(8) * bbar(3, 9, 401) - Integer(6) * bbar(4, 8, 401);
  bool identity = true;
  const QSeries F1 = to_integer(F[0]);
  for (std::int64_t n = -7; n < 30; ++n) identity = identity && F1.coeff(n) == expect.coeff(n);
  o.require(identity, "F1 identity");
  const std::int64_t p = find_lift_prime(base, g, 400);
  o.detail << "lift p=" << p << "; ";
  const auto lifted = theorem12_construct(g, 7, 10, p);
  const auto c = certify(lifted, g, 10);
  o.require(c.pass, "lifted certificate");
  const auto reg = regularize(lifted, g, arith::next_prime(lifted.depth), 10);
  const auto cr = certify(reg, g, 10);
  o.require(cr.pass, "regularized certificate");
  const std::vector<Rational> regular = {Rational(1, 10), Rational(1, 10), Rational(1, 5), Rational(3, 10),
                                         Rational(3, 10)};
  o.require(cr.limit.exact && *cr.limit.exact == regular, "limiting profile");
  const double d = proportions(cr, 1)[0].get_d();
  o.require(std::floor(d * 1000) == 122, "delta digits");
  o.detail << "depth " << lifted.depth << " -> " << reg.depth << ", delta=" << d;
}

void oracle_cross_validation(Outcome& o) {
  double worst = 0;
  std::string where;
  const auto track = [&](const CoeffEstimate& e, const Integer& exact, const std::string& label) {
    const double x = exact.get_d();
    const double err = std::abs(e.value - x) / std::max(1.0, std::abs(x));
    if (err > worst) worst = err, where = label;
    o.require(err <= 1e-6, label);
  };
  for (std::int64_t m = 1; m <= 3; ++m) {
    const QSeries h = hecke(j_function(hecke_input_precision(m, 21)), m);
    const auto est = coeff_estimates_hecke_j(m, 20);
    for (std::int64_t n = 1; n <= 20; ++n)
      track(est[n - 1], h.coeff(n), "J|" + std::to_string(m) + "T n=" + std::to_string(n));
  }
  for (std::int64_t N : genus_zero_levels()) {
    const QSeries T = hauptmodul(N, 21);
    const auto est = coeff_estimates_hauptmodul(N, 20);
    for (std::int64_t n = 1; n <= 20; ++n)
      track(est[n - 1], T.coeff(n), "T" + std::to_string(N) + " n=" + std::to_string(n));
  }
  if (!o.pass) o.detail.str("");
  o.detail << genus_zero_levels().size() << " Hauptmoduln; worst relative error " << worst << " at " << where;
}

void property_suites(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> val(-3, 3), len(1, 40), bits(1, 70);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_series(rng, val(rng), len(rng), bits(rng));
    const auto b = random_series(rng, val(rng), len(rng), bits(rng));
    const auto c = random_series(rng, val(rng), len(rng), bits(rng));
    if (!agree((a * b) * c, a * (b * c)) || !agree(a * (b + c), a * b + a * c) || !agree(a * b, b * a) ||
        !agree((a + b) + c, a + (b + c))) {
      o.require(false, "ring axioms");
      break;
    }
  }
  const QSeries J = j_function(400);
  for (std::int64_t m = 1; m <= 12; ++m)
    for (std::int64_t n = m + 1; n <= 12; ++n)
      if (std::gcd(m, n) == 1) o.require(hecke_multiplicativity_check(J, m, n), "multiplicativity");
  std::size_t shapes = 0;
  for (std::int64_t n = 1; n <= 2000; ++n)
    for (const auto& g : abelian_shapes_of_order(n)) {
      ++shapes;
      if (lemma43_mismatch(g)) o.require(false, "Lemma 4.3 on " + g.to_string());
    }
  std::size_t c_checked = 0;
  for (std::int64_t n = 2; n <= 500; ++n)
    for (const auto& g : abelian_shapes_of_order(n)) {
      bool genus_zero = is_genus_zero_level(g.exponent());
      for (const auto& [v, cnt] : element_order_counts(g)) genus_zero = genus_zero && is_genus_zero_level(v);
      if (!genus_zero) continue;
      ++c_checked;
      bool c2 = true;
      for (const auto& s : c2_congruences(g))
        c2 = c2 && verify_congruence(s.terms, s.modulus).status == CertificateStatus::pass;
      bool c1 = true;
      for (const auto& p : enumerate_profiles(g)) {
        LevelCombination comb;
        for (const auto& [r, a] : profile_order_sums(g, p.n))
          if (a != 0) comb.emplace_back(r, a);
        c1 = c1 && verify_congruence(comb, g.order()).status == CertificateStatus::pass;
      }
      o.require(c1 == c2, "C1 <=> C2 on " + g.to_string());
    }
  const auto round_trip = [&](const GroupDescriptor& g, const TraceAssignment& R) {
    const auto F = multiplicity_series(g, character_blocks(g), R);
    const auto back = reconstruct_traces(*g.classes, F);
    for (const auto& cls : g.classes->classes) {
      const QSeries& s = R.keying == TraceAssignment::Keying::order ? R.by_order.at(cls.order).series
                                                                    : R.by_class.at(cls.label).series;
      o.require(agree(back.at(cls.label), s), "round trip " + g.name + " " + cls.label);
    }
  };
  const auto s4 = GroupDescriptor::from_classes(s4_class_data());
  round_trip(s4, hauptmodul_assignment(s4, 20));
  round_trip(s4, theorem12_construct(s4, 7, 30));
  round_trip(s4, tensor_assignment(s4, 15));
  for (const char* shape : {"Z/7^2", "Z/2 x Z/4", "Z/3 x Z/9"}) {
    const auto g = GroupDescriptor::from_classes(abelian_class_data(parse_shape(shape)));
    round_trip(g, hauptmodul_assignment(g, 20));
  }
  o.detail << "1000 ring triples, Lemma 4.3 on " << shapes << " shapes, C1<=>C2 on " << c_checked
           << " shapes, 6 round trips";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"exact expansions", exact_expansions},
      {"replicability", replicability},
      {"Hauptmodul congruence table", appendix_a},
      {"prime power congruence discovery", theorem13},
      {"(Z/7)^4 module", z7_module},
      {"abelian classification", table1},
      {"S4 depth one", s4_depth_one},
      {"S4 construction with lift", s4_theorem12},
      {"Rademacher cross validation", oracle_cross_validation},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
