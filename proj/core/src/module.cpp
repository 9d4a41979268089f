#include "moonshine/module.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "moonshine/error.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/rademacher.hpp"

namespace moonshine {

GroupDescriptor GroupDescriptor::from_shape(const AbelianShape& g) {
  g.validate();
  GroupDescriptor d;
  d.name = g.to_string();
  d.abelian = g;
  return d;
}

GroupDescriptor GroupDescriptor::from_classes(const ClassData& g) {
  validate_class_data(g);
  GroupDescriptor d;
  d.name = g.name;
  d.classes = g;
  return d;
}

Integer GroupDescriptor::order() const {
  if (abelian) return abelian->order();
  if (classes) return classes->group_order();
  throw DomainError("empty group descriptor");
}

OrderCounts GroupDescriptor::order_counts() const {
  if (abelian) return element_order_counts(*abelian);
  if (classes) return element_order_counts(*classes);
  throw DomainError("empty group descriptor");
}

std::vector<std::int64_t> GroupDescriptor::element_orders() const {
  std::vector<std::int64_t> out;
  for (const auto& [v, n] : order_counts())
    if (n != 0) out.push_back(v);
  return out;
}

namespace {

std::string profile_label(const AbelianShape& g, const Profile& n) {
  bool trivial = true;
  std::ostringstream os;
  for (const auto& [p, t] : n) {
    if (t <= g.height(p)) trivial = false;
    if (os.tellp() > 0) os << ",";
    os << "n" << p << "=";
    if (t > g.height(p))
      os << "*";
    else
      os << t;
  }
  return trivial ? "trivial" : os.str();
}

Rational ratio(const Integer& a, const Integer& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

const TraceEntry& entry_for_order(const TraceAssignment& R, std::int64_t v) {
  auto it = R.by_order.find(v);
  if (it == R.by_order.end())
    throw DomainError("assignment has no series for element order " + std::to_string(v));
  return it->second;
}

// Integer weights w with F_i = (1/|G|) sum w * entry.
std::vector<std::pair<const TraceEntry*, Integer>> entry_weights(const GroupDescriptor& g,
                                                                  const CharacterBlock& b,
                                                                  const TraceAssignment& R) {
  std::vector<std::pair<const TraceEntry*, Integer>> out;
  if (R.keying == TraceAssignment::Keying::order) {
    for (const auto& [r, a] : b.a)
      if (a != 0) out.emplace_back(&entry_for_order(R, r), a);
    return out;
  }
  if (!g.classes || !b.index) throw DomainError("class-keyed assignments need class data");
  // Classes sharing one series pool their cyclotomic weights; the pooled
  // weight must be a rational integer.
  std::vector<std::pair<const TraceEntry*, Cyclotomic>> pooled;
  for (const auto& c : g.classes->classes) {
    auto it = R.by_class.find(c.label);
    if (it == R.by_class.end()) throw DomainError("assignment has no series for class " + c.label);
    const Cyclotomic w = Integer(c.size) * c.chi.at(*b.index).conj();
    auto same = std::find_if(pooled.begin(), pooled.end(), [&](const auto& p) {
      return p.first == &it->second || (p.first->series.valuation() == it->second.series.valuation() &&
                                        p.first->series.coefficients() == it->second.series.coefficients());
    });
    if (same == pooled.end())
      pooled.emplace_back(&it->second, w);
    else
      same->second = same->second + w;
  }
  for (const auto& [e, w] : pooled) {
    if (!w.is_integer())
      throw DomainError("Galois-conjugate classes must share one trace series");
    const Integer v = w.to_integer();
    if (v != 0) out.emplace_back(e, v);
  }
  return out;
}

std::int64_t lcm_of(const std::vector<int>& v) {
  std::int64_t L = 1;
  for (int k : v) L = arith::lcm(L, k);
  return L;
}

}  // namespace

std::vector<CharacterBlock> character_blocks(const GroupDescriptor& g) {
  std::vector<CharacterBlock> out;
  if (g.abelian) {
    for (const auto& pc : enumerate_profiles(*g.abelian)) {
      CharacterBlock b;
      b.label = profile_label(*g.abelian, pc.n);
      b.count = pc.count;
      for (const auto& [r, a] : profile_order_sums(*g.abelian, pc.n))
        if (a != 0) b.a[r] = a;
      out.push_back(std::move(b));
    }
    std::stable_partition(out.begin(), out.end(), [](const CharacterBlock& b) { return b.label == "trivial"; });
    return out;
  }
  if (g.classes) {
    for (std::size_t i = 0; i < g.classes->num_characters(); ++i) {
      const CharacterSummary s = character_summary(*g.classes, i);
      CharacterBlock b;
      b.label = "chi" + std::to_string(i + 1);
      b.dim = s.dim;
      b.index = i;
      for (const auto& [r, a] : s.a)
        if (a != 0) b.a[r] = a;
      out.push_back(std::move(b));
    }
    return out;
  }
  throw DomainError("empty group descriptor");
}

double growth_rate(const SeriesTerm& s) {
  const double lift = static_cast<double>(s.lift);
  switch (s.kind) {
    case SeriesTerm::Kind::hecke_j: return static_cast<double>(s.m) * lift;
    case SeriesTerm::Kind::bbar:
      return static_cast<double>(s.t) * static_cast<double>(s.m - 1) / static_cast<double>(s.m) * lift;
    case SeriesTerm::Kind::hauptmodul: return lift / static_cast<double>(s.m * s.m);
    case SeriesTerm::Kind::tensor: {
      double best = 0;
      for (std::int64_t c : arith::divisors(lcm_of(s.cycle))) {
        double p = 0;
        for (int k : s.cycle) {
          const double g = static_cast<double>(arith::gcd(k, c));
          p += g * g / k;
        }
        best = std::max(best, p / static_cast<double>(c * c));
      }
      return best * lift;
    }
  }
  return 0;
}

const TraceEntry& TraceAssignment::identity() const {
  if (keying == Keying::order) {
    auto it = by_order.find(1);
    if (it == by_order.end()) throw DomainError("assignment has no identity entry");
    return it->second;
  }
  auto it = by_class.find("e");
  if (it == by_class.end()) throw DomainError("assignment has no identity entry");
  return it->second;
}

std::int64_t TraceAssignment::precision() const {
  std::int64_t p = INT64_MAX;
  for (const auto& [k, e] : by_order) p = std::min(p, e.series.precision());
  for (const auto& [k, e] : by_class) p = std::min(p, e.series.precision());
  return p;
}

std::vector<QSeriesRational> multiplicity_series(const GroupDescriptor& g,
                                                 const std::vector<CharacterBlock>& blocks,
                                                 const TraceAssignment& R) {
  const Integer order = g.order();
  const std::int64_t P = R.precision();
  std::int64_t v = 0;
  for (const auto& [k, e] : R.by_order) v = std::min(v, e.series.valuation());
  for (const auto& [k, e] : R.by_class) v = std::min(v, e.series.valuation());
  std::vector<QSeriesRational> out;
  for (const auto& b : blocks) {
    QSeries sum = QSeries::zero(v, P);
    for (const auto& [e, w] : entry_weights(g, b, R)) sum += w * e->series.truncate(P);
    out.push_back(divide(sum, order));
  }
  return out;
}

std::map<std::string, QSeries> reconstruct_traces(const ClassData& g, const std::vector<QSeriesRational>& F) {
  if (F.size() != g.num_characters()) throw DomainError("need one multiplicity series per character");
  std::map<std::string, QSeries> out;
  for (const auto& c : g.classes) {
    std::vector<std::pair<std::size_t, Cyclotomic>> pooled;
    for (std::size_t i = 0; i < F.size(); ++i) {
      auto same = std::find_if(pooled.begin(), pooled.end(), [&](const auto& p) {
        return F[p.first].valuation() == F[i].valuation() && F[p.first].coefficients() == F[i].coefficients();
      });
      if (same == pooled.end())
        pooled.emplace_back(i, c.chi[i]);
      else
        same->second = same->second + c.chi[i];
    }
    std::int64_t v = 0, P = INT64_MAX;
    for (const auto& f : F) v = std::min(v, f.valuation()), P = std::min(P, f.precision());
    QSeriesRational sum = QSeriesRational::zero(v, P);
    for (const auto& [i, w] : pooled) {
      if (!w.is_integer()) throw DomainError("reconstruction weight is not rational");
      sum += Rational(w.to_integer()) * F[i].truncate(P);
    }
    out.emplace(c.label.empty() ? std::to_string(out.size()) : c.label, to_integer(sum));
  }
  return out;
}

TraceAssignment hauptmodul_assignment(const GroupDescriptor& g, std::int64_t precision) {
  TraceAssignment R;
  R.mode = "hauptmodul";
  R.depth = 1;
  for (std::int64_t v : g.element_orders()) {
    if (!is_genus_zero_level(v))
      throw DomainError("element order " + std::to_string(v) + " is not a genus-zero level");
    TraceEntry e;
    e.series = hauptmodul(v, precision);
    e.level = v;
    e.terms.push_back({SeriesTerm::Kind::hauptmodul, v, 0, {}, 1, 1});
    if (v == 1)
      e.numeric = j_numeric;
    else
      e.numeric = [q = hauptmodul_quotient(v)](Complex tau) { return eval_numeric(q, tau); };
    R.by_order.emplace(v, std::move(e));
  }
  return R;
}

QSeries bbar(std::int64_t m, std::int64_t t, std::int64_t precision) {
  if (m < 2 || t < 1) throw DomainError("bbar needs m >= 2 and t >= 1");
  const std::int64_t v = t * (m - 1);
  if (precision <= v) return QSeries::zero(std::min<std::int64_t>(0, precision - 1), precision);
  const std::pair<std::int64_t, std::int64_t> ex[] = {{m, 24 * t}, {1, -24 * t}};
  const QSeries body = eta_product(ex, precision - v);
  return arith::ipow(m, static_cast<unsigned>(12 * t)) * body.shifted(v);
}

std::int64_t t_exponent(std::int64_t m, std::int64_t h) {
  if (m < 2 || (m * h) % (m - 1) != 0) throw DomainError("m h / (m - 1) is not an integer");
  return m * h / (m - 1);
}

std::int64_t h_of(const GroupDescriptor& g) {
  std::int64_t h = 1;
  for (std::int64_t v : g.element_orders())
    if (v > 1) h = arith::lcm(h, v - 1);
  return h;
}

namespace {

void check_lift_prime(const GroupDescriptor& g, std::int64_t depth, std::int64_t p) {
  if (!arith::is_prime(p)) throw DomainError("Hecke lift needs a prime, got " + std::to_string(p));
  if (arith::gcd(p, depth) != 1) throw DomainError("lift prime must be coprime to the depth");
  if (mpz_divisible_ui_p(g.order().get_mpz_t(), static_cast<unsigned long>(p)))
    throw DomainError("lift prime must be coprime to the group order");
}

}  // namespace

TraceAssignment theorem12_construct(const GroupDescriptor& g, std::int64_t d, std::int64_t precision,
                                    std::int64_t lift) {
  const std::int64_t h = h_of(g);
  if (d <= h) throw DomainError("asymptotic domination not guaranteed: need d > h = " + std::to_string(h));
  if (lift != 1) check_lift_prime(g, d, lift);
  const Integer order = g.order();
  TraceAssignment R;
  R.mode = "theorem12";
  R.depth = d * lift;
  TraceEntry e;
  e.series = hecke(j_function(hecke_input_precision(d * lift, precision)), d * lift);
  e.level = 1;
  e.terms.push_back({SeriesTerm::Kind::hecke_j, d, 0, {}, 1, lift});
  if (lift == 1 && d <= 24)
    e.numeric = [d](Complex tau) { return hecke_numeric(j_numeric, d, tau); };
  for (std::int64_t v : g.element_orders()) {
    if (v == 1) continue;
    const std::int64_t t = t_exponent(v, h);
    QSeries b = bbar(v, t, hecke_input_precision(lift, precision));
    if (lift != 1) b = hecke(b, lift);
    TraceEntry ev;
    ev.series = e.series - order * b;
    ev.level = v;
    ev.terms = e.terms;
    ev.terms.push_back({SeriesTerm::Kind::bbar, v, t, {}, -order, lift});
    if (e.numeric) {
      const double scale = order.get_d() * std::pow(static_cast<double>(v), 12.0 * static_cast<double>(t));
      const EtaQuotient q{v, {{v, 24 * t}, {1, -24 * t}}, 0};
      ev.numeric = [base = e.numeric, scale, q](Complex tau) { return base(tau) - scale * eval_numeric(q, tau); };
    }
    R.by_order.emplace(v, std::move(ev));
  }
  R.by_order.emplace(1, std::move(e));
  return R;
}

TraceAssignment hecke_lift(const TraceAssignment& R, const GroupDescriptor& g, std::int64_t p) {
  check_lift_prime(g, R.depth, p);
  TraceAssignment out = R;
  out.depth = R.depth * p;
  const auto lift_entry = [p](TraceEntry& e) {
    e.series = hecke(e.series, p);
    for (auto& t : e.terms) t.lift *= p;
    e.numeric = nullptr;
  };
  for (auto& [k, e] : out.by_order) lift_entry(e);
  for (auto& [k, e] : out.by_class) lift_entry(e);
  return out;
}

TraceAssignment regularize(const TraceAssignment& R, const GroupDescriptor& g, std::int64_t p,
                           std::int64_t precision) {
  if (!arith::is_prime(p) || p <= R.depth)
    throw DomainError("regularizing prime must exceed the current depth");
  TraceAssignment out = R;
  TraceEntry& e = out.keying == TraceAssignment::Keying::order ? out.by_order.at(1) : out.by_class.at("e");
  const Integer order = g.order();
  e.series = e.series.truncate(precision) + order * hecke(j_function(hecke_input_precision(p, precision)), p);
  e.terms.push_back({SeriesTerm::Kind::hecke_j, p, 0, {}, order, 1});
  e.numeric = nullptr;
  out.depth = p;
  out.mode = R.mode + "+regularized";
  return out;
}

std::int64_t find_lift_prime(const TraceAssignment& R, const GroupDescriptor& g, std::int64_t scan_precision) {
  if (R.precision() <= scan_precision)
    throw PrecisionExhausted("assignment must be known through the scan window", scan_precision + 1);
  const auto blocks = character_blocks(g);
  const auto F = multiplicity_series(g, blocks, R);
  Rational inf = 0;
  bool negative = false;
  for (const auto& f : F)
    for (std::int64_t n = 1; n <= scan_precision; ++n)
      if (f.coeff(n) < inf) inf = f.coeff(n), negative = true;
  std::int64_t last = 0;
  if (negative) {
    const Rational B = -inf;
    for (const auto& f : F)
      for (std::int64_t n = 1; n <= scan_precision; ++n)
        if (f.coeff(n) <= B) last = std::max(last, n);
    if (4 * last > 3 * scan_precision)
      throw PrecisionExhausted("increase scan_precision: multiplicity at most B at n = " + std::to_string(last),
                               2 * scan_precision + 1);
  }
  std::int64_t p = arith::next_prime(last);
  while (arith::gcd(p, R.depth) != 1 || mpz_divisible_ui_p(g.order().get_mpz_t(), static_cast<unsigned long>(p)))
    p = arith::next_prime(p);
  return p;
}

QSeries tensor_trace(const std::vector<int>& cycle_type, std::int64_t precision) {
  if (cycle_type.empty()) throw DomainError("cycle type must be nonempty");
  std::int64_t K = 0;
  for (int k : cycle_type) {
    if (k < 1) throw DomainError("cycle lengths must be positive");
    K += k;
  }
  const QSeries J = j_function(precision + K + 1);
  QSeries prod = rescale(J, cycle_type[0]);
  for (std::size_t i = 1; i < cycle_type.size(); ++i) prod *= rescale(J, cycle_type[i]);
  return prod.truncate(precision);
}

TraceAssignment tensor_assignment(const GroupDescriptor& g, std::int64_t precision) {
  if (!g.classes) throw DomainError("tensor construction needs class data with cycle types");
  TraceAssignment R;
  R.keying = TraceAssignment::Keying::cls;
  R.mode = "tensor";
  for (const auto& c : g.classes->classes) {
    if (c.cycle_type.empty()) throw DomainError("class " + c.label + " has no cycle type");
    TraceEntry e;
    e.series = tensor_trace(c.cycle_type, precision);
    e.level = lcm_of(c.cycle_type);
    e.terms.push_back({SeriesTerm::Kind::tensor, 1, 0, c.cycle_type, 1, 1});
    e.numeric = [cyc = c.cycle_type](Complex tau) {
      Complex p = 1;
      for (int k : cyc) p *= j_numeric(static_cast<double>(k) * tau);
      return p;
    };
    R.by_class.emplace(c.label, std::move(e));
  }
  R.depth = -R.identity().series.valuation();
  return R;
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::trivial: return "trivial";
    case ProfileKind::regular: return "regular";
    case ProfileKind::other: return "other";
  }
  return "other";
}

namespace {

struct TermKey {
  SeriesTerm::Kind kind;
  std::int64_t m, t, lift;
  std::vector<int> cycle;
  auto operator<=>(const TermKey&) const = default;
};

// Leading constant of the term's coefficients, for comparing terms of equal
// growth rate. Only needed when distinct terms tie.
std::optional<double> leading_constant(const TermKey& k) {
  const std::int64_t n = 1;
  switch (k.kind) {
    case SeriesTerm::Kind::hecke_j: return asymptotic_c_e(k.m * k.lift, n);
    case SeriesTerm::Kind::bbar:
      return static_cast<double>(k.lift) * std::pow(static_cast<double>(k.m), 12.0 * static_cast<double>(k.t)) *
             asymptotic_b(k.m, k.t, k.lift * n);
    default: return std::nullopt;
  }
}

}  // namespace

LimitProfile limit_profile(const GroupDescriptor& g, const std::vector<CharacterBlock>& blocks,
                           const TraceAssignment& R) {
  std::vector<std::map<TermKey, Integer>> sym(blocks.size());
  double top = -1;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (const auto& [e, w] : entry_weights(g, blocks[i], R))
      for (const auto& t : e->terms) sym[i][TermKey{t.kind, t.m, t.t, t.lift, t.cycle}] += w * t.coeff;
    std::erase_if(sym[i], [](const auto& kv) { return kv.second == 0; });
    for (const auto& [k, c] : sym[i]) {
      SeriesTerm s{k.kind, k.m, k.t, k.cycle, 1, k.lift};
      top = std::max(top, growth_rate(s));
    }
  }
  LimitProfile out;
  std::map<TermKey, bool> top_terms;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (const auto& [k, c] : sym[i])
      if (std::abs(growth_rate(SeriesTerm{k.kind, k.m, k.t, k.cycle, 1, k.lift}) - top) < 1e-12 * std::max(1.0, top))
        top_terms[k] = true;
  if (top_terms.empty()) return out;
  Integer total_count = 0;
  for (const auto& b : blocks) total_count += b.count;
  if (top_terms.size() == 1) {
    const TermKey k = top_terms.begin()->first;
    std::vector<Integer> L;
    Integer denom = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      auto it = sym[i].find(k);
      L.push_back(it == sym[i].end() ? Integer(0) : it->second);
      denom += blocks[i].count * L.back();
    }
    std::vector<Rational> ex;
    for (const auto& x : L) ex.push_back(denom == 0 ? Rational(0) : ratio(x, denom));
    for (const auto& x : ex) out.values.push_back(x.get_d());
    out.exact = ex;
  } else {
    std::vector<double> L(blocks.size(), 0.0);
    double denom = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (const auto& [k, c] : sym[i]) {
        if (!top_terms.count(k)) continue;
        const auto lc = leading_constant(k);
        if (!lc) return out;
        L[i] += c.get_d() * *lc;
      }
      denom += blocks[i].count.get_d() * L[i];
    }
    for (double x : L) out.values.push_back(denom == 0 ? 0.0 : x / denom);
  }
  bool trivial = true, regular = true;
  Integer dim_total = 0;
  for (const auto& b : blocks) dim_total += b.count * b.dim;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double expect_trivial = blocks[i].label == "trivial" || blocks[i].label == "chi1" ? 1.0 : 0.0;
    const double expect_regular = static_cast<double>(blocks[i].dim) / dim_total.get_d();
    if (out.exact) {
      const Rational x = (*out.exact)[i];
      if (x != Rational(static_cast<long>(expect_trivial))) trivial = false;
      if (x != ratio(blocks[i].dim, dim_total)) regular = false;
    } else {
      if (std::abs(out.values[i] - expect_trivial) > 1e-9) trivial = false;
      if (std::abs(out.values[i] - expect_regular) > 1e-9) regular = false;
    }
  }
  out.kind = trivial ? ProfileKind::trivial : regular ? ProfileKind::regular : ProfileKind::other;
  return out;
}

ModuleCertificate certify(const TraceAssignment& R_in, const GroupDescriptor& g, std::int64_t precision,
                          bool check_level) {
  ModuleCertificate c;
  c.group = g.name;
  c.mode = R_in.mode;
  c.depth = R_in.depth;
  c.group_order = g.order();
  TraceAssignment R = R_in;
  const bool haupt = R.mode == "hauptmodul";
  if (haupt) {
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& [v, n] : g.order_counts()) counts[v] = n.get_si();
    c.threshold_n0 = nonneg_threshold(counts);
    if (*c.threshold_n0 >= precision) precision = *c.threshold_n0 + 1;
    if (R.precision() < precision) R = hauptmodul_assignment(g, precision);
  }
  if (R.precision() < precision)
    throw PrecisionExhausted("assignment is known below q^" + std::to_string(R.precision()) +
                                 " but certification needs q^" + std::to_string(precision),
                             precision);
  const auto blocks = character_blocks(g);
  const auto F = multiplicity_series(g, blocks, R);
  c.integral = true;
  c.nonnegative = true;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const QSeriesRational f = F[i].truncate(precision);
    c.rows.push_back({blocks[i], f});
    for (std::int64_t n = f.valuation(); n < f.precision(); ++n) {
      const Rational x = f.coeff(n);
      if (x.get_den() != 1 && c.integral) c.integral = false, c.non_integral_at = {{i, n}};
      if (x < 0 && c.nonnegative) c.nonnegative = false, c.negative_at = {{i, n}};
    }
  }
  c.nonneg_prefix = precision - 1;
  c.integrality_regime = "exact on q^-" + std::to_string(R.depth) + " .. q^" + std::to_string(precision - 1);
  if (haupt && g.abelian && c.integral) {
    bool all = true;
    for (const auto& spec : c2_congruences(*g.abelian))
      all = all && verify_congruence(spec.terms, spec.modulus).status == CertificateStatus::pass;
    if (all)
      c.integrality_regime = "all n (Sturm certificates)";
    else
      c.integral = false;
  }
  c.nonneg_regime = haupt ? "exact prefix through analytic threshold n0, analytic bound beyond"
                          : "exact prefix; asymptotic domination beyond";
  if (check_level) {
    bool ok = true, any = false;
    const auto check = [&](const TraceEntry& e) {
      if (!e.numeric) return;
      any = true;
      ok = ok && strictly_level(e.numeric, e.level);
    };
    for (const auto& [k, e] : R.by_order) check(e);
    for (const auto& [k, e] : R.by_class) check(e);
    if (any) c.level_check = ok;
  }
  c.limit = limit_profile(g, blocks, R);
  c.pass = c.integral && c.nonnegative && c.level_check.value_or(true);
  return c;
}

std::vector<Rational> proportions(const ModuleCertificate& c, std::int64_t n) {
  Rational total = 0;
  for (const auto& row : c.rows) total += Rational(row.block.count) * row.F.coeff(n);
  std::vector<Rational> out;
  for (const auto& row : c.rows) {
    Rational x = total == 0 ? Rational(0) : Rational(row.F.coeff(n) / total);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

}  // namespace moonshine
