#include "moonshine/etalab.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <sstream>

namespace moonshine {

std::int64_t eta_valuation(const EtaQuotient& e) {
  std::int64_t s = 0;
  for (const auto& [d, r] : e.terms) s += d * r;
  if (s % 24 != 0) throw DomainError("non-integral eta valuation");
  return s / 24;
}

QSeries expand(const EtaQuotient& e, std::int64_t precision) {
  const std::int64_t v = eta_valuation(e);
  std::vector<std::pair<std::int64_t, std::int64_t>> t(e.terms.begin(), e.terms.end());
  if (precision <= v) throw PrecisionExhausted("precision exhausted", v + 1);
  QSeries f = eta_product(t, precision - v).shifted(v);
  if (e.shift != 0) f = f + QSeries::monomial(0, Integer(static_cast<long>(e.shift)), std::max<std::int64_t>(precision, 1));
  return f;
}

std::string to_string(const EtaQuotient& e) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, r] : e.terms) {
    if (r == 0) continue;
    if (!first) os << ' ';
    first = false;
    os << "eta(" << d << "t)^" << r;
  }
  if (e.shift > 0) os << " + " << e.shift;
  if (e.shift < 0) os << " - " << -e.shift;
  return os.str();
}

std::vector<Cusp> cusps(std::int64_t N) {
  if (N < 1) throw DomainError("level must be positive");
  std::vector<Cusp> out;
  for (std::int64_t b : arith::divisors(N)) {
    const std::int64_t g = arith::gcd(b, N / b);
    for (std::int64_t a0 = 0; a0 < g; ++a0) {
      if (arith::gcd(a0, g) != 1) continue;
      std::int64_t a = a0;
      while (arith::gcd(a, b) != 1) a += g;
      out.push_back({a, b, N});
    }
  }
  return out;
}

bool cusp_equivalent(const Cusp& x, const Cusp& y) {
  if (x.N != y.N || x.b != y.b) return false;
  const std::int64_t g = arith::gcd(x.b, x.N / x.b);
  return ((x.a - y.a) % g + g) % g == 0;
}

std::int64_t cusp_width(const Cusp& c) { return c.N / arith::gcd(c.b * c.b, c.N); }

Rational cusp_order(const EtaQuotient& e, const Cusp& c) {
  if (c.N % c.b != 0) throw DomainError("cusp denominator does not divide the level");
  Rational s = 0;
  for (const auto& [d, r] : e.terms) {
    if (c.N % d != 0) throw DomainError("cusp is not on the level of the eta quotient");
    const std::int64_t g = arith::gcd(c.b, d);
    s += Rational(g * g * r, arith::gcd(c.b, c.N / c.b) * c.b * d);
  }
  s *= Rational(c.N, 24);
  s.canonicalize();
  return s;
}

Rational cusp_q_order(const EtaQuotient& e, const Cusp& c) {
  Rational r = cusp_order(e, c) / cusp_width(c);
  r.canonicalize();
  return r;
}

Rational valence_sum(const EtaQuotient& e) {
  Rational s = 0;
  for (const auto& c : cusps(e.level)) s += cusp_q_order(e, c) * cusp_width(c);
  return s;
}

const std::vector<std::int64_t>& genus_zero_levels() {
  static const std::vector<std::int64_t> levels{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25};
  return levels;
}

bool is_genus_zero_level(std::int64_t N) {
  const auto& l = genus_zero_levels();
  return std::find(l.begin(), l.end(), N) != l.end();
}

namespace {

[[noreturn]] void not_genus_zero(std::int64_t N) {
  std::string msg = "level " + std::to_string(N) + " is not genus zero; valid levels:";
  for (auto l : genus_zero_levels()) msg += " " + std::to_string(l);
  throw DomainError(msg);
}

EtaQuotient quotient(std::int64_t N, std::initializer_list<std::pair<const std::int64_t, std::int64_t>> t,
                     std::int64_t shift) {
  return EtaQuotient{N, std::map<std::int64_t, std::int64_t>(t), shift};
}

// Regenerate with `moonshine hauptmodul --derive`.
const std::map<std::int64_t, EtaQuotient>& builtin_table() {
  static const std::map<std::int64_t, EtaQuotient> table = [] {
    std::map<std::int64_t, EtaQuotient> t;
    t[2] = quotient(2, {{1, 24}, {2, -24}}, 24);
    t[3] = quotient(3, {{1, 12}, {3, -12}}, 12);
    t[4] = quotient(4, {{1, 8}, {4, -8}}, 8);
    t[5] = quotient(5, {{1, 6}, {5, -6}}, 6);
    t[6] = quotient(6, {{1, 5}, {2, -1}, {3, 1}, {6, -5}}, 5);
    t[7] = quotient(7, {{1, 4}, {7, -4}}, 4);
    t[8] = quotient(8, {{1, 4}, {2, -2}, {4, 2}, {8, -4}}, 4);
    t[9] = quotient(9, {{1, 3}, {9, -3}}, 3);
    t[10] = quotient(10, {{1, 3}, {2, -1}, {5, 1}, {10, -3}}, 3);
    t[12] = quotient(12, {{1, -1}, {3, 3}, {4, 1}, {12, -3}}, -1);
    t[13] = quotient(13, {{1, 2}, {13, -2}}, 2);
    t[16] = quotient(16, {{1, 2}, {2, -1}, {8, 1}, {16, -2}}, 2);
    t[18] = quotient(18, {{1, -1}, {2, 2}, {9, 1}, {18, -2}}, -1);
    t[25] = quotient(25, {{1, 1}, {25, -1}}, 1);
    return t;
  }();
  return table;
}

}  // namespace

const EtaQuotient& hauptmodul_quotient(std::int64_t N) {
  if (!is_genus_zero_level(N)) not_genus_zero(N);
  if (N == 1) throw DomainError("T_1 = J is not an eta quotient");
  return builtin_table().at(N);
}

QSeries hauptmodul(std::int64_t N, std::int64_t precision) {
  if (!is_genus_zero_level(N)) not_genus_zero(N);
  if (N == 1) return j_function(precision);
  static std::mutex mu;
  static std::map<std::int64_t, QSeries> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(N);
  if (it == cache.end() || it->second.precision() < precision)
    it = cache.insert_or_assign(N, expand(hauptmodul_quotient(N), std::max<std::int64_t>(precision, 64))).first;
  return it->second.truncate(precision);
}

std::vector<EtaQuotient> hauptmodul_candidates(std::int64_t N) {
  if (!is_genus_zero_level(N)) not_genus_zero(N);
  if (N == 1) throw DomainError("level 1 has no eta-quotient Hauptmodul");
  const std::vector<std::int64_t> D = arith::divisors(N);
  const std::size_t k = D.size();
  // r_1 and r_N are solved from sum r = 0 and sum d r = -24.
  std::vector<std::int64_t> free(D.begin() + 1, D.end() - 1);
  std::vector<Cusp> finite_cusps;
  for (std::int64_t b : D)
    if (b != N) finite_cusps.push_back({1, b, N});

  struct Ranked {
    std::int64_t weight;
    std::vector<std::int64_t> r;
  };
  std::vector<Ranked> found;
  std::vector<std::int64_t> r(k, 0);
  std::vector<std::int64_t> idx(free.size(), -24);
  for (;;) {
    std::int64_t s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < free.size(); ++i) {
      r[i + 1] = idx[i];
      s0 += idx[i];
      s1 += free[i] * idx[i];
    }
    // r1 + rN = -s0, r1 + N rN = -24 - s1
    const std::int64_t num = -24 - s1 + s0;
    if (num % (N - 1) == 0) {
      const std::int64_t rN = num / (N - 1);
      const std::int64_t r1 = -s0 - rN;
      if (std::llabs(rN) <= 24 && std::llabs(r1) <= 24) {
        r[0] = r1;
        r[k - 1] = rN;
        std::int64_t m24 = 0;
        for (std::size_t i = 0; i < k; ++i) m24 += (N / D[i]) * r[i];
        bool ok = m24 % 24 == 0;
        for (std::size_t c = 0; ok && c < finite_cusps.size(); ++c) {
          const std::int64_t b = finite_cusps[c].b;
          // 24 gcd(b, N/b) b / N times the local order, an integer numerator
          std::int64_t num_ord = 0;
          for (std::size_t i = 0; i < k; ++i) {
            const std::int64_t g = arith::gcd(b, D[i]);
            num_ord += g * g * r[i] * (N / D[i]);
          }
          // order = N/(24 gcd(b,N/b) b N) * num_ord
          const std::int64_t den = 24 * arith::gcd(b, N / b) * b;
          if (num_ord < 0 || num_ord % den != 0) ok = false;
        }
        if (ok) {
          std::int64_t w = 0;
          for (auto x : r) w += std::llabs(x);
          found.push_back({w, r});
        }
      }
    }
    std::size_t pos = 0;
    while (pos < idx.size() && idx[pos] == 24) idx[pos++] = -24;
    if (pos == idx.size()) break;
    ++idx[pos];
  }
  std::sort(found.begin(), found.end(), [](const Ranked& x, const Ranked& y) {
    return x.weight != y.weight ? x.weight < y.weight : x.r < y.r;
  });
  std::vector<EtaQuotient> out;
  for (const auto& f : found) {
    EtaQuotient e{N, {}, 0};
    for (std::size_t i = 0; i < k; ++i)
      if (f.r[i] != 0) e.terms[D[i]] = f.r[i];
    out.push_back(std::move(e));
  }
  return out;
}

EtaQuotient find_hauptmodul_quotient(std::int64_t N) {
  for (EtaQuotient e : hauptmodul_candidates(N)) {
    e.shift = 0;
    const QSeries s = expand(e, 1);
    e.shift = -static_cast<std::int64_t>(s.coeff(0).get_si());
    if (numeric_invariance_check(e, N)) return e;
  }
  throw DomainError("no eta-quotient Hauptmodul in bound");
}

}  // namespace moonshine
