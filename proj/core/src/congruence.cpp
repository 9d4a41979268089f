#include "moonshine/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "moonshine/error.hpp"
#include "moonshine/etalab.hpp"

namespace moonshine {

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::pass: return "pass";
    case CertificateStatus::fail: return "fail";
    case CertificateStatus::partial: return "partial";
  }
  return "fail";
}

std::string format_combination(const LevelCombination& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [N, a] : terms) {
    if (a == 0) continue;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (abs(a) != 1) os << abs(a);
    os << "T" << N;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::int64_t index_gamma0(std::int64_t N) {
  if (N < 1) throw DomainError("level must be positive");
  std::int64_t idx = N;
  for (const auto& [p, e] : arith::factor(N)) idx = idx / p * (p + 1);
  return idx;
}

namespace {
std::int64_t lcm_of(const std::vector<std::int64_t>& levels) {
  std::int64_t L = 1;
  for (std::int64_t N : levels) L = arith::lcm(L, N);
  return L;
}

std::vector<std::int64_t> levels_of(const LevelCombination& terms) {
  std::vector<std::int64_t> out;
  for (const auto& t : terms) out.push_back(t.first);
  return out;
}
}  // namespace

std::int64_t sturm_prefix(const std::vector<std::int64_t>& levels, std::int64_t s) {
  if (s < 1) throw DomainError("pole order must be positive");
  return s * (index_gamma0(lcm_of(levels)) - 1);
}

std::int64_t pole_order(const std::vector<std::int64_t>& levels) {
  const std::int64_t L = lcm_of(levels);
  Rational worst = 0;
  for (std::int64_t N : levels) {
    if (!is_genus_zero_level(N)) throw DomainError("level " + std::to_string(N) + " is not genus zero");
    if (N == 1) {
      worst = std::max(worst, Rational(1));
      continue;
    }
    EtaQuotient e = hauptmodul_quotient(N);
    e.level = L;
    for (const auto& c : cusps(L)) worst = std::max(worst, Rational(-cusp_q_order(e, c)));
  }
  Integer s;
  mpz_cdiv_q(s.get_mpz_t(), worst.get_num_mpz_t(), worst.get_den_mpz_t());
  return std::max<std::int64_t>(1, s.get_si());
}

std::int64_t conservative_prefix(const std::vector<std::int64_t>& levels) {
  return sturm_prefix(levels, pole_order(levels));
}

QSeries combination_series(const LevelCombination& terms, std::int64_t precision) {
  QSeries sum = QSeries::zero(-1, precision);
  for (const auto& [N, a] : terms) {
    if (!is_genus_zero_level(N)) throw DomainError("level " + std::to_string(N) + " is not genus zero");
    sum += a * hauptmodul(N, precision);
  }
  return sum;
}

CongruenceCertificate verify_congruence(const LevelCombination& terms, const Integer& modulus,
                                        std::optional<std::int64_t> prefix) {
  if (modulus < 1) throw DomainError("modulus must be positive");
  CongruenceCertificate cert;
  cert.terms = terms;
  cert.modulus = modulus;
  cert.sturm_bound = conservative_prefix(levels_of(terms));
  cert.checked_prefix = prefix.value_or(cert.sturm_bound);
  const QSeries f = combination_series(terms, cert.checked_prefix + 1);
  for (std::int64_t n = f.valuation(); n <= cert.checked_prefix; ++n) {
    if (!mpz_divisible_p(f.coeff(n).get_mpz_t(), modulus.get_mpz_t())) {
      cert.status = CertificateStatus::fail;
      cert.first_bad = n;
      return cert;
    }
  }
  cert.status = cert.checked_prefix >= cert.sturm_bound ? CertificateStatus::pass : CertificateStatus::partial;
  return cert;
}

Integer combination_content(const LevelCombination& terms, std::optional<std::int64_t> prefix) {
  const std::int64_t P = prefix.value_or(conservative_prefix(levels_of(terms)));
  const QSeries f = combination_series(terms, P + 1);
  Integer g = 0;
  for (const auto& c : f.coefficients()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

namespace {

// Valuation of x in Z/p^K, K when x == 0.
int val(const Integer& x, std::int64_t p, int K) {
  if (x == 0) return K;
  return std::min(K, arith::valuation(x, static_cast<unsigned long>(p)));
}

Integer mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

PrimePowerRelation relation_mod(const std::vector<std::vector<Integer>>& rows, std::int64_t p, int K) {
  const Integer pk = arith::ipow(p, static_cast<unsigned>(K));
  const std::size_t m = rows.size() - 1;
  const std::size_t cols = rows[0].size();
  std::vector<Integer> target(cols);
  for (std::size_t j = 0; j < cols; ++j) target[j] = mod(rows[0][j], pk);
  std::vector<std::vector<Integer>> a(m, std::vector<Integer>(cols));
  std::vector<std::vector<Integer>> u(m, std::vector<Integer>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(rows[i + 1][j], pk);
    u[i][i] = 1;
  }
  // Smith-style reduction: row operations are tracked in u, column
  // operations are applied to the target as well.
  std::vector<std::pair<std::size_t, int>> pivots;  // (column, exponent) for row i
  std::size_t r = 0;
  for (; r < m; ++r) {
    int best = K;
    std::size_t bi = r, bj = 0;
    for (std::size_t i = r; i < m; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const int v = val(a[i][j], p, K);
        if (v < best) best = v, bi = i, bj = j;
      }
    if (best == K) break;
    std::swap(a[r], a[bi]);
    std::swap(u[r], u[bi]);
    const Integer pe = arith::ipow(p, static_cast<unsigned>(best));
    Integer unit = a[r][bj] / pe, inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), pk.get_mpz_t());
    for (auto& x : a[r]) x = mod(x * inv, pk);
    for (auto& x : u[r]) x = mod(x * inv, pk);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][bj] == 0) continue;
      const Integer f = a[i][bj] / pe;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], pk);
      for (std::size_t j = 0; j < m; ++j) u[i][j] = mod(u[i][j] - f * u[r][j], pk);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (j == bj || a[r][j] == 0) continue;
      const Integer f = a[r][j] / pe;
      for (std::size_t i = 0; i < m; ++i) a[i][j] = mod(a[i][j] - f * a[i][bj], pk);
      target[j] = mod(target[j] - f * target[bj], pk);
    }
    pivots.emplace_back(bj, best);
  }
  std::vector<Integer> x(m);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const auto [c, e] = pivots[i];
    if (val(target[c], p, K) >= e) {
      const Integer f = target[c] / arith::ipow(p, static_cast<unsigned>(e));
      for (std::size_t j = 0; j < cols; ++j) target[j] = mod(target[j] - f * a[i][j], pk);
      for (std::size_t j = 0; j < m; ++j) x[j] = mod(x[j] - f * u[i][j], pk);
    }
  }
  PrimePowerRelation rel;
  rel.k = K;
  for (const auto& t : target) rel.k = std::min(rel.k, val(t, p, K));
  const Integer pr = arith::ipow(p, static_cast<unsigned>(rel.k));
  rel.witness.push_back(rel.k == 0 ? Integer(0) : Integer(1));
  for (const auto& xi : x) rel.witness.push_back(rel.k == 0 ? Integer(0) : mod(xi, pr));
  return rel;
}

}  // namespace

PrimePowerRelation max_prime_power_relation(const std::vector<std::int64_t>& levels, std::int64_t p,
                                            std::int64_t prefix) {
  if (levels.empty()) throw DomainError("need at least one level");
  if (!arith::is_prime(p)) throw DomainError("modulus base must be prime");
  std::vector<std::vector<Integer>> rows;
  for (std::int64_t N : levels) {
    const QSeries t = hauptmodul(N, prefix + 1);
    std::vector<Integer> row;
    for (std::int64_t n = -1; n <= prefix; ++n) row.push_back(t.coeff(n));
    rows.push_back(std::move(row));
  }
  for (int K = 32;; K *= 2) {
    PrimePowerRelation rel = relation_mod(rows, p, K);
    if (rel.k < K) return rel;
    if (K > 4096) throw Error("relation holds to every tested power; the level rows are dependent");
  }
}

std::vector<CongruenceSpec> c2_congruences(const AbelianShape& g) {
  g.validate();
  std::vector<std::int64_t> primes;
  for (const auto& [p, r] : g.layers) primes.push_back(p);
  std::vector<CongruenceSpec> out;
  const std::size_t k = primes.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::int64_t> P;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) P.push_back(primes[i]);
    std::vector<int> n(P.size(), 1);
    while (true) {
      CongruenceSpec spec;
      spec.modulus = 1;
      for (std::size_t i = 0; i < P.size(); ++i) {
        const auto& r = g.layers.at(P[i]);
        for (int j = n[i]; j <= static_cast<int>(r.size()); ++j)
          spec.modulus *= arith::ipow(P[i], static_cast<unsigned>(r[j - 1] * (j - n[i] + 1)));
      }
      for (std::uint32_t s = 0; s < (1u << P.size()); ++s) {
        std::int64_t level = 1;
        int sign = 1;
        for (std::size_t i = 0; i < P.size(); ++i)
          if (s >> i & 1u) {
            for (int e = 0; e < n[i]; ++e) level *= P[i];
            sign = -sign;
          }
        if (!is_genus_zero_level(level))
          throw DomainError("group has non-genus-zero element order " + std::to_string(level));
        spec.terms.emplace_back(level, sign);
      }
      std::sort(spec.terms.begin(), spec.terms.end());
      out.push_back(std::move(spec));
      std::size_t i = 0;
      while (i < P.size() && ++n[i] > g.height(P[i])) n[i++] = 1;
      if (i == P.size()) break;
    }
  }
  return out;
}

const std::vector<CongruenceSpec>& hauptmodul_congruence_table() {
  static const std::vector<CongruenceSpec> rows = [] {
    const auto pp = [](std::int64_t p, unsigned e) { return arith::ipow(p, e); };
    return std::vector<CongruenceSpec>{
        {{{1, 1}, {2, -1}}, pp(2, 16)},
        {{{1, 1}, {4, -1}}, pp(2, 8)},
        {{{1, 1}, {8, -1}}, pp(2, 4)},
        {{{1, 1}, {16, -1}}, pp(2, 2)},
        {{{1, 1}, {3, -1}}, pp(3, 9)},
        {{{1, 1}, {9, -1}}, pp(3, 3)},
        {{{1, 1}, {5, -1}}, pp(5, 5)},
        {{{1, 1}, {25, -1}}, pp(5, 1)},
        {{{1, 1}, {7, -1}}, pp(7, 4)},
        {{{1, 1}, {13, -1}}, pp(13, 2)},
        {{{1, 1}, {2, -1}, {3, -1}, {6, 1}}, pp(2, 4) * pp(3, 3)},
        {{{1, 1}, {4, -1}, {3, -1}, {12, 1}}, pp(2, 2) * pp(3, 2)},
        {{{1, 1}, {2, -1}, {9, -1}, {18, 1}}, pp(2, 2) * pp(3, 1)},
        {{{1, 1}, {2, -1}, {5, -1}, {10, 1}}, pp(2, 3) * pp(5, 2)},
    };
  }();
  return rows;
}

}  // namespace moonshine
