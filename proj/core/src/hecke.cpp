#include "moonshine/hecke.hpp"

#include <cmath>
#include <numbers>

namespace moonshine {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

std::int64_t hecke_input_precision(std::int64_t m, std::int64_t precision) {
  return m * (precision - 1) + 1;
}

QSeries hecke(const QSeries& f, std::int64_t m) {
  if (m < 1) throw DomainError("Hecke index must be positive");
  if (m == 1) return f;
  const std::int64_t v = f.valuation(), P = f.precision();
  const std::int64_t vo = v < 0 ? m * v : ceil_div(v, m);
  const std::int64_t po = floor_div(P - 1, m) + 1;
  if (po <= vo)
    throw PrecisionExhausted("precision exhausted in Hecke operator", hecke_input_precision(m, vo + 1));
  const auto divs = arith::divisors(m);
  std::vector<Integer> out(static_cast<std::size_t>(po - vo));
  for (std::int64_t j = vo; j < po; ++j) {
    Integer& acc = out[j - vo];
    for (std::int64_t a : divs) {
      if (j % a != 0) continue;
      const std::int64_t d = m / a;
      const std::int64_t n = d * (j / a);
      if (n < v) continue;
      const Integer& c = f.coefficients()[n - v];
      if (c != 0) mpz_addmul_ui(acc.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(d));
    }
  }
  return QSeries(vo, std::move(out));
}

QSeries hecke_reference(const QSeries& f, std::int64_t m) {
  if (m < 1) throw DomainError("Hecke index must be positive");
  const QSeries fast = hecke(f, m);
  std::vector<Integer> out(fast.size());
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::int64_t a : arith::divisors(m)) {
    const std::int64_t d = m / a;
    for (std::int64_t n = f.valuation(); n < f.precision(); ++n) {
      // sum_{b mod d} exp(2 pi i n b / d), computed literally and rounded
      double re = 0;
      for (std::int64_t b = 0; b < d; ++b) re += std::cos(two_pi * static_cast<double>((n * b) % d) / d);
      const long root_sum = std::lround(re);
      if (root_sum == 0) continue;
      // f((a tau + b)/d) contributes c(n) q^{a n / d}
      if ((a * n) % d != 0) continue;
      const std::int64_t j = a * n / d;
      if (j < fast.valuation() || j >= fast.precision()) continue;
      out[j - fast.valuation()] += root_sum * f.coeff(n);
    }
  }
  return QSeries(fast.valuation(), std::move(out));
}

bool hecke_multiplicativity_check(const QSeries& f, std::int64_t m, std::int64_t n) {
  if (arith::gcd(m, n) != 1) throw DomainError("Hecke multiplicativity needs coprime indices");
  return agree(hecke(hecke(f, m), n), hecke(f, m * n));
}

std::vector<Integer> faber_polynomial(const QSeries& f, std::int64_t m) {
  if (m < 0) throw DomainError("Faber index must be nonnegative");
  if (f.valuation() > -1 || f.coeff(-1) != 1 || f.order() != -1)
    throw DomainError("Faber polynomial needs f = q^-1 + O(1)");
  if (f.coeff(0) != 0) throw DomainError("Faber polynomial needs a vanishing constant term");
  for (std::int64_t n = f.valuation(); n < -1; ++n)
    if (f.coeff(n) != 0) throw DomainError("Faber polynomial needs f = q^-1 + O(1)");
  std::vector<QSeries> powers{QSeries::one(f.precision() + 1)};
  for (std::int64_t k = 1; k <= m; ++k) powers.push_back(powers.back() * f);
  std::vector<Integer> lambda(static_cast<std::size_t>(m + 1));
  lambda[m] = 1;
  QSeries g = powers[m];
  for (std::int64_t e = -m + 1; e <= 0; ++e) {
    const Integer c = g.coeff(e);
    if (c == 0) continue;
    lambda[-e] -= c;
    g = g - c * powers[-e];
  }
  return lambda;
}

QSeries evaluate_polynomial(const std::vector<Integer>& lambda, const QSeries& f) {
  QSeries acc = QSeries::zero(0, f.precision() + 1);
  QSeries power = QSeries::one(f.precision() + 1);
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (k > 0) power = power * f;
    if (lambda[k] != 0) acc = acc + lambda[k] * power;
  }
  return acc;
}

bool replicability_check_J(std::int64_t m, std::int64_t precision) {
  if (m < 1) throw DomainError("m must be positive");
  const std::int64_t want = -m + precision;
  const QSeries j = j_function(hecke_input_precision(m, want) + m);
  const QSeries lhs = evaluate_polynomial(faber_polynomial(j, m), j);
  const QSeries rhs = hecke(j, m);
  if (std::min(lhs.precision(), rhs.precision()) < want)
    throw PrecisionExhausted("replicability window too short", want);
  return agree(lhs, rhs);
}

}  // namespace moonshine
