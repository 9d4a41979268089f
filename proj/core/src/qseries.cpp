#include "moonshine/qseries.hpp"

#include <gmp.h>

#include <map>
#include <mutex>
#include <optional>

namespace moonshine {
namespace detail {

namespace {
constexpr std::size_t kKroneckerThreshold = 48;
constexpr std::size_t kNewtonThreshold = 256;
}  // namespace

std::vector<Integer> convolve_schoolbook(std::span<const Integer> a, std::span<const Integer> b,
                                         std::size_t out_len) {
  std::vector<Integer> out(out_len);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (a[i] == 0) continue;
    const mpz_srcptr x = a[i].get_mpz_t();
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j)
      mpz_addmul(out[i + j].get_mpz_t(), x, b[j].get_mpz_t());
  }
  return out;
}

std::vector<Integer> convolve(std::span<const Integer> a, std::span<const Integer> b,
                              std::size_t out_len) {
  const std::size_t la = std::min(a.size(), out_len), lb = std::min(b.size(), out_len);
  if (std::min(la, lb) < kKroneckerThreshold) return convolve_schoolbook(a, b, out_len);
  return convolve_kronecker(a, b, out_len);
}

std::vector<Rational> convolve(std::span<const Rational> a, std::span<const Rational> b,
                               std::size_t out_len) {
  std::vector<Rational> out(out_len);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

namespace {

std::vector<Integer> invert_unit_naive(std::span<const Integer> a, std::size_t out_len) {
  std::vector<Integer> g(out_len);
  const Integer& a0 = a[0];
  g[0] = a0;
  Integer acc;
  for (std::size_t n = 1; n < out_len; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k)
      mpz_addmul(acc.get_mpz_t(), a[k].get_mpz_t(), g[n - k].get_mpz_t());
    g[n] = a0 > 0 ? Integer(-acc) : acc;
  }
  return g;
}

}  // namespace

std::vector<Integer> invert_unit(std::span<const Integer> a, std::size_t out_len) {
  if (out_len <= kNewtonThreshold) return invert_unit_naive(a, out_len);
  std::size_t k = kNewtonThreshold;
  std::vector<Integer> g = invert_unit_naive(a, k);
  while (k < out_len) {
    const std::size_t k2 = std::min(2 * k, out_len);
    // e = 1 - a*g (mod q^k2); g <- g + g*e
    std::vector<Integer> ag = convolve(a.first(std::min(a.size(), k2)), g, k2);
    std::vector<Integer> e(k2 - k);
    for (std::size_t i = k; i < k2; ++i) e[i - k] = -ag[i];
    std::vector<Integer> ge = convolve(g, e, k2 - k);
    g.resize(k2);
    for (std::size_t i = k; i < k2; ++i) g[i] = std::move(ge[i - k]);
    k = k2;
  }
  return g;
}

std::vector<Rational> invert_field(std::span<const Rational> a, std::size_t out_len) {
  std::vector<Rational> g(out_len);
  const Rational inv0 = 1 / a[0];
  g[0] = inv0;
  for (std::size_t n = 1; n < out_len; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * g[n - k];
    g[n] = -acc * inv0;
  }
  return g;
}

}  // namespace detail

QSeriesRational to_rational(const QSeries& a) {
  std::vector<Rational> c(a.coefficients().begin(), a.coefficients().end());
  return QSeriesRational(a.valuation(), std::move(c));
}

bool divide_exact(const QSeries& a, const Integer& m, QSeries& out) {
  if (m == 0) throw DomainError("division by zero");
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const mpz_srcptr x = a.coefficients()[i].get_mpz_t();
    if (!mpz_divisible_p(x, m.get_mpz_t())) return false;
    mpz_divexact(c[i].get_mpz_t(), x, m.get_mpz_t());
  }
  out = QSeries(a.valuation(), std::move(c));
  return true;
}

QSeriesRational divide(const QSeries& a, const Integer& m) {
  if (m == 0) throw DomainError("division by zero");
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] = Rational(a.coefficients()[i], m);
    c[i].canonicalize();
  }
  return QSeriesRational(a.valuation(), std::move(c));
}

bool is_integral(const QSeriesRational& a) {
  for (const auto& c : a.coefficients())
    if (c.get_den() != 1) return false;
  return true;
}

QSeries to_integer(const QSeriesRational& a) {
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational& x = a.coefficients()[i];
    if (x.get_den() != 1)
      throw DomainError("non-integral coefficient at q^" +
                        std::to_string(a.valuation() + static_cast<std::int64_t>(i)));
    c[i] = x.get_num();
  }
  return QSeries(a.valuation(), std::move(c));
}

QSeries eta_product(std::span<const std::pair<std::int64_t, std::int64_t>> scale_exponents,
                    std::int64_t length) {
  if (length < 1) throw PrecisionExhausted("precision exhausted");
  const auto len = static_cast<std::size_t>(length);
  // s_k = -sum_{d | k} d r_d sigma(k/d): coefficients of q d/dq log f
  std::vector<std::int64_t> s(len, 0);
  for (const auto& [d, r] : scale_exponents) {
    if (d < 1) throw DomainError("eta scale must be positive");
    if (r == 0) continue;
    for (std::int64_t m = 1; d * m < length; ++m) s[d * m] -= d * r * arith::sigma(m, 1);
  }
  std::vector<Integer> f(len);
  f[0] = 1;
  Integer acc;
  for (std::size_t n = 1; n < len; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      const std::int64_t sk = s[k];
      if (sk > 0)
        mpz_addmul_ui(acc.get_mpz_t(), f[n - k].get_mpz_t(), static_cast<unsigned long>(sk));
      else if (sk < 0)
        mpz_submul_ui(acc.get_mpz_t(), f[n - k].get_mpz_t(), static_cast<unsigned long>(-sk));
    }
    mpz_divexact_ui(f[n].get_mpz_t(), acc.get_mpz_t(), n);
  }
  return QSeries(0, std::move(f));
}

QSeries eta_expansion(std::int64_t precision) {
  const std::pair<std::int64_t, std::int64_t> t[] = {{1, 1}};
  return eta_product(t, precision);
}

QSeries delta(std::int64_t precision) {
  if (precision < 2) throw DomainError("delta needs precision >= 2");
  const std::pair<std::int64_t, std::int64_t> t[] = {{1, 24}};
  return eta_product(t, precision - 1).shifted(1);
}

QSeries eisenstein(int k, std::int64_t precision) {
  if (k != 4 && k != 6) throw DomainError("eisenstein weight must be 4 or 6");
  if (precision < 1) throw PrecisionExhausted("precision exhausted");
  const long factor = k == 4 ? 240 : -504;
  std::vector<Integer> c(static_cast<std::size_t>(precision));
  c[0] = 1;
  for (std::int64_t n = 1; n < precision; ++n) {
    Integer sig = 0;
    for (std::int64_t d : arith::divisors(n)) sig += arith::ipow(d, static_cast<unsigned>(k - 1));
    c[n] = factor * sig;
  }
  return QSeries(0, std::move(c));
}

QSeries j_function(std::int64_t precision) {
  if (precision < 0) throw DomainError("j_function needs precision >= 0");
  static std::mutex mu;
  static std::optional<QSeries> cache;
  std::lock_guard lock(mu);
  if (!cache || cache->precision() < precision) {
    const std::int64_t len = std::max<std::int64_t>(precision + 1, 64);
    const QSeries e4 = eisenstein(4, len);
    const QSeries e4cubed = e4 * e4 * e4;
    const std::pair<std::int64_t, std::int64_t> t[] = {{1, -24}};
    const QSeries inv = eta_product(t, len);
    QSeries j = (e4cubed * inv).shifted(-1);
    j = j - QSeries::monomial(0, Integer(744), j.precision());
    cache = std::move(j);
  }
  return cache->truncate(precision);
}

}  // namespace moonshine
