#include "moonshine/rademacher.hpp"

#include <cmath>
#include <numbers>

#include "moonshine/arith.hpp"
#include "moonshine/error.hpp"

namespace moonshine {
namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t mod(std::int64_t a, std::int64_t c) { return ((a % c) + c) % c; }

}  // namespace

double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c < 1) throw DomainError("Kloosterman modulus must be positive");
  if (c == 1) return 1.0;
  if (c == 2) return std::cos(kPi * static_cast<double>(mod(m + n, 2)));
  // x and -x contribute conjugate terms, so sum cosines over x < c/2 and double.
  double s = 0;
  const std::int64_t mm = mod(m, c), nn = mod(n, c);
  for (std::int64_t x = 1; 2 * x < c; ++x) {
    if (arith::gcd(x, c) != 1) continue;
    const std::int64_t xbar = arith::inverse_mod(x, c);
    const std::int64_t phase = mod(mm * x + nn * xbar, c);
    s += 2.0 * std::cos(2.0 * kPi * static_cast<double>(phase) / static_cast<double>(c));
  }
  return s;
}

double bessel_i1(double x) {
  if (!(x > 0)) throw DomainError("bessel_i1 needs x > 0");
  const double y = x * x / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 100000; ++k) {
    term *= y / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return x / 2.0 * sum;
}

namespace {

// sum_{c <= c_max} K(-m, n, cN)/(cN) I_1(4 pi sqrt(mn)/(cN)) for n = 1 .. n_max
std::vector<double> rademacher_sums(std::int64_t m, std::int64_t N, std::int64_t n_max, std::int64_t c_max) {
  std::vector<double> sums(static_cast<std::size_t>(n_max), 0.0);
  std::vector<double> cos_table;
  std::vector<double> kl(static_cast<std::size_t>(n_max));
  for (std::int64_t c = 1; c <= c_max; ++c) {
    const std::int64_t k = c * N;
    std::fill(kl.begin(), kl.end(), 0.0);
    if (k == 1) {
      std::fill(kl.begin(), kl.end(), 1.0);
    } else {
      cos_table.resize(static_cast<std::size_t>(k));
      for (std::int64_t r = 0; r < k; ++r)
        cos_table[r] = std::cos(2.0 * kPi * static_cast<double>(r) / static_cast<double>(k));
      const std::int64_t mm = mod(-m, k);
      for (std::int64_t x = 1; 2 * x <= k; ++x) {
        if (arith::gcd(x, k) != 1) continue;
        const double weight = (2 * x == k) ? 1.0 : 2.0;
        const std::int64_t xbar = arith::inverse_mod(x, k);
        const std::int64_t base = mm * x % k;
        std::int64_t phase = base;
        for (std::int64_t n = 1; n <= n_max; ++n) {
          phase += xbar;
          if (phase >= k) phase -= k;
          kl[n - 1] += weight * cos_table[phase];
        }
      }
    }
    const double dk = static_cast<double>(k);
    for (std::int64_t n = 1; n <= n_max; ++n)
      sums[n - 1] += kl[n - 1] / dk *
                     bessel_i1(4.0 * kPi * std::sqrt(static_cast<double>(m) * static_cast<double>(n)) / dk);
  }
  return sums;
}

}  // namespace

std::vector<CoeffEstimate> coeff_estimates_hecke_j(std::int64_t m, std::int64_t n_max, std::int64_t c_max) {
  if (m < 1 || n_max < 1 || c_max < 1) throw DomainError("coefficient estimate needs m, n, c_max >= 1");
  const auto sums = rademacher_sums(m, 1, n_max, c_max);
  std::vector<CoeffEstimate> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    CoeffEstimate e;
    e.value = 2.0 * kPi * std::sqrt(static_cast<double>(m) / static_cast<double>(n)) * sums[n - 1];
    e.cutoff_c = c_max;
    e.tail_bound = 32.0 * kPi * kPi * static_cast<double>(m) / 3.0 * 4.0 / std::pow(static_cast<double>(c_max), 0.25);
    out.push_back(e);
  }
  return out;
}

std::vector<CoeffEstimate> coeff_estimates_hauptmodul(std::int64_t N, std::int64_t n_max, std::int64_t c_max) {
  if (N < 1 || n_max < 1 || c_max < 1) throw DomainError("coefficient estimate needs N, n, c_max >= 1");
  if (N == 1) return coeff_estimates_hecke_j(1, n_max, c_max);
  const auto sums = rademacher_sums(1, N, n_max, c_max);
  std::vector<CoeffEstimate> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    CoeffEstimate e;
    e.value = 2.0 * kPi / std::sqrt(static_cast<double>(n)) * sums[n - 1];
    e.cutoff_c = c_max;
    e.tail_bound = 32.0 * kPi * kPi / 3.0 * std::pow(static_cast<double>(N), -1.25) * 4.0 /
                   std::pow(static_cast<double>(c_max), 0.25);
    out.push_back(e);
  }
  return out;
}

CoeffEstimate coeff_estimate_hecke_j(std::int64_t m, std::int64_t n, std::int64_t c_max) {
  if (n < 1) throw DomainError("coefficient estimate needs n >= 1");
  return coeff_estimates_hecke_j(m, n, c_max).back();
}

CoeffEstimate coeff_estimate_hauptmodul(std::int64_t N, std::int64_t n, std::int64_t c_max) {
  if (n < 1) throw DomainError("coefficient estimate needs n >= 1");
  return coeff_estimates_hauptmodul(N, n, c_max).back();
}

double asymptotic_b(std::int64_t m, std::int64_t t, std::int64_t n) {
  if (m < 2 || t < 1 || n < 1) throw DomainError("asymptotic_b needs m >= 2, t >= 1, n >= 1");
  const double a = static_cast<double>(t) * static_cast<double>(m - 1) / static_cast<double>(m);
  const double dn = static_cast<double>(n);
  // m^{-12t} exp(...) combined in log space
  const double log_val = std::log(std::pow(a, 0.25) / (std::sqrt(2.0) * std::pow(dn, 0.75))) -
                         12.0 * static_cast<double>(t) * std::log(static_cast<double>(m)) +
                         4.0 * kPi * std::sqrt(a * dn);
  return std::exp(log_val);
}

double asymptotic_c_e(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("asymptotic_c_e needs m, n >= 1");
  const double dm = static_cast<double>(m), dn = static_cast<double>(n);
  return std::pow(dm, 0.25) / (std::sqrt(2.0) * std::pow(dn, 0.75)) * std::exp(4.0 * kPi * std::sqrt(dm * dn));
}

double j_lower_bound(std::int64_t n) {
  const double dn = static_cast<double>(n), rn = std::sqrt(dn);
  return 2.0 * kPi / rn * bessel_i1(4.0 * kPi * rn) - 8.0 * std::pow(2.0, 0.75) * kPi * kPi * bessel_i1(2.0 * kPi * rn) -
         64.0 * std::sqrt(2.0) * std::pow(kPi, 1.75) / (3.0 * std::pow(dn, 0.125));
}

double cg_upper_bound(std::int64_t N, std::int64_t n) {
  const double dn = static_cast<double>(n), rn = std::sqrt(dn), dN = static_cast<double>(N);
  const double x = 4.0 * kPi * rn / dN;
  return 4.0 * kPi / (rn * std::pow(dN, 0.25)) * (1.0 + x) * bessel_i1(x) +
         64.0 * std::sqrt(2.0) * std::pow(kPi, 1.75) / (3.0 * dN * std::pow(dn, 0.125));
}

double nonneg_bound(const std::map<std::int64_t, std::int64_t>& order_counts, std::int64_t n, double margin) {
  const double dn = static_cast<double>(n), rn = std::sqrt(dn);
  double bracket = kPi * std::exp(2.0 * kPi * rn) / rn - margin * 8.0 * std::pow(2.0, 0.75) * kPi * kPi;
  double tail = 1.0;
  for (const auto& [v, count] : order_counts) {
    if (v == 1) continue;
    const double dv = static_cast<double>(v), cnt = static_cast<double>(count);
    bracket -= margin * cnt * 4.0 * kPi * std::pow(dv, 0.75) / rn * (1.0 + 4.0 * kPi * rn / dv) *
               std::exp(4.0 * kPi * rn * (1.0 / dv - 0.5));
    tail += cnt / dv;
  }
  return bessel_i1(2.0 * kPi * rn) * bracket -
         margin * 64.0 * std::sqrt(2.0) * std::pow(kPi, 1.75) / (3.0 * std::pow(dn, 0.125)) * tail;
}

std::int64_t nonneg_threshold(const std::map<std::int64_t, std::int64_t>& order_counts) {
  for (std::int64_t n = 1; n < 1000000; ++n)
    if (nonneg_bound(order_counts, n) > 0 && nonneg_bound(order_counts, n, 1.1) > 0) return n;
  throw DomainError("threshold not found");
}

}  // namespace moonshine
