#include <cmath>
#include <numbers>

#include "moonshine/etalab.hpp"

namespace moonshine {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// log eta(tau) up to an integer multiple of 2 pi i.
Complex log_eta(Complex tau) {
  if (tau.imag() <= 0) throw DomainError("eta evaluated outside the upper half-plane");
  Complex log_mult = 0;
  for (int it = 0; it < 10000; ++it) {
    const double n = std::round(tau.real());
    if (n != 0) {
      tau -= n;
      log_mult += kI * (kPi * n / 12.0);
    }
    if (std::norm(tau) < 1.0 - 1e-14) {
      log_mult -= std::log(std::sqrt(-kI * tau));
      tau = -1.0 / tau;
    } else {
      break;
    }
  }
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  Complex log_prod = 0, qn = q;
  while (std::abs(qn) > 1e-18) {
    log_prod += std::log(1.0 - qn);
    qn *= q;
  }
  return log_mult + 2.0 * kPi * kI * tau / 24.0 + log_prod;
}

Complex reduce_sl2(Complex tau) {
  for (int it = 0; it < 10000; ++it) {
    tau -= std::round(tau.real());
    if (std::norm(tau) < 1.0 - 1e-14)
      tau = -1.0 / tau;
    else
      break;
  }
  return tau;
}

}  // namespace

Complex eta_numeric(Complex tau) { return std::exp(log_eta(tau)); }

Complex eval_numeric(const EtaQuotient& e, Complex tau) {
  Complex s = 0;
  for (const auto& [d, r] : e.terms) s += static_cast<double>(r) * log_eta(static_cast<double>(d) * tau);
  return std::exp(s) + static_cast<double>(e.shift);
}

Complex j_numeric(Complex tau) {
  if (tau.imag() <= 0) throw DomainError("J evaluated outside the upper half-plane");
  tau = reduce_sl2(tau);
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  Complex e4 = 1, prod = 1, qn = q;
  for (std::int64_t n = 1; std::abs(qn) > 1e-18; ++n) {
    e4 += 240.0 * static_cast<double>(arith::sigma(n, 3)) * qn;
    prod *= std::pow(1.0 - qn, 24);
    qn *= q;
  }
  return e4 * e4 * e4 / (q * prod) - 744.0;
}

Complex hecke_numeric(const std::function<Complex(Complex)>& f, std::int64_t m, Complex tau) {
  Complex s = 0;
  for (std::int64_t a : arith::divisors(m)) {
    const std::int64_t d = m / a;
    for (std::int64_t b = 0; b < d; ++b)
      s += f((static_cast<double>(a) * tau + static_cast<double>(b)) / static_cast<double>(d));
  }
  return s;
}

std::vector<Matrix2> gamma0_samples(std::int64_t M, int samples) {
  std::vector<Matrix2> out{{1, 1, 0, 1}, {1, 0, M, 1}};
  for (std::int64_t d = 2; static_cast<int>(out.size()) < samples && d < 1000; ++d) {
    const std::int64_t c = M;
    if (arith::gcd(c, d) != 1) continue;
    if (c == 1) {
      out.push_back({0, -1, 1, d});
      continue;
    }
    const std::int64_t a = arith::inverse_mod(d % c, c);
    const std::int64_t b = (a * d - 1) / c;
    out.push_back({a, b, c, d});
  }
  out.resize(std::min<std::size_t>(out.size(), std::max(samples, 2)));
  return out;
}

bool numeric_invariance_check(const std::function<Complex(Complex)>& f, std::int64_t M, int samples) {
  const Complex points[] = {{0.3, 0.8}, {-0.17, 1.1}, {0.41, 0.63}};
  for (const Complex tau : points) {
    const Complex base = f(tau);
    for (const auto& g : gamma0_samples(M, samples)) {
      const Complex gt = (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) /
                         (static_cast<double>(g.c) * tau + static_cast<double>(g.d));
      if (gt.imag() < 1e-3) throw DomainError("unstable evaluation");
      const Complex v = f(gt);
      const double scale = std::max({std::abs(base), std::abs(v), 1e-300});
      if (!(std::abs(v - base) <= 1e-8 * scale)) return false;
    }
  }
  return true;
}

bool numeric_invariance_check(const EtaQuotient& e, std::int64_t M, int samples) {
  return numeric_invariance_check([&e](Complex t) { return eval_numeric(e, t); }, M, samples);
}

bool strictly_level(const std::function<Complex(Complex)>& f, std::int64_t N) {
  if (!numeric_invariance_check(f, N)) return false;
  for (const auto& [p, e] : arith::factor(N))
    if (numeric_invariance_check(f, N / p)) return false;
  return true;
}

}  // namespace moonshine
