#include "moonshine/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "moonshine/error.hpp"

namespace moonshine {
namespace {

std::vector<Integer> poly_divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
  // den monic
  const std::size_t dn = den.size() - 1;
  std::vector<Integer> q(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const Integer c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

// Reduce a coefficient vector modulo the monic polynomial phi, in place.
void reduce_mod(std::vector<Integer>& v, const std::vector<Integer>& phi) {
  const std::size_t deg = phi.size() - 1;
  std::vector<std::pair<std::size_t, Integer>> sparse;
  for (std::size_t j = 0; j < deg; ++j)
    if (phi[j] != 0) sparse.emplace_back(j, phi[j]);
  for (std::size_t i = v.size(); i-- > deg;) {
    if (v[i] == 0) continue;
    const Integer c = v[i];
    v[i] = 0;
    for (const auto& [j, pj] : sparse) v[i - deg + j] -= c * pj;
  }
  v.resize(std::min(v.size(), deg));
  v.resize(deg);
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw DomainError("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<Integer>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<Integer> p(static_cast<std::size_t>(n + 1));
  p[0] = -1;
  p[n] = 1;
  for (std::int64_t d : arith::divisors(n))
    if (d < n) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(std::int64_t n) : n_(n), c_(static_cast<std::size_t>(n)) {
  if (n < 1) throw DomainError("cyclotomic conductor must be positive");
}

Cyclotomic::Cyclotomic(std::int64_t n, std::vector<Integer> coeffs) : n_(n), c_(std::move(coeffs)) {
  if (n < 1 || static_cast<std::int64_t>(c_.size()) != n)
    throw DomainError("cyclotomic coefficient vector must have length n");
}

Cyclotomic Cyclotomic::integer(const Integer& c) {
  Cyclotomic r(1);
  r.c_[0] = c;
  return r;
}

Cyclotomic Cyclotomic::root(std::int64_t n, std::int64_t k) {
  Cyclotomic r(n);
  r.c_[((k % n) + n) % n] = 1;
  return r;
}

Cyclotomic Cyclotomic::lift(std::int64_t m) const {
  if (m % n_ != 0) throw DomainError("lift target must be a multiple of the conductor");
  if (m == n_) return *this;
  Cyclotomic r(m);
  const std::int64_t s = m / n_;
  for (std::int64_t k = 0; k < n_; ++k) r.c_[k * s] = c_[k];
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  Cyclotomic r(n_);
  for (std::int64_t k = 0; k < n_; ++k) r.c_[(n_ - k) % n_] = c_[k];
  return r;
}

std::vector<Integer> Cyclotomic::reduced() const {
  std::vector<Integer> v = c_;
  reduce_mod(v, cyclotomic_polynomial(n_));
  return v;
}

bool Cyclotomic::is_integer() const {
  const auto v = reduced();
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

Integer Cyclotomic::to_integer() const {
  const auto v = reduced();
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) throw DomainError("cyclotomic value is not a rational integer: " + to_string());
  return v[0];
}

std::complex<double> Cyclotomic::numeric() const {
  std::complex<double> s = 0;
  for (std::int64_t k = 0; k < n_; ++k)
    if (c_[k] != 0)
      s += c_[k].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_));
  return s;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::int64_t k = 0; k < n_; ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k];
    if (k) os << "*z" << n_ << "^" << k;
  }
  if (first) os << 0;
  return os.str();
}

namespace {
std::pair<Cyclotomic, Cyclotomic> common(const Cyclotomic& a, const Cyclotomic& b) {
  const std::int64_t m = arith::lcm(a.conductor(), b.conductor());
  return {a.lift(m), b.lift(m)};
}
}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = common(a, b);
  std::vector<Integer> c = x.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coefficients()[i];
  return Cyclotomic(x.conductor(), std::move(c));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  return a + Integer(-1) * b;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = common(a, b);
  const std::int64_t n = x.conductor();
  std::vector<Integer> c(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (x.coefficients()[i] == 0) continue;
    for (std::int64_t j = 0; j < n; ++j)
      if (y.coefficients()[j] != 0) c[(i + j) % n] += x.coefficients()[i] * y.coefficients()[j];
  }
  return Cyclotomic(n, std::move(c));
}

Cyclotomic operator*(const Integer& s, const Cyclotomic& a) {
  std::vector<Integer> c = a.coefficients();
  for (auto& x : c) x *= s;
  return Cyclotomic(a.conductor(), std::move(c));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = common(a, b);
  return (x - y).reduced() == std::vector<Integer>(static_cast<std::size_t>(arith::euler_phi(x.conductor())));
}

Integer project_to_integer(std::int64_t n, const std::vector<Integer>& counts) {
  return Cyclotomic(n, counts).to_integer();
}

}  // namespace moonshine
