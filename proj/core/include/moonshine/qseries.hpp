#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "moonshine/arith.hpp"
#include "moonshine/error.hpp"

namespace moonshine {

namespace detail {

/// First `out_len` coefficients of the product of two coefficient windows.
/// Large integer products go through Kronecker substitution; the result is
/// identical to schoolbook convolution.
std::vector<Integer> convolve(std::span<const Integer> a, std::span<const Integer> b,
                              std::size_t out_len);
std::vector<Rational> convolve(std::span<const Rational> a, std::span<const Rational> b,
                               std::size_t out_len);
std::vector<Integer> convolve_schoolbook(std::span<const Integer> a,
                                         std::span<const Integer> b, std::size_t out_len);
std::vector<Integer> convolve_kronecker(std::span<const Integer> a,
                                        std::span<const Integer> b, std::size_t out_len);

/// Power-series inverse of a window whose constant coefficient is +-1.
std::vector<Integer> invert_unit(std::span<const Integer> a, std::size_t out_len);
std::vector<Rational> invert_field(std::span<const Rational> a, std::size_t out_len);

}  // namespace detail

/// Truncated Laurent series sum_{n >= valuation} c_n q^n known for n < precision.
///
/// Coefficients below the valuation are zero; coefficients at or above the
/// precision are unknown and every operation returns the largest window on
/// which its result is fully determined.
template <class Coeff>
class BasicSeries {
 public:
  using coefficient_type = Coeff;

  BasicSeries(std::int64_t valuation, std::vector<Coeff> coeffs)
      : valuation_(valuation), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw PrecisionExhausted("precision exhausted");
  }

  static BasicSeries zero(std::int64_t valuation, std::int64_t precision) {
    check_window(valuation, precision);
    return BasicSeries(valuation, std::vector<Coeff>(precision - valuation));
  }

  static BasicSeries monomial(std::int64_t exponent, Coeff c, std::int64_t precision) {
    auto s = zero(exponent, precision);
    s.coeffs_[0] = std::move(c);
    return s;
  }

  static BasicSeries one(std::int64_t precision) { return monomial(0, Coeff(1), precision); }

  std::int64_t valuation() const noexcept { return valuation_; }
  std::int64_t precision() const noexcept {
    return valuation_ + static_cast<std::int64_t>(coeffs_.size());
  }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<Coeff>& coefficients() const noexcept { return coeffs_; }

  bool known(std::int64_t n) const noexcept { return n < precision(); }

  /// Coefficient of q^n; zero below the valuation.
  Coeff coeff(std::int64_t n) const {
    if (n >= precision())
      throw PrecisionExhausted("coefficient of q^" + std::to_string(n) + " is beyond precision " +
                                   std::to_string(precision()),
                               n + 1);
    if (n < valuation_) return Coeff(0);
    return coeffs_[static_cast<std::size_t>(n - valuation_)];
  }
  Coeff operator[](std::int64_t n) const { return coeff(n); }

  /// Exponent of the first nonzero coefficient, or precision() if none is known.
  std::int64_t order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return valuation_ + static_cast<std::int64_t>(i);
    return precision();
  }

  BasicSeries truncate(std::int64_t new_precision) const {
    new_precision = std::min(new_precision, precision());
    check_window(valuation_, new_precision);
    return BasicSeries(valuation_,
                       std::vector<Coeff>(coeffs_.begin(), coeffs_.begin() + (new_precision - valuation_)));
  }

  /// Same series stored from exponent v (v may drop leading zeros or pad).
  BasicSeries rebase(std::int64_t v) const {
    if (v >= precision()) throw PrecisionExhausted("precision exhausted");
    std::vector<Coeff> out(static_cast<std::size_t>(precision() - v));
    for (std::int64_t n = std::max(v, valuation_); n < precision(); ++n) out[n - v] = coeffs_[n - valuation_];
    for (std::int64_t n = valuation_; n < v; ++n)
      if (coeffs_[n - valuation_] != 0)
        throw DomainError("rebase would drop a nonzero coefficient at q^" + std::to_string(n));
    return BasicSeries(v, std::move(out));
  }

  /// Multiplication by q^k.
  BasicSeries shifted(std::int64_t k) const { return BasicSeries(valuation_ + k, coeffs_); }

  BasicSeries operator-() const {
    auto r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) {
    return combine(a, b, [](Coeff& x, const Coeff& y) { x += y; });
  }
  friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) {
    return combine(a, b, [](Coeff& x, const Coeff& y) { x -= y; });
  }

  friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
    const std::int64_t v = a.valuation_ + b.valuation_;
    const std::int64_t p = std::min(a.precision() + b.valuation_, b.precision() + a.valuation_);
    check_window(v, p);
    return BasicSeries(v, detail::convolve(std::span<const Coeff>(a.coeffs_),
                                           std::span<const Coeff>(b.coeffs_),
                                           static_cast<std::size_t>(p - v)));
  }

  friend BasicSeries operator*(const Coeff& c, const BasicSeries& a) {
    auto r = a;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }

  BasicSeries& operator+=(const BasicSeries& o) { return *this = *this + o; }
  BasicSeries& operator-=(const BasicSeries& o) { return *this = *this - o; }
  BasicSeries& operator*=(const BasicSeries& o) { return *this = *this * o; }

 private:
  static void check_window(std::int64_t v, std::int64_t p) {
    if (p <= v) throw PrecisionExhausted("precision exhausted");
  }

  template <class Op>
  static BasicSeries combine(const BasicSeries& a, const BasicSeries& b, Op op) {
    const std::int64_t v = std::min(a.valuation_, b.valuation_);
    const std::int64_t p = std::min(a.precision(), b.precision());
    check_window(v, p);
    std::vector<Coeff> out(static_cast<std::size_t>(p - v));
    for (std::int64_t n = a.valuation_; n < p; ++n) out[n - v] = a.coeffs_[n - a.valuation_];
    for (std::int64_t n = b.valuation_; n < p; ++n) op(out[n - v], b.coeffs_[n - b.valuation_]);
    return BasicSeries(v, std::move(out));
  }

  std::int64_t valuation_;
  std::vector<Coeff> coeffs_;
};

using QSeries = BasicSeries<Integer>;
using QSeriesRational = BasicSeries<Rational>;

/// Mathematical equality on the overlap of the two windows.
template <class Coeff>
bool agree(const BasicSeries<Coeff>& a, const BasicSeries<Coeff>& b) {
  const std::int64_t lo = std::min(a.valuation(), b.valuation());
  const std::int64_t hi = std::min(a.precision(), b.precision());
  for (std::int64_t n = lo; n < hi; ++n)
    if (a.coeff(n) != b.coeff(n)) return false;
  return true;
}

template <class Coeff>
BasicSeries<Coeff> pow(const BasicSeries<Coeff>& a, unsigned k) {
  const std::int64_t rel = a.precision() - a.valuation();
  BasicSeries<Coeff> result = BasicSeries<Coeff>::one(rel);
  BasicSeries<Coeff> base = a;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

/// Multiplicative inverse. Integer series need a +-1 leading coefficient.
template <class Coeff>
BasicSeries<Coeff> invert(const BasicSeries<Coeff>& a) {
  const std::int64_t v = a.order();
  if (v >= a.precision()) throw PrecisionExhausted("cannot invert a series with no known nonzero term");
  const auto& c = a.coefficients();
  std::span<const Coeff> window(c.data() + (v - a.valuation()), c.size() - (v - a.valuation()));
  const std::size_t len = window.size();
  if constexpr (std::is_same_v<Coeff, Integer>) {
    if (abs(window[0]) != 1) throw DomainError("not invertible over Z");
    return BasicSeries<Coeff>(-v, detail::invert_unit(window, len));
  } else {
    return BasicSeries<Coeff>(-v, detail::invert_field(window, len));
  }
}

/// f(tau) -> f(m tau), i.e. q^n -> q^{mn}.
template <class Coeff>
BasicSeries<Coeff> rescale(const BasicSeries<Coeff>& a, std::int64_t m) {
  if (m < 1) throw DomainError("rescale factor must be positive");
  if (m == 1) return a;
  const std::int64_t v = m * a.valuation();
  const std::int64_t p = m * (a.precision() - 1) + 1;
  std::vector<Coeff> out(static_cast<std::size_t>(p - v));
  for (std::int64_t n = a.valuation(); n < a.precision(); ++n) out[m * n - v] = a.coeff(n);
  return BasicSeries<Coeff>(v, std::move(out));
}

QSeriesRational to_rational(const QSeries& a);
/// Exact division by m; returns false (leaving `out` untouched) if some
/// coefficient is not divisible.
bool divide_exact(const QSeries& a, const Integer& m, QSeries& out);
QSeriesRational divide(const QSeries& a, const Integer& m);
bool is_integral(const QSeriesRational& a);
/// Integer series equal to `a`; throws DomainError naming the first
/// non-integral exponent.
QSeries to_integer(const QSeriesRational& a);

/// prod_d prod_{n>=1} (1 - q^{dn})^{r_d}, first `length` coefficients (q^0 ..).
/// Computed through the logarithmic-derivative recurrence, so every scale
/// and sign of exponent costs the same O(length^2) small-by-big products.
QSeries eta_product(std::span<const std::pair<std::int64_t, std::int64_t>> scale_exponents,
                    std::int64_t length);

/// prod_{n>=1}(1 - q^n) with exponents 0 .. precision-1 (the q^{1/24} is left to callers).
QSeries eta_expansion(std::int64_t precision);
/// Delta = q prod (1-q^n)^24, exponents below `precision`.
QSeries delta(std::int64_t precision);
/// Normalized Eisenstein series E_4 or E_6.
QSeries eisenstein(int k, std::int64_t precision);
/// J = E_4^3 / Delta - 744 = q^{-1} + 196884 q + ..., exponents below `precision`.
/// Results are memoized at the largest precision requested so far.
QSeries j_function(std::int64_t precision);

}  // namespace moonshine
