#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "moonshine/arith.hpp"

namespace moonshine {

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n);

/// Element sum_k c_k zeta_n^k of Z[zeta_n], stored on the redundant basis
/// zeta_n^0 .. zeta_n^{n-1}; relations are only applied by reduced().
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::int64_t n);
  Cyclotomic(std::int64_t n, std::vector<Integer> coeffs);

  static Cyclotomic integer(const Integer& c);
  static Cyclotomic root(std::int64_t n, std::int64_t k);

  std::int64_t conductor() const noexcept { return n_; }
  const std::vector<Integer>& coefficients() const noexcept { return c_; }

  /// The same element written over zeta_m, m a multiple of the current n.
  Cyclotomic lift(std::int64_t m) const;
  Cyclotomic conj() const;
  /// Canonical coordinates modulo Phi_n, length euler_phi(n).
  std::vector<Integer> reduced() const;
  bool is_integer() const;
  /// Throws DomainError when the element is not a rational integer.
  Integer to_integer() const;
  std::complex<double> numeric() const;
  std::string to_string() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Integer& s, const Cyclotomic& a);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  std::int64_t n_;
  std::vector<Integer> c_;
};

/// Rational integer value of sum_k counts[k] zeta_n^k; throws DomainError if
/// the sum is not rational.
Integer project_to_integer(std::int64_t n, const std::vector<Integer>& counts);

}  // namespace moonshine
