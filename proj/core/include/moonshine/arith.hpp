#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace moonshine {

using Integer = mpz_class;
using Rational = mpq_class;

namespace arith {

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
bool is_prime(std::int64_t n);
/// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);
/// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t sigma(std::int64_t n, int k);
/// Inverse of a modulo m, assuming gcd(a, m) == 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
/// Largest e with p^e | x (x != 0).
int valuation(const Integer& x, unsigned long p);
Integer ipow(std::int64_t base, unsigned exp);
/// Smallest prime strictly greater than n.
std::int64_t next_prime(std::int64_t n);

}  // namespace arith
}  // namespace moonshine
