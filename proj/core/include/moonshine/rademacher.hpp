#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace moonshine {

/// Truncated exact-formula value; `value` is never tail-adjusted.
struct CoeffEstimate {
  double value = 0;
  std::int64_t cutoff_c = 0;
  double tail_bound = 0;
};

/// K(m, n, c) = sum_{x mod c, (x,c)=1} exp(2 pi i (m x + n xbar)/c), as a real cosine sum.
double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c);
/// Modified Bessel function I_1 by its power series.
double bessel_i1(double x);

/// Coefficient of q^n in J | m T(m), summed over c <= c_max.
CoeffEstimate coeff_estimate_hecke_j(std::int64_t m, std::int64_t n, std::int64_t c_max = 1000);
/// Coefficient of q^n in T_N, summed over moduli cN with c <= c_max.
CoeffEstimate coeff_estimate_hauptmodul(std::int64_t N, std::int64_t n, std::int64_t c_max = 1000);

/// Estimates for n = 1 .. n_max at once, sharing the Kloosterman work per modulus.
std::vector<CoeffEstimate> coeff_estimates_hecke_j(std::int64_t m, std::int64_t n_max,
                                                   std::int64_t c_max = 1000);
std::vector<CoeffEstimate> coeff_estimates_hauptmodul(std::int64_t N, std::int64_t n_max,
                                                      std::int64_t c_max = 1000);

/// Leading asymptotic of b_{m,t}(n), the q^n coefficient of (Delta(m tau)/Delta(tau))^t.
double asymptotic_b(std::int64_t m, std::int64_t t, std::int64_t n);
/// Leading asymptotic of c_e(m, n).
double asymptotic_c_e(std::int64_t m, std::int64_t n);

/// Closed-form lower bound for c_e(1, n).
double j_lower_bound(std::int64_t n);
/// Closed-form upper bound for |c_g(1, n)| with ord(g) = N.
double cg_upper_bound(std::int64_t N, std::int64_t n);

/// The combined positivity expression for a group with element-order counts
/// `order_counts` (order -> number of elements). Negative terms are scaled by `margin`.
double nonneg_bound(const std::map<std::int64_t, std::int64_t>& order_counts, std::int64_t n,
                    double margin = 1.0);
/// Smallest n0 >= 1 at which nonneg_bound is positive, both plainly and with a
/// 10% margin on every negative term.
std::int64_t nonneg_threshold(const std::map<std::int64_t, std::int64_t>& order_counts);

}  // namespace moonshine
