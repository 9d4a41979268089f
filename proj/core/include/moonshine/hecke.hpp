#pragma once

#include <vector>

#include "moonshine/qseries.hpp"

namespace moonshine {

/// f | m T(m): coefficient of q^j is sum_{ad=m, a|j} d c(dj/a).
QSeries hecke(const QSeries& f, std::int64_t m);
/// Input precision needed so that hecke(f, m) is known below `precision`.
std::int64_t hecke_input_precision(std::int64_t m, std::int64_t precision);
/// Direct double sum over (a, b, d) of the definition; small m only.
QSeries hecke_reference(const QSeries& f, std::int64_t m);

/// (f|mT(m))|nT(n) == f|mnT(mn) on the common window; gcd(m, n) must be 1.
bool hecke_multiplicativity_check(const QSeries& f, std::int64_t m, std::int64_t n);

/// Coefficients lambda_0..lambda_m with sum lambda_k f^k = q^{-m} + O(q).
std::vector<Integer> faber_polynomial(const QSeries& f, std::int64_t m);
/// Evaluates sum lambda_k f^k on the window of f.
QSeries evaluate_polynomial(const std::vector<Integer>& lambda, const QSeries& f);
/// F_m(J) == J | m T(m) on `precision` coefficients past the pole.
bool replicability_check_J(std::int64_t m, std::int64_t precision);

}  // namespace moonshine
