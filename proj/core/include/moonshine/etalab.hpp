#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "moonshine/qseries.hpp"

namespace moonshine {

/// prod_d eta(d tau)^{r_d} + shift on Gamma_0(level).
struct EtaQuotient {
  std::int64_t level = 1;
  std::map<std::int64_t, std::int64_t> terms;
  std::int64_t shift = 0;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

/// Cusp a/b of Gamma_0(N), b | N, reduced so that 0 <= a < gcd(b, N/b) when possible.
struct Cusp {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::int64_t N = 1;

  friend bool operator==(const Cusp&, const Cusp&) = default;
};

/// Exponent of q in the leading term, (1/24) sum d r_d.
std::int64_t eta_valuation(const EtaQuotient& e);
/// Expansion with exponents below `precision`.
QSeries expand(const EtaQuotient& e, std::int64_t precision);
std::string to_string(const EtaQuotient& e);

std::vector<Cusp> cusps(std::int64_t N);
bool cusp_equivalent(const Cusp& x, const Cusp& y);
/// Width of the cusp: N / gcd(b^2, N).
std::int64_t cusp_width(const Cusp& c);
/// Order of vanishing in the local uniformizer at c (Ligozat), ignoring the shift.
Rational cusp_order(const EtaQuotient& e, const Cusp& c);
/// Order measured in q = e^{2 pi i tau} after moving c to infinity: cusp_order / width.
Rational cusp_q_order(const EtaQuotient& e, const Cusp& c);
/// Total degree of the divisor supported at the cusps; zero for weight-0 quotients.
Rational valence_sum(const EtaQuotient& e);

const std::vector<std::int64_t>& genus_zero_levels();
bool is_genus_zero_level(std::int64_t N);

/// Normalized Hauptmodul T_N = q^{-1} + O(q) for Gamma_0(N).
QSeries hauptmodul(std::int64_t N, std::int64_t precision);
/// Eta-quotient realization of T_N from the built-in table (N > 1).
const EtaQuotient& hauptmodul_quotient(std::int64_t N);
/// Bounded search for an eta quotient with a simple pole at infinity and no
/// other poles; candidates are ranked by sum |r_d| then lexicographically and
/// the first one passing the numeric invariance gate is returned.
EtaQuotient find_hauptmodul_quotient(std::int64_t N);
/// All candidates meeting the exact cusp and congruence conditions, ranked.
std::vector<EtaQuotient> hauptmodul_candidates(std::int64_t N);

// Numeric evaluation.
using Complex = std::complex<double>;

/// eta(tau) including q^{1/24}, via SL_2(Z) reduction to Im tau >= sqrt(3)/2.
Complex eta_numeric(Complex tau);
Complex eval_numeric(const EtaQuotient& e, Complex tau);
/// J(tau) = E_4^3 / Delta - 744.
Complex j_numeric(Complex tau);
/// (f | m T(m))(tau) = sum_{ad=m} sum_{b mod d} f((a tau + b)/d).
Complex hecke_numeric(const std::function<Complex(Complex)>& f, std::int64_t m, Complex tau);

struct Matrix2 {
  std::int64_t a, b, c, d;
};
/// Sample matrices of Gamma_0(M): translations, lower unipotents and a few
/// generic elements with lower-left entry divisible by M.
std::vector<Matrix2> gamma0_samples(std::int64_t M, int samples);
/// True iff f(gamma tau_k) agrees with f(tau_k) to 1e-8 relative for every
/// sampled gamma in Gamma_0(M) and sample point tau_k.
bool numeric_invariance_check(const std::function<Complex(Complex)>& f, std::int64_t M,
                              int samples = 6);
bool numeric_invariance_check(const EtaQuotient& e, std::int64_t M, int samples = 6);
/// Invariant on Gamma_0(N) and on no Gamma_0(N/p).
bool strictly_level(const std::function<Complex(Complex)>& f, std::int64_t N);

}  // namespace moonshine
