#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moonshine/grouprep.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// sum a_i T_{N_i} as (N_i, a_i) pairs.
using LevelCombination = std::vector<std::pair<std::int64_t, Integer>>;

enum class CertificateStatus { pass, fail, partial };

struct CongruenceCertificate {
  LevelCombination terms;
  Integer modulus = 1;
  std::int64_t checked_prefix = 0;
  std::int64_t sturm_bound = 0;
  CertificateStatus status = CertificateStatus::fail;
  /// First exponent whose coefficient is not divisible, when status is fail.
  std::optional<std::int64_t> first_bad;
};

std::string to_string(CertificateStatus s);
/// "T1 - T2 - T3 + T6" style rendering.
std::string format_combination(const LevelCombination& terms);

/// [SL_2(Z) : Gamma_0(N)].
std::int64_t index_gamma0(std::int64_t N);
/// s * (index_gamma0(lcm(levels)) - 1).
std::int64_t sturm_prefix(const std::vector<std::int64_t>& levels, std::int64_t s);
/// Largest pole order, in q-units rounded up, of any T_N over the cusps of
/// Gamma_0(lcm(levels)).
std::int64_t pole_order(const std::vector<std::int64_t>& levels);
/// sturm_prefix with the pole order computed from the cusps.
std::int64_t conservative_prefix(const std::vector<std::int64_t>& levels);

/// sum a_i T_{N_i} with exponents below `precision`.
QSeries combination_series(const LevelCombination& terms, std::int64_t precision);

/// Checks every coefficient from q^{-1} through q^{prefix}; prefix defaults
/// to the conservative Sturm prefix. A passing check on a prefix shorter than
/// the Sturm bound reports status partial.
CongruenceCertificate verify_congruence(const LevelCombination& terms, const Integer& modulus,
                                        std::optional<std::int64_t> prefix = std::nullopt);

/// gcd of the coefficients of the combination on q^{-1} .. q^{prefix}.
Integer combination_content(const LevelCombination& terms,
                            std::optional<std::int64_t> prefix = std::nullopt);

struct PrimePowerRelation {
  int k = 0;
  /// Coefficients of the levels in input order, first entry 1, reduced mod p^k.
  std::vector<Integer> witness;
};

/// Largest k admitting T_{levels[0]} + sum_{i>0} a_i T_{levels[i]} = 0 mod p^k
/// on the exponents -1, 0, 1, .., prefix.
PrimePowerRelation max_prime_power_relation(const std::vector<std::int64_t>& levels, std::int64_t p,
                                            std::int64_t prefix);

struct CongruenceSpec {
  LevelCombination terms;
  Integer modulus;
};

/// The congruences of the abelian lifting criterion; throws DomainError if
/// some required level is not genus zero.
std::vector<CongruenceSpec> c2_congruences(const AbelianShape& g);

/// The maximal congruences between Hauptmoduln listed in the literature
/// table of moduli (14 rows).
const std::vector<CongruenceSpec>& hauptmodul_congruence_table();

}  // namespace moonshine
