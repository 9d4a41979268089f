#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/arith.hpp"
#include "moonshine/cyclotomic.hpp"

namespace moonshine {

/// Finite abelian group prod_p prod_j (Z/p^j)^{r_{p,j}}; layers[p][j-1] = r_{p,j}.
struct AbelianShape {
  std::map<std::int64_t, std::vector<int>> layers;

  /// Throws DomainError on non-prime keys, negative entries or trailing zeros.
  void validate() const;
  Integer order() const;
  std::int64_t exponent() const;
  /// h_p, or 0 when p does not divide the order.
  int height(std::int64_t p) const;
  /// Cyclic factor orders p^j, primes ascending then j ascending.
  std::vector<std::int64_t> cyclic_factors() const;
  std::string to_string() const;

  friend bool operator==(const AbelianShape&, const AbelianShape&) = default;
  friend auto operator<=>(const AbelianShape&, const AbelianShape&) = default;
};

/// Parses "Z/7^4", "Z/2 x Z/4^2", "1" (trivial) style shape names.
AbelianShape parse_shape(const std::string& text);

struct ConjugacyClass {
  std::int64_t size = 1;
  std::int64_t order = 1;
  std::string label;
  /// chi[i] is the value of the i-th irreducible character on this class.
  std::vector<Cyclotomic> chi;
  /// Cycle type for permutation groups; empty when not supplied.
  std::vector<int> cycle_type;
};

struct ClassData {
  std::string name;
  std::vector<ConjugacyClass> classes;
  std::vector<std::int64_t> dims;

  std::int64_t group_order() const;
  std::size_t num_characters() const { return dims.size(); }
};

struct CharacterSummary {
  std::int64_t dim = 1;
  /// a_r = sum over elements of order r of conj(chi).
  std::map<std::int64_t, Integer> a;
};

using OrderCounts = std::map<std::int64_t, Integer>;

OrderCounts element_order_counts(const AbelianShape& g);
OrderCounts element_order_counts(const ClassData& g);

Integer pi_p(const AbelianShape& g, std::int64_t p, int t);
/// n may be the sentinel height(p)+1.
Integer c_p(const AbelianShape& g, std::int64_t p, int n, int t);

/// Character invariant n_p per prime; the value height(p)+1 marks a
/// character trivial on the p-part.
using Profile = std::map<std::int64_t, int>;

struct ProfileClass {
  Profile n;
  Integer count;
};

/// Characters are indexed in mixed radix over cyclic_factors(), first
/// factor least significant.
std::vector<std::int64_t> character_exponents(const AbelianShape& g, const Integer& index);
Profile conductor_profile(const AbelianShape& g, const std::vector<std::int64_t>& exponents);
std::vector<ProfileClass> enumerate_profiles(const AbelianShape& g);

/// Order sums prod_p c_p(n_p, t_p) attached to a profile, keyed by prod_p p^{t_p}.
std::map<std::int64_t, Integer> profile_order_sums(const AbelianShape& g, const Profile& n);

/// Exact sum of chi over each element order by enumerating all of G.
std::map<std::int64_t, Integer> brute_force_order_sums(const AbelianShape& g,
                                                       const std::vector<std::int64_t>& exponents);
std::map<std::int64_t, Integer> brute_force_order_sums(const AbelianShape& g, const Integer& index);

/// Runs brute_force_order_sums against profile_order_sums for every
/// character of g; returns the index of the first disagreement.
std::optional<Integer> lemma43_mismatch(const AbelianShape& g);

/// All shapes of order n.
std::vector<AbelianShape> abelian_shapes_of_order(std::int64_t n);

CharacterSummary character_summary(const ClassData& g, std::size_t i);
/// Checks sizes, identity class and both orthogonality relations; throws
/// DomainError("inconsistent character table") on failure.
bool validate_class_data(const ClassData& g);

ClassData s4_class_data();
/// Class data of an abelian group with every element its own class.
ClassData abelian_class_data(const AbelianShape& g);

}  // namespace moonshine
