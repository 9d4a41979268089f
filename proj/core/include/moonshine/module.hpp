#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moonshine/congruence.hpp"
#include "moonshine/etalab.hpp"
#include "moonshine/grouprep.hpp"
#include "moonshine/qseries.hpp"

namespace moonshine {

/// A finite group given either by an abelian shape or by class data.
struct GroupDescriptor {
  std::string name;
  std::optional<AbelianShape> abelian;
  std::optional<ClassData> classes;

  static GroupDescriptor from_shape(const AbelianShape& g);
  static GroupDescriptor from_classes(const ClassData& g);

  Integer order() const;
  OrderCounts order_counts() const;
  std::vector<std::int64_t> element_orders() const;
};

/// Irreducible characters sharing one multiplicity series. Abelian groups
/// are grouped by conductor profile; class data gives one block per character.
struct CharacterBlock {
  std::string label;
  std::int64_t dim = 1;
  Integer count = 1;
  /// a_r = sum over elements of order r of conj(chi).
  std::map<std::int64_t, Integer> a;
  /// Index into ClassData::dims when the group has class data.
  std::optional<std::size_t> index;
};

std::vector<CharacterBlock> character_blocks(const GroupDescriptor& g);

/// Building block of a trace series whose coefficient growth is known:
/// coefficients grow like exp(4 pi sqrt(rate * n)).
struct SeriesTerm {
  enum class Kind { hecke_j, bbar, hauptmodul, tensor };
  Kind kind = Kind::hecke_j;
  /// hecke_j: m; bbar: m; hauptmodul: N.
  std::int64_t m = 1;
  /// bbar: t.
  std::int64_t t = 0;
  /// tensor: cycle type.
  std::vector<int> cycle;
  Integer coeff = 1;
  /// Hecke operator applied afterwards (1 when none).
  std::int64_t lift = 1;
};

double growth_rate(const SeriesTerm& s);

/// One trace series R_g with its symbolic description.
struct TraceEntry {
  QSeries series = QSeries::zero(0, 1);
  std::vector<SeriesTerm> terms;
  /// Numeric evaluation, when cheap enough to support invariance checks.
  std::function<Complex(Complex)> numeric;
  /// Level on which the entry must be strictly modular.
  std::int64_t level = 1;
};

struct TraceAssignment {
  enum class Keying { order, cls };
  Keying keying = Keying::order;
  std::string mode;
  /// Keyed by element order, or by class label for class keying.
  std::map<std::int64_t, TraceEntry> by_order;
  std::map<std::string, TraceEntry> by_class;
  /// Pole order of R_e at infinity.
  std::int64_t depth = 1;

  const TraceEntry& identity() const;
  std::int64_t precision() const;
};

/// F_i = (1/|G|) sum_g conj(chi_i(g)) R_g for each character block.
std::vector<QSeriesRational> multiplicity_series(const GroupDescriptor& g,
                                                 const std::vector<CharacterBlock>& blocks,
                                                 const TraceAssignment& R);
/// R_g = sum_i chi_i(g) F_i for every class; needs class data.
std::map<std::string, QSeries> reconstruct_traces(const ClassData& g,
                                                  const std::vector<QSeriesRational>& F);

TraceAssignment hauptmodul_assignment(const GroupDescriptor& g, std::int64_t precision);

/// m^{12t} (Delta(m tau)/Delta(tau))^t with exponents below `precision`.
QSeries bbar(std::int64_t m, std::int64_t t, std::int64_t precision);
/// m h / (m - 1); throws if not integral.
std::int64_t t_exponent(std::int64_t m, std::int64_t h);
/// lcm{ord(g) - 1 : g != e}, 1 for the trivial group.
std::int64_t h_of(const GroupDescriptor& g);

/// R_e = J|dT(d) and R_g = R_e - |G| bbar(ord g, t_{ord g}), followed by the
/// Hecke operator `lift` (1 for none). Exponents below `precision` of the result.
TraceAssignment theorem12_construct(const GroupDescriptor& g, std::int64_t d, std::int64_t precision,
                                    std::int64_t lift = 1);
/// Applies f -> f | pT(p) to every entry; p prime and coprime to depth and |G|.
TraceAssignment hecke_lift(const TraceAssignment& R, const GroupDescriptor& g, std::int64_t p);
/// Adds |G| J|pT(p) to R_e only.
TraceAssignment regularize(const TraceAssignment& R, const GroupDescriptor& g, std::int64_t p,
                           std::int64_t precision);

/// Smallest prime exceeding the last n <= scan_precision at which some
/// multiplicity is at most B = |min multiplicity|, coprime to depth and |G|.
std::int64_t find_lift_prime(const TraceAssignment& R, const GroupDescriptor& g,
                             std::int64_t scan_precision);

/// prod_i J(k_i tau) with exponents below `precision`.
QSeries tensor_trace(const std::vector<int>& cycle_type, std::int64_t precision);
/// Class-keyed tensor-power assignment; needs cycle types in the class data.
TraceAssignment tensor_assignment(const GroupDescriptor& g, std::int64_t precision);

enum class ProfileKind { trivial, regular, other };
std::string to_string(ProfileKind k);

struct LimitProfile {
  ProfileKind kind = ProfileKind::other;
  std::vector<double> values;
  /// Exact limits when the dominant growth comes from a single term.
  std::optional<std::vector<Rational>> exact;
};

struct MultiplicityRow {
  CharacterBlock block;
  QSeriesRational F;
};

struct ModuleCertificate {
  std::string group;
  std::string mode;
  std::int64_t depth = 1;
  Integer group_order = 1;
  std::vector<MultiplicityRow> rows;

  bool integral = false;
  std::string integrality_regime;
  std::optional<std::pair<std::size_t, std::int64_t>> non_integral_at;

  bool nonnegative = false;
  std::string nonneg_regime;
  std::int64_t nonneg_prefix = 0;
  std::optional<std::int64_t> threshold_n0;
  std::optional<std::pair<std::size_t, std::int64_t>> negative_at;

  std::optional<bool> level_check;
  LimitProfile limit;
  bool pass = false;
};

/// Multiplicities checked exactly on every exponent below `precision`. For
/// Hauptmodul assignments the window is extended to the analytic threshold
/// n0 and integrality is extended to all n by Sturm certificates.
ModuleCertificate certify(const TraceAssignment& R, const GroupDescriptor& g, std::int64_t precision,
                          bool check_level = true);

/// delta(mult_i(n)) = mult_i(n) / sum_j mult_j(n), summed over all characters.
std::vector<Rational> proportions(const ModuleCertificate& c, std::int64_t n);

/// Limiting proportions from the dominant growth terms of each F_i.
LimitProfile limit_profile(const GroupDescriptor& g, const std::vector<CharacterBlock>& blocks,
                           const TraceAssignment& R);

struct ClassificationEntry {
  AbelianShape shape;
  bool integral = false;
  bool nonnegative = false;
  bool accepted = false;
  std::string reason;
};

/// Caps on the p-part order per prime; absent primes are not searched.
using ClassificationRegion = std::map<std::int64_t, int>;
const ClassificationRegion& default_classification_region();
/// Every abelian shape whose exponent is a genus-zero level within the region.
std::vector<AbelianShape> genus_zero_shapes(const ClassificationRegion& region);
/// Accepts iff all lifting congruences hold and every multiplicity is a
/// nonnegative integer up to max(n0, 100, Sturm prefix).
ClassificationEntry classify_shape(const AbelianShape& g);
std::vector<ClassificationEntry> classify_abelian(const ClassificationRegion& region);
/// Membership in the published table of abelian groups with Hauptmodul moonshine.
bool in_published_table(const AbelianShape& g);

}  // namespace moonshine
