#include <algorithm>
#include <functional>
#include <mutex>

#include "moonshine/error.hpp"
#include "moonshine/module.hpp"
#include "moonshine/rademacher.hpp"

namespace moonshine {

const ClassificationRegion& default_classification_region() {
  static const ClassificationRegion region{{2, 17}, {3, 10}, {5, 6}, {7, 5}, {13, 3}};
  return region;
}

namespace {

// p-group shapes of height exactly h with |G_p| <= p^cap.
std::vector<std::vector<int>> p_layers(int h, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> r(static_cast<std::size_t>(h), 0);
  std::function<void(int, int)> rec = [&](int j, int used) {
    if (j == 0) {
      if (r[h - 1] > 0) out.push_back(r);
      return;
    }
    for (int k = 0; used + k * j <= cap; ++k) {
      r[j - 1] = k;
      rec(j - 1, used + k * j);
    }
    r[j - 1] = 0;
  };
  if (h == 0) return {{}};
  rec(h, 0);
  return out;
}

Integer cached_content(const LevelCombination& terms) {
  static std::mutex mu;
  static std::map<LevelCombination, Integer> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(terms);
    if (it != cache.end()) return it->second;
  }
  const Integer c = combination_content(terms);
  std::lock_guard lock(mu);
  return cache.emplace(terms, c).first->second;
}

}  // namespace

std::vector<AbelianShape> genus_zero_shapes(const ClassificationRegion& region) {
  std::vector<AbelianShape> out;
  for (std::int64_t E : genus_zero_levels()) {
    const auto f = arith::factor(E);
    bool inside = true;
    for (const auto& [p, e] : f) inside = inside && region.count(p) && region.at(p) >= e;
    if (!inside) continue;
    std::vector<std::vector<std::vector<int>>> per;
    for (const auto& [p, e] : f) per.push_back(p_layers(e, region.at(p)));
    std::vector<std::size_t> idx(per.size(), 0);
    if (per.empty()) {
      out.push_back(AbelianShape{});
      continue;
    }
    while (true) {
      AbelianShape g;
      for (std::size_t i = 0; i < per.size(); ++i) g.layers[f[i].first] = per[i][idx[i]];
      out.push_back(std::move(g));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == per[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const AbelianShape& a, const AbelianShape& b) {
    const Integer oa = a.order(), ob = b.order();
    return oa != ob ? oa < ob : a < b;
  });
  return out;
}

ClassificationEntry classify_shape(const AbelianShape& g) {
  ClassificationEntry e;
  e.shape = g;
  for (const auto& spec : c2_congruences(g)) {
    const Integer content = cached_content(spec.terms);
    if (!mpz_divisible_p(content.get_mpz_t(), spec.modulus.get_mpz_t())) {
      e.reason = "integrality: " + format_combination(spec.terms) + " is not 0 mod " + spec.modulus.get_str();
      return e;
    }
  }
  e.integral = true;
  const GroupDescriptor G = GroupDescriptor::from_shape(g);
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto& [v, n] : G.order_counts()) counts[v] = n.get_si();
  const std::int64_t n0 = nonneg_threshold(counts);
  const std::int64_t limit = std::max({n0, std::int64_t{100}, conservative_prefix(G.element_orders())});
  const TraceAssignment R = hauptmodul_assignment(G, limit + 1);
  const auto blocks = character_blocks(G);
  const auto F = multiplicity_series(G, blocks, R);
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::int64_t n = F[i].valuation(); n <= limit; ++n) {
      const Rational x = F[i].coeff(n);
      if (x.get_den() != 1) {
        e.integral = false;
        e.reason = "integrality: " + blocks[i].label + " at q^" + std::to_string(n);
        return e;
      }
      if (x < 0) {
        e.reason = "nonnegativity: " + blocks[i].label + " at q^" + std::to_string(n);
        return e;
      }
    }
  e.nonnegative = true;
  e.accepted = true;
  e.reason = "checked through q^" + std::to_string(limit) + ", analytic bound from n0 = " + std::to_string(n0);
  return e;
}

std::vector<ClassificationEntry> classify_abelian(const ClassificationRegion& region) {
  std::vector<ClassificationEntry> out;
  for (const auto& g : genus_zero_shapes(region)) out.push_back(classify_shape(g));
  return out;
}

bool in_published_table(const AbelianShape& g) {
  const auto layer = [&](std::int64_t p, int j) {
    auto it = g.layers.find(p);
    if (it == g.layers.end() || static_cast<int>(it->second.size()) < j) return 0;
    return it->second[j - 1];
  };
  std::vector<std::int64_t> primes;
  for (const auto& [p, r] : g.layers) primes.push_back(p);
  const auto only = [&](std::initializer_list<std::int64_t> ps) { return primes == std::vector<std::int64_t>(ps); };
  const int h2 = g.height(2), h3 = g.height(3), h5 = g.height(5);
  if (primes.empty()) return true;
  if (only({2})) {
    if (h2 > 4) return false;
    const int a = layer(2, 1), b = layer(2, 2), c = layer(2, 3), d = layer(2, 4);
    return a + 2 * b + 3 * c + 4 * d <= 16 && b + 2 * c + 3 * d <= 8 && c + 2 * d <= 4 && d <= 2 &&
           a + b + c + d <= 13;
  }
  if (only({2, 3})) {
    if (h2 == 1 && h3 == 1) {
      const int a = layer(2, 1), b = layer(3, 1);
      return a >= 1 && a <= 4 && b >= 1 && b <= 3;
    }
    if (h2 == 2 && h3 == 1) {
      const int a = layer(2, 1), b = layer(2, 2), c = layer(3, 1);
      return a + 2 * b <= 4 && b >= 1 && b <= 2 && c >= 1 && c <= 2;
    }
    if (h2 == 1 && h3 == 2) return layer(2, 1) == 1 && layer(3, 1) <= 1 && layer(3, 2) == 1;
    return false;
  }
  if (only({3})) return h3 <= 2 && layer(3, 1) + 2 * layer(3, 2) <= 9 && layer(3, 2) <= 3;
  if (only({2, 5})) {
    const int a = layer(2, 1), b = layer(5, 1);
    return h2 == 1 && h5 == 1 && a >= 1 && a <= 3 && b >= 1 && b <= 2;
  }
  if (only({5})) return h5 <= 2 && layer(5, 1) + 2 * layer(5, 2) <= 5 && layer(5, 2) <= 1;
  if (only({7})) return g.height(7) == 1 && layer(7, 1) <= 4;
  if (only({13})) return g.height(13) == 1 && layer(13, 1) <= 2;
  return false;
}

}  // namespace moonshine
