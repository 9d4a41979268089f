#include "moonshine/grouprep.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <regex>
#include <sstream>

#include "moonshine/error.hpp"

namespace moonshine {

void AbelianShape::validate() const {
  for (const auto& [p, r] : layers) {
    if (!arith::is_prime(p)) throw DomainError("shape key " + std::to_string(p) + " is not prime");
    if (r.empty() || r.back() == 0) throw DomainError("shape layers must have a nonzero last entry");
    for (int x : r)
      if (x < 0) throw DomainError("negative layer multiplicity");
  }
}

Integer AbelianShape::order() const {
  Integer n = 1;
  for (const auto& [p, r] : layers)
    for (std::size_t j = 0; j < r.size(); ++j) n *= arith::ipow(p, static_cast<unsigned>((j + 1) * r[j]));
  return n;
}

std::int64_t AbelianShape::exponent() const {
  std::int64_t e = 1;
  for (const auto& [p, r] : layers)
    for (std::size_t j = 0; j < r.size(); ++j) e *= p;
  return e;
}

int AbelianShape::height(std::int64_t p) const {
  auto it = layers.find(p);
  return it == layers.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<std::int64_t> AbelianShape::cyclic_factors() const {
  std::vector<std::int64_t> out;
  for (const auto& [p, r] : layers) {
    std::int64_t q = 1;
    for (std::size_t j = 0; j < r.size(); ++j) {
      q *= p;
      for (int k = 0; k < r[j]; ++k) out.push_back(q);
    }
  }
  return out;
}

std::string AbelianShape::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, r] : layers) {
    std::int64_t q = 1;
    for (std::size_t j = 0; j < r.size(); ++j) {
      q *= p;
      if (r[j] == 0) continue;
      if (!first) os << " x ";
      first = false;
      os << "Z/" << q;
      if (r[j] > 1) os << "^" << r[j];
    }
  }
  if (first) os << "1";
  return os.str();
}

AbelianShape parse_shape(const std::string& text) {
  AbelianShape g;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "1" || s.empty()) return g;
  static const std::regex factor(R"(Z/(\d+)(?:\^(\d+))?)");
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::smatch m;
    const std::string rest = s.substr(pos);
    if (!std::regex_search(rest, m, factor, std::regex_constants::match_continuous))
      throw ParseError("cannot parse group shape '" + text + "'");
    const std::int64_t q = std::stoll(m[1]);
    const int mult = m[2].matched ? std::stoi(m[2]) : 1;
    const auto f = arith::factor(q);
    if (f.size() != 1) throw ParseError("cyclic factor Z/" + m[1].str() + " is not a prime power");
    auto& r = g.layers[f[0].first];
    if (static_cast<int>(r.size()) < f[0].second) r.resize(f[0].second);
    r[f[0].second - 1] += mult;
    pos += m.length();
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != '*') throw ParseError("cannot parse group shape '" + text + "'");
      ++pos;
    }
  }
  g.validate();
  return g;
}

std::int64_t ClassData::group_order() const {
  std::int64_t n = 0;
  for (const auto& c : classes) n += c.size;
  return n;
}

Integer pi_p(const AbelianShape& g, std::int64_t p, int t) {
  if (t <= 0) return 0;
  auto it = g.layers.find(p);
  if (it == g.layers.end()) return 1;
  unsigned e = 0;
  for (std::size_t j = 0; j < it->second.size(); ++j)
    e += static_cast<unsigned>(std::min<int>(static_cast<int>(j) + 1, t - 1) * it->second[j]);
  return arith::ipow(p, e);
}

Integer c_p(const AbelianShape& g, std::int64_t p, int n, int t) {
  if (t > n) return 0;
  if (t == n) return -pi_p(g, p, t);
  return pi_p(g, p, t + 1) - pi_p(g, p, t);
}

namespace {

// Cartesian product over primes of (value, weight) choices.
template <class Choice, class Fn>
void for_each_product(const std::vector<std::pair<std::int64_t, std::vector<Choice>>>& per_prime, Fn fn) {
  std::vector<std::size_t> idx(per_prime.size(), 0);
  for (const auto& [p, c] : per_prime)
    if (c.empty()) return;
  while (true) {
    fn(idx);
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < per_prime[i].second.size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) return;
  }
}

int mobius(std::int64_t n) {
  int mu = 1;
  for (const auto& [p, e] : arith::factor(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::int64_t lcm_order(const std::vector<std::int64_t>& m, const std::vector<std::int64_t>& x) {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < m.size(); ++i) o = arith::lcm(o, m[i] / arith::gcd(x[i], m[i]));
  return o;
}

}  // namespace

OrderCounts element_order_counts(const AbelianShape& g) {
  std::vector<std::pair<std::int64_t, std::vector<std::pair<std::int64_t, Integer>>>> per;
  for (const auto& [p, r] : g.layers) {
    std::vector<std::pair<std::int64_t, Integer>> c;
    std::int64_t q = 1;
    for (int t = 0; t <= static_cast<int>(r.size()); ++t, q *= p)
      c.emplace_back(q, pi_p(g, p, t + 1) - pi_p(g, p, t));
    per.emplace_back(p, std::move(c));
  }
  OrderCounts out;
  if (per.empty()) return {{1, 1}};
  for_each_product(per, [&](const std::vector<std::size_t>& idx) {
    std::int64_t order = 1;
    Integer n = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      order *= per[i].second[idx[i]].first;
      n *= per[i].second[idx[i]].second;
    }
    out[order] += n;
  });
  return out;
}

OrderCounts element_order_counts(const ClassData& g) {
  OrderCounts out;
  for (const auto& c : g.classes) out[c.order] += c.size;
  return out;
}

std::vector<std::int64_t> character_exponents(const AbelianShape& g, const Integer& index) {
  const auto m = g.cyclic_factors();
  if (index < 0 || index >= g.order()) throw DomainError("character index out of range");
  std::vector<std::int64_t> k(m.size());
  Integer rest = index;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Integer mi = m[i];
    k[i] = Integer(rest % mi).get_si();
    rest /= mi;
  }
  return k;
}

Profile conductor_profile(const AbelianShape& g, const std::vector<std::int64_t>& exponents) {
  const auto m = g.cyclic_factors();
  if (exponents.size() != m.size()) throw DomainError("character exponent vector has wrong length");
  Profile n;
  for (const auto& [p, r] : g.layers) n[p] = static_cast<int>(r.size()) + 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::int64_t k = ((exponents[i] % m[i]) + m[i]) % m[i];
    if (k == 0) continue;
    const std::int64_t p = arith::factor(m[i])[0].first;
    const int depth = arith::valuation(Integer(k), static_cast<unsigned long>(p)) + 1;
    n[p] = std::min(n[p], depth);
  }
  return n;
}

std::vector<ProfileClass> enumerate_profiles(const AbelianShape& g) {
  std::vector<std::pair<std::int64_t, std::vector<std::pair<int, Integer>>>> per;
  for (const auto& [p, r] : g.layers) {
    const int h = static_cast<int>(r.size());
    const Integer gp = pi_p(g, p, h + 1);
    std::vector<std::pair<int, Integer>> c;
    for (int t = 1; t <= h; ++t) c.emplace_back(t, gp / pi_p(g, p, t) - gp / pi_p(g, p, t + 1));
    c.emplace_back(h + 1, 1);
    per.emplace_back(p, std::move(c));
  }
  std::vector<ProfileClass> out;
  if (per.empty()) return {ProfileClass{{}, 1}};
  for_each_product(per, [&](const std::vector<std::size_t>& idx) {
    ProfileClass pc{{}, 1};
    for (std::size_t i = 0; i < idx.size(); ++i) {
      pc.n[per[i].first] = per[i].second[idx[i]].first;
      pc.count *= per[i].second[idx[i]].second;
    }
    out.push_back(std::move(pc));
  });
  return out;
}

std::map<std::int64_t, Integer> profile_order_sums(const AbelianShape& g, const Profile& n) {
  std::vector<std::pair<std::int64_t, std::vector<std::pair<std::int64_t, Integer>>>> per;
  for (const auto& [p, r] : g.layers) {
    auto it = n.find(p);
    if (it == n.end()) throw DomainError("profile misses prime " + std::to_string(p));
    std::vector<std::pair<std::int64_t, Integer>> c;
    std::int64_t q = 1;
    for (int t = 0; t <= static_cast<int>(r.size()); ++t, q *= p) {
      Integer v = c_p(g, p, it->second, t);
      if (v != 0) c.emplace_back(q, std::move(v));
    }
    per.emplace_back(p, std::move(c));
  }
  std::map<std::int64_t, Integer> out;
  if (per.empty()) return {{1, 1}};
  for_each_product(per, [&](const std::vector<std::size_t>& idx) {
    std::int64_t order = 1;
    Integer v = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      order *= per[i].second[idx[i]].first;
      v *= per[i].second[idx[i]].second;
    }
    out[order] += v;
  });
  return out;
}

namespace {

// Element enumeration of an abelian group in mixed radix, shared by every
// character of the same group.
class Enumerator {
 public:
  explicit Enumerator(const AbelianShape& g) : m_(g.cyclic_factors()), e_(g.exponent()) {
    const Integer order = g.order();
    if (order > 100000) throw DomainError("brute force enumeration limited to groups of order <= 100000");
    const std::size_t n = order.get_ui();
    carry_.resize(n);
    std::vector<std::int64_t> x(m_.size(), 0);
    std::vector<std::int64_t> elem_order(n);
    for (std::size_t s = 0; s < n; ++s) {
      elem_order[s] = lcm_order(m_, x);
      std::size_t i = 0;
      while (i < m_.size() && ++x[i] == m_[i]) x[i++] = 0;
      if (s + 1 < n) carry_[s + 1] = static_cast<std::uint8_t>(i);
    }
    by_order_.resize(n);
    std::iota(by_order_.begin(), by_order_.end(), 0u);
    std::stable_sort(by_order_.begin(), by_order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return elem_order[a] < elem_order[b]; });
    for (std::size_t s = 0; s < n; ++s)
      if (s == 0 || elem_order[by_order_[s]] != elem_order[by_order_[s - 1]])
        groups_.emplace_back(elem_order[by_order_[s]], s);
    groups_.emplace_back(0, n);
  }

  std::map<std::int64_t, Integer> sums(const std::vector<std::int64_t>& k) const {
    if (k.size() != m_.size()) throw DomainError("character exponent vector has wrong length");
    std::vector<std::int64_t> delta(m_.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      const std::int64_t w = ((k[i] % m_[i] + m_[i]) % m_[i]) * (e_ / m_[i]) % e_;
      acc = (acc + w) % e_;
      delta[i] = acc;
    }
    // chi(g) = zeta_o^{ex[g]} with o = ord(chi).
    std::int64_t step = e_;
    for (std::int64_t d : delta) step = std::gcd(step, d);
    const std::int64_t o = e_ / step;
    const std::size_t n = carry_.size();
    std::vector<std::int64_t> ex(n);
    std::int64_t cur = 0;
    for (std::size_t s = 1; s < n; ++s) {
      cur += delta[carry_[s]];
      if (cur >= e_) cur -= e_;
      ex[s] = cur / step;
    }
    // The counts over each element order are constant on Galois orbits
    // {u*e : u a unit mod o}; check that, then sum the Ramanujan sums
    // mu(o/d) attached to the orbit of each divisor d.
    const OrbitTable& t = table(o);
    std::vector<std::int64_t> count(static_cast<std::size_t>(o), 0), seen(count);
    std::vector<std::int64_t> touched, reps;
    std::map<std::int64_t, Integer> out;
    for (std::size_t gi = 0; gi + 1 < groups_.size(); ++gi) {
      const auto [r, begin] = groups_[gi];
      const std::size_t end = groups_[gi + 1].second;
      touched.clear();
      for (std::size_t s = begin; s < end; ++s) {
        const std::int64_t e = ex[by_order_[s]];
        if (count[e]++ == 0) touched.push_back(e);
      }
      bool stable = true;
      for (std::int64_t e : touched) {
        const std::int64_t d = t.rep[e];
        if (count[e] != count[d]) stable = false;
        if (seen[d]++ == 0) reps.push_back(d);
      }
      std::int64_t total = 0;
      for (std::int64_t d : reps) {
        if (seen[d] != t.orbit_size[d]) stable = false;
        total += count[d] * t.mu[d];
        seen[d] = 0;
      }
      reps.clear();
      for (std::int64_t e : touched) count[e] = 0;
      if (!stable)
        throw Error("character sum over elements of order " + std::to_string(r) + " is not rational");
      if (total != 0) out[r] = Integer(static_cast<long>(total));
    }
    return out;
  }

 private:
  // Galois orbits of exponents mod o: representative gcd(e, o) mod o, orbit
  // size phi(o/d) and Ramanujan weight mu(o/d).
  struct OrbitTable {
    std::vector<std::int64_t> rep, orbit_size, mu;
  };

  const OrbitTable& table(std::int64_t o) const {
    auto it = tables_.find(o);
    if (it != tables_.end()) return it->second;
    OrbitTable t;
    t.rep.resize(o);
    t.orbit_size.assign(o, 0);
    t.mu.assign(o, 0);
    for (std::int64_t e = 0; e < o; ++e) t.rep[e] = std::gcd(e, o) % o;
    for (std::int64_t d : arith::divisors(o)) {
      t.orbit_size[d % o] = arith::euler_phi(o / d);
      t.mu[d % o] = mobius(o / d);
    }
    return tables_.emplace(o, std::move(t)).first->second;
  }

  std::vector<std::int64_t> m_;
  std::int64_t e_;
  mutable std::map<std::int64_t, OrbitTable> tables_;
  std::vector<std::uint8_t> carry_;
  std::vector<std::uint32_t> by_order_;
  std::vector<std::pair<std::int64_t, std::size_t>> groups_;
};

std::map<std::int64_t, Integer> drop_zeros(std::map<std::int64_t, Integer> m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

}  // namespace

std::map<std::int64_t, Integer> brute_force_order_sums(const AbelianShape& g,
                                                       const std::vector<std::int64_t>& exponents) {
  return Enumerator(g).sums(exponents);
}

std::map<std::int64_t, Integer> brute_force_order_sums(const AbelianShape& g, const Integer& index) {
  return brute_force_order_sums(g, character_exponents(g, index));
}

std::optional<Integer> lemma43_mismatch(const AbelianShape& g) {
  const Enumerator en(g);
  const auto m = g.cyclic_factors();
  std::map<Profile, std::map<std::int64_t, Integer>> formula;
  Profile sentinel;
  for (const auto& [p, r] : g.layers) sentinel[p] = static_cast<int>(r.size()) + 1;
  std::vector<std::int64_t> prime;
  for (std::int64_t q : m) prime.push_back(arith::factor(q)[0].first);
  std::vector<std::int64_t> k(m.size(), 0);
  Integer index = 0;
  while (true) {
    Profile n = sentinel;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (k[i] != 0) {
        std::int64_t x = k[i];
        int depth = 1;
        while (x % prime[i] == 0) x /= prime[i], ++depth;
        int& np = n[prime[i]];
        np = std::min(np, depth);
      }
    auto it = formula.find(n);
    if (it == formula.end()) it = formula.emplace(n, drop_zeros(profile_order_sums(g, n))).first;
    if (en.sums(k) != it->second) return index;
    std::size_t i = 0;
    while (i < m.size() && ++k[i] == m[i]) k[i++] = 0;
    if (i == m.size()) return std::nullopt;
    ++index;
  }
}

std::vector<AbelianShape> abelian_shapes_of_order(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::vector<std::vector<int>>>> per;
  for (const auto& [p, e] : arith::factor(n)) {
    std::vector<std::vector<int>> layers;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
      if (remaining == 0) {
        std::vector<int> r(static_cast<std::size_t>(parts.front()), 0);
        for (int x : parts) ++r[x - 1];
        layers.push_back(std::move(r));
        return;
      }
      for (int part = std::min(remaining, max_part); part >= 1; --part) {
        parts.push_back(part);
        rec(remaining - part, part);
        parts.pop_back();
      }
    };
    rec(e, e);
    per.emplace_back(p, std::move(layers));
  }
  std::vector<AbelianShape> out;
  if (per.empty()) return {AbelianShape{}};
  for_each_product(per, [&](const std::vector<std::size_t>& idx) {
    AbelianShape g;
    for (std::size_t i = 0; i < idx.size(); ++i) g.layers[per[i].first] = per[i].second[idx[i]];
    out.push_back(std::move(g));
  });
  std::sort(out.begin(), out.end());
  return out;
}

CharacterSummary character_summary(const ClassData& g, std::size_t i) {
  if (i >= g.num_characters()) throw DomainError("character index out of range");
  std::map<std::int64_t, Cyclotomic> acc;
  for (const auto& c : g.classes) {
    auto [it, fresh] = acc.try_emplace(c.order, Cyclotomic::integer(0));
    it->second = it->second + Integer(c.size) * c.chi.at(i).conj();
  }
  CharacterSummary s;
  s.dim = g.dims[i];
  for (const auto& [r, v] : acc) s.a[r] = v.to_integer();
  return s;
}

bool validate_class_data(const ClassData& g) {
  const auto fail = [] { throw DomainError("inconsistent character table"); };
  const std::size_t k = g.num_characters();
  if (g.classes.empty() || g.classes.size() != k) fail();
  if (g.classes[0].size != 1 || g.classes[0].order != 1) fail();
  const std::int64_t n = g.group_order();
  for (const auto& c : g.classes) {
    if (c.size < 1 || c.order < 1 || c.chi.size() != k || n % c.order != 0) fail();
  }
  for (std::size_t i = 0; i < k; ++i)
    if (!(g.classes[0].chi[i] == Cyclotomic::integer(g.dims[i]))) fail();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Cyclotomic s = Cyclotomic::integer(0);
      for (const auto& c : g.classes) s = s + Integer(c.size) * (c.chi[i] * c.chi[j].conj());
      if (!(s == Cyclotomic::integer(i == j ? n : 0))) fail();
    }
  for (std::size_t a = 0; a < g.classes.size(); ++a)
    for (std::size_t b = a; b < g.classes.size(); ++b) {
      Cyclotomic s = Cyclotomic::integer(0);
      for (std::size_t i = 0; i < k; ++i) s = s + g.classes[a].chi[i] * g.classes[b].chi[i].conj();
      const std::int64_t expect = a == b ? n / g.classes[a].size : 0;
      if (a == b && n % g.classes[a].size != 0) fail();
      if (!(s == Cyclotomic::integer(expect))) fail();
    }
  return true;
}

ClassData s4_class_data() {
  ClassData g;
  g.name = "S4";
  g.dims = {1, 1, 2, 3, 3};
  const auto col = [](std::initializer_list<int> v) {
    std::vector<Cyclotomic> out;
    for (int x : v) out.push_back(Cyclotomic::integer(x));
    return out;
  };
  g.classes = {
      {1, 1, "e", col({1, 1, 2, 3, 3}), {1, 1, 1, 1}},
      {6, 2, "(12)", col({1, -1, 0, 1, -1}), {2, 1, 1}},
      {3, 2, "(12)(34)", col({1, 1, 2, -1, -1}), {2, 2}},
      {8, 3, "(123)", col({1, 1, -1, 0, 0}), {3, 1}},
      {6, 4, "(1234)", col({1, -1, 0, -1, 1}), {4}},
  };
  return g;
}

ClassData abelian_class_data(const AbelianShape& g) {
  const Integer order = g.order();
  if (order > 4096) throw DomainError("abelian class data limited to groups of order <= 4096");
  const std::size_t n = order.get_ui();
  const auto m = g.cyclic_factors();
  const std::int64_t e = g.exponent();
  ClassData out;
  out.name = g.to_string();
  out.dims.assign(n, 1);
  std::vector<std::vector<std::int64_t>> elems;
  std::vector<std::int64_t> x(m.size(), 0);
  for (std::size_t s = 0; s < n; ++s) {
    elems.push_back(x);
    std::size_t i = 0;
    while (i < m.size() && ++x[i] == m[i]) x[i++] = 0;
  }
  for (const auto& gx : elems) {
    ConjugacyClass c;
    c.size = 1;
    c.label = out.classes.empty() ? "e" : "g" + std::to_string(out.classes.size());
    c.order = lcm_order(m, gx);
    for (const auto& k : elems) {
      std::int64_t ex = 0;
      for (std::size_t i = 0; i < m.size(); ++i) ex = (ex + k[i] * gx[i] % m[i] * (e / m[i])) % e;
      c.chi.push_back(Cyclotomic::root(e, ex));
    }
    out.classes.push_back(std::move(c));
  }
  return out;
}

}  // namespace moonshine
