// Integer polynomial products by Kronecker substitution: both operands are
// packed into single GMP integers with balanced (signed) slots wide enough
// that no slot of the product can overflow, multiplied once with GMP's
// asymptotically fast algorithms, and unpacked.

#include <gmp.h>

#include <algorithm>
#include <bit>
#include <cstring>

#include "moonshine/qseries.hpp"

namespace moonshine::detail {
namespace {

std::size_t max_bits(std::span<const Integer> a) {
  std::size_t m = 0;
  for (const auto& x : a)
    if (x != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  return m;
}

Integer from_limbs(const mp_limb_t* limbs, std::size_t n) {
  while (n > 0 && limbs[n - 1] == 0) --n;
  Integer r;
  if (n == 0) return r;
  mp_limb_t* dst = mpz_limbs_write(r.get_mpz_t(), static_cast<mp_size_t>(n));
  std::memcpy(dst, limbs, n * sizeof(mp_limb_t));
  mpz_limbs_finish(r.get_mpz_t(), static_cast<mp_size_t>(n));
  return r;
}

Integer pack(std::span<const Integer> a, std::size_t slot_limbs) {
  std::vector<mp_limb_t> pos(a.size() * slot_limbs, 0), neg(a.size() * slot_limbs, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int s = sgn(a[i]);
    if (s == 0) continue;
    const mpz_srcptr z = a[i].get_mpz_t();
    const std::size_t n = mpz_size(z);
    std::memcpy((s > 0 ? pos : neg).data() + i * slot_limbs, mpz_limbs_read(z), n * sizeof(mp_limb_t));
  }
  return from_limbs(pos.data(), pos.size()) - from_limbs(neg.data(), neg.size());
}

}  // namespace

std::vector<Integer> convolve_kronecker(std::span<const Integer> a, std::span<const Integer> b,
                                        std::size_t out_len) {
  std::vector<Integer> out(out_len);
  a = a.first(std::min(a.size(), out_len));
  b = b.first(std::min(b.size(), out_len));
  if (a.empty() || b.empty()) return out;
  const std::size_t ba = max_bits(a), bb = max_bits(b);
  if (ba == 0 || bb == 0) return out;

  const std::size_t terms = std::min(a.size(), b.size());
  const std::size_t bits = ba + bb + std::bit_width(terms) + 2;
  const std::size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

  Integer pa = pack(a, slot);
  Integer pb = (a.data() == b.data() && a.size() == b.size()) ? pa : pack(b, slot);
  Integer prod = pa * pb;

  const int sign = sgn(prod);
  if (sign == 0) return out;
  mpz_abs(prod.get_mpz_t(), prod.get_mpz_t());

  const mp_limb_t* limbs = mpz_limbs_read(prod.get_mpz_t());
  const std::size_t total = mpz_size(prod.get_mpz_t());
  Integer half, full;
  mpz_setbit(half.get_mpz_t(), slot * GMP_NUMB_BITS - 1);
  mpz_setbit(full.get_mpz_t(), slot * GMP_NUMB_BITS);

  bool carry = false;
  for (std::size_t j = 0; j < out_len; ++j) {
    const std::size_t lo = j * slot;
    Integer v;
    if (lo < total) v = from_limbs(limbs + lo, std::min(slot, total - lo));
    if (carry) v += 1;
    if (v >= half) {
      v -= full;
      carry = true;
    } else {
      carry = false;
    }
    if (sign < 0) v = -v;
    out[j] = std::move(v);
  }
  return out;
}

}  // namespace moonshine::detail
