#include "kernels_impl.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

// Two rows per 128-bit register. Only built on aarch64; not exercised by the
// x86 test machine.
namespace satlab::kernels {

namespace {

inline unsigned agree2(const std::uint64_t* rows, uint64x2_t t, uint64x2_t m) {
  const uint64x2_t v = vld1q_u64(rows);
  const uint64x2_t d = vandq_u64(veorq_u64(v, t), m);
  const uint64x2_t z = vceqzq_u64(d);
  return static_cast<unsigned>((vgetq_lane_u64(z, 0) & 1u) | ((vgetq_lane_u64(z, 1) & 1u) << 1));
}

inline bool agree1(std::uint64_t row, std::uint64_t t, std::uint64_t m) { return ((row ^ t) & m) == 0; }

std::size_t count_agree_neon(const std::uint64_t* rows, std::size_t n, std::size_t words,
                             const std::uint64_t* target, const std::uint64_t* mask) {
  if (words != 1) return count_agree_scalar(rows, n, words, target, mask);
  const uint64x2_t t = vdupq_n_u64(*target);
  const uint64x2_t m = vdupq_n_u64(*mask);
  std::size_t c = 0;
  std::size_t r = 0;
  for (; r + 2 <= n; r += 2) {
    const unsigned b = agree2(rows + r, t, m);
    c += (b & 1u) + (b >> 1);
  }
  for (; r < n; ++r) c += agree1(rows[r], *target, *mask);
  return c;
}

std::size_t first_agree_neon(const std::uint64_t* rows, std::size_t n, std::size_t words,
                             const std::uint64_t* target, const std::uint64_t* mask) {
  if (words != 1) return first_agree_scalar(rows, n, words, target, mask);
  const uint64x2_t t = vdupq_n_u64(*target);
  const uint64x2_t m = vdupq_n_u64(*mask);
  std::size_t r = 0;
  for (; r + 2 <= n; r += 2) {
    const unsigned b = agree2(rows + r, t, m);
    if (b & 1u) return r;
    if (b & 2u) return r + 1;
  }
  for (; r < n; ++r) {
    if (agree1(rows[r], *target, *mask)) return r;
  }
  return n;
}

std::size_t filter_agree_neon(const std::uint64_t* rows, std::size_t n, std::size_t words,
                              const std::uint64_t* target, const std::uint64_t* mask,
                              std::uint32_t* out) {
  if (words != 1) return filter_agree_scalar(rows, n, words, target, mask, out);
  const uint64x2_t t = vdupq_n_u64(*target);
  const uint64x2_t m = vdupq_n_u64(*mask);
  std::size_t k = 0;
  std::size_t r = 0;
  for (; r + 2 <= n; r += 2) {
    const unsigned b = agree2(rows + r, t, m);
    if (b & 1u) out[k++] = static_cast<std::uint32_t>(r);
    if (b & 2u) out[k++] = static_cast<std::uint32_t>(r + 1);
  }
  for (; r < n; ++r) {
    if (agree1(rows[r], *target, *mask)) out[k++] = static_cast<std::uint32_t>(r);
  }
  return k;
}

void masked_popcount_neon(const std::uint64_t* rows, std::size_t n, std::size_t words,
                          const std::uint64_t* mask, std::uint32_t* out) {
  if (words != 1) {
    masked_popcount_scalar(rows, n, words, mask, out);
    return;
  }
  const uint64x2_t m = vdupq_n_u64(*mask);
  std::size_t r = 0;
  for (; r + 2 <= n; r += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(rows + r), m);
    const uint64x2_t c = vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(vreinterpretq_u8_u64(v)))));
    out[r] = static_cast<std::uint32_t>(vgetq_lane_u64(c, 0));
    out[r + 1] = static_cast<std::uint32_t>(vgetq_lane_u64(c, 1));
  }
  for (; r < n; ++r) out[r] = static_cast<std::uint32_t>(__builtin_popcountll(rows[r] & *mask));
}

}  // namespace

const Table* neon_table_compiled() {
  static const Table t{"neon",           count_agree_neon,     first_agree_neon,
                       filter_agree_neon, masked_popcount_neon, project_scalar};
  return &t;
}

}  // namespace satlab::kernels

#else

namespace satlab::kernels {
const Table* neon_table_compiled() { return nullptr; }
}  // namespace satlab::kernels

#endif
