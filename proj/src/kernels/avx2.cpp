#include "kernels_impl.hpp"

#if defined(SATLAB_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace satlab::kernels {

namespace {

// 4-bit mask of lanes r..r+3 whose masked xor against target is zero
inline unsigned agree4(const std::uint64_t* rows, __m256i t, __m256i m) {
  const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows));
  const __m256i d = _mm256_and_si256(_mm256_xor_si256(v, t), m);
  const __m256i z = _mm256_cmpeq_epi64(d, _mm256_setzero_si256());
  return static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(z)));
}

inline bool agree1(std::uint64_t row, std::uint64_t t, std::uint64_t m) { return ((row ^ t) & m) == 0; }

std::size_t count_agree_avx2(const std::uint64_t* rows, std::size_t n, std::size_t words,
                             const std::uint64_t* target, const std::uint64_t* mask) {
  if (words != 1) return count_agree_scalar(rows, n, words, target, mask);
  const __m256i t = _mm256_set1_epi64x(static_cast<long long>(*target));
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(*mask));
  std::size_t c = 0;
  std::size_t r = 0;
  for (; r + 4 <= n; r += 4) c += static_cast<std::size_t>(std::popcount(agree4(rows + r, t, m)));
  for (; r < n; ++r) c += agree1(rows[r], *target, *mask);
  return c;
}

std::size_t first_agree_avx2(const std::uint64_t* rows, std::size_t n, std::size_t words,
                             const std::uint64_t* target, const std::uint64_t* mask) {
  if (words != 1) return first_agree_scalar(rows, n, words, target, mask);
  const __m256i t = _mm256_set1_epi64x(static_cast<long long>(*target));
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(*mask));
  std::size_t r = 0;
  for (; r + 4 <= n; r += 4) {
    const unsigned bits = agree4(rows + r, t, m);
    if (bits) return r + static_cast<std::size_t>(std::countr_zero(bits));
  }
  for (; r < n; ++r) {
    if (agree1(rows[r], *target, *mask)) return r;
  }
  return n;
}

std::size_t filter_agree_avx2(const std::uint64_t* rows, std::size_t n, std::size_t words,
                              const std::uint64_t* target, const std::uint64_t* mask,
                              std::uint32_t* out) {
  if (words != 1) return filter_agree_scalar(rows, n, words, target, mask, out);
  const __m256i t = _mm256_set1_epi64x(static_cast<long long>(*target));
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(*mask));
  std::size_t k = 0;
  std::size_t r = 0;
  for (; r + 4 <= n; r += 4) {
    unsigned bits = agree4(rows + r, t, m);
    while (bits) {
      out[k++] = static_cast<std::uint32_t>(r + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  for (; r < n; ++r) {
    if (agree1(rows[r], *target, *mask)) out[k++] = static_cast<std::uint32_t>(r);
  }
  return k;
}

// Nibble-table popcount per 64-bit lane.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3,
                                       1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

void masked_popcount_avx2(const std::uint64_t* rows, std::size_t n, std::size_t words,
                          const std::uint64_t* mask, std::uint32_t* out) {
  if (words != 1) {
    masked_popcount_scalar(rows, n, words, mask, out);
    return;
  }
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(*mask));
  std::size_t r = 0;
  alignas(32) std::uint64_t lanes[4];
  for (; r + 4 <= n; r += 4) {
    const __m256i v = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + r)), m);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), popcount_lanes(v));
    for (int j = 0; j < 4; ++j) out[r + j] = static_cast<std::uint32_t>(lanes[j]);
  }
  for (; r < n; ++r) out[r] = static_cast<std::uint32_t>(std::popcount(rows[r] & *mask));
}

void project_bmi2(const std::uint64_t* rows, std::size_t n, std::uint64_t mask, std::uint64_t* out) {
  for (std::size_t r = 0; r < n; ++r) out[r] = _pext_u64(rows[r], mask);
}

}  // namespace

const Table* avx2_table_compiled() {
  static const Table t{"avx2",           count_agree_avx2,     first_agree_avx2,
                       filter_agree_avx2, masked_popcount_avx2, project_bmi2};
  return &t;
}

}  // namespace satlab::kernels

#else

namespace satlab::kernels {
const Table* avx2_table_compiled() { return nullptr; }
}  // namespace satlab::kernels

#endif
