#include "kernels_impl.hpp"

#include <bit>

namespace satlab::kernels {

namespace {

inline bool agrees(const std::uint64_t* row, std::size_t words, const std::uint64_t* target,
                   const std::uint64_t* mask) {
  for (std::size_t w = 0; w < words; ++w) {
    if ((row[w] ^ target[w]) & mask[w]) return false;
  }
  return true;
}

}  // namespace

std::size_t count_agree_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                               const std::uint64_t* target, const std::uint64_t* mask) {
  std::size_t c = 0;
  for (std::size_t r = 0; r < n; ++r) c += agrees(rows + r * words, words, target, mask);
  return c;
}

std::size_t first_agree_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                               const std::uint64_t* target, const std::uint64_t* mask) {
  for (std::size_t r = 0; r < n; ++r) {
    if (agrees(rows + r * words, words, target, mask)) return r;
  }
  return n;
}

std::size_t filter_agree_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                                const std::uint64_t* target, const std::uint64_t* mask,
                                std::uint32_t* out) {
  std::size_t k = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (agrees(rows + r * words, words, target, mask)) out[k++] = static_cast<std::uint32_t>(r);
  }
  return k;
}

void masked_popcount_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                            const std::uint64_t* mask, std::uint32_t* out) {
  for (std::size_t r = 0; r < n; ++r) {
    std::uint32_t c = 0;
    for (std::size_t w = 0; w < words; ++w) {
      c += static_cast<std::uint32_t>(std::popcount(rows[r * words + w] & mask[w]));
    }
    out[r] = c;
  }
}

std::uint64_t pext_scalar(std::uint64_t x, std::uint64_t mask) {
  std::uint64_t out = 0;
  int k = 0;
  while (mask) {
    const std::uint64_t low = mask & (~mask + 1);
    if (x & low) out |= std::uint64_t{1} << k;
    ++k;
    mask ^= low;
  }
  return out;
}

void project_scalar(const std::uint64_t* rows, std::size_t n, std::uint64_t mask, std::uint64_t* out) {
  for (std::size_t r = 0; r < n; ++r) out[r] = pext_scalar(rows[r], mask);
}

const Table& scalar_table() {
  static const Table t{"scalar",         count_agree_scalar,     first_agree_scalar,
                       filter_agree_scalar, masked_popcount_scalar, project_scalar};
  return t;
}

}  // namespace satlab::kernels
