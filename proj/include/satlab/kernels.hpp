#ifndef SATLAB_KERNELS_HPP_
#define SATLAB_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

// Bit-matrix inner loops. Rows are packed little-endian words, `words` per
// row, laid out contiguously. Every entry point has a portable scalar
// version; AVX2 (x86-64) and NEON (aarch64) versions are picked at runtime.
// Setting SATLAB_KERNELS=scalar in the environment forces the scalar path.
namespace satlab::kernels {

struct Table {
  const char* name;
  // Number of rows r with (row_r ^ target) & mask == 0.
  std::size_t (*count_agree)(const std::uint64_t* rows, std::size_t n, std::size_t words,
                             const std::uint64_t* target, const std::uint64_t* mask);
  // Lowest such row, or n when none.
  std::size_t (*first_agree)(const std::uint64_t* rows, std::size_t n, std::size_t words,
                             const std::uint64_t* target, const std::uint64_t* mask);
  // Writes the indices of all such rows to out, returns how many.
  std::size_t (*filter_agree)(const std::uint64_t* rows, std::size_t n, std::size_t words,
                              const std::uint64_t* target, const std::uint64_t* mask,
                              std::uint32_t* out);
  // out[r] = popcount(row_r & mask)
  void (*masked_popcount)(const std::uint64_t* rows, std::size_t n, std::size_t words,
                          const std::uint64_t* mask, std::uint32_t* out);
  // Single-word rows: out[r] = the bits of row_r selected by mask, packed
  // down (x86 pext semantics).
  void (*project)(const std::uint64_t* rows, std::size_t n, std::uint64_t mask, std::uint64_t* out);
};

const Table& scalar_table();
// nullptr when the CPU (or the build) lacks the instruction set.
const Table* avx2_table();
const Table* neon_table();

// Table used by the library; resolved once.
const Table& active();

std::uint64_t pext_scalar(std::uint64_t x, std::uint64_t mask);

}  // namespace satlab::kernels

#endif  // SATLAB_KERNELS_HPP_
