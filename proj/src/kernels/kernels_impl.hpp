#ifndef SATLAB_KERNELS_IMPL_HPP_
#define SATLAB_KERNELS_IMPL_HPP_

#include "satlab/kernels.hpp"

namespace satlab::kernels {

// Scalar entry points, shared so the vector tables can fall back to them
// for multi-word rows.
std::size_t count_agree_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                               const std::uint64_t* target, const std::uint64_t* mask);
std::size_t first_agree_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                               const std::uint64_t* target, const std::uint64_t* mask);
std::size_t filter_agree_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                                const std::uint64_t* target, const std::uint64_t* mask,
                                std::uint32_t* out);
void masked_popcount_scalar(const std::uint64_t* rows, std::size_t n, std::size_t words,
                            const std::uint64_t* mask, std::uint32_t* out);
void project_scalar(const std::uint64_t* rows, std::size_t n, std::uint64_t mask, std::uint64_t* out);

// Defined in the ISA-specific translation units; return nullptr when not
// compiled in.
const Table* avx2_table_compiled();
const Table* neon_table_compiled();

}  // namespace satlab::kernels

#endif  // SATLAB_KERNELS_IMPL_HPP_
