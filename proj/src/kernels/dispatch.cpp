#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace satlab::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const Table& resolve() {
  const char* env = std::getenv("SATLAB_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
  if (const Table* t = avx2_table()) return *t;
  if (const Table* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const Table* avx2_table() { return cpu_has_avx2() ? avx2_table_compiled() : nullptr; }

const Table* neon_table() { return neon_table_compiled(); }

const Table& active() {
  static const Table& t = resolve();
  return t;
}

}  // namespace satlab::kernels
