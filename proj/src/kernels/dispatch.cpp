#include <cstdlib>

#include "stiffkit/kernels.hpp"

namespace stiffkit::kernels {

#if defined(STIFFKIT_HAVE_AVX2_TU)
const Table& avx2_kernels();
#endif

const Table* avx2_table() {
#if defined(STIFFKIT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (supported) return &avx2_kernels();
#endif
  return nullptr;
}

const Table& active() {
  static const Table& table = [] () -> const Table& {
    const char* force = std::getenv("STIFFKIT_FORCE_SCALAR");
    if (force != nullptr && *force != '\0' && *force != '0') return scalar_table();
    if (const Table* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return table;
}

}  // namespace stiffkit::kernels
