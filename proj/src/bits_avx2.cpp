#include "qctl/bits.hpp"

#if defined(QCTL_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace qctl::bits {

namespace {

#define QCTL_AVX2 __attribute__((target("avx2,popcnt")))

QCTL_AVX2 void v_and(Word* d, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_and_si256(x, y));
  }
  for (; i < n; ++i) d[i] = a[i] & b[i];
}

QCTL_AVX2 void v_or(Word* d, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_or_si256(x, y));
  }
  for (; i < n; ++i) d[i] = a[i] | b[i];
}

QCTL_AVX2 void v_andnot(Word* d, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot computes ~first & second
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(d + i), _mm256_andnot_si256(y, x));
  }
  for (; i < n; ++i) d[i] = a[i] & ~b[i];
}

QCTL_AVX2 bool v_any(const Word* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    if (!_mm256_testz_si256(x, x)) return true;
  }
  for (; i < n; ++i)
    if (a[i]) return true;
  return false;
}

QCTL_AVX2 bool v_intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(x, y)) return true;
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

QCTL_AVX2 bool v_subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // testc: (~y & x) == 0
    if (!_mm256_testc_si256(y, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

QCTL_AVX2 bool v_equal(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i diff = _mm256_xor_si256(x, y);
    if (!_mm256_testz_si256(diff, diff)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

QCTL_AVX2 std::size_t v_popcount(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
  return c;
}

#undef QCTL_AVX2

const Kernels kAvx2{"avx2", v_and, v_or, v_andnot, v_any, v_intersects, v_subset, v_equal,
                    v_popcount};

}  // namespace

const Kernels* avx2_kernels() { return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr; }

}  // namespace qctl::bits

#else

namespace qctl::bits {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace qctl::bits

#endif
