// AVX2 kernel variants. Compiled with -mavx2 in its own translation unit;
// only reachable through the dispatch table after a runtime CPU probe.
//
// Reduction tricks used throughout (all inputs < m, m*m fits the cell):
//   add:  t = a + b < 2m fits the cell; min_epu(t, t - m) selects the
//         reduced representative because t - m wraps far above m when t < m.
//   sub:  t = a - b wraps; min_epu(t, t + m) symmetric argument.
//   u8 scale/axpy: widen to u16 and reduce with a floor(2^16/m) Barrett
//         multiply-high; remainder lands in [0, 2m) and one min-trick
//         finishes the reduction.

#if defined(__x86_64__) || defined(_M_X64)

#include "qcong/kernels.hpp"

#include <immintrin.h>

namespace qcong::kernels {

namespace {

// ---- u8 ----

inline __m256i reduce_once_u8(__m256i t, __m256i vm) {
  return _mm256_min_epu8(t, _mm256_sub_epi8(t, vm));
}

void add_mod_u8(uint8_t* dst, const uint8_t* a, const uint8_t* b, size_t n, uint8_t m) {
  const __m256i vm = _mm256_set1_epi8(static_cast<char>(m));
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i t = _mm256_add_epi8(va, vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce_once_u8(t, vm));
  }
  for (; i < n; ++i) {
    uint8_t t = static_cast<uint8_t>(a[i] + b[i]);
    dst[i] = t >= m ? static_cast<uint8_t>(t - m) : t;
  }
}

void sub_mod_u8(uint8_t* dst, const uint8_t* a, const uint8_t* b, size_t n, uint8_t m) {
  const __m256i vm = _mm256_set1_epi8(static_cast<char>(m));
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i t = _mm256_sub_epi8(va, vb);
    __m256i u = _mm256_add_epi8(t, vm);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epu8(t, u));
  }
  for (; i < n; ++i) {
    dst[i] = a[i] >= b[i] ? static_cast<uint8_t>(a[i] - b[i]) : static_cast<uint8_t>(a[i] + m - b[i]);
  }
}

// Barrett constants for the widened u16 domain.
struct BarrettU16 {
  __m256i inv;
  __m256i m;
};

inline BarrettU16 barrett_u16(uint8_t m) {
  uint16_t inv = static_cast<uint16_t>(65536u / m);
  return {_mm256_set1_epi16(static_cast<short>(inv)), _mm256_set1_epi16(static_cast<short>(m))};
}

inline __m256i barrett_reduce_u16(__m256i x, const BarrettU16& bc) {
  __m256i q = _mm256_mulhi_epu16(x, bc.inv);
  __m256i r = _mm256_sub_epi16(x, _mm256_mullo_epi16(q, bc.m));
  return _mm256_min_epu16(r, _mm256_sub_epi16(r, bc.m));  // [0, 2m) -> [0, m)
}

inline __m256i widen_lo_u8(__m256i v) { return _mm256_cvtepu8_epi16(_mm256_castsi256_si128(v)); }
inline __m256i widen_hi_u8(__m256i v) { return _mm256_cvtepu8_epi16(_mm256_extracti128_si256(v, 1)); }

inline __m256i narrow_u16_pair(__m256i lo, __m256i hi) {
  __m256i packed = _mm256_packus_epi16(lo, hi);
  return _mm256_permute4x64_epi64(packed, 0xD8);
}

void scale_mod_u8(uint8_t* dst, const uint8_t* src, size_t n, uint8_t c, uint8_t m) {
  const BarrettU16 bc = barrett_u16(m);
  const __m256i vc = _mm256_set1_epi16(static_cast<short>(c % m));
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i lo = barrett_reduce_u16(_mm256_mullo_epi16(widen_lo_u8(v), vc), bc);
    __m256i hi = barrett_reduce_u16(_mm256_mullo_epi16(widen_hi_u8(v), vc), bc);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), narrow_u16_pair(lo, hi));
  }
  for (; i < n; ++i) dst[i] = static_cast<uint8_t>(static_cast<uint32_t>(src[i]) * c % m);
}

void axpy_mod_u8(uint8_t* dst, const uint8_t* src, size_t n, uint8_t c, uint8_t m) {
  const BarrettU16 bc = barrett_u16(m);
  const __m256i vc = _mm256_set1_epi16(static_cast<short>(c % m));
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i lo = barrett_reduce_u16(_mm256_mullo_epi16(widen_lo_u8(vs), vc), bc);
    __m256i hi = barrett_reduce_u16(_mm256_mullo_epi16(widen_hi_u8(vs), vc), bc);
    lo = _mm256_add_epi16(lo, widen_lo_u8(vd));
    hi = _mm256_add_epi16(hi, widen_hi_u8(vd));
    lo = _mm256_min_epu16(lo, _mm256_sub_epi16(lo, bc.m));
    hi = _mm256_min_epu16(hi, _mm256_sub_epi16(hi, bc.m));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), narrow_u16_pair(lo, hi));
  }
  for (; i < n; ++i) dst[i] = static_cast<uint8_t>((static_cast<uint32_t>(src[i]) * c + dst[i]) % m);
}

// ---- generic lane helpers for u16 / u32 ----

template <class T>
struct Lanes;

template <>
struct Lanes<uint8_t> {
  static constexpr size_t width = 32;
  static inline __m256i add(__m256i a, __m256i b) { return _mm256_add_epi8(a, b); }
  static inline __m256i sub(__m256i a, __m256i b) { return _mm256_sub_epi8(a, b); }
  static inline __m256i minu(__m256i a, __m256i b) { return _mm256_min_epu8(a, b); }
  static inline __m256i splat(uint8_t v) { return _mm256_set1_epi8(static_cast<char>(v)); }
};

template <>
struct Lanes<uint16_t> {
  static constexpr size_t width = 16;
  static inline __m256i add(__m256i a, __m256i b) { return _mm256_add_epi16(a, b); }
  static inline __m256i sub(__m256i a, __m256i b) { return _mm256_sub_epi16(a, b); }
  static inline __m256i minu(__m256i a, __m256i b) { return _mm256_min_epu16(a, b); }
  static inline __m256i splat(uint16_t v) { return _mm256_set1_epi16(static_cast<short>(v)); }
};

template <>
struct Lanes<uint32_t> {
  static constexpr size_t width = 8;
  static inline __m256i add(__m256i a, __m256i b) { return _mm256_add_epi32(a, b); }
  static inline __m256i sub(__m256i a, __m256i b) { return _mm256_sub_epi32(a, b); }
  static inline __m256i minu(__m256i a, __m256i b) { return _mm256_min_epu32(a, b); }
  static inline __m256i splat(uint32_t v) { return _mm256_set1_epi32(static_cast<int>(v)); }
};

template <class T>
void add_mod_vec(T* dst, const T* a, const T* b, size_t n, T m) {
  using L = Lanes<T>;
  const __m256i vm = L::splat(m);
  size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i t = L::add(va, vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), L::minu(t, L::sub(t, vm)));
  }
  for (; i < n; ++i) {
    T t = static_cast<T>(a[i] + b[i]);
    dst[i] = t >= m ? static_cast<T>(t - m) : t;
  }
}

template <class T>
void sub_mod_vec(T* dst, const T* a, const T* b, size_t n, T m) {
  using L = Lanes<T>;
  const __m256i vm = L::splat(m);
  size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i t = L::sub(va, vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), L::minu(t, L::add(t, vm)));
  }
  for (; i < n; ++i) {
    dst[i] = a[i] >= b[i] ? static_cast<T>(a[i] - b[i]) : static_cast<T>(a[i] + m - b[i]);
  }
}

// Prefix passes are first-order recurrences; the vector path requires the
// source block to be final, i.e. stride >= lane count. Smaller strides fall
// back to the scalar loop.
template <class T, bool Add>
void prefix_pass_vec(T* buf, size_t n, size_t s, T m) {
  using L = Lanes<T>;
  size_t i = s;
  if (s >= L::width) {
    const __m256i vm = L::splat(m);
    for (; i + L::width <= n; i += L::width) {
      __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(buf + i));
      __m256i src = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(buf + i - s));
      __m256i t = Add ? L::add(cur, src) : L::sub(cur, src);
      __m256i r = Add ? L::minu(t, L::sub(t, vm)) : L::minu(t, L::add(t, vm));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(buf + i), r);
    }
  }
  for (; i < n; ++i) {
    if constexpr (Add) {
      T t = static_cast<T>(buf[i] + buf[i - s]);
      buf[i] = t >= m ? static_cast<T>(t - m) : t;
    } else {
      T a = buf[i], b = buf[i - s];
      buf[i] = a >= b ? static_cast<T>(a - b) : static_cast<T>(a + m - b);
    }
  }
}

// Suffix passes combine each cell with the pre-pass value s below it; in
// descending order the source is always still unwritten, so any stride
// vectorizes.
template <class T, bool Add>
void suffix_pass_vec(T* buf, size_t n, size_t s, T m) {
  using L = Lanes<T>;
  if (n <= s) return;
  const __m256i vm = L::splat(m);
  size_t remaining = n - s;
  size_t i = n;
  while (remaining >= L::width) {
    i -= L::width;
    remaining -= L::width;
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(buf + i));
    __m256i src = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(buf + i - s));
    __m256i t = Add ? L::add(cur, src) : L::sub(cur, src);
    __m256i r = Add ? L::minu(t, L::sub(t, vm)) : L::minu(t, L::add(t, vm));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(buf + i), r);
  }
  while (i-- > s) {
    if constexpr (Add) {
      T t = static_cast<T>(buf[i] + buf[i - s]);
      buf[i] = t >= m ? static_cast<T>(t - m) : t;
    } else {
      T a = buf[i], b = buf[i - s];
      buf[i] = a >= b ? static_cast<T>(a - b) : static_cast<T>(a + m - b);
    }
  }
}

}

namespace detail {

template <class T>
const Ops<T>& avx2_table() {
  static const Ops<T> table = [] {
    Ops<T> t = scalar_table<T>();  // scale/axpy stay scalar beyond u8
    t.add_mod = &add_mod_vec<T>;
    t.sub_mod = &sub_mod_vec<T>;
    t.prefix_add = &prefix_pass_vec<T, true>;
    t.prefix_sub = &prefix_pass_vec<T, false>;
    t.suffix_add = &suffix_pass_vec<T, true>;
    t.suffix_sub = &suffix_pass_vec<T, false>;
    return t;
  }();
  return table;
}

template <>
const Ops<uint8_t>& avx2_table<uint8_t>() {
  static const Ops<uint8_t> table = [] {
    Ops<uint8_t> t = scalar_table<uint8_t>();
    t.add_mod = &add_mod_u8;
    t.sub_mod = &sub_mod_u8;
    t.scale_mod = &scale_mod_u8;
    t.axpy_mod = &axpy_mod_u8;
    t.prefix_add = &prefix_pass_vec<uint8_t, true>;
    t.prefix_sub = &prefix_pass_vec<uint8_t, false>;
    t.suffix_add = &suffix_pass_vec<uint8_t, true>;
    t.suffix_sub = &suffix_pass_vec<uint8_t, false>;
    return t;
  }();
  return table;
}

// u64 cells keep the scalar implementation: the only u64-sized moduli in
// practice are huge prime powers far off the hot paths.
template <>
const Ops<uint64_t>& avx2_table<uint64_t>() {
  return scalar_table<uint64_t>();
}

template const Ops<uint16_t>& avx2_table<uint16_t>();
template const Ops<uint32_t>& avx2_table<uint32_t>();

}

}

#endif
