#include "qcong/kernels.hpp"

// Scalar reference kernels. These are the semantic ground truth the SIMD
// variants are tested against, and the fallback on CPUs without AVX2.

namespace qcong::kernels {

namespace {

template <class T>
struct Wide;
template <>
struct Wide<uint8_t> {
  using type = uint32_t;
};
template <>
struct Wide<uint16_t> {
  using type = uint64_t;
};
template <>
struct Wide<uint32_t> {
  using type = uint64_t;
};
template <>
struct Wide<uint64_t> {
  using type = __uint128_t;
};

template <class T>
void add_mod_scalar(T* dst, const T* a, const T* b, size_t n, T m) {
  for (size_t i = 0; i < n; ++i) {
    T t = static_cast<T>(a[i] + b[i]);  // < 2m <= m^2, fits
    dst[i] = t >= m ? static_cast<T>(t - m) : t;
  }
}

template <class T>
void sub_mod_scalar(T* dst, const T* a, const T* b, size_t n, T m) {
  for (size_t i = 0; i < n; ++i) {
    T t = a[i] >= b[i] ? static_cast<T>(a[i] - b[i]) : static_cast<T>(a[i] + m - b[i]);
    dst[i] = t;
  }
}

template <class T>
void scale_mod_scalar(T* dst, const T* src, size_t n, T c, T m) {
  using W = typename Wide<T>::type;
  for (size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<T>(static_cast<W>(src[i]) * c % m);
  }
}

template <class T>
void axpy_mod_scalar(T* dst, const T* src, size_t n, T c, T m) {
  using W = typename Wide<T>::type;
  for (size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<T>((static_cast<W>(src[i]) * c + dst[i]) % m);
  }
}

template <class T>
void prefix_add_scalar(T* buf, size_t n, size_t s, T m) {
  for (size_t i = s; i < n; ++i) {
    T t = static_cast<T>(buf[i] + buf[i - s]);
    buf[i] = t >= m ? static_cast<T>(t - m) : t;
  }
}

template <class T>
void prefix_sub_scalar(T* buf, size_t n, size_t s, T m) {
  for (size_t i = s; i < n; ++i) {
    T a = buf[i], b = buf[i - s];
    buf[i] = a >= b ? static_cast<T>(a - b) : static_cast<T>(a + m - b);
  }
}

template <class T>
void suffix_add_scalar(T* buf, size_t n, size_t s, T m) {
  if (n <= s) return;
  for (size_t i = n; i-- > s;) {
    T t = static_cast<T>(buf[i] + buf[i - s]);
    buf[i] = t >= m ? static_cast<T>(t - m) : t;
  }
}

template <class T>
void suffix_sub_scalar(T* buf, size_t n, size_t s, T m) {
  if (n <= s) return;
  for (size_t i = n; i-- > s;) {
    T a = buf[i], b = buf[i - s];
    buf[i] = a >= b ? static_cast<T>(a - b) : static_cast<T>(a + m - b);
  }
}

template <class T>
constexpr Ops<T> make_scalar_table() {
  return Ops<T>{
      &add_mod_scalar<T>,   &sub_mod_scalar<T>,    &scale_mod_scalar<T>,  &axpy_mod_scalar<T>,
      &prefix_add_scalar<T>, &prefix_sub_scalar<T>, &suffix_add_scalar<T>, &suffix_sub_scalar<T>,
  };
}

}

namespace detail {

template <class T>
const Ops<T>& scalar_table() {
  static const Ops<T> table = make_scalar_table<T>();
  return table;
}

template const Ops<uint8_t>& scalar_table<uint8_t>();
template const Ops<uint16_t>& scalar_table<uint16_t>();
template const Ops<uint32_t>& scalar_table<uint32_t>();
template const Ops<uint64_t>& scalar_table<uint64_t>();

}

}
