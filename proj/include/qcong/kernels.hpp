#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Modular coefficient kernels. Every series operation bottoms out in one of
// these passes over a contiguous block of residues stored in the smallest
// unsigned cell whose range holds modulus^2. Each kernel has a scalar
// reference implementation and, where profitable, an AVX2 variant; the
// active table is chosen once at startup (CPU probe, overridable via the
// QCONG_KERNELS environment variable or force_isa). Scalar and SIMD variants
// are equivalence-tested against each other.
//
// Contracts common to all kernels:
//   - every input residue lies in [0, m), m >= 2, m*m fits the cell type
//   - outputs are fully reduced into [0, m)
//   - in-place stride passes read operands as they were before the pass for
//     suffix_* (pure shifted combination) and as already-updated for
//     prefix_* (first-order recurrence along each residue class mod stride)

namespace qcong::kernels {

template <class T>
struct Ops {
  // dst[i] = (a[i] + b[i]) mod m
  void (*add_mod)(T* dst, const T* a, const T* b, size_t n, T m);
  // dst[i] = (a[i] - b[i]) mod m
  void (*sub_mod)(T* dst, const T* a, const T* b, size_t n, T m);
  // dst[i] = (c * src[i]) mod m
  void (*scale_mod)(T* dst, const T* src, size_t n, T c, T m);
  // dst[i] = (dst[i] + c * src[i]) mod m
  void (*axpy_mod)(T* dst, const T* src, size_t n, T c, T m);
  // ascending i from s: buf[i] = (buf[i] + buf[i-s]) mod m   [series / (1 - q^s)]
  void (*prefix_add)(T* buf, size_t n, size_t s, T m);
  // ascending i from s: buf[i] = (buf[i] - buf[i-s]) mod m   [series / (1 + q^s)]
  void (*prefix_sub)(T* buf, size_t n, size_t s, T m);
  // descending i to s: buf[i] = (buf[i] + old buf[i-s]) mod m  [series * (1 + q^s)]
  void (*suffix_add)(T* buf, size_t n, size_t s, T m);
  // descending i to s: buf[i] = (buf[i] - old buf[i-s]) mod m  [series * (1 - q^s)]
  void (*suffix_sub)(T* buf, size_t n, size_t s, T m);
};

enum class Isa { scalar, avx2 };

// Table selected at startup; all series code routes through this.
template <class T>
const Ops<T>& ops();

// Explicit variant access for equivalence tests. Returns nullptr when the
// requested ISA is not compiled in or not runnable on this machine.
template <class T>
const Ops<T>* ops_for(Isa isa);

bool avx2_supported();
Isa active_isa();
void force_isa(Isa isa);

std::string isa_name(Isa isa);

namespace detail {
template <class T>
const Ops<T>& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
template <class T>
const Ops<T>& avx2_table();
#endif
}

}
