#include "qcong/kernels.hpp"

#include "qcong/error.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace qcong::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("QCONG_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!cpu_has_avx2()) raise(ErrorKind::bad_argument, "QCONG_KERNELS=avx2 but CPU lacks AVX2");
      return Isa::avx2;
    }
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& isa_state() {
  static std::atomic<Isa> state{initial_isa()};
  return state;
}

}

bool avx2_supported() { return cpu_has_avx2(); }

Isa active_isa() { return isa_state().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) raise(ErrorKind::bad_argument, "AVX2 not available on this CPU");
  isa_state().store(isa, std::memory_order_relaxed);
}

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

template <class T>
const Ops<T>* ops_for(Isa isa) {
  if (isa == Isa::scalar) return &detail::scalar_table<T>();
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return &detail::avx2_table<T>();
#endif
  return nullptr;
}

template <class T>
const Ops<T>& ops() {
  const Ops<T>* t = ops_for<T>(active_isa());
  return t ? *t : detail::scalar_table<T>();
}

template const Ops<uint8_t>& ops<uint8_t>();
template const Ops<uint16_t>& ops<uint16_t>();
template const Ops<uint32_t>& ops<uint32_t>();
template const Ops<uint64_t>& ops<uint64_t>();

template const Ops<uint8_t>* ops_for<uint8_t>(Isa);
template const Ops<uint16_t>* ops_for<uint16_t>(Isa);
template const Ops<uint32_t>* ops_for<uint32_t>(Isa);
template const Ops<uint64_t>* ops_for<uint64_t>(Isa);

}
