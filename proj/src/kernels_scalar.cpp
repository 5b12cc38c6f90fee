#include "steenrod/kernels.hpp"

#include <atomic>
#include <bit>

namespace steenrod::f2::kernels {

void xor_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

std::size_t popcount_scalar(const std::uint64_t* src, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(src[i]));
  return total;
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

namespace {

Isa detect() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) {
    current().store(Isa::scalar);
    return false;
  }
  current().store(isa);
  return true;
}

void reset_isa() { current().store(detect()); }

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  if (active_isa() == Isa::avx2) xor_into_avx2(dst, src, n);
  else xor_into_scalar(dst, src, n);
}

std::size_t popcount(const std::uint64_t* src, std::size_t n) {
  if (active_isa() == Isa::avx2) return popcount_avx2(src, n);
  return popcount_scalar(src, n);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace steenrod::f2::kernels
