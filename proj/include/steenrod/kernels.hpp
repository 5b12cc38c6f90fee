#pragma once

// Word-level XOR kernels behind F2 row elimination. The scalar version is the
// reference; the AVX2 version is compiled with a target attribute and chosen
// at runtime when the CPU reports support.

#include <cstddef>
#include <cstdint>

namespace steenrod::f2::kernels {

enum class Isa { scalar, avx2 };

void xor_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void xor_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);

std::size_t popcount_scalar(const std::uint64_t* src, std::size_t n);
std::size_t popcount_avx2(const std::uint64_t* src, std::size_t n);

bool cpu_has_avx2();

// Currently dispatched ISA. set_isa(avx2) on a machine without AVX2 falls
// back to scalar and returns false.
Isa active_isa();
bool set_isa(Isa isa);
void reset_isa();

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
std::size_t popcount(const std::uint64_t* src, std::size_t n);

const char* isa_name(Isa isa);

}  // namespace steenrod::f2::kernels
