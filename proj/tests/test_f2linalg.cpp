#include <doctest.h>

#include <random>

#include "steenrod/f2linalg.hpp"
#include "steenrod/kernels.hpp"

using namespace steenrod::f2;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (bit(rng)) m.set(r, c);
  return m;
}

// Enumerates every vector of the given length (length <= 16).
std::vector<BitVector> all_vectors(std::size_t length) {
  std::vector<BitVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << length); ++mask) {
    BitVector v(length);
    for (std::size_t i = 0; i < length; ++i)
      if (mask >> i & 1) v.set(i);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("rref on the identity, all-ones and zero matrices") {
  auto id = rref(BitMatrix::identity(2));
  CHECK(id.echelon == BitMatrix::identity(2));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1});

  auto ones = rref(BitMatrix::from_bits({{1, 1}, {1, 1}}));
  CHECK(ones.echelon == BitMatrix::from_bits({{1, 1}, {0, 0}}));
  CHECK(ones.pivots == std::vector<std::size_t>{0});

  auto zero = rref(BitMatrix(3, 3));
  CHECK(zero.echelon.is_zero());
  CHECK(zero.pivots.empty());

  auto empty = rref(BitMatrix(0, 0));
  CHECK(empty.pivots.empty());
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(BitMatrix::identity(4)).empty());
  CHECK(kernel_basis(BitMatrix(1, 3)).size() == 3);

  auto m = BitMatrix::from_bits({{1, 1}});
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  // Exhaustive oracle: the only nonzero kernel vector of [1 1] is (1,1).
  std::vector<BitVector> nonzero_kernel;
  for (const auto& v : all_vectors(2))
    if (!v.is_zero() && (m * v).is_zero()) nonzero_kernel.push_back(v);
  REQUIRE(nonzero_kernel.size() == 1);
  CHECK(k[0] == nonzero_kernel[0]);
}

TEST_CASE("solve examples and errors") {
  auto b = BitVector::from_bits({1, 0, 1});
  auto x = solve(BitMatrix::identity(3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK_FALSE(solve(BitMatrix(2, 2), BitVector::from_bits({1, 0})).has_value());

  auto m = BitMatrix::from_bits({{1, 1}, {0, 0}});
  auto rhs = BitVector::from_bits({1, 0});
  auto sol = solve(m, rhs);
  REQUIRE(sol.has_value());
  std::vector<BitVector> exhaustive;
  for (const auto& v : all_vectors(2))
    if (m * v == rhs) exhaustive.push_back(v);
  CHECK(exhaustive.size() == 2);
  CHECK(std::find(exhaustive.begin(), exhaustive.end(), *sol) != exhaustive.end());

  CHECK_THROWS_AS(solve(m, BitVector(3)), DimensionMismatch);
}

TEST_CASE("rank-nullity and rref idempotence on random matrices up to 512x512") {
  std::mt19937_64 rng(0x5eed);
  const std::size_t shapes[][2] = {{1, 1}, {3, 7}, {17, 5}, {64, 64}, {65, 130}, {200, 90}, {512, 512}};
  for (auto [r, c] : shapes) {
    auto m = random_matrix(rng, r, c, 0.3);
    auto ker = kernel_basis(m);
    auto rk = rank(m);
    CHECK(ker.size() + rk == c);
    CHECK(rk == rank(m.transpose()));
    for (const auto& v : ker) CHECK((m * v).is_zero());
    CHECK(Subspace(c, ker).dim() == ker.size());

    auto once = rref(m);
    auto twice = rref(once.echelon);
    CHECK(twice.echelon == once.echelon);
    CHECK(twice.pivots == once.pivots);
    for (std::size_t i = 1; i < once.pivots.size(); ++i) CHECK(once.pivots[i - 1] < once.pivots[i]);
  }
}

TEST_CASE("solve returns exact solutions exactly when b is in the column space") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_matrix(rng, 20, 12, 0.2);
    auto x0 = random_matrix(rng, 1, 12).row(0);
    auto b_in = m * x0;
    auto sol = solve(m, b_in);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b_in);

    auto b = random_matrix(rng, 1, 20).row(0);
    auto s2 = solve(m, b);
    Subspace colspace(20);
    for (std::size_t c = 0; c < 12; ++c) colspace.insert(m.column(c));
    CHECK(s2.has_value() == colspace.contains(b));
    if (s2) CHECK(m * *s2 == b);
  }
}

TEST_CASE("subspace intersection matches brute force on small ambient spaces") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_matrix(rng, 3, 8);
    auto b = random_matrix(rng, 4, 8);
    Subspace u(8), w(8);
    for (std::size_t i = 0; i < 3; ++i) u.insert(a.row(i));
    for (std::size_t i = 0; i < 4; ++i) w.insert(b.row(i));
    auto inter = u.intersect(w);
    std::size_t count = 0;
    for (const auto& v : all_vectors(8))
      if (u.contains(v) && w.contains(v)) ++count;
    CHECK(count == (std::size_t{1} << inter.dim()));
    CHECK(u.sum(w).dim() + inter.dim() == u.dim() + w.dim());
  }
}

TEST_CASE("kernel_of_images agrees with kernel_basis of the transpose") {
  std::mt19937_64 rng(77);
  auto m = random_matrix(rng, 40, 25, 0.25);  // rows are images of 40 source vectors
  std::vector<BitVector> images;
  for (std::size_t r = 0; r < 40; ++r) images.push_back(m.row(r));
  auto k1 = kernel_of_images(images, 25);
  auto k2 = kernel_basis(m.transpose());
  CHECK(k1.size() == k2.size());
  Subspace s1(40, k1);
  for (const auto& v : k2) CHECK(s1.contains(v));
}

TEST_CASE("scalar and AVX2 kernels are equivalent") {
  using namespace steenrod::f2::kernels;
  std::mt19937_64 rng(99);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 33u, 257u}) {
    std::vector<std::uint64_t> a(n), b(n);
    for (auto& x : a) x = rng();
    for (auto& x : b) x = rng();
    auto s = a, v = a;
    xor_into_scalar(s.data(), b.data(), n);
    xor_into_avx2(v.data(), b.data(), n);
    CHECK(s == v);
    CHECK(popcount_scalar(a.data(), n) == popcount_avx2(a.data(), n));
  }

  auto m = random_matrix(rng, 300, 280, 0.5);
  set_isa(Isa::scalar);
  auto scalar = rref(m);
  bool have = set_isa(Isa::avx2);
  auto vec = rref(m);
  reset_isa();
  CHECK(scalar.echelon == vec.echelon);
  CHECK(scalar.pivots == vec.pivots);
  if (!have) MESSAGE("AVX2 unavailable; the dispatched path fell back to scalar");
}
