#pragma once

// Bit-packed exact linear algebra over F2.
//
// Vectors and matrices store 64 coefficients per word, row-major. All
// elimination reduces to word-wise XOR of one row into another; that kernel
// has a scalar reference implementation and an AVX2 variant chosen at
// runtime (see kernels.hpp).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace steenrod::f2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : len_(length), words_(words_for(length), 0) {}

  static BitVector unit(std::size_t length, std::size_t index);
  static BitVector from_bits(const std::vector<int>& bits);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v = true) {
    Word mask = Word{1} << (i % kWordBits);
    if (v) words_[i / kWordBits] |= mask;
    else words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool is_zero() const;
  std::size_t popcount() const;
  // Index of the lowest set bit, or size() when zero.
  std::size_t first_set() const;
  std::vector<std::size_t> support() const;

  BitVector& operator+=(const BitVector& other);
  friend BitVector operator+(BitVector a, const BitVector& b) { return a += b; }
  bool operator==(const BitVector& other) const = default;

  // F2 inner product.
  bool dot(const BitVector& other) const;

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  std::string to_string() const;

 private:
  std::size_t len_ = 0;
  std::vector<Word> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);
  static BitMatrix from_bits(const std::vector<std::vector<int>>& bits);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return (row_ptr(r)[c / kWordBits] >> (c % kWordBits)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v = true) {
    Word mask = Word{1} << (c % kWordBits);
    if (v) row_ptr(r)[c / kWordBits] |= mask;
    else row_ptr(r)[c / kWordBits] &= ~mask;
  }
  void flip(std::size_t r, std::size_t c) { row_ptr(r)[c / kWordBits] ^= Word{1} << (c % kWordBits); }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  BitVector column(std::size_t c) const;

  Word* row_ptr(std::size_t r) { return data_.data() + r * stride_; }
  const Word* row_ptr(std::size_t r) const { return data_.data() + r * stride_; }
  std::size_t stride() const { return stride_; }

  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  BitMatrix transpose() const;
  BitVector operator*(const BitVector& v) const;
  BitMatrix operator*(const BitMatrix& other) const;
  BitMatrix& operator+=(const BitMatrix& other);
  bool operator==(const BitMatrix& other) const = default;

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

struct Echelon {
  BitMatrix echelon;
  std::vector<std::size_t> pivots;
};

// Reduced row-echelon form; pivot columns are the leftmost nonzero entry of
// each nonzero row, chosen deterministically by first available row.
Echelon rref(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

// Basis of {v : m v = 0}.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Some x with m x = b, or nullopt when b is not in the column space.
// Throws DimensionMismatch when b.size() != m.rows().
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

// Incrementally maintained subspace of F2^n kept in reduced echelon form.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  Subspace(std::size_t ambient, const std::vector<BitVector>& spanning);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BitVector>& basis() const { return basis_; }

  // Reduce v against the basis; the result is zero iff v is in the span.
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }
  // Returns true when v enlarged the subspace.
  bool insert(const BitVector& v);

  bool contains(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  // Coordinates of v with respect to basis(); requires contains(v).
  BitVector coordinates(const BitVector& v) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivots_;
  // Each basis element expressed as a combination of inserted vectors is not
  // tracked; coordinates() solves against the reduced basis directly.
};

// Images of a map given as one row per source basis vector: returns a basis
// of the kernel as coefficient vectors over the source basis.
std::vector<BitVector> kernel_of_images(const std::vector<BitVector>& images, std::size_t target_dim);

}  // namespace steenrod::f2
