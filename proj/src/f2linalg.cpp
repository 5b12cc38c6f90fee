#include "steenrod/f2linalg.hpp"

#include <algorithm>
#include <bit>

#include "steenrod/kernels.hpp"

namespace steenrod::f2 {

namespace {

// Gaussian elimination to reduced echelon form using pivot columns < col_limit.
// Returns pivot columns; row i < pivots.size() carries pivot pivots[i].
std::vector<std::size_t> eliminate(BitMatrix& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  const std::size_t stride = m.stride();
  for (std::size_t c = 0; c < col_limit && next < m.rows(); ++c) {
    std::size_t w = c / kWordBits;
    Word mask = Word{1} << (c % kWordBits);
    std::size_t found = m.rows();
    for (std::size_t r = next; r < m.rows(); ++r) {
      if (m.row_ptr(r)[w] & mask) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    if (found != next) m.swap_rows(found, next);
    const Word* prow = m.row_ptr(next);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next && (m.row_ptr(r)[w] & mask)) kernels::xor_into(m.row_ptr(r), prow, stride);
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

}  // namespace

BitVector BitVector::unit(std::size_t length, std::size_t index) {
  BitVector v(length);
  v.set(index);
  return v;
}

BitVector BitVector::from_bits(const std::vector<int>& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & 1) v.set(i);
  return v;
}

bool BitVector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitVector::popcount() const { return kernels::popcount(words_.data(), words_.size()); }

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return len_;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word x = words_[w];
    while (x) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator+=(const BitVector& other) {
  if (other.len_ != len_) throw DimensionMismatch("BitVector addition: length mismatch");
  kernels::xor_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.len_ != len_) throw DimensionMismatch("BitVector dot: length mismatch");
  Word acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(len_);
  for (std::size_t i = 0; i < len_; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitMatrix BitMatrix::from_bits(const std::vector<std::vector<int>>& bits) {
  std::size_t cols = bits.empty() ? 0 : bits.front().size();
  BitMatrix m(bits.size(), cols);
  for (std::size_t r = 0; r < bits.size(); ++r) {
    if (bits[r].size() != cols) throw DimensionMismatch("BitMatrix::from_bits: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (bits[r][c] & 1) m.set(r, c);
  }
  return m;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy(row_ptr(r), row_ptr(r) + stride_, v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw DimensionMismatch("BitMatrix::set_row: length mismatch");
  std::copy(v.words().begin(), v.words().end(), row_ptr(r));
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r);
  return v;
}

void BitMatrix::add_row(std::size_t dst, std::size_t src) { kernels::xor_into(row_ptr(dst), row_ptr(src), stride_); }

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row_ptr(a), row_ptr(a) + stride_, row_ptr(b));
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* p = row_ptr(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      Word x = p[w];
      while (x) {
        std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
        t.set(c, r);
        x &= x - 1;
      }
    }
  }
  return t;
}

BitVector BitMatrix::operator*(const BitVector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("BitMatrix * BitVector: dimension mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Word acc = 0;
    const Word* p = row_ptr(r);
    for (std::size_t w = 0; w < stride_; ++w) acc ^= p[w] & v.words()[w];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionMismatch("BitMatrix * BitMatrix: dimension mismatch");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k : row(r).support()) kernels::xor_into(out.row_ptr(r), other.row_ptr(k), out.stride_);
  }
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("BitMatrix +: dimension mismatch");
  kernels::xor_into(data_.data(), other.data_.data(), data_.size());
  return *this;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    s += row(r).to_string();
    s.push_back('\n');
  }
  return s;
}

Echelon rref(const BitMatrix& m) {
  Echelon e{m, {}};
  e.pivots = eliminate(e.echelon, m.cols());
  return e;
}

std::size_t rank(const BitMatrix& m) {
  // Row and column rank agree; eliminate along the smaller row count.
  if (m.rows() > m.cols()) {
    BitMatrix t = m.transpose();
    return eliminate(t, t.cols()).size();
  }
  BitMatrix copy = m;
  return eliminate(copy, copy.cols()).size();
}

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<BitVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (e.echelon.get(r, f)) v.set(e.pivots[r]);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length differs from row count");
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy(m.row_ptr(r), m.row_ptr(r) + m.stride(), aug.row_ptr(r));
    if (b.get(r)) aug.set(r, m.cols());
  }
  auto pivots = eliminate(aug, m.cols() + 1);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  BitVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (aug.get(r, m.cols())) x.set(pivots[r]);
  return x;
}

Subspace::Subspace(std::size_t ambient, const std::vector<BitVector>& spanning) : ambient_(ambient) {
  for (const auto& v : spanning) insert(v);
}

BitVector Subspace::reduce(BitVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) v += basis_[i];
  return v;
}

bool Subspace::insert(const BitVector& v) {
  if (v.size() != ambient_) throw DimensionMismatch("Subspace::insert: ambient mismatch");
  BitVector r = reduce(v);
  if (r.is_zero()) return false;
  std::size_t p = r.first_set();
  for (auto& b : basis_)
    if (b.get(p)) b += r;
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  basis_.insert(basis_.begin() + idx, std::move(r));
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const BitVector& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
  Subspace s = *this;
  for (const auto& v : other.basis_) s.insert(v);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Zassenhaus: rows [u | u] and [w | 0]; rows with zero left half span U ∩ W.
  const std::size_t n = ambient_;
  BitMatrix z(basis_.size() + other.basis_.size(), 2 * n);
  std::size_t r = 0;
  for (const auto& u : basis_) {
    for (auto i : u.support()) {
      z.set(r, i);
      z.set(r, n + i);
    }
    ++r;
  }
  for (const auto& w : other.basis_) {
    for (auto i : w.support()) z.set(r, i);
    ++r;
  }
  eliminate(z, 2 * n);
  Subspace out(n);
  for (std::size_t row = 0; row < z.rows(); ++row) {
    BitVector full = z.row(row);
    bool left_zero = true;
    for (std::size_t i = 0; i < n && left_zero; ++i)
      if (full.get(i)) left_zero = false;
    if (!left_zero) continue;
    BitVector right(n);
    for (std::size_t i = 0; i < n; ++i)
      if (full.get(n + i)) right.set(i);
    if (!right.is_zero()) out.insert(right);
  }
  return out;
}

BitVector Subspace::coordinates(const BitVector& v) const {
  BitVector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) c.set(i);
  return c;
}

std::vector<BitVector> kernel_of_images(const std::vector<BitVector>& images, std::size_t target_dim) {
  const std::size_t n = images.size();
  BitMatrix aug(n, target_dim + n);
  for (std::size_t r = 0; r < n; ++r) {
    if (images[r].size() != target_dim) throw DimensionMismatch("kernel_of_images: image length mismatch");
    std::copy(images[r].words().begin(), images[r].words().end(), aug.row_ptr(r));
    aug.set(r, target_dim + r);
  }
  auto pivots = eliminate(aug, target_dim);
  std::vector<BitVector> out;
  for (std::size_t r = pivots.size(); r < n; ++r) {
    BitVector k(n);
    for (std::size_t i = 0; i < n; ++i)
      if (aug.get(r, target_dim + i)) k.set(i);
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace steenrod::f2
