#pragma once

// Finite graded algebras over F2 with an explicit basis and product table:
// profile subalgebras of the Steenrod algebra, degree windows of profile
// algebras, normal quotients S//R and doublings.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steenrod/f2linalg.hpp"
#include "steenrod/milnor.hpp"

namespace steenrod::alg {

using f2::BitVector;
using Sparse = std::vector<std::uint32_t>;  // sorted basis indices

struct NotNormal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct WindowError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

// Left coset space S/S.R+ for R a subalgebra of S; representatives are the
// least basis monomials in each degree not eliminated by S.R+.
class CosetBasis {
 public:
  CosetBasis(AlgebraPtr S, AlgebraPtr R);

  const AlgebraPtr& big() const { return S_; }
  const AlgebraPtr& sub() const { return R_; }
  std::size_t dim(unsigned d) const { return d < reps_.size() ? reps_[d].size() : 0; }
  const std::vector<std::size_t>& reps(unsigned d) const { return reps_.at(d); }
  // Coordinates over reps(d) of the class of v in S_d (v in S_d coordinates).
  BitVector reduce(unsigned d, const BitVector& v) const;
  // (S.R+)_d with S_d coordinates listed in reverse order.
  const f2::Subspace& ideal(unsigned d) const { return ideal_.at(d); }
  // Basis of (S.R+)_d in S_d coordinates.
  std::vector<BitVector> ideal_basis(unsigned d) const;

 private:
  AlgebraPtr S_, R_;
  std::vector<std::vector<std::size_t>> reps_;      // S basis indices
  std::vector<f2::Subspace> ideal_;                  // reversed coordinates
  std::vector<std::vector<std::size_t>> rep_pos_;    // S local index -> position in reps, or npos
};

class FiniteAlgebra : public std::enable_shared_from_this<FiniteAlgebra> {
 public:
  enum class Kind { milnor, quotient, doubled };

  // Profile subalgebra; with a window the quotient by everything above it.
  static AlgebraPtr milnor(const milnor::Profile& p, std::optional<unsigned> window = std::nullopt);
  static AlgebraPtr A(unsigned n);
  static AlgebraPtr E(unsigned n);
  static AlgebraPtr steenrod_window(unsigned D);
  // Throws NotNormal when S.R+ != R+.S, WindowError when R does not sit in S.
  static AlgebraPtr quotient(const AlgebraPtr& S, const AlgebraPtr& R);
  static AlgebraPtr doubled(const AlgebraPtr& A, unsigned e);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::size_t dim() const { return degrees_.size(); }
  unsigned top() const { return top_; }
  bool truncated() const { return truncated_; }
  std::size_t dim(unsigned d) const { return d <= top_ ? offsets_[d + 1] - offsets_[d] : 0; }
  std::size_t offset(unsigned d) const { return offsets_[std::min<std::size_t>(d, top_ + 1)]; }
  unsigned degree(std::size_t i) const { return degrees_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  // Product of basis elements as a set of basis indices.
  const Sparse& product(std::size_t i, std::size_t j) const;
  // Product of elements in global coordinates.
  BitVector multiply(const BitVector& a, const BitVector& b) const;

  // Indecomposable basis elements (a minimal algebra generating set).
  const std::vector<std::size_t>& generators() const { return generators_; }
  std::optional<std::size_t> generator_position(std::size_t i) const;
  // i = sum of g.c over the pairs (g, c), g a generator; empty for generators and the unit.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& recipe(std::size_t i) const { return recipe_[i]; }

  bool hopf() const { return hopf_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& coproduct(std::size_t i) const;
  const Sparse& antipode(std::size_t i) const;

  // Milnor-backed algebras only.
  const milnor::Monomial& monomial(std::size_t i) const { return monomials_.at(i); }
  bool milnor_backed() const { return kind_ == Kind::milnor; }
  const milnor::Profile& profile() const { return profile_; }
  std::optional<std::size_t> index_of(const milnor::Monomial& m) const;
  BitVector from_element(const milnor::Element& e) const;  // terms above the window dropped
  milnor::Element to_element(const BitVector& v) const;

  // Quotients: parent S, and the projection of S basis elements.
  const AlgebraPtr& parent() const { return parent_; }
  const Sparse& projection(std::size_t parent_index) const { return projection_.at(parent_index); }
  // Doubled algebras: source and exponent.
  const AlgebraPtr& source() const { return source_; }
  unsigned doubling() const { return doubling_; }

 private:
  FiniteAlgebra() = default;
  void finish_layout();
  void compute_generators();
  Sparse compute_product(std::size_t i, std::size_t j) const;

  Kind kind_ = Kind::milnor;
  std::string name_;
  std::vector<unsigned> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> labels_;
  unsigned top_ = 0;
  bool truncated_ = false;
  bool hopf_ = false;
  std::vector<std::size_t> generators_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> recipe_;
  std::vector<std::size_t> gen_pos_;

  std::vector<milnor::Monomial> monomials_;
  milnor::Profile profile_;
  std::unordered_map<std::string, std::size_t> index_;

  AlgebraPtr parent_;
  std::shared_ptr<const CosetBasis> cosets_;
  std::vector<Sparse> projection_;
  std::vector<std::size_t> lift_;  // quotient index -> parent index

  AlgebraPtr source_;
  unsigned doubling_ = 0;

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> coproduct_;
  std::vector<Sparse> antipode_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, Sparse> products_;
};

// Sparse index set to a dense vector and back.
BitVector dense(const Sparse& s, std::size_t n);
Sparse sparse(const BitVector& v);

}  // namespace steenrod::alg
