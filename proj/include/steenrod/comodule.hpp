#pragma once

// Finite graded comodules over subquotient coalgebras of A* in a degree
// window: coaction tables, primitives, the primitive sequence, unipotence,
// tensor and cotensor products, comodule maps, duality with modules, JSON
// and a seeded random generator.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steenrod/dual_hopf.hpp"
#include "steenrod/f2linalg.hpp"
#include "steenrod/module_cat.hpp"

namespace steenrod::comod {

using dual::Monomial;
using dual::QuotientSpec;
using f2::BitVector;

struct ComoduleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One term c (x) y of a left coaction (y (x) c for right comodules).
struct Term {
  Monomial c;
  std::size_t y = 0;
  bool operator==(const Term&) const = default;
};

enum class Side { left, right };

using MonoKey = std::vector<unsigned>;

class ComoduleWindow {
 public:
  ComoduleWindow() = default;
  // Degrees must be nondecreasing and at most window. `complete` records that
  // the table is a whole comodule rather than the truncation of an infinite one.
  ComoduleWindow(QuotientSpec spec, int window, std::vector<int> degrees, std::vector<std::string> labels,
                 std::vector<std::vector<Term>> coaction, Side side = Side::left, bool complete = true);

  static ComoduleWindow trivial(QuotientSpec spec, int window, std::vector<int> degrees);

  const QuotientSpec& spec() const { return spec_; }
  int window() const { return window_; }
  Side side() const { return side_; }
  bool complete() const { return complete_; }
  void set_complete(bool c) { complete_ = c; }
  std::size_t dim() const { return degrees_.size(); }
  bool empty() const { return degrees_.empty(); }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<Term>& coaction(std::size_t i) const { return coaction_[i]; }
  int bottom() const;
  int top() const;
  std::size_t dim(int d) const;
  std::size_t offset(int d) const;  // first index of degree >= d

  // mu(v) - 1 (x) v grouped by coalgebra monomial.
  std::map<MonoKey, BitVector> reduced_coact(const BitVector& v) const;

  // Counit, coassociativity, degree and admissibility; first failure.
  std::optional<std::string> validate() const;
  bool is_trivial() const;

 private:
  QuotientSpec spec_;
  int window_ = 0;
  Side side_ = Side::left;
  bool complete_ = true;
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> coaction_;
};

// Homogeneous basis of each degree of a graded subspace.
using Graded = std::map<int, std::vector<BitVector>>;
std::size_t total_dim(const Graded& g);

struct Filtration {
  std::vector<f2::Subspace> stages;  // ascending; stages.back() is the last computed stage
  int window = 0;
  std::size_t length() const { return stages.size(); }
};

std::vector<BitVector> primitives(const ComoduleWindow& M);
// M^[i] = preimage of the primitives of M / M^[i-1], until stable.
Filtration primitive_sequence(const ComoduleWindow& M);

struct UnipotenceVerdict {
  bool unipotent = false;
  bool certified = false;  // false when M is a truncation of an infinite comodule
  int window = 0;
  std::optional<Filtration> filtration;
  std::string reason;
};
UnipotenceVerdict is_unipotent(const ComoduleWindow& M);

// Successive quotients of a filtration have trivial coaction.
bool filtration_has_trivial_quotients(const ComoduleWindow& M, const std::vector<f2::Subspace>& stages);

// Subcomodule generated by vectors, as a subspace of M.
f2::Subspace generated_subcomodule(const ComoduleWindow& M, const std::vector<BitVector>& vectors);
bool is_subcomodule(const ComoduleWindow& M, const f2::Subspace& S);
// The subcomodule with basis taken from S (homogeneous echelon basis); inclusion images in M.
ComoduleWindow subcomodule(const ComoduleWindow& M, const f2::Subspace& S, std::vector<BitVector>* inclusion = nullptr);
// M / S on the non-pivot basis vectors; projection gives images of M's basis.
ComoduleWindow quotient(const ComoduleWindow& M, const f2::Subspace& S, std::vector<BitVector>* projection = nullptr);
// Left factors reduced into a quotient coalgebra.
ComoduleWindow corestrict(const ComoduleWindow& M, const QuotientSpec& q);
ComoduleWindow direct_sum(const ComoduleWindow& a, const ComoduleWindow& b);

// Basis pairs ordered by total degree, stable in (i, j).
std::vector<std::pair<std::size_t, std::size_t>> tensor_basis(const ComoduleWindow& a, const ComoduleWindow& b,
                                                              int window);
ComoduleWindow tensor_diagonal(const ComoduleWindow& M, const ComoduleWindow& N);

struct CotensorResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // basis of M (x) N up to the window
  Graded basis;                                             // vectors over `pairs`
  std::size_t dim(int d) const;
};
// Equalizer of mu_M (x) 1 and 1 (x) mu_N, M a right and N a left comodule.
CotensorResult cotensor(const ComoduleWindow& M, const ComoduleWindow& N);

// Comodule maps f with f(M_d) in N_{d - t}; each map lists images of M's basis.
struct CohomResult {
  int shift = 0;
  std::size_t unknowns = 0, equations = 0, rank = 0;
  std::vector<std::vector<BitVector>> maps;
  std::size_t dim() const { return maps.size(); }
};
// source_cap restricts M to its subcomodule of degrees <= cap.
CohomResult cohom(const ComoduleWindow& M, const ComoduleWindow& N, int t, std::optional<int> source_cap = std::nullopt);
std::optional<std::string> check_comodule_map(const ComoduleWindow& M, const ComoduleWindow& N,
                                              const std::vector<BitVector>& images, int t,
                                              std::optional<int> source_cap = std::nullopt);

// The coalgebra `sub` in degrees <= D as a comodule over its quotient `over`
// (left or right), coaction the coproduct with the outer factor reduced.
ComoduleWindow coalgebra_comodule(const QuotientSpec& sub, const QuotientSpec& over, int D, Side side = Side::left);
// C (x) W in degrees <= D with coaction on the left factor.
ComoduleWindow extended_comodule(const std::vector<int>& w_degrees, const QuotientSpec& spec, int D);

// Finite-dimensional comodule M -> module M^ over the dual algebra, with
// (a.phi)(x) = sum <a, c> phi(y) over terms c (x) y of mu(x); and back.
modcat::AlgebraPtr dual_algebra(const QuotientSpec& spec, int window);
modcat::Module dualize_comodule(const ComoduleWindow& M);
ComoduleWindow dualize_module(const modcat::Module& N, const QuotientSpec& spec, int window);

std::string to_json(const ComoduleWindow& M);
ComoduleWindow from_json(const std::string& text);  // throws ComoduleError unless valid

// Random subquotients of cofree comodules, rejection-sampled to a dimension bound.
struct RandomComoduleOptions {
  QuotientSpec spec = QuotientSpec::full();
  int generator_degree_max = 5;
  std::size_t max_dim = 12;
};
struct ShortExact {
  ComoduleWindow L, M, N;
  std::vector<BitVector> inclusion, projection;
  std::uint64_t seed = 0;
};
ComoduleWindow random_comodule(std::uint64_t seed, const RandomComoduleOptions& opt = {});
ShortExact random_short_exact(std::uint64_t seed, const RandomComoduleOptions& opt = {});

}  // namespace steenrod::comod
