#pragma once

// Finite modules over finite algebras, free modules, minimal resolutions,
// Ext, induction from A(n) to windows of the Steenrod algebra, doubling and
// Hom-vanishing certificates.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steenrod/algebra.hpp"

namespace steenrod::modcat {

using alg::AlgebraPtr;
using alg::FiniteAlgebra;
using f2::BitVector;

struct ModuleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Module {
 public:
  Module() = default;
  // Basis degrees must be nondecreasing; all actions start at zero except the unit.
  Module(AlgebraPtr algebra, std::vector<int> degrees, std::vector<std::string> labels = {});

  static Module trivial(AlgebraPtr algebra, int degree = 0);
  // Free module on generators of the given degrees (truncated when the algebra is).
  static Module free(AlgebraPtr algebra, const std::vector<int>& generator_degrees);
  // The algebra as a module over itself.
  static Module regular(AlgebraPtr algebra) { return free(std::move(algebra), {0}); }
  // Action of every basis element derived from matrices for the algebra generators.
  // Keys are algebra basis indices of generators(); values give images of each basis vector.
  static Module from_generator_action(AlgebraPtr algebra, std::vector<int> degrees,
                                      const std::map<std::size_t, std::vector<BitVector>>& action,
                                      std::vector<std::string> labels = {});

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t dim() const { return degrees_.size(); }
  bool empty() const { return degrees_.empty(); }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  int bottom() const;  // requires !empty()
  int top() const;
  std::size_t dim(int d) const;
  std::size_t offset(int d) const;  // first basis index in degree >= d

  // a must be an algebra generator; other elements act through their recipes.
  void set_action(std::size_t a, std::size_t x, BitVector y);
  // Images of all basis vectors under algebra basis element a.
  const std::vector<BitVector>& matrix(std::size_t a) const;
  const BitVector& act(std::size_t a, std::size_t x) const { return matrix(a)[x]; }
  BitVector act(std::size_t a, const BitVector& v) const;
  BitVector act_element(const BitVector& a, const BitVector& v) const;

  // First failure of act(g)act(b) = act(gb) for generators g, or of the unit/degree rules.
  std::optional<std::string> validate() const;

  // Submodule generated by vectors, and the quotient by it.
  f2::Subspace submodule(const std::vector<BitVector>& generators) const;
  Module quotient(const std::vector<BitVector>& generators) const;
  Module shift(int k) const;
  // Restriction to a Milnor-backed subalgebra of the acting algebra.
  Module restrict_to(const AlgebraPtr& sub) const;
  // The submodule spanned by vectors closed under the action, as a module with basis from the span.
  Module submodule_module(const std::vector<BitVector>& generators, std::vector<BitVector>* inclusion = nullptr) const;
  // Degrees <= D, as a module over the window algebra of degree D.
  Module truncate(int D) const;

  std::uint64_t hash() const;  // FNV-1a over algebra name, degrees and generator matrices

 private:
  AlgebraPtr alg_;
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
  struct Cache {
    std::mutex mu;
    std::unordered_map<std::size_t, std::vector<BitVector>> matrices;
  };
  std::vector<std::vector<BitVector>> gen_action_;  // [generator position][x]
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
  std::vector<BitVector> identity_;
};

Module direct_sum(const Module& a, const Module& b);
// Diagonal action through the coproduct; basis pairs (i, j) ordered by total degree.
Module tensor(const Module& a, const Module& b);
std::vector<std::pair<std::size_t, std::size_t>> tensor_basis(const Module& a, const Module& b);

// Module homomorphism given by images of basis vectors.
struct ModuleMap {
  const Module* source = nullptr;
  const Module* target = nullptr;
  int shift = 0;  // f(M_d) lies in N_{d + shift}
  std::vector<BitVector> images;

  BitVector apply(const BitVector& v) const;
  std::optional<std::string> check() const;  // degree and equivariance on generators
};

// ---- free modules and resolutions ----

class FreeModule {
 public:
  FreeModule() = default;
  FreeModule(AlgebraPtr algebra, std::vector<int> generator_degrees);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<int>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  void add_generator(int degree);  // degrees must be added in nondecreasing order

  // Basis of degree t: pairs (generator, algebra basis index).
  std::size_t dim(int t) const;
  std::pair<std::size_t, std::size_t> basis(int t, std::size_t k) const;
  std::optional<std::size_t> index(int t, std::size_t gen, std::size_t alg_index) const;
  // a * (basis element k of degree t), in degree t + |a|.
  BitVector act(std::size_t a, int t, std::size_t k) const;
  // Vector in degree t whose only entry is 1 * gen.
  BitVector generator_vector(std::size_t gen) const;

 private:
  AlgebraPtr alg_;
  std::vector<int> gens_;
};

struct ResolutionWindow {
  AlgebraPtr algebra;
  Module module;
  int s_max = 0, t_max = 0;
  std::vector<FreeModule> stages;
  // d[s][g]: image of generator g of stage s, in degree |g| of stage s-1 (or of the module for s = 0).
  std::vector<std::vector<BitVector>> d;

  std::size_t generators(int s, int t) const;
  // d_{s-1} d_s on every basis element through t_max.
  std::optional<std::string> check_dd() const;
  std::optional<std::string> check_minimal() const;
  std::optional<std::string> check_exact() const;
  // Image of basis element k of (F_s)_t under d_s.
  BitVector apply_d(int s, int t, std::size_t k) const;
};

ResolutionWindow minimal_free_resolution(const Module& M, int s_max, int t_max);

struct ExtTable {
  int s_max = 0, t_min = 0, t_max = 0;
  std::vector<std::vector<std::size_t>> dims;  // [s][t - t_min]
  std::size_t at(int s, int t) const;
};

ExtTable ext_groups(const Module& M, const Module& N, int s_max, int t_max);
ExtTable ext_groups(const ResolutionWindow& R, const Module& N, int s_max, int t_max);

// ---- induction and presentations ----

// S/S.R+ as a left S-module, S a window of the Steenrod algebra.
Module coset_module(const alg::CosetBasis& cosets);

// Right freeness of a window S over a subalgebra R: a = sum r_k b_k.
class Decomposer {
 public:
  explicit Decomposer(std::shared_ptr<const alg::CosetBasis> cosets);
  const alg::CosetBasis& cosets() const { return *cosets_; }
  // Pairs (representative S index, R basis index).
  const std::vector<std::pair<std::size_t, std::size_t>>& decompose(std::size_t a) const;

 private:
  std::shared_ptr<const alg::CosetBasis> cosets_;
  std::vector<std::size_t> embed_;  // R index -> S index
  mutable std::mutex mu_;
  mutable std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> cache_;
};

struct InducedModule {
  Module module;  // over the Steenrod window
  Module source;
  std::vector<std::pair<std::size_t, std::size_t>> basis;  // (representative window index, source basis index)
  std::shared_ptr<const Decomposer> decomposer;

  std::optional<std::size_t> index(std::size_t rep, std::size_t y) const;
  // a (x) y for a window basis element a and y in the source.
  BitVector tensor(std::size_t a, const BitVector& y) const;

 private:
  friend InducedModule induce_up(const Module&, unsigned, AlgebraPtr);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
};

// A (x)_B M' truncated to degrees <= D, for M' over a finite profile algebra B.
InducedModule induce_up(const Module& source, unsigned D, AlgebraPtr window = nullptr);

struct FinitePresentationSpec {
  AlgebraPtr algebra;
  std::vector<int> generator_degrees;  // l generators
  std::vector<int> relation_degrees;   // k relations
  // relations[j][i]: algebra element (global coordinates) coefficient of generator i in relation j
  std::vector<std::vector<BitVector>> relations;

  Module cokernel() const;
  FinitePresentationSpec induce(const AlgebraPtr& window) const;
};

// ---- doubling ----

Module double_module(const Module& M, unsigned e);
// The Verschiebung of a Milnor-backed algebra: Sq(R) -> Sq(R/2) when R is even, else 0.
BitVector verschiebung(const FiniteAlgebra& from, const FiniteAlgebra& to, std::size_t i);

// ---- twisting isomorphism ----

struct TwistingReport {
  std::size_t dimension = 0;
  bool invertible = false;
  bool equivariant = false;
  std::string detail;
};

// M (x) (A (x)_B N) -> A (x)_B (M (x) N) for M a module over the window A, N over B.
TwistingReport check_twisting(const Module& M, const Module& N, unsigned D);

// ---- Hom-vanishing ----

struct SimpleWitness {
  unsigned degree = 0;
  BitVector vector;        // in the window algebra, degree `degree`
  std::size_t generator = 0;  // i with Sq(2^i) v != 0
};

struct HomVanishingCertificate {
  unsigned window = 0;
  unsigned witness_n = 0;
  unsigned pd = 0;
  int slack = 0;  // shifts t >= -slack are covered
  bool vacuous = false;
  bool ok = false;
  std::string detail;
  // For each degree k < pd: rank of v -> (Sq(2^i) v)_i equals dim A_k.
  std::vector<std::pair<unsigned, bool>> injective_degrees;
  std::vector<SimpleWitness> witnesses;  // one per basis vector of A_k, k < pd
  // Poincare duality witness: a basis element z of A(n) with z.v = top class, for v of degree k.
  std::vector<std::pair<unsigned, unsigned>> duality_degrees;  // (k, |z|)
  // Direct equivariance solve: dimension of Hom(M, Sigma^t A) per shift.
  std::vector<std::pair<int, std::size_t>> direct;
};

struct VanishingOptions {
  std::optional<unsigned> degenerate_degree;  // negative control: zero the generator action out of this degree
};

HomVanishingCertificate hom_to_free_vanishing(const Module& M, unsigned witness_n, unsigned D,
                                               const VanishingOptions& opt = {});

// Dimension of Hom_A(M, Sigma^t F) for F a module over the same algebra: solves equivariance on generators.
std::size_t hom_dimension(const Module& M, const Module& F, int t);

struct InducedVanishingVerdict {
  std::string family;   // "A" or "E"
  unsigned stage = 0;   // witness stage j
  unsigned top = 0;     // top degree of the stage
  unsigned window = 0;
  bool vanishes = false;
  std::vector<std::pair<int, std::size_t>> hom_dims;  // shift -> dim Hom_B(j)(L, Sigma^t J0)
  std::string detail;
};

// B given by its finite stages B(j) (A(j) or E(j)); J0 a free module over the window
// (rank given by generator degrees) or the embedding of A//A(n) into Sigma^{pd} A.
struct TargetSpec {
  std::vector<int> free_generators;       // J0 free part
  std::optional<unsigned> quotient_by_A;  // n with J0 containing A//A(n)
};

InducedVanishingVerdict hom_induced_vanishing(const Module& L, const std::string& family,
                                              const TargetSpec& target, unsigned window);

// The same question for a fixed finite subalgebra: returns the nonzero socle dimension.
std::size_t hom_finite_subalgebra(const Module& L, const AlgebraPtr& B, const TargetSpec& target, unsigned window);

}  // namespace steenrod::modcat
