#pragma once

// Reduced cobar complexes and Cotor in a bidegree window, the adjoint
// coaction on Cotor over A*//A^(1)*, the q-monomial comodules Cotor^k and
// their filtration, and the window verifications of the map-vanishing claims.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steenrod/comodule.hpp"
#include "steenrod/dual_hopf.hpp"
#include "steenrod/f2linalg.hpp"

namespace steenrod::cobar {

using comod::ComoduleWindow;
using dual::Monomial;
using dual::QuotientSpec;
using f2::BitVector;

struct CobarError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// C^{s,t} = (coideal)^{(x) s} (x) M in internal degree t.
class CobarComplex {
 public:
  CobarComplex(QuotientSpec coalgebra, ComoduleWindow coefficients, int s_max, int t_max);

  const QuotientSpec& coalgebra() const { return spec_; }
  const ComoduleWindow& coefficients() const { return M_; }
  int s_max() const { return s_max_; }
  int t_max() const { return t_max_; }

  // Coideal basis: nonunit monomials of degree <= t_max.
  std::size_t coideal_size() const { return coideal_.size(); }
  const Monomial& coideal(std::size_t i) const { return coideal_[i]; }
  std::optional<std::size_t> coideal_index(const Monomial& m) const;

  // Cells are entries c_1..c_s followed by an index into M.
  using Cell = std::vector<std::uint32_t>;
  std::size_t dim(int s, int t) const;
  const std::vector<Cell>& cells(int s, int t) const;
  std::optional<std::size_t> index(int s, int t, const Cell& c) const;
  std::string label(int s, int t, std::size_t k) const;

  // Images of the basis of C^{s,t} in C^{s+1,t}.
  const std::vector<BitVector>& differential(int s, int t) const;
  std::optional<std::string> check_dd() const;

  struct Cohomology {
    std::size_t dim = 0;
    std::vector<BitVector> representatives;  // cocycles in C^{s,t}
    std::size_t cocycles = 0, boundaries = 0;
  };
  const Cohomology& cohomology(int s, int t) const;
  // Coordinates over the representatives; nullopt unless v is a cocycle.
  std::optional<BitVector> class_of(int s, int t, const BitVector& v) const;

 private:
  struct Layer {
    std::vector<Cell> cells;
    std::map<Cell, std::size_t> index;
  };
  const Layer& layer(int s, int t) const;
  void check_range(int s, int t) const;

  QuotientSpec spec_;
  ComoduleWindow M_;
  int s_max_ = 0, t_max_ = 0;
  std::vector<Monomial> coideal_;
  std::vector<int> coideal_degree_;
  std::vector<std::vector<std::size_t>> coideal_by_degree_;
  std::map<std::vector<unsigned>, std::size_t> coideal_index_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> reduced_coproduct_;

  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Layer>> layers_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<std::vector<BitVector>>> diffs_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Cohomology>> cohom_;
};

struct CotorTable {
  int s_max = 0, t_max = 0;
  std::vector<std::vector<std::size_t>> dims;  // [s][t]
  std::size_t at(int s, int t) const;
};

// Dimensions for s <= s_max, t <= t_max. Coefficients default to the trivial comodule.
CotorTable cobar_cotor(const CobarComplex& X);
CotorTable cobar_cotor(const QuotientSpec& C, int s_max, int t_max);
CotorTable cobar_cotor(const QuotientSpec& C, const ComoduleWindow& M, int s_max, int t_max);

// Monomials in q_0, q_1, ... (deg q_n = (1, 2^{n+1}-1)) with sum r = s and weight t.
std::size_t q_monomial_count(int s, int t);

// E = A*//A^(1)*. The A*-coaction on Cotor_E(k,k) induced by the adjoint
// coaction on cobar cochains: for a cocycle in C^{s,t}, pairs (left monomial
// of A*, class in Cotor^{s, t - |left|}).
std::vector<std::pair<Monomial, BitVector>> adjoint_coaction_on_class(const CobarComplex& X, int s, int t,
                                                                      const BitVector& cocycle);
// The same for q_n = [z_{n+1}], grouped by the classes q_j.
std::vector<std::pair<dual::Polynomial, dual::QClass>> cobar_q_coaction(unsigned n);

// q-monomials of total exponent k and internal degree <= window, by degree.
using QMonomial = std::vector<unsigned>;  // r[0] is the exponent of q_0
std::vector<QMonomial> q_monomials(unsigned k, int window);
int q_degree(const QMonomial& r);
std::string q_label(const QMonomial& r);

struct CotorComoduleOptions {
  QuotientSpec over = QuotientSpec::frobenius_quotient(1, 2);
  bool drop_q0_term = false;  // mutation: mu(q_1) = 1 (x) q_1
};
// Cotor^{k,*} spanned by q-monomials, coaction extended multiplicatively.
ComoduleWindow cotor_comodule(unsigned k, int window, const CotorComoduleOptions& opt = {});

// Span of xi^{2^s E} with |E| <= k and degree <= window, a left comodule over `over`.
ComoduleWindow leq_k_comodule(unsigned k, int window, unsigned s, const QuotientSpec& over);

struct IsoReport {
  unsigned k = 0;
  int window = 0;
  std::size_t dim = 0;
  std::optional<std::string> forward, inverse;  // first failure
  bool ok() const { return !forward && !inverse; }
};
// q_0^{r_0} q_1^{r_1}... -> xi_1^{2 r_1} xi_2^{2 r_2}... from Cotor^k onto the k-th stage of A^(1)*.
IsoReport check_cotor_isomorphism(unsigned k, int window);

struct FKSFiltration {
  unsigned k = 0;
  ComoduleWindow comodule;
  std::vector<f2::Subspace> stages;  // F^{k,0} .. F^{k,k}
};
FKSFiltration filtration_FKS(unsigned k, int window);
std::optional<std::string> check_FKS(const FKSFiltration& F);

enum class Mutation { none, drop_q0_term, trivial_target, trivial_source };
std::string to_string(Mutation m);
Mutation parse_mutation(const std::string& text);

struct ShiftRow {
  int shift = 0;
  int source_cap = 0;
  std::size_t unknowns = 0, equations = 0, rank = 0, dim = 0;
};

struct VanishingVerdict {
  std::string claim;
  unsigned k = 0;
  int D = 0;
  int slack = 0;
  Mutation mutation = Mutation::none;
  std::size_t source_dim = 0, target_dim = 0;
  std::vector<ShiftRow> rows;
  std::optional<std::string> witness;  // first nonzero map
  bool all_zero() const;
};

struct VerifyOptions {
  Mutation mutation = Mutation::none;
  int slack = 8;
  unsigned k_max = 3;
  int D_max = 24;
};

// Comodule maps from the A^(1)* window to Cotor^{k,*} over A^(1)*//A^(2)*, every shift in [-D, D].
VanishingVerdict verify_A1_to_cotor_vanishing(unsigned k, int D, const VerifyOptions& opt = {});
// Comodule maps from the A* window to the k-th polynomial-degree stage of A*.
VanishingVerdict verify_A_leqk_vanishing(unsigned k, int D, VerifyOptions opt = {.k_max = 2, .D_max = 20});

struct E2Row {
  std::string label;
  int s = 0, t = 0;
  std::size_t dim = 0;
};
struct AdamsE2Report {
  std::string spectrum;
  std::string method;
  int window = 0;
  std::vector<E2Row> rows;
  std::string detail;
  bool all_zero() const;
};
// X in {"H", "BP", "A1*"}.
AdamsE2Report adams_e2_vanishing_report(const std::string& X, int window);

}  // namespace steenrod::cobar
