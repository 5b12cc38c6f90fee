#pragma once

// Cartan-Eilenberg spectral sequence of a normal pair B in A of finite
// algebras, Ext_{A//B}(k, Ext_B(M, k)) => Ext_A(M, k), from the double complex
// Hom_Q(X, Hom_B(P, k)) with X a minimal Q-resolution of k and P a minimal
// A-resolution of M. Pages come from ranks of the filtered total complex.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steenrod/module_cat.hpp"

namespace steenrod::ss {

using alg::AlgebraPtr;
using modcat::Module;

struct SpectralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// E_r^{p,q} in internal degree t; d_r goes to (p + r, q - r + 1, t).
struct SSCell {
  int p = 0, q = 0, t = 0;
  std::size_t dim = 0;
  std::size_t rank_out = 0;
};

struct SSPage {
  int r = 0;
  std::vector<SSCell> cells;  // nonzero cells sorted by (p + q, t, p)
  std::size_t dim(int p, int q, int t) const;
  std::size_t total(int s, int t) const;  // sum over p + q = s
};

struct CEResult {
  std::string sub, big, quotient;
  int s_max = 0, t_max = 0;
  std::vector<SSPage> pages;  // r = 1, 2, ...; the last page is E_infinity
  SSPage e2_two_stage;        // Ext over Q of the Q-modules Ext_B^q(M, k)
  modcat::ExtTable ext_sub;   // Ext_B(M, k) from its own resolution
  modcat::ExtTable abutment;  // Ext_A(M, k) from the minimal resolution
  std::vector<std::vector<std::size_t>> total;  // H^s of the total complex [s][t]
  std::map<std::pair<int, int>, std::size_t> edge_rank;  // (q, t) -> rank of Ext_A^q -> E_1^{0,q}
  std::optional<std::string> dd_failure;

  const SSPage& page(int r) const;
  const SSPage& e_infinity() const { return pages.back(); }
  // First (s, t) where sum of E_infinity, Ext_A or H(Tot) disagree.
  std::optional<std::pair<int, int>> abutment_mismatch() const;
};

// B must be a normal subalgebra of A with A free over B; throws alg::NotNormal otherwise.
CEResult ce_spectral_sequence(const AlgebraPtr& B, const AlgebraPtr& A, const Module& M, int s_max, int t_max);

}  // namespace steenrod::ss
