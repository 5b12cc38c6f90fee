#pragma once

// Exhaustive structural checks in a degree window, shared by the CLI and the
// acceptance runner. Every report keeps one line per degree or case checked.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steenrod/module_cat.hpp"

namespace steenrod::checks {

struct Report {
  std::string name;
  bool ok = true;
  std::vector<std::string> lines;
  std::optional<std::string> witness;  // first failure
  std::size_t checks = 0;

  void fail(std::string why);
};

// Associativity, coassociativity, counit, chi-convolution, chi^2 = 1, psi(ab) = psi(a)psi(b)
// and chi anti-multiplicative, for the Milnor basis through degree D.
Report hopf_axioms_milnor(unsigned D);
// The same for the dual A* in the z-basis.
Report hopf_axioms_dual(unsigned D);

// Structure constants of the dual coproduct against the Milnor product under the pairing.
Report coproduct_transpose(unsigned D);

// dim A^d against partitions into parts 2^i - 1, dims and Poincare duality of A(n) for n <= 2.
Report dimension_oracles(unsigned D);
std::size_t partition_count(unsigned d);

// Random quotient of a truncated free module over the window algebra, dim <= max_dim.
modcat::Module random_finite_module(const alg::AlgebraPtr& W, std::uint64_t seed, int top, std::size_t max_dim);

}  // namespace steenrod::checks
