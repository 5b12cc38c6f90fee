#include <doctest.h>

#include "oracles/ext_oracle.hpp"
#include "steenrod/spectral.hpp"

using namespace steenrod;
using namespace steenrod::ss;
using alg::FiniteAlgebra;

namespace {

std::size_t edge(const CEResult& R, int q, int t) {
  auto it = R.edge_rank.find({q, t});
  return it == R.edge_rank.end() ? 0 : it->second;
}

void check_consistency(const CEResult& R) {
  REQUIRE_FALSE(R.dd_failure);
  CHECK_FALSE(R.abutment_mismatch());
  for (const auto& c : R.page(2).cells) CHECK(R.e2_two_stage.dim(c.p, c.q, c.t) == c.dim);
  for (const auto& c : R.e2_two_stage.cells) CHECK(R.page(2).dim(c.p, c.q, c.t) == c.dim);
  for (int q = 0; q <= R.s_max; ++q)
    for (int t = 0; t <= R.t_max; ++t) {
      CAPTURE(q);
      CAPTURE(t);
      CHECK(R.page(1).dim(0, q, t) == R.ext_sub.at(q, t));
      CHECK(edge(R, q, t) == R.e_infinity().dim(0, q, t));
    }
  // pages shrink and ranks account for the change
  for (std::size_t i = 0; i + 1 < R.pages.size(); ++i) {
    const auto& P = R.pages[i];
    for (const auto& c : P.cells) {
      CHECK(R.pages[i + 1].dim(c.p, c.q, c.t) <= c.dim);
      if (c.rank_out && c.p + c.q < R.s_max) CHECK(c.rank_out <= P.dim(c.p + P.r, c.q - P.r + 1, c.t));
    }
  }
}

}  // namespace

TEST_CASE("E(1) in A(1) with trivial coefficients") {
  auto A = FiniteAlgebra::A(1);
  auto B = FiniteAlgebra::E(1);
  auto R = ce_spectral_sequence(B, A, modcat::Module::trivial(A), 6, 14);
  check_consistency(R);
  auto ext_a = oracle::ext_of_trivial(oracle::profile_algebra({2, 1}), 6, 14);
  auto ext_e = oracle::exterior_ext({1, 3}, 6, 14);
  for (int s = 0; s <= 6; ++s)
    for (int t = 0; t <= 14; ++t) {
      CAPTURE(s);
      CAPTURE(t);
      CHECK(static_cast<int>(R.abutment.at(s, t)) == ext_a[s][t]);
      CHECK(static_cast<int>(R.ext_sub.at(s, t)) == ext_e[s][t]);
    }
  // h1 on the bottom row, v0 and v0^2 invariant, v1 not
  CHECK(R.page(2).dim(1, 0, 2) == 1);
  CHECK(R.page(2).dim(0, 1, 1) == 1);
  CHECK(R.page(2).dim(0, 2, 2) == 1);
  CHECK(R.page(2).dim(0, 1, 3) == 0);
  CHECK(R.page(1).dim(0, 1, 3) == 1);
  // a d3 is needed: E2 is strictly bigger than E_infinity
  std::size_t d3 = 0;
  for (const auto& c : R.page(3).cells) d3 += c.rank_out;
  CHECK(d3 > 0);
  std::size_t e2 = 0, einf = 0;
  for (const auto& c : R.page(2).cells) e2 += c.dim;
  for (const auto& c : R.e_infinity().cells) einf += c.dim;
  CHECK(e2 > einf);
  CHECK(R.quotient == "A(1)//E(1)");
}

TEST_CASE("E(1) in A(1) with free coefficients") {
  auto A = FiniteAlgebra::A(1);
  auto R = ce_spectral_sequence(FiniteAlgebra::E(1), A, modcat::Module::regular(A), 3, 10);
  check_consistency(R);
  CHECK(R.abutment.at(0, 0) == 1);
  for (int s = 1; s <= 3; ++s)
    for (int t = 0; t <= 10; ++t) CHECK(R.abutment.at(s, t) == 0);
}

TEST_CASE("E(0) in A(0) is degenerate") {
  auto A = FiniteAlgebra::A(0);
  auto R = ce_spectral_sequence(A, A, modcat::Module::trivial(A), 4, 6);
  check_consistency(R);
  for (const auto& c : R.page(2).cells) CHECK(c.p == 0);
  for (int q = 0; q <= 4; ++q) CHECK(R.page(2).dim(0, q, q) == 1);
}

TEST_CASE("non-normal pairs are rejected") {
  auto A = FiniteAlgebra::A(1);
  CHECK_THROWS_AS(ce_spectral_sequence(FiniteAlgebra::A(0), A, modcat::Module::trivial(A), 3, 8), alg::NotNormal);
}

TEST_CASE("bad arguments") {
  auto A = FiniteAlgebra::A(1);
  auto B = FiniteAlgebra::E(1);
  CHECK_THROWS_AS(ce_spectral_sequence(B, A, modcat::Module::trivial(A), -1, 8), SpectralError);
  CHECK_THROWS_AS(ce_spectral_sequence(B, A, modcat::Module::trivial(B), 3, 8), SpectralError);
}
