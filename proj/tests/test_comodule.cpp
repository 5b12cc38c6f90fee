#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles/comodule_oracle.hpp"
#include "steenrod/comodule.hpp"

using namespace steenrod;
using namespace steenrod::comod;
using dual::QuotientSpec;

namespace {

oracle::Table table_of(const ComoduleWindow& M) {
  oracle::Table T;
  T.degrees = M.degrees();
  for (std::size_t x = 0; x < M.dim(); ++x) {
    T.terms.emplace_back();
    for (const auto& t : M.coaction(x)) T.terms.back().emplace_back(t.c.e, t.y);
  }
  return T;
}

std::size_t prim_dim_in_degree(const ComoduleWindow& M, int d) {
  std::size_t n = 0;
  for (const auto& v : primitives(M))
    if (M.degree(v.first_set()) == d) ++n;
  return n;
}

Monomial z(unsigned n, unsigned p = 1) { return Monomial::generator(n, p); }

// x0 (deg 0), x1 (deg 1) with mu(x1) = z1 (x) x0 + 1 (x) x1, x2 (deg 3) primitive.
ComoduleWindow two_step() {
  std::vector<std::vector<Term>> co = {{Term{Monomial{}, 0}}, {Term{Monomial{}, 1}, Term{z(1), 0}}, {Term{Monomial{}, 2}}};
  return ComoduleWindow(QuotientSpec::full(), 4, {0, 1, 3}, {"x0", "x1", "x2"}, co);
}

}  // namespace

TEST_CASE("trivial comodules") {
  auto k = ComoduleWindow::trivial(QuotientSpec::full(), 6, {0, 2, 2, 5});
  CHECK_FALSE(k.validate());
  CHECK(k.is_trivial());
  CHECK(primitives(k).size() == 4);
  auto F = primitive_sequence(k);
  CHECK(F.length() == 1);
  auto v = is_unipotent(k);
  CHECK(v.unipotent);
  CHECK(v.certified);
  CHECK(v.filtration->length() == 1);
}

TEST_CASE("primitives of span{1, z1} and the two-step example") {
  auto S = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 1);
  REQUIRE(S.dim() == 2);
  CHECK_FALSE(S.validate());
  auto P = primitives(S);
  REQUIRE(P.size() == 1);
  CHECK(S.label(P[0].first_set()) == "1");
  CHECK(oracle::count_primitives(table_of(S), 1) == 1);

  auto M = two_step();
  CHECK_FALSE(M.validate());
  CHECK(primitives(M).size() == 2);
  for (int d : {0, 1, 3}) CHECK(std::pow(2.0, prim_dim_in_degree(M, d)) == oracle::count_primitives(table_of(M), d));
  auto F = primitive_sequence(M);
  REQUIRE(F.length() == 2);
  CHECK(F.stages[0].dim() == 2);
  CHECK(F.stages[1].dim() == 3);
  CHECK(filtration_has_trivial_quotients(M, F.stages));
}

TEST_CASE("validator catches broken tables") {
  auto M = two_step();
  std::vector<std::vector<Term>> co = {{Term{Monomial{}, 0}}, {Term{z(1), 0}}, {Term{Monomial{}, 2}}};
  ComoduleWindow no_counit(QuotientSpec::full(), 4, {0, 1, 3}, {}, co);
  CHECK(no_counit.validate());
  co = {{Term{Monomial{}, 0}}, {Term{Monomial{}, 1}, Term{z(1), 0}}, {Term{Monomial{}, 2}, Term{z(1), 1}, Term{z(1, 3), 0}}};
  ComoduleWindow bad(QuotientSpec::full(), 4, {0, 1, 2}, {}, {{Term{Monomial{}, 0}}, {Term{Monomial{}, 1}, Term{z(1), 0}},
                                                             {Term{Monomial{}, 2}, Term{z(1), 1}}});
  auto why = bad.validate();
  REQUIRE(why);
  CHECK(why->find("coassociativity") != std::string::npos);
  ComoduleWindow wrong_degree(QuotientSpec::full(), 4, {0, 2}, {}, {{Term{Monomial{}, 0}}, {Term{Monomial{}, 1}, Term{z(1), 0}}});
  CHECK(wrong_degree.validate());
}

TEST_CASE("windows of A* are not certified unipotent") {
  auto A = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 10);
  CHECK_FALSE(A.validate());
  CHECK_FALSE(A.complete());
  auto v = is_unipotent(A);
  CHECK_FALSE(v.unipotent);
  CHECK_FALSE(v.certified);
  CHECK(v.window == 10);
  // The primitive sequence grows with the window.
  auto small = primitive_sequence(coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 4));
  auto large = primitive_sequence(A);
  CHECK(large.length() > small.length());
  CHECK(primitives(A).size() == 1);
  // A(1)* is finite, so its table is complete and unipotent.
  auto A1 = coalgebra_comodule(QuotientSpec::A(1), QuotientSpec::A(1), 6);
  CHECK(A1.complete());
  CHECK(is_unipotent(A1).unipotent);
}

TEST_CASE("extended comodules") {
  auto E = extended_comodule({0}, QuotientSpec::A(1), 6);
  auto C = coalgebra_comodule(QuotientSpec::A(1), QuotientSpec::A(1), 6);
  REQUIRE(E.dim() == C.dim());
  CHECK(E.complete());
  for (std::size_t x = 0; x < E.dim(); ++x) CHECK(E.coaction(x) == C.coaction(x));
  auto W = extended_comodule({0, 2, 3}, QuotientSpec::A(1), 8);
  CHECK_FALSE(W.validate());
  CHECK_FALSE(W.complete());
  auto T = table_of(W);
  for (int d = 0; d <= 8; ++d) {
    std::size_t p = prim_dim_in_degree(W, d);
    CHECK(std::pow(2.0, p) == oracle::count_primitives(T, d));
    std::size_t wd = (d == 0) + (d == 2) + (d == 3);
    CHECK(p >= wd);
  }
  for (std::size_t x = 0; x < W.dim(); ++x) {
    bool found = false;
    for (const auto& t : W.coaction(x)) found = found || (t.c.is_unit() && t.y == x);
    CHECK(found);
  }
}

TEST_CASE("tensor products: unit and symmetry") {
  auto M = two_step();
  auto k = ComoduleWindow::trivial(QuotientSpec::full(), 4, {0});
  auto Mk = tensor_diagonal(M, k), kM = tensor_diagonal(k, M);
  CHECK_FALSE(Mk.validate());
  REQUIRE(Mk.dim() == M.dim());
  REQUIRE(kM.dim() == M.dim());
  for (std::size_t x = 0; x < M.dim(); ++x) {
    CHECK(Mk.coaction(x) == M.coaction(x));
    CHECK(kM.coaction(x) == M.coaction(x));
  }
  std::vector<std::vector<Term>> co = {{Term{Monomial{}, 0}}, {Term{Monomial{}, 1}, Term{z(1, 2), 0}}};
  ComoduleWindow N(QuotientSpec::full(), 8, {0, 2}, {"y0", "y1"}, co);
  CHECK_FALSE(N.validate());
  ComoduleWindow M2 = ComoduleWindow(QuotientSpec::full(), 8, {0, 1}, {"x0", "x1"},
                                     {{Term{Monomial{}, 0}}, {Term{Monomial{}, 1}, Term{z(1), 0}}});
  auto MN = tensor_diagonal(M2, N), NM = tensor_diagonal(N, M2);
  CHECK_FALSE(MN.validate());
  CHECK_FALSE(NM.validate());
  auto pmn = tensor_basis(M2, N, 8), pnm = tensor_basis(N, M2, 8);
  std::vector<BitVector> twist(MN.dim(), BitVector(NM.dim()));
  for (std::size_t a = 0; a < pmn.size(); ++a)
    for (std::size_t b = 0; b < pnm.size(); ++b)
      if (pmn[a].first == pnm[b].second && pmn[a].second == pnm[b].first) twist[a].set(b);
  CHECK_FALSE(check_comodule_map(MN, NM, twist, 0));
  auto id = cohom(MN, MN, 0);
  CHECK(id.dim() >= 1);
}

TEST_CASE("cotensor products") {
  const int D = 12;
  auto k = ComoduleWindow::trivial(QuotientSpec::full(), D, {0});
  auto Aright = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), D, Side::right);
  CHECK_FALSE(Aright.validate());
  auto c1 = cotensor(Aright, k);
  CHECK(c1.dim(0) == 1);
  for (int d = 1; d <= D; ++d) CHECK(c1.dim(d) == 0);

  auto Q = QuotientSpec::quotient_by_P(1);
  auto AoverQ = coalgebra_comodule(QuotientSpec::full(), Q, D, Side::right);
  CHECK_FALSE(AoverQ.validate());
  auto kQ = ComoduleWindow::trivial(Q, D, {0});
  auto c2 = cotensor(AoverQ, kQ);
  for (int d = 0; d <= D; ++d) {
    REQUIRE(c2.dim(d) == 1);
    const auto& v = c2.basis.at(d)[0];
    REQUIRE(v.popcount() == 1);
    auto [i, j] = c2.pairs[v.first_set()];
    CHECK(AoverQ.label(i) == dual::to_string(z(1, static_cast<unsigned>(d))));
  }

  // (K\H) box_H L = L for L trivial over K = A*//P(1)*.
  auto KH = coalgebra_comodule(QuotientSpec::P(1), QuotientSpec::full(), D, Side::right);
  CHECK_FALSE(KH.validate());
  auto L = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 1);
  CHECK(corestrict(L, Q).is_trivial());
  auto c3 = cotensor(KH, L);
  CHECK(c3.dim(0) == 1);
  CHECK(c3.dim(1) == 1);
  for (int d = 2; d <= D; ++d) CHECK(c3.dim(d) == 0);
}

TEST_CASE("cohom: identity, coaugmentation and the exhaustive oracle") {
  auto M = two_step();
  auto id = cohom(M, M, 0);
  CHECK(id.unknowns - id.rank == id.dim());
  std::vector<BitVector> idmap;
  for (std::size_t x = 0; x < M.dim(); ++x) idmap.push_back(BitVector::unit(M.dim(), x));
  CHECK_FALSE(check_comodule_map(M, M, idmap, 0));
  CHECK(std::pow(2.0, id.dim()) == oracle::count_maps(table_of(M), table_of(M), 0));

  const int D = 8;
  auto k = ComoduleWindow::trivial(QuotientSpec::full(), D, {0});
  auto A = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), D);
  for (int t = -D; t <= D; ++t) {
    auto r = cohom(k, A, t);
    CHECK(r.dim() == (t == 0 ? 1u : 0u));
    CHECK(r.unknowns - r.rank == r.dim());
  }
  auto coaug = cohom(k, A, 0);
  CHECK(A.label(coaug.maps[0][0].first_set()) == "1");

  auto S = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 3);
  for (int t = -3; t <= 3; ++t) {
    auto r = cohom(M, S, t);
    CHECK(std::pow(2.0, r.dim()) == oracle::count_maps(table_of(M), table_of(S), t));
    auto r2 = cohom(S, M, t);
    CHECK(std::pow(2.0, r2.dim()) == oracle::count_maps(table_of(S), table_of(M), t));
  }
}

TEST_CASE("cohom from a window of A* into a finite comodule needs constraints above the support") {
  auto M = two_step();
  // The truncation of A* at the top of the support admits edge maps; a larger window removes them.
  auto tight = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 3);
  auto wide = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 16);
  CHECK(cohom(tight, M, 0).dim() > 0);
  for (int t = -3; t <= 8; ++t) CHECK(cohom(wide, M, t, M.top() + t + 8).dim() == 0);
  // Negative control: with the source coaction trivialized, maps exist.
  auto flat = ComoduleWindow::trivial(QuotientSpec::full(), 16, wide.degrees());
  CHECK(cohom(flat, M, 0).dim() > 0);
}

TEST_CASE("duality with modules") {
  auto k = ComoduleWindow::trivial(QuotientSpec::A(1), 6, {0, 3});
  auto km = dualize_comodule(k);
  CHECK_FALSE(km.validate());
  for (std::size_t a = 1; a < km.algebra()->dim(); ++a)
    for (std::size_t x = 0; x < km.dim(); ++x) CHECK(km.act(a, x).is_zero());

  // The dual of A(1)* is the free A(1)-module of rank one.
  auto C = coalgebra_comodule(QuotientSpec::A(1), QuotientSpec::A(1), 6);
  auto F = dualize_comodule(C);
  CHECK_FALSE(F.validate());
  auto S = F.submodule({BitVector::unit(F.dim(), 0)});
  CHECK(S.dim() == 8);
  auto R = modcat::Module::regular(F.algebra());
  for (int d = 0; d <= 6; ++d) CHECK(F.dim(d) == R.dim(d));

  // Same for a window of A*.
  auto W = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 10);
  auto FW = dualize_comodule(W);
  CHECK_FALSE(FW.validate());
  CHECK(FW.submodule({BitVector::unit(FW.dim(), 0)}).dim() == W.dim());

  // Double duality on random six-dimensional comodules.
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 5 && seed < 400; ++seed) {
    RandomComoduleOptions opt;
    opt.spec = QuotientSpec::A(1);
    opt.max_dim = 6;
    auto M = random_comodule(seed, opt);
    if (M.dim() != 6) continue;
    ++tested;
    auto N = dualize_comodule(M);
    CHECK_FALSE(N.validate());
    auto back = dualize_module(N, QuotientSpec::A(1), M.window());
    CHECK_FALSE(back.validate());
    for (std::size_t x = 0; x < M.dim(); ++x) CHECK(back.coaction(x) == M.coaction(x));
  }
  CHECK(tested == 5);
}

TEST_CASE("JSON round trip and validation on load") {
  auto M = random_comodule(7);
  auto text = to_json(M);
  auto back = from_json(text);
  REQUIRE(back.dim() == M.dim());
  for (std::size_t x = 0; x < M.dim(); ++x) {
    CHECK(back.coaction(x) == M.coaction(x));
    CHECK(back.label(x) == M.label(x));
  }
  CHECK(to_json(back) == text);
  auto R = coalgebra_comodule(QuotientSpec::P(1), QuotientSpec::full(), 5, Side::right);
  CHECK(to_json(from_json(to_json(R))) == to_json(R));

  std::string broken = to_json(two_step());
  auto pos = broken.find("\"z1\"");
  REQUIRE(pos != std::string::npos);
  broken.replace(pos, 4, "\"z2\"");
  CHECK_THROWS_AS(from_json(broken), ComoduleError);
  CHECK_THROWS_AS(from_json("{\"format\": 3}"), ComoduleError);
  CHECK_THROWS_AS(from_json("not json"), ComoduleError);
}

TEST_CASE("random comodules are valid, seeded and bounded") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto M = random_comodule(seed);
    CHECK_FALSE(M.validate());
    CHECK(M.dim() <= 12);
    CHECK(M.complete());
    CHECK(to_json(random_comodule(seed)) == to_json(M));
  }
}

TEST_CASE("unipotence on random short exact sequences") {
  const int D = 10;
  auto source = coalgebra_comodule(QuotientSpec::full(), QuotientSpec::full(), 30);
  auto flat = ComoduleWindow::trivial(QuotientSpec::full(), 30, source.degrees());
  std::size_t total = 0, nontrivial = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto s = random_short_exact(seed);
    INFO("seed " << seed);
    REQUIRE_FALSE(s.M.validate());
    REQUIRE_FALSE(s.L.validate());
    REQUIRE_FALSE(s.N.validate());
    CHECK(s.L.dim() + s.N.dim() == s.M.dim());
    auto uM = is_unipotent(s.M), uL = is_unipotent(s.L), uN = is_unipotent(s.N);
    CHECK(uM.certified);
    CHECK(uM.unipotent == (uL.unipotent && uN.unipotent));
    REQUIRE(uM.unipotent);
    // Induced filtrations on L and N have trivial quotients.
    const auto& F = uM.filtration->stages;
    f2::Subspace image(s.M.dim());
    for (const auto& v : s.inclusion) image.insert(v);
    std::vector<f2::Subspace> onL, onN;
    for (const auto& st : F) {
      auto meet = st.intersect(image);
      f2::Subspace l(s.L.dim());
      for (const auto& v : meet.basis()) {
        // coordinates of v over the inclusion images
        f2::BitMatrix inc(s.M.dim(), s.L.dim());
        for (std::size_t j = 0; j < s.L.dim(); ++j)
          for (auto i : s.inclusion[j].support()) inc.set(i, j);
        auto c = f2::solve(inc, v);
        REQUIRE(c);
        l.insert(*c);
      }
      onL.push_back(l);
      f2::Subspace n(s.N.dim());
      for (const auto& v : st.basis()) {
        BitVector w(s.N.dim());
        for (auto i : v.support()) w += s.projection[i];
        if (!w.is_zero()) n.insert(w);
      }
      onN.push_back(n);
    }
    CHECK(filtration_has_trivial_quotients(s.L, onL));
    CHECK(filtration_has_trivial_quotients(s.N, onN));
    // Primitive sequence length against the degree filtration.
    std::vector<f2::Subspace> by_degree;
    f2::Subspace acc(s.M.dim());
    int last = s.M.degree(0);
    for (std::size_t x = 0; x < s.M.dim(); ++x) {
      if (s.M.degree(x) != last) {
        by_degree.push_back(acc);
        last = s.M.degree(x);
      }
      acc.insert(BitVector::unit(s.M.dim(), x));
    }
    by_degree.push_back(acc);
    REQUIRE(filtration_has_trivial_quotients(s.M, by_degree));
    CHECK(uM.filtration->length() <= by_degree.size());
    // Truncated vanishing of maps out of A*.
    for (int t = -s.M.top(); t <= D; ++t) {
      int cap = s.M.top() + t;
      if (cap < 0) continue;
      CHECK(cohom(source, s.M, t, std::min(cap + 8, 30)).dim() == 0);
    }
    if (!s.M.empty()) CHECK(cohom(flat, s.M, s.M.bottom()).dim() > 0);
    total += s.M.dim();
    nontrivial += !s.M.is_trivial();
  }
  CHECK(total > 400);
  CHECK(nontrivial > 100);
}
