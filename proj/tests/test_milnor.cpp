#include <doctest.h>

#include <map>
#include <set>

#include "oracles/adem_oracle.hpp"
#include "steenrod/milnor.hpp"

using namespace steenrod::milnor;

namespace {

Element sq(std::vector<unsigned> r) { return Element(Monomial(std::move(r))); }

std::vector<Monomial> all_upto(const Profile& p, unsigned D) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= D; ++d) {
    auto b = basis_in_degree(p, d);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

// Generating-function oracle for profile dimensions.
std::vector<std::size_t> profile_poincare_series(const std::vector<unsigned>& heights) {
  std::vector<std::size_t> poly{1};
  for (std::size_t i = 0; i < heights.size(); ++i) {
    unsigned w = (1u << (i + 1)) - 1;
    unsigned top = (1u << heights[i]) - 1;
    std::vector<std::size_t> next(poly.size() + top * w, 0);
    for (std::size_t a = 0; a < poly.size(); ++a)
      for (unsigned e = 0; e <= top; ++e) next[a + e * w] += poly[a];
    poly = next;
  }
  return poly;
}

using TensorSet = std::set<std::pair<std::vector<unsigned>, std::vector<unsigned>>>;

TensorSet as_set(const Tensor& t) {
  TensorSet s;
  for (const auto& [a, b] : t) {
    auto key = std::make_pair(a.r, b.r);
    if (!s.erase(key)) s.insert(key);
  }
  return s;
}

TensorSet tensor_product(const Tensor& x, const Tensor& y) {
  TensorSet s;
  for (const auto& [a1, b1] : x)
    for (const auto& [a2, b2] : y) {
      auto left = product(a1, a2);
      auto right = product(b1, b2);
      for (const auto& l : left.terms())
        for (const auto& r : right.terms()) {
          auto key = std::make_pair(l.r, r.r);
          if (!s.erase(key)) s.insert(key);
        }
    }
  return s;
}

}  // namespace

TEST_CASE("product examples") {
  auto x = sq({2, 1});
  CHECK(Element::unit() * x == x);
  CHECK(x * Element::unit() == x);
  CHECK((sq({1}) * sq({1})).is_zero());
  CHECK(sq({2}) * sq({2}) == sq({1, 1}));
  CHECK(sq({1}) * sq({2}) == sq({3}));
  CHECK(sq({2}) * sq({1}) == sq({3}) + sq({0, 1}));
}

TEST_CASE("Sq(2)Sq(2) agrees with the Adem-relation oracle converted both ways") {
  oracle::MilnorViaAdem ref;
  // Adem: Sq^2 Sq^2 = Sq^3 Sq^1.
  auto adem = ref.adem().reduce({2, 2});
  CHECK(adem == oracle::AdmSum{{3, 1}});
  auto expected = ref.multiply({2}, {2});
  std::set<std::vector<unsigned>> got;
  for (const auto& m : (sq({2}) * sq({2})).terms()) got.insert(m.r);
  CHECK(got == expected);
  CHECK(expected == std::set<std::vector<unsigned>>{{1, 1}});
}

TEST_CASE("Milnor product matches the Adem oracle for all basis products of total degree <= 12") {
  oracle::MilnorViaAdem ref;
  auto full = Profile::full();
  std::size_t checked = 0;
  for (unsigned d1 = 0; d1 <= 12; ++d1)
    for (unsigned d2 = 0; d1 + d2 <= 12; ++d2)
      for (const auto& a : basis_in_degree(full, d1))
        for (const auto& b : basis_in_degree(full, d2)) {
          std::set<std::vector<unsigned>> got;
          for (const auto& m : product(a, b).terms()) got.insert(m.r);
          auto want = ref.multiply(a.r, b.r);
          CHECK_MESSAGE(got == want, to_string(a) << " * " << to_string(b));
          ++checked;
        }
  CHECK(checked > 300);
}

TEST_CASE("basis enumeration and dimension oracles") {
  auto full = Profile::full();
  CHECK(basis_in_degree(full, 0) == std::vector<Monomial>{Monomial{}});
  CHECK(basis_in_degree(full, 3) == std::vector<Monomial>{Monomial({3}), Monomial({0, 1})});
  CHECK(basis_in_degree(Profile::A(1), 7).empty());
  for (unsigned d = 0; d <= 40; ++d) {
    CHECK(dimension(full, d) == oracle::partition_count(d));
    if (d <= 20) CHECK(oracle::admissible_basis(d).size() == oracle::partition_count(d));
    auto b = basis_in_degree(full, d);
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(basis_less(b[i - 1], b[i]));
  }
}

TEST_CASE("A(n) and E(n) dimensions match the profile generating function") {
  for (unsigned n = 0; n <= 3; ++n) {
    std::vector<unsigned> h;
    for (unsigned i = 1; i <= n + 1; ++i) h.push_back(n + 2 - i);
    auto series = profile_poincare_series(h);
    auto p = Profile::A(n);
    std::size_t total = 0;
    for (unsigned d = 0; d < series.size() + 3; ++d) {
      std::size_t want = d < series.size() ? series[d] : 0;
      CHECK(dimension(p, d) == want);
      total += dimension(p, d);
    }
    CHECK(total == (std::size_t{1} << ((n + 1) * (n + 2) / 2)));
    CHECK(pd_degree(n) == series.size() - 1);
  }
  CHECK(pd_degree(0) == 1);
  CHECK(pd_degree(1) == 6);
  CHECK(pd_degree(2) == 23);
  CHECK(pd_degree(3) == 72);
  for (unsigned n = 0; n < 3; ++n) CHECK(pd_degree(n) < pd_degree(n + 1));

  auto e1 = all_upto(Profile::E(1), 10);
  CHECK(e1 == std::vector<Monomial>{Monomial{}, Monomial({1}), Monomial({0, 1}), Monomial({1, 1})});
}

TEST_CASE("profile subalgebras are closed under the product") {
  for (const auto& p : {Profile::A(1), Profile::A(2), Profile::E(1), Profile::E(2)}) {
    auto basis = all_upto(p, *p.top_degree());
    for (const auto& a : basis)
      for (const auto& b : basis)
        for (const auto& m : product(a, b).terms()) CHECK_MESSAGE(p.admits(m), p.name());
  }
}

TEST_CASE("coproduct examples") {
  CHECK(coproduct(Monomial{}) == Tensor{{Monomial{}, Monomial{}}});
  auto c1 = as_set(coproduct(Monomial({1})));
  CHECK(c1 == TensorSet{{{1}, {}}, {{}, {1}}});
  auto c2 = as_set(coproduct(Monomial({2})));
  CHECK(c2 == TensorSet{{{2}, {}}, {{1}, {1}}, {{}, {2}}});
}

TEST_CASE("antipode examples") {
  CHECK(antipode(Monomial{}) == Element::unit());
  CHECK(antipode(Monomial({1})) == sq({1}));
  CHECK(antipode(Monomial({2})) == sq({2}));
  // chi(Sq^3) = Sq^2 Sq^1 = Sq(3) + Sq(0,1)
  CHECK(antipode(Monomial({3})) == sq({3}) + sq({0, 1}));
}

TEST_CASE("Hopf axioms through degree 14") {
  const unsigned D = 14;
  auto basis = all_upto(Profile::full(), D);
  for (const auto& a : basis) {
    // counit and convolution identities
    Element conv, conv_right;
    for (const auto& [x, y] : coproduct(a)) {
      conv += product(antipode(x), Element(y));
      conv_right += product(Element(x), antipode(y));
    }
    Element eps = a.is_unit() ? Element::unit() : Element{};
    CHECK(conv == eps);
    CHECK(conv_right == eps);
    CHECK(antipode(antipode(a)) == Element(a));

    // coassociativity
    std::set<std::vector<std::vector<unsigned>>> l3, r3;
    auto tog = [](auto& s, const auto& k) {
      if (!s.erase(k)) s.insert(k);
    };
    for (const auto& [x, y] : coproduct(a)) {
      for (const auto& [x1, x2] : coproduct(x)) tog(l3, std::vector<std::vector<unsigned>>{x1.r, x2.r, y.r});
      for (const auto& [y1, y2] : coproduct(y)) tog(r3, std::vector<std::vector<unsigned>>{x.r, y1.r, y2.r});
    }
    CHECK(l3 == r3);
  }
  for (const auto& a : basis)
    for (const auto& b : basis) {
      if (a.degree() + b.degree() > D) continue;
      auto ab = product(a, b);
      // associativity with Sq(1), Sq(2) and Sq(0,1)
      for (const auto& c : {Monomial({1}), Monomial({2}), Monomial({0, 1})}) {
        if (a.degree() + b.degree() + c.degree() > D) continue;
        CHECK(ab * Element(c) == Element(a) * (Element(b) * Element(c)));
      }
      // psi(ab) = psi(a) psi(b)
      CHECK(as_set(coproduct(ab)) == tensor_product(coproduct(a), coproduct(b)));
      // chi is an anti-automorphism
      CHECK(antipode(ab) == antipode(Element(b)) * antipode(Element(a)));
    }
}

TEST_CASE("Poincare duality of A(n)") {
  auto w0 = poincare_duality_check(0);
  CHECK(w0.ok());
  CHECK(w0.pd == 1);
  CHECK(w0.pairing_ranks == std::vector<std::size_t>{1, 1});

  for (unsigned n : {1u, 2u}) {
    auto w = poincare_duality_check(n);
    CHECK(w.ok());
    CHECK(w.pd == pd_degree(n));
    for (std::size_t k = 0; k < w.dims.size(); ++k) {
      CHECK(w.dims[k] == w.dims[w.pd - k]);
      CHECK(w.pairing_ranks[k] == w.dims[k]);
    }
  }
  CHECK(poincare_duality_check(1).pd == 6);
  CHECK(poincare_duality_check(2).pd == 23);
}

TEST_CASE("every nonzero v in A(n)^k with k < pd has some z with zv != 0") {
  for (unsigned n : {0u, 1u, 2u}) {
    auto p = Profile::A(n);
    unsigned pd = pd_degree(n);
    for (unsigned k = 0; k < pd; ++k) {
      auto basis = basis_in_degree(p, k);
      // left multiplication by the complementary degree pairs to the top class
      auto top = basis_in_degree(p, pd).front();
      auto comp = basis_in_degree(p, pd - k);
      for (std::size_t mask = 1; mask < (std::size_t{1} << std::min<std::size_t>(basis.size(), 10)); ++mask) {
        Element v;
        for (std::size_t i = 0; i < basis.size() && i < 10; ++i)
          if (mask >> i & 1) v += Element(basis[i]);
        bool found = false;
        for (const auto& z : comp)
          if ((Element(z) * v).contains(top)) {
            found = true;
            break;
          }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("verschiebung") {
  CHECK(verschiebung(sq({2})) == sq({1}));
  CHECK(verschiebung(sq({1})).is_zero());
  CHECK(verschiebung(sq({0, 1})).is_zero());
  CHECK(verschiebung(sq({4, 2}) + sq({1, 3})) == sq({2, 1}));
  // a ring map on the full algebra
  auto basis = all_upto(Profile::full(), 12);
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (a.degree() + b.degree() <= 12)
        CHECK(verschiebung(Element(a) * Element(b)) == verschiebung(Element(a)) * verschiebung(Element(b)));
}

TEST_CASE("parser round-trips with the printer") {
  for (const auto& e : {Element{}, Element::unit(), sq({2, 1}), sq({3}) + sq({0, 1})}) {
    CHECK(parse(to_string(e)) == e);
  }
  CHECK(to_string(sq({3}) + sq({0, 1})) == "Sq(3) + Sq(0,1)");
  CHECK(parse("Sq(0,1)+Sq(3)") == sq({3}) + sq({0, 1}));
  CHECK(parse("Sq(2) + Sq(2)").is_zero());
  CHECK_THROWS_AS(parse("Sq(1) + Sq(2)"), ParseError);
  CHECK_THROWS_AS(parse("Sq(1"), ParseError);
  CHECK_THROWS_AS(parse("Sq(x)"), ParseError);
}

TEST_CASE("associativity on all basis triples of total degree <= 12") {
  auto full = Profile::full();
  std::size_t n = 0;
  for (unsigned d1 = 0; d1 <= 12; ++d1)
    for (unsigned d2 = 0; d1 + d2 <= 12; ++d2)
      for (unsigned d3 = 0; d1 + d2 + d3 <= 12; ++d3)
        for (const auto& a : basis_in_degree(full, d1))
          for (const auto& b : basis_in_degree(full, d2))
            for (const auto& c : basis_in_degree(full, d3)) {
              CHECK(product(product(a, b), Element(c)) == product(Element(a), product(b, c)));
              ++n;
            }
  CHECK(n > 1000);
}
