#include "steenrod/checks.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "steenrod/dual_hopf.hpp"
#include "steenrod/f2linalg.hpp"
#include "steenrod/milnor.hpp"

namespace steenrod::checks {

void Report::fail(std::string why) {
  if (ok) witness = why;
  ok = false;
  lines.push_back("FAIL " + why);
}

namespace {

using Key = std::vector<std::vector<unsigned>>;

template <class S, class K>
void toggle(S& s, const K& k) {
  if (!s.erase(k)) s.insert(k);
}

std::set<Key> milnor_tensor_product(const milnor::Tensor& x, const milnor::Tensor& y) {
  std::set<Key> s;
  for (const auto& [a1, b1] : x)
    for (const auto& [a2, b2] : y) {
      auto left = milnor::product(a1, a2);
      auto right = milnor::product(b1, b2);
      for (const auto& l : left.terms())
        for (const auto& r : right.terms()) toggle(s, Key{l.r, r.r});
    }
  return s;
}

std::set<Key> milnor_element_coproduct(const milnor::Element& e) {
  std::set<Key> s;
  for (const auto& m : e.terms())
    for (const auto& [a, b] : milnor::coproduct(m)) toggle(s, Key{a.r, b.r});
  return s;
}

}  // namespace

Report hopf_axioms_milnor(unsigned D) {
  Report R;
  R.name = "hopf-axioms A";
  using milnor::Element;
  using milnor::Monomial;
  std::vector<std::vector<Monomial>> basis(D + 1);
  for (unsigned d = 0; d <= D; ++d) basis[d] = milnor::basis_in_degree(milnor::Profile::full(), d);
  std::vector<Monomial> gens;
  for (unsigned i = 0; (1u << i) <= D; ++i) gens.push_back(Monomial({1u << i}));
  for (unsigned d = 0; d <= D; ++d) {
    std::size_t before = R.checks;
    for (const auto& a : basis[d]) {
      Element conv_l, conv_r;
      std::size_t left_units = 0;
      std::set<Key> l3, r3;
      auto psi = milnor::coproduct(a);
      for (const auto& [x, y] : psi) {
        conv_l += milnor::product(milnor::antipode(x), Element(y));
        conv_r += milnor::product(Element(x), milnor::antipode(y));
        if (x.is_unit()) left_units += (y == a) ? 1 : 2;
        for (const auto& [x1, x2] : milnor::coproduct(x)) toggle(l3, Key{x1.r, x2.r, y.r});
        for (const auto& [y1, y2] : milnor::coproduct(y)) toggle(r3, Key{x.r, y1.r, y2.r});
      }
      Element eps = a.is_unit() ? Element::unit() : Element{};
      const std::string name = milnor::to_string(a);
      if (!(conv_l == eps) || !(conv_r == eps)) R.fail("chi-convolution at " + name);
      if (!(milnor::antipode(milnor::antipode(a)) == Element(a))) R.fail("chi^2 at " + name);
      if (left_units != 1) R.fail("counit at " + name);
      if (l3 != r3) R.fail("coassociativity at " + name);
      R.checks += 5;
    }
    for (unsigned i = 0; i <= d; ++i)
      for (const auto& a : basis[i])
        for (const auto& b : basis[d - i]) {
          auto ab = milnor::product(a, b);
          const std::string name = milnor::to_string(a) + " * " + milnor::to_string(b);
          if (milnor_element_coproduct(ab) != milnor_tensor_product(milnor::coproduct(a), milnor::coproduct(b)))
            R.fail("psi(ab) at " + name);
          if (!(milnor::antipode(ab) == milnor::antipode(Element(b)) * milnor::antipode(Element(a))))
            R.fail("chi(ab) at " + name);
          R.checks += 2;
          for (const auto& g : gens) {
            if (d + g.degree() > D) continue;
            if (!(ab * Element(g) == Element(a) * (Element(b) * Element(g)))) R.fail("associativity at " + name);
            ++R.checks;
          }
        }
    R.lines.push_back("degree " + std::to_string(d) + ": " + std::to_string(basis[d].size()) + " basis elements, " +
                      std::to_string(R.checks - before) + " identities");
  }
  return R;
}

Report hopf_axioms_dual(unsigned D) {
  Report R;
  R.name = "hopf-axioms A*";
  using dual::Monomial;
  using dual::Polynomial;
  auto full = dual::QuotientSpec::full();
  std::vector<std::vector<Monomial>> basis(D + 1);
  for (unsigned d = 0; d <= D; ++d) basis[d] = dual::sub_basis_in_degree(full, d);
  for (unsigned d = 0; d <= D; ++d) {
    std::size_t before = R.checks;
    for (const auto& m : basis[d]) {
      std::set<Key> l3, r3;
      Polynomial conv, conv_r;
      std::size_t left_units = 0;
      for (const auto& [a, b] : dual::coproduct(m)) {
        conv += dual::antipode(a) * Polynomial(b);
        conv_r += Polynomial(a) * dual::antipode(b);
        if (a.is_unit()) left_units += (b == m) ? 1 : 2;
        for (const auto& [a1, a2] : dual::coproduct(a)) toggle(l3, Key{a1.e, a2.e, b.e});
        for (const auto& [b1, b2] : dual::coproduct(b)) toggle(r3, Key{a.e, b1.e, b2.e});
      }
      Polynomial eps = m.is_unit() ? Polynomial::unit() : Polynomial{};
      const std::string name = dual::to_string(m);
      if (!(conv == eps) || !(conv_r == eps)) R.fail("chi-convolution at " + name);
      if (!(dual::antipode(dual::antipode(m)) == Polynomial(m))) R.fail("chi^2 at " + name);
      if (left_units != 1) R.fail("counit at " + name);
      if (l3 != r3) R.fail("coassociativity at " + name);
      R.checks += 5;
    }
    for (unsigned i = 0; i <= d; ++i)
      for (const auto& x : basis[i])
        for (const auto& y : basis[d - i]) {
          if (dual::basis_less(y, x)) continue;  // commutative
          const std::string name = dual::to_string(x) + " * " + dual::to_string(y);
          auto xy = x * y;
          if (!(dual::coproduct(xy) == dual::tensor_product(dual::coproduct(x), dual::coproduct(y))))
            R.fail("psi(xy) at " + name);
          if (!(dual::antipode(xy) == dual::antipode(x) * dual::antipode(y))) R.fail("chi(xy) at " + name);
          R.checks += 2;
        }
    R.lines.push_back("degree " + std::to_string(d) + ": " + std::to_string(basis[d].size()) + " basis elements, " +
                      std::to_string(R.checks - before) + " identities");
  }
  return R;
}

Report coproduct_transpose(unsigned D) {
  Report R;
  R.name = "coproduct transpose";
  auto full = dual::QuotientSpec::full();
  std::vector<std::vector<milnor::Monomial>> mb(D + 1);
  std::vector<std::vector<dual::Monomial>> db(D + 1);
  std::vector<f2::BitMatrix> P(D + 1);
  for (unsigned d = 0; d <= D; ++d) {
    mb[d] = milnor::basis_in_degree(milnor::Profile::full(), d);
    db[d] = dual::sub_basis_in_degree(full, d);
    P[d] = f2::BitMatrix(mb[d].size(), db[d].size());
    for (std::size_t i = 0; i < mb[d].size(); ++i)
      for (std::size_t j = 0; j < db[d].size(); ++j)
        if (dual::pairing(mb[d][i], db[d][j])) P[d].set(i, j);
    const auto rk = f2::rank(P[d]);
    if (rk != mb[d].size() || rk != db[d].size()) R.fail("pairing degenerate in degree " + std::to_string(d));
  }
  auto index_of = [&](unsigned d, const dual::Monomial& m) {
    return static_cast<std::size_t>(std::find(db[d].begin(), db[d].end(), m) - db[d].begin());
  };
  for (unsigned d = 0; d <= D; ++d) {
    std::size_t before = R.checks;
    for (std::size_t k = 0; k < db[d].size(); ++k) {
      auto psi = dual::coproduct(db[d][k]);
      for (unsigned i = 0; i <= d; ++i)
        for (std::size_t a = 0; a < mb[i].size(); ++a)
          for (std::size_t b = 0; b < mb[d - i].size(); ++b) {
            bool lhs = false;
            for (const auto& m : milnor::product(mb[i][a], mb[d - i][b]).terms()) lhs ^= dual::pairing(m, db[d][k]);
            bool rhs = false;
            for (const auto& [x, y] : psi)
              if (x.degree() == i) rhs ^= P[i].get(a, index_of(i, x)) && P[d - i].get(b, index_of(d - i, y));
            if (lhs != rhs)
              R.fail("<" + milnor::to_string(mb[i][a]) + " * " + milnor::to_string(mb[d - i][b]) + ", " +
                     dual::to_string(db[d][k]) + ">");
            ++R.checks;
          }
    }
    R.lines.push_back("degree " + std::to_string(d) + ": rank " + std::to_string(db[d].size()) + ", " +
                      std::to_string(R.checks - before) + " structure constants");
  }
  return R;
}

std::size_t partition_count(unsigned d) {
  std::vector<std::size_t> c(d + 1, 0);
  c[0] = 1;
  for (unsigned part = 1; part <= d; part = 2 * part + 1)
    for (unsigned x = part; x <= d; ++x) c[x] += c[x - part];
  return c[d];
}

Report dimension_oracles(unsigned D) {
  Report R;
  R.name = "dimensions";
  for (unsigned d = 0; d <= D; ++d) {
    auto got = milnor::dimension(milnor::Profile::full(), d);
    auto want = partition_count(d);
    R.lines.push_back("dim A^" + std::to_string(d) + " = " + std::to_string(got) + " (partitions " +
                      std::to_string(want) + ")");
    if (got != want) R.fail("dim A^" + std::to_string(d));
    ++R.checks;
  }
  for (unsigned n = 0; n <= 2; ++n) {
    auto w = milnor::poincare_duality_check(n);
    std::size_t total = 0;
    for (auto x : w.dims) total += x;
    bool palindrome = std::equal(w.dims.begin(), w.dims.end(), w.dims.rbegin());
    std::string dims;
    for (auto x : w.dims) dims += (dims.empty() ? "" : ",") + std::to_string(x);
    R.lines.push_back("A(" + std::to_string(n) + "): dim " + std::to_string(total) + ", pd " + std::to_string(w.pd) +
                      ", dims [" + dims + "]" + (w.ok() ? ", duality ok" : ", duality FAILS"));
    if (!w.ok()) R.fail("Poincare duality of A(" + std::to_string(n) + ")");
    if (!palindrome) R.fail("dimension vector of A(" + std::to_string(n) + ") is not palindromic");
    if (w.pd != milnor::pd_degree(n)) R.fail("pd of A(" + std::to_string(n) + ")");
    R.checks += 3;
  }
  auto a1 = milnor::poincare_duality_check(1);
  std::size_t d1 = 0;
  for (auto x : a1.dims) d1 += x;
  if (d1 != 8 || a1.pd != 6) R.fail("A(1) should have dimension 8 and pd 6");
  if (milnor::poincare_duality_check(2).pd != 23) R.fail("pd(2) should be 23");
  return R;
}

modcat::Module random_finite_module(const alg::AlgebraPtr& W, std::uint64_t seed, int top, std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ngen(1, 2), gdeg(0, 1);
  std::vector<int> gens;
  const int k = ngen(rng);
  for (int i = 0; i < k; ++i) gens.push_back(gdeg(rng));
  std::sort(gens.begin(), gens.end());
  auto F = modcat::Module::free(W, gens).truncate(top);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<f2::BitVector> rel;
    std::uniform_int_distribution<std::size_t> pick(0, F.dim() - 1);
    for (int r = 0; r < 3; ++r) {
      std::size_t x = pick(rng);
      auto v = f2::BitVector::unit(F.dim(), x);
      for (std::size_t y = F.offset(F.degree(x)); y < F.offset(F.degree(x) + 1); ++y)
        if (rng() % 2) v.flip(y);
      rel.push_back(v);
    }
    auto Q = F.quotient(rel);
    if (!Q.empty() && Q.dim() <= max_dim) return Q;
  }
  return modcat::Module::trivial(W);
}

}  // namespace steenrod::checks
