#include "steenrod/cobar.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "steenrod/algebra.hpp"
#include "steenrod/milnor.hpp"
#include "steenrod/module_cat.hpp"

namespace steenrod::cobar {

using comod::Term;
using dual::Polynomial;

namespace {

int mono_degree(const Monomial& m) { return static_cast<int>(m.degree()); }

QuotientSpec exterior_quotient() { return QuotientSpec::frobenius_quotient(0, 1); }

}  // namespace

// ---- cobar complex ----

CobarComplex::CobarComplex(QuotientSpec coalgebra, ComoduleWindow coefficients, int s_max, int t_max)
    : spec_(std::move(coalgebra)), M_(std::move(coefficients)), s_max_(s_max), t_max_(t_max) {
  if (s_max < 0 || t_max < 0) throw CobarError("cobar bounds must be nonnegative");
  if (!(M_.spec() == spec_)) throw CobarError("coefficients are not a comodule over " + spec_.name());
  if (M_.side() != comod::Side::left) throw CobarError("cobar coefficients must be a left comodule");
  if (!M_.complete() && M_.window() < t_max)
    throw CobarError("coefficient window " + std::to_string(M_.window()) + " is too small for t = " +
                     std::to_string(t_max));
  coideal_by_degree_.assign(t_max + 1, {});
  for (int d = 1; d <= t_max; ++d)
    for (auto& m : dual::sub_basis_in_degree(spec_, static_cast<unsigned>(d))) {
      coideal_index_[m.e] = coideal_.size();
      coideal_by_degree_[d].push_back(coideal_.size());
      coideal_.push_back(std::move(m));
      coideal_degree_.push_back(d);
    }
  reduced_coproduct_.resize(coideal_.size());
  for (std::size_t i = 0; i < coideal_.size(); ++i)
    for (const auto& [a, b] : dual::coproduct(coideal_[i], spec_)) {
      if (a.is_unit() || b.is_unit()) continue;
      reduced_coproduct_[i].emplace_back(static_cast<std::uint32_t>(coideal_index_.at(a.e)),
                                         static_cast<std::uint32_t>(coideal_index_.at(b.e)));
    }
}

std::optional<std::size_t> CobarComplex::coideal_index(const Monomial& m) const {
  auto it = coideal_index_.find(m.e);
  if (it == coideal_index_.end()) return std::nullopt;
  return it->second;
}

void CobarComplex::check_range(int s, int t) const {
  if (s < 0 || s > s_max_ + 1 || t > t_max_)
    throw CobarError("bidegree (" + std::to_string(s) + "," + std::to_string(t) + ") outside the cobar window");
}

const CobarComplex::Layer& CobarComplex::layer(int s, int t) const {
  check_range(s, t);
  {
    std::lock_guard lock(mu_);
    auto it = layers_.find({s, t});
    if (it != layers_.end()) return *it->second;
  }
  auto L = std::make_unique<Layer>();
  Cell cur(s + 1);
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == s) {
      for (std::size_t y = M_.offset(rem); y < M_.offset(rem + 1); ++y) {
        cur[s] = static_cast<std::uint32_t>(y);
        L->index.emplace(cur, L->cells.size());
        L->cells.push_back(cur);
      }
      return;
    }
    for (int d = 1; d <= rem; ++d)
      for (auto c : coideal_by_degree_[d]) {
        cur[i] = static_cast<std::uint32_t>(c);
        rec(i + 1, rem - d);
      }
  };
  if (t >= 0) rec(0, t);
  std::lock_guard lock(mu_);
  auto& slot = layers_[{s, t}];
  if (!slot) slot = std::move(L);
  return *slot;
}

std::size_t CobarComplex::dim(int s, int t) const { return layer(s, t).cells.size(); }
const std::vector<CobarComplex::Cell>& CobarComplex::cells(int s, int t) const { return layer(s, t).cells; }

std::optional<std::size_t> CobarComplex::index(int s, int t, const Cell& c) const {
  const auto& L = layer(s, t);
  auto it = L.index.find(c);
  if (it == L.index.end()) return std::nullopt;
  return it->second;
}

std::string CobarComplex::label(int s, int t, std::size_t k) const {
  const auto& c = cells(s, t)[k];
  std::string out = "[";
  for (int i = 0; i < s; ++i) {
    if (i) out += "|";
    out += dual::to_string(coideal_[c[i]]);
  }
  out += "]";
  if (!(M_.dim() == 1 && M_.is_trivial())) out += M_.label(c[s]);
  return out;
}

const std::vector<BitVector>& CobarComplex::differential(int s, int t) const {
  if (s > s_max_) throw CobarError("differential out of the top cobar degree");
  {
    std::lock_guard lock(mu_);
    auto it = diffs_.find({s, t});
    if (it != diffs_.end()) return *it->second;
  }
  const auto& src = layer(s, t);
  const auto& dst = layer(s + 1, t);
  auto out = std::make_unique<std::vector<BitVector>>(src.cells.size(), BitVector(dst.cells.size()));
  Cell next(s + 2);
  for (std::size_t k = 0; k < src.cells.size(); ++k) {
    const auto& c = src.cells[k];
    auto& img = (*out)[k];
    for (int i = 0; i < s; ++i)
      for (auto [a, b] : reduced_coproduct_[c[i]]) {
        for (int j = 0, o = 0; j < s; ++j) {
          if (j == i) {
            next[o++] = a;
            next[o++] = b;
          } else {
            next[o++] = c[j];
          }
        }
        next[s + 1] = c[s];
        img.flip(dst.index.at(next));
      }
    for (const auto& term : M_.coaction(c[s])) {
      if (term.c.is_unit()) continue;
      for (int j = 0; j < s; ++j) next[j] = c[j];
      next[s] = static_cast<std::uint32_t>(coideal_index_.at(term.c.e));
      next[s + 1] = static_cast<std::uint32_t>(term.y);
      img.flip(dst.index.at(next));
    }
  }
  std::lock_guard lock(mu_);
  auto& slot = diffs_[{s, t}];
  if (!slot) slot = std::move(out);
  return *slot;
}

std::optional<std::string> CobarComplex::check_dd() const {
  for (int t = 0; t <= t_max_; ++t)
    for (int s = 0; s + 1 <= s_max_; ++s) {
      const auto& d0 = differential(s, t);
      const auto& d1 = differential(s + 1, t);
      for (std::size_t k = 0; k < d0.size(); ++k) {
        BitVector acc(dim(s + 2, t));
        for (auto j : d0[k].support()) acc += d1[j];
        if (!acc.is_zero()) return "d^2 != 0 on " + label(s, t, k);
      }
    }
  return std::nullopt;
}

const CobarComplex::Cohomology& CobarComplex::cohomology(int s, int t) const {
  if (s > s_max_) throw CobarError("cohomology above s_max");
  check_range(s, t);
  {
    std::lock_guard lock(mu_);
    auto it = cohom_.find({s, t});
    if (it != cohom_.end()) return *it->second;
  }
  auto H = std::make_unique<Cohomology>();
  const std::size_t n = dim(s, t);
  std::vector<BitVector> Z;
  const auto& d = differential(s, t);
  Z = f2::kernel_of_images(d, dim(s + 1, t));
  f2::Subspace B(n);
  if (s > 0 && t >= 0)
    for (const auto& v : differential(s - 1, t)) B.insert(v);
  H->cocycles = Z.size();
  H->boundaries = B.dim();
  for (const auto& z : Z)
    if (B.insert(z)) H->representatives.push_back(z);
  H->dim = H->representatives.size();
  std::lock_guard lock(mu_);
  auto& slot = cohom_[{s, t}];
  if (!slot) slot = std::move(H);
  return *slot;
}

std::optional<BitVector> CobarComplex::class_of(int s, int t, const BitVector& v) const {
  const auto& d = differential(s, t);
  BitVector dv(dim(s + 1, t));
  for (auto k : v.support()) dv += d[k];
  if (!dv.is_zero()) return std::nullopt;
  const auto& H = cohomology(s, t);
  const std::size_t n = dim(s, t);
  f2::Subspace B(n);
  if (s > 0)
    for (const auto& w : differential(s - 1, t)) B.insert(w);
  f2::BitMatrix m(n, H.dim);
  for (std::size_t j = 0; j < H.dim; ++j)
    for (auto i : B.reduce(H.representatives[j]).support()) m.set(i, j);
  auto x = f2::solve(m, B.reduce(v));
  if (!x) throw CobarError("cocycle outside the span of the representatives");
  return x;
}

std::size_t CotorTable::at(int s, int t) const {
  if (s < 0 || t < 0 || s > s_max || t > t_max) return 0;
  return dims[s][t];
}

CotorTable cobar_cotor(const CobarComplex& X) {
  CotorTable T;
  T.s_max = X.s_max();
  T.t_max = X.t_max();
  T.dims.assign(T.s_max + 1, std::vector<std::size_t>(T.t_max + 1, 0));
  for (int s = 0; s <= T.s_max; ++s)
    for (int t = 0; t <= T.t_max; ++t) T.dims[s][t] = X.cohomology(s, t).dim;
  return T;
}

CotorTable cobar_cotor(const QuotientSpec& C, int s_max, int t_max) {
  return cobar_cotor(CobarComplex(C, ComoduleWindow::trivial(C, t_max, {0}), s_max, t_max));
}

CotorTable cobar_cotor(const QuotientSpec& C, const ComoduleWindow& M, int s_max, int t_max) {
  return cobar_cotor(CobarComplex(C, M, s_max, t_max));
}

std::size_t q_monomial_count(int s, int t) {
  // ways[s][t] over generators of weight 2^{n+1}-1
  if (s < 0 || t < 0) return 0;
  std::vector<std::vector<std::size_t>> ways(s + 1, std::vector<std::size_t>(t + 1, 0));
  ways[0][0] = 1;
  for (int w = 1; w <= t; w = 2 * w + 1)
    for (int a = 1; a <= s; ++a)
      for (int b = w; b <= t; ++b) ways[a][b] += ways[a - 1][b - w];
  return ways[s][t];
}

// ---- adjoint coaction on Cotor over E = A*//A^(1)* ----

std::vector<std::pair<Monomial, BitVector>> adjoint_coaction_on_class(const CobarComplex& X, int s, int t,
                                                                      const BitVector& cocycle) {
  const auto E = exterior_quotient();
  if (!(X.coalgebra() == E)) throw CobarError("adjoint coaction is defined on the cobar complex of A*//A^(1)*");
  if (!(X.coefficients().dim() == 1 && X.coefficients().is_trivial()))
    throw CobarError("adjoint coaction needs trivial coefficients");
  if (!X.class_of(s, t, cocycle)) throw CobarError("not a cocycle");
  // Per coideal entry: (left monomial of A*, coideal index of the right factor reduced into E).
  std::map<std::size_t, std::vector<std::pair<Monomial, std::uint32_t>>> adj;
  auto entry = [&](std::uint32_t c) -> const std::vector<std::pair<Monomial, std::uint32_t>>& {
    auto it = adj.find(c);
    if (it != adj.end()) return it->second;
    std::vector<std::pair<Monomial, std::uint32_t>> out;
    for (const auto& [a, b] : dual::adjoint_coaction(X.coideal(c))) {
      if (b.is_unit() || E.killed(b)) continue;
      out.emplace_back(a, static_cast<std::uint32_t>(*X.coideal_index(b)));
    }
    return adj.emplace(c, std::move(out)).first->second;
  };
  std::map<std::vector<unsigned>, std::map<CobarComplex::Cell, bool>> acc;
  const auto& cells = X.cells(s, t);
  for (auto k : cocycle.support()) {
    const auto& c = cells[k];
    std::function<void(int, Monomial, CobarComplex::Cell&)> rec = [&](int i, Monomial left, CobarComplex::Cell& right) {
      if (i == s) {
        auto& slot = acc[left.e][right];
        slot = !slot;
        return;
      }
      for (const auto& [a, b] : entry(c[i])) {
        right[i] = b;
        rec(i + 1, left * a, right);
      }
    };
    CobarComplex::Cell right(s + 1, 0);
    rec(0, Monomial{}, right);
  }
  std::vector<std::pair<Monomial, BitVector>> out;
  for (const auto& [key, chain] : acc) {
    Monomial left(key);
    int t2 = t - mono_degree(left);
    BitVector v(X.dim(s, t2));
    for (const auto& [cell, on] : chain)
      if (on) v.flip(*X.index(s, t2, cell));
    if (v.is_zero()) continue;
    auto cls = X.class_of(s, t2, v);
    if (!cls) throw CobarError("adjoint coaction produced a non-cocycle under " + dual::to_string(left));
    if (!cls->is_zero()) out.emplace_back(std::move(left), std::move(*cls));
  }
  return out;
}

std::vector<std::pair<Polynomial, dual::QClass>> cobar_q_coaction(unsigned n) {
  const auto E = exterior_quotient();
  const int t = (2 << n) - 1;
  CobarComplex X(E, ComoduleWindow::trivial(E, t, {0}), 1, t);
  BitVector v(X.dim(1, t));
  v.set(*X.index(1, t, {static_cast<std::uint32_t>(*X.coideal_index(Monomial::generator(n + 1))), 0}));
  std::map<unsigned, std::vector<Monomial>> grouped;
  for (auto& [left, cls] : adjoint_coaction_on_class(X, 1, t, v)) {
    int t2 = t - mono_degree(left);
    unsigned j = 0;
    while (static_cast<int>((2u << j) - 1) < t2) ++j;
    if (static_cast<int>((2u << j) - 1) != t2 || cls.size() != 1)
      throw CobarError("unexpected Cotor class in degree " + std::to_string(t2));
    grouped[j].push_back(left);
  }
  std::vector<std::pair<Polynomial, dual::QClass>> out;
  for (auto& [j, terms] : grouped) {
    auto p = Polynomial::from_terms(std::move(terms));
    if (!p.is_zero()) out.emplace_back(std::move(p), dual::QClass{j});
  }
  return out;
}

// ---- q-monomial comodules ----

int q_degree(const QMonomial& r) {
  int d = 0;
  for (std::size_t n = 0; n < r.size(); ++n) d += static_cast<int>(r[n]) * ((2 << n) - 1);
  return d;
}

std::string q_label(const QMonomial& r) {
  std::string out;
  for (std::size_t n = 0; n < r.size(); ++n) {
    if (!r[n]) continue;
    if (!out.empty()) out += '*';
    out += "q" + std::to_string(n);
    if (r[n] != 1) out += "^" + std::to_string(r[n]);
  }
  return out.empty() ? "1" : out;
}

std::vector<QMonomial> q_monomials(unsigned k, int window) {
  std::vector<QMonomial> out;
  std::size_t len = 0;
  while (((2 << len) - 1) <= window) ++len;
  if (len == 0) {
    if (k == 0) out.push_back({0});
    return out;
  }
  QMonomial r(len, 0);
  std::function<void(std::size_t, unsigned, int)> rec = [&](std::size_t n, unsigned left, int room) {
    if (n + 1 == len) {
      int w = (2 << n) - 1;
      if (static_cast<int>(left) * w > room) return;
      r[n] = left;
      QMonomial t = r;
      while (t.size() > 1 && t.back() == 0) t.pop_back();
      out.push_back(std::move(t));
      r[n] = 0;
      return;
    }
    int w = (2 << n) - 1;
    for (unsigned e = 0; e <= left && static_cast<int>(e) * w <= room; ++e) {
      r[n] = e;
      rec(n + 1, left - e, room - static_cast<int>(e) * w);
    }
    r[n] = 0;
  };
  rec(0, k, window);
  std::sort(out.begin(), out.end(), [](const QMonomial& a, const QMonomial& b) {
    int da = q_degree(a), db = q_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

ComoduleWindow cotor_comodule(unsigned k, int window, const CotorComoduleOptions& opt) {
  const auto& over = opt.over;
  auto basis = q_monomials(k, window);
  std::map<QMonomial, std::size_t> index;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (const auto& r : basis) {
    index[r] = degrees.size();
    degrees.push_back(q_degree(r));
    labels.push_back(q_label(r));
  }
  std::map<unsigned, std::vector<std::pair<Polynomial, dual::QClass>>> gens;
  auto gen = [&](unsigned n) -> const std::vector<std::pair<Polynomial, dual::QClass>>& {
    auto it = gens.find(n);
    if (it != gens.end()) return it->second;
    auto g = dual::coaction_on_q(n, over);
    if (opt.drop_q0_term && n == 1)
      g.erase(std::remove_if(g.begin(), g.end(), [](const auto& p) { return p.second.n == 0; }), g.end());
    return gens.emplace(n, std::move(g)).first->second;
  };
  using Key = std::pair<std::vector<unsigned>, QMonomial>;
  std::vector<std::vector<Term>> coaction;
  for (const auto& r : basis) {
    std::set<Key> acc{{{}, QMonomial(1, 0)}};
    for (std::size_t n = 0; n < r.size(); ++n)
      for (unsigned e = 0; e < r[n]; ++e) {
        std::set<Key> next;
        for (const auto& [L, R] : acc)
          for (const auto& [P, cls] : gen(static_cast<unsigned>(n)))
            for (const auto& m : P.terms()) {
              Monomial prod = Monomial(L) * m;
              if (over.killed(prod)) continue;
              QMonomial R2 = R;
              if (R2.size() <= cls.n) R2.resize(cls.n + 1, 0);
              ++R2[cls.n];
              Key key{prod.e, R2};
              if (!next.erase(key)) next.insert(key);
            }
        acc = std::move(next);
      }
    std::vector<Term> terms;
    for (const auto& [L, R] : acc) {
      QMonomial t = R;
      while (t.size() > 1 && t.back() == 0) t.pop_back();
      terms.push_back(Term{Monomial(L), index.at(t)});
    }
    coaction.push_back(std::move(terms));
  }
  return ComoduleWindow(over, window, degrees, labels, coaction, comod::Side::left, k == 0);
}

ComoduleWindow leq_k_comodule(unsigned k, int window, unsigned s, const QuotientSpec& over) {
  std::vector<std::vector<unsigned>> exps;
  std::size_t len = 0;
  while ((((2 << len) - 2) << s) <= window && len < 30) ++len;  // weight of xi_{len+1}
  std::vector<unsigned> e(len, 0);
  std::function<void(std::size_t, unsigned, int)> rec = [&](std::size_t i, unsigned left, int room) {
    if (i == len) {
      std::vector<unsigned> t;
      for (auto x : e) t.push_back(x << s);
      while (!t.empty() && t.back() == 0) t.pop_back();
      exps.push_back(std::move(t));
      return;
    }
    int w = ((2 << i) - 1) << s;
    for (unsigned x = 0; x <= left && static_cast<int>(x) * w <= room; ++x) {
      e[i] = x;
      rec(i + 1, left - x, room - static_cast<int>(x) * w);
    }
    e[i] = 0;
  };
  rec(0, k, window);
  auto deg = [](const std::vector<unsigned>& x) {
    int d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += static_cast<int>(x[i]) * ((2 << i) - 1);
    return d;
  };
  std::sort(exps.begin(), exps.end(), [&](const auto& a, const auto& b) {
    if (deg(a) != deg(b)) return deg(a) < deg(b);
    return dual::basis_less(Monomial(a), Monomial(b));
  });
  std::map<std::vector<unsigned>, std::size_t> index;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (const auto& x : exps) {
    index[x] = degrees.size();
    degrees.push_back(deg(x));
    labels.push_back(dual::to_string(Monomial(x), true));
  }
  std::vector<std::vector<Term>> coaction;
  for (const auto& x : exps) {
    std::map<std::vector<unsigned>, std::vector<Monomial>> by_left;
    for (const auto& [a, b] : dual::coproduct(dual::xi_monomial(Monomial(x)))) {
      if (!over.in_subalgebra(a)) throw CobarError("left factor " + dual::to_string(a) + " outside " + over.name());
      if (over.killed(a)) continue;
      by_left[a.e].push_back(b);
    }
    std::vector<Term> terms;
    for (auto& [a, rights] : by_left) {
      auto p = dual::to_xi_basis(Polynomial::from_terms(std::move(rights)));
      for (const auto& m : p.terms()) {
        auto it = index.find(m.e);
        if (it == index.end()) throw CobarError("xi-monomial span not closed under the coaction");
        terms.push_back(Term{Monomial(a), it->second});
      }
    }
    coaction.push_back(std::move(terms));
  }
  return ComoduleWindow(over, window, degrees, labels, coaction, comod::Side::left, k == 0);
}

IsoReport check_cotor_isomorphism(unsigned k, int window) {
  IsoReport rep;
  rep.k = k;
  rep.window = window;
  const auto over = QuotientSpec::frobenius_quotient(1, 2);
  auto N = cotor_comodule(k, window);
  auto L = leq_k_comodule(k, window - static_cast<int>(k), 1, over);
  rep.dim = N.dim();
  if (N.dim() != L.dim()) {
    rep.forward = "dimension " + std::to_string(N.dim()) + " against " + std::to_string(L.dim());
    return rep;
  }
  auto basis = q_monomials(k, window);
  std::vector<BitVector> fwd(N.dim(), BitVector(L.dim())), inv(L.dim(), BitVector(N.dim()));
  std::map<std::string, std::size_t> by_label;
  for (std::size_t y = 0; y < L.dim(); ++y) by_label[L.label(y)] = y;
  for (std::size_t x = 0; x < basis.size(); ++x) {
    std::vector<unsigned> e;
    for (std::size_t n = 1; n < basis[x].size(); ++n) e.push_back(2 * basis[x][n]);
    while (!e.empty() && e.back() == 0) e.pop_back();
    auto it = by_label.find(dual::to_string(Monomial(e), true));
    if (it == by_label.end()) {
      rep.forward = "no image for " + N.label(x);
      return rep;
    }
    if (!inv[it->second].is_zero()) {
      rep.forward = "not injective at " + N.label(x);
      return rep;
    }
    fwd[x].set(it->second);
    inv[it->second].set(x);
  }
  rep.forward = comod::check_comodule_map(N, L, fwd, static_cast<int>(k));
  rep.inverse = comod::check_comodule_map(L, N, inv, -static_cast<int>(k));
  return rep;
}

FKSFiltration filtration_FKS(unsigned k, int window) {
  FKSFiltration F;
  F.k = k;
  F.comodule = cotor_comodule(k, window);
  auto basis = q_monomials(k, window);
  for (unsigned s = 0; s <= k; ++s) {
    f2::Subspace S(basis.size());
    for (std::size_t x = 0; x < basis.size(); ++x)
      if (basis[x][0] + s >= k) S.insert(BitVector::unit(basis.size(), x));
    F.stages.push_back(std::move(S));
  }
  return F;
}

std::optional<std::string> check_FKS(const FKSFiltration& F) {
  for (std::size_t s = 0; s < F.stages.size(); ++s) {
    if (!comod::is_subcomodule(F.comodule, F.stages[s])) return "F^{k," + std::to_string(s) + "} is not a subcomodule";
    if (s > 0 && !F.stages[s].contains(F.stages[s - 1])) return "stages are not increasing";
  }
  if (F.stages.empty() || F.stages.back().dim() != F.comodule.dim()) return "last stage is not everything";
  if (!comod::filtration_has_trivial_quotients(F.comodule, F.stages)) return "a quotient has nontrivial coaction";
  return std::nullopt;
}

// ---- vanishing verifications ----

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::none: return "none";
    case Mutation::drop_q0_term: return "drop-q0-term";
    case Mutation::trivial_target: return "trivial-target";
    case Mutation::trivial_source: return "trivial-source";
  }
  return "none";
}

Mutation parse_mutation(const std::string& text) {
  for (auto m : {Mutation::none, Mutation::drop_q0_term, Mutation::trivial_target, Mutation::trivial_source})
    if (to_string(m) == text) return m;
  throw CobarError("unknown mutation '" + text + "'");
}

bool VanishingVerdict::all_zero() const {
  return std::all_of(rows.begin(), rows.end(), [](const ShiftRow& r) { return r.dim == 0; });
}

namespace {

// extra(top + t): source degrees beyond top(N) + t whose constraints are imposed.
VanishingVerdict solve_shifts(std::string claim, unsigned k, int D, const VerifyOptions& opt, const ComoduleWindow& S,
                              const ComoduleWindow& N, const std::function<int(int)>& extra) {
  VanishingVerdict v;
  v.claim = std::move(claim);
  v.k = k;
  v.D = D;
  v.slack = opt.slack;
  v.mutation = opt.mutation;
  v.source_dim = S.dim();
  v.target_dim = N.dim();
  for (int t = -D; t <= D; ++t) {
    ShiftRow row;
    row.shift = t;
    row.source_cap = N.empty() ? -1 : std::min(N.top() + t + extra(N.top() + t), S.window());
    if (!N.empty() && N.top() + t >= 0) {
      auto r = comod::cohom(S, N, t, row.source_cap);
      row.unknowns = r.unknowns;
      row.equations = r.equations;
      row.rank = r.rank;
      row.dim = r.dim();
      if (r.dim() && !v.witness) {
        std::ostringstream w;
        w << "shift " << t << ":";
        int shown = 0;
        for (std::size_t x = 0; x < r.maps[0].size() && shown < 6; ++x) {
          if (r.maps[0][x].is_zero()) continue;
          w << " " << S.label(x) << " ->";
          for (auto y : r.maps[0][x].support()) w << " " << N.label(y);
          ++shown;
        }
        v.witness = w.str();
      }
    }
    v.rows.push_back(row);
  }
  return v;
}

void check_bounds(unsigned k, int D, const VerifyOptions& opt) {
  if (k > opt.k_max) throw CobarError("k = " + std::to_string(k) + " exceeds the supported bound " + std::to_string(opt.k_max));
  if (D < 0 || D > opt.D_max)
    throw CobarError("degree bound " + std::to_string(D) + " outside 0.." + std::to_string(opt.D_max));
  if (opt.slack < 0) throw CobarError("slack must be nonnegative");
}

}  // namespace

VanishingVerdict verify_A1_to_cotor_vanishing(unsigned k, int D, const VerifyOptions& opt) {
  check_bounds(k, D, opt);
  const auto over = QuotientSpec::frobenius_quotient(1, 2);
  CotorComoduleOptions co;
  co.drop_q0_term = opt.mutation == Mutation::drop_q0_term;
  auto N = cotor_comodule(k, D, co);
  if (auto why = N.validate()) throw CobarError("target comodule invalid: " + *why);
  if (opt.mutation == Mutation::trivial_target) N = ComoduleWindow::trivial(over, D, N.degrees());
  const int top = N.empty() ? 0 : N.top();
  // A functional on y is only killed through y z_j^2 for a square z_j^2 not dividing y, so
  // the source has to reach past twice the target degree.
  auto extra = [&](int d) { return d + 2 + opt.slack; };
  auto S = comod::coalgebra_comodule(QuotientSpec::frobenius(1), over, top + D + extra(top + D));
  if (opt.mutation == Mutation::trivial_source) {
    auto T = ComoduleWindow::trivial(over, S.window(), S.degrees());
    T.set_complete(false);
    S = std::move(T);
  }
  return solve_shifts("A^(1)* -> Cotor^" + std::to_string(k), k, D, opt, S, N, extra);
}

VanishingVerdict verify_A_leqk_vanishing(unsigned k, int D, VerifyOptions opt) {
  check_bounds(k, D, opt);
  if (opt.mutation == Mutation::drop_q0_term) throw CobarError("drop-q0-term applies to the Cotor target only");
  const auto full = QuotientSpec::full();
  auto N = leq_k_comodule(k, D, 0, full);
  if (opt.mutation == Mutation::trivial_target) N = ComoduleWindow::trivial(full, D, N.degrees());
  const int top = N.empty() ? 0 : N.top();
  auto S = comod::coalgebra_comodule(full, full, top + D + opt.slack);
  if (opt.mutation == Mutation::trivial_source) S = ComoduleWindow::trivial(full, S.window(), S.degrees());
  return solve_shifts("A* -> A*<=" + std::to_string(k), k, D, opt, S, N, [&](int) { return opt.slack; });
}

// ---- Adams E2 report ----

bool AdamsE2Report::all_zero() const {
  return std::all_of(rows.begin(), rows.end(), [](const E2Row& r) { return r.dim == 0; });
}

AdamsE2Report adams_e2_vanishing_report(const std::string& X, int window) {
  AdamsE2Report rep;
  rep.spectrum = X;
  rep.window = window;
  if (window < 1) throw CobarError("window must be positive");
  if (X == "H") {
    rep.method = "duality certificate for Hom_A(F2, A)";
    auto W = alg::FiniteAlgebra::steenrod_window(static_cast<unsigned>(window));
    modcat::HomVanishingCertificate c;
    try {
      c = modcat::hom_to_free_vanishing(modcat::Module::trivial(W), 1, static_cast<unsigned>(window));
    } catch (const std::invalid_argument& e) {
      throw CobarError(std::string("window too small: ") + e.what());
    }
    for (auto [t, d] : c.direct) rep.rows.push_back({"Hom_A(F2, Sigma^t A)", 0, t, d});
    rep.detail = c.ok ? "certificate ok, witness A(1), pd " + std::to_string(c.pd) : "certificate failed: " + c.detail;
    if (!c.ok) rep.rows.push_back({"certificate", 0, 0, 1});
    return rep;
  }
  if (X == "BP") {
    rep.method = "induced from the E(j) stages into a free module";
    auto W = alg::FiniteAlgebra::steenrod_window(static_cast<unsigned>(window));
    modcat::TargetSpec free1;
    free1.free_generators = {0};
    auto v = modcat::hom_induced_vanishing(modcat::Module::trivial(W), "E", free1, static_cast<unsigned>(window));
    for (auto [t, d] : v.hom_dims) rep.rows.push_back({"Hom_E(F2, Sigma^t J0)", 0, t, d});
    rep.detail = v.detail;
    if (!v.vanishes && rep.all_zero()) rep.rows.push_back({"verdict", 0, 0, 1});
    return rep;
  }
  if (X == "A1*" || X == "A^(1)*") {
    rep.method = "s = 0 line from Cohom(A^(1)*, Cotor^k); s > 0 vanishes because A^(1)* is cofree";
    const int D = std::min(window, 24);
    for (unsigned k = 0; k <= 3; ++k) {
      auto v = verify_A1_to_cotor_vanishing(k, D);
      for (const auto& r : v.rows)
        rep.rows.push_back({"Cohom(A^(1)*, Cotor^" + std::to_string(k) + ")", 0, r.shift, r.dim});
    }
    rep.detail = "k <= 3, shifts |t| <= " + std::to_string(D);
    return rep;
  }
  throw CobarError("unsupported spectrum '" + X + "' (expected H, BP or A1*)");
}

}  // namespace steenrod::cobar
