#include <algorithm>
#include <map>
#include <tuple>
#include <sstream>

#include "steenrod/module_cat.hpp"

namespace steenrod::modcat {

namespace {

milnor::Monomial sq(unsigned r) { return milnor::Monomial({r}); }

// Rank of v -> (g v)_g on a degree of a module, for the given acting elements (module algebra indices).
std::size_t stacked_rank(const Module& J, int k, const std::vector<std::size_t>& elems) {
  std::vector<BitVector> rows;
  const std::size_t n = J.dim();
  for (std::size_t x = J.offset(k); x < J.offset(k + 1); ++x) {
    BitVector row(n * elems.size());
    for (std::size_t e = 0; e < elems.size(); ++e)
      for (auto y : J.act(elems[e], x).support()) row.set(e * n + y);
    rows.push_back(std::move(row));
  }
  return f2::Subspace(n * elems.size(), rows).dim();
}

unsigned stage_top(const std::string& family, unsigned j) {
  auto p = family == "A" ? milnor::Profile::A(j) : milnor::Profile::E(j);
  return *p.top_degree();
}

unsigned stage_max_generator(const std::string& family, unsigned j) {
  return family == "A" ? (1u << j) : (2u << j) - 1;
}

Module target_module(const AlgebraPtr& W, const TargetSpec& target, std::string* detail) {
  Module J = Module::free(W, target.free_generators);
  if (target.quotient_by_A) {
    const unsigned n = *target.quotient_by_A;
    alg::CosetBasis cosets(W, FiniteAlgebra::A(n));
    Module Q = coset_module(cosets);
    // Embedding [a] -> a.top into Sigma^{pd} A, checked where it fits in the window.
    const unsigned pd = milnor::pd_degree(n);
    auto An = FiniteAlgebra::A(n);
    auto top = W->index_of(An->monomial(An->dim() - 1));
    bool injective = true;
    unsigned checked = 0;
    for (unsigned d = 0; top && d + pd <= W->top(); ++d) {
      std::vector<BitVector> images;
      for (auto r : cosets.reps(d)) images.push_back(alg::dense(W->product(r, *top), W->dim()));
      if (f2::Subspace(W->dim(), images).dim() != images.size()) injective = false;
      checked = d;
    }
    if (detail) {
      std::ostringstream os;
      os << "A//A(" << n << ") -> Sigma^" << pd << " A " << (injective ? "injective" : "NOT injective")
         << " through degree " << checked << "; ";
      *detail += os.str();
    }
    if (!injective) throw std::logic_error("quotient embedding failed");
    J = J.empty() ? Q : direct_sum(J, Q);
  }
  return J;
}

}  // namespace

std::size_t hom_dimension(const Module& M, const Module& F, int t) {
  if (M.algebra() != F.algebra() && M.algebra()->name() != F.algebra()->name())
    throw ModuleError("hom_dimension: modules over different algebras");
  const auto& A = *M.algebra();
  // Unknowns: (x, y) with y in F_{|x|-t}.
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t x = 0; x < M.dim(); ++x)
    for (std::size_t y = F.offset(M.degree(x) - t); y < F.offset(M.degree(x) - t + 1); ++y) unknowns.emplace_back(x, y);
  if (unknowns.empty()) return 0;
  // Equations: (generator position, x, y') with y' in F_{|x|+|g|-t}.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> rows;
  const auto& gens = A.generators();
  for (std::size_t gp = 0; gp < gens.size(); ++gp)
    for (std::size_t x = 0; x < M.dim(); ++x) {
      int e = M.degree(x) + static_cast<int>(A.degree(gens[gp])) - t;
      for (std::size_t y = F.offset(e); y < F.offset(e + 1); ++y) rows.emplace(std::make_tuple(gp, x, y), rows.size());
    }
  std::vector<BitVector> images(unknowns.size(), BitVector(rows.size()));
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> uidx;
  for (std::size_t u = 0; u < unknowns.size(); ++u) uidx[unknowns[u]] = u;
  for (std::size_t gp = 0; gp < gens.size(); ++gp) {
    const auto g = gens[gp];
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      auto [x, y] = unknowns[u];
      // g f(x)
      for (auto y2 : F.act(g, y).support()) images[u].flip(rows.at({gp, x, y2}));
    }
    // f(g x'): the unknown (x, y) contributes y at equation (g, x') when x occurs in g x'.
    for (std::size_t x2 = 0; x2 < M.dim(); ++x2)
      for (auto x : M.act(g, x2).support())
        for (std::size_t y = F.offset(M.degree(x) - t); y < F.offset(M.degree(x) - t + 1); ++y)
          images[uidx.at({x, y})].flip(rows.at({gp, x2, y}));
  }
  return unknowns.size() - f2::Subspace(rows.size(), images).dim();
}

HomVanishingCertificate hom_to_free_vanishing(const Module& M, unsigned witness_n, unsigned D,
                                               const VanishingOptions& opt) {
  HomVanishingCertificate c;
  c.window = D;
  c.witness_n = witness_n;
  c.pd = milnor::pd_degree(witness_n);
  const AlgebraPtr& W = M.algebra();
  if (!W->milnor_backed() || W->top() != D || W->profile().name() != "A")
    throw alg::WindowError("hom_to_free_vanishing: module must live over the Steenrod window of degree D");
  const unsigned need = c.pd - 1 + (1u << witness_n);
  if (D < need) {
    std::ostringstream os;
    os << "window " << D << " too small to run the duality argument for A(" << witness_n << "); need " << need;
    throw alg::WindowError(os.str());
  }
  if (M.empty()) {
    c.vacuous = c.ok = true;
    c.detail = "zero module";
    return c;
  }
  if (M.top() >= static_cast<int>(c.pd)) {
    std::ostringstream os;
    os << "top degree " << M.top() << " of M is not below pd(" << witness_n << ") = " << c.pd;
    throw alg::WindowError(os.str());
  }
  c.slack = static_cast<int>(c.pd) - 1 - M.top();
  std::vector<std::size_t> gens;
  for (unsigned i = 0; i <= witness_n; ++i) gens.push_back(*W->index_of(sq(1u << i)));
  bool all = true;
  for (unsigned k = 0; k < c.pd; ++k) {
    const bool degenerate = opt.degenerate_degree && *opt.degenerate_degree == k;
    std::vector<BitVector> rows;
    for (std::size_t b = W->offset(k); b < W->offset(k) + W->dim(k); ++b) {
      BitVector row(W->dim() * gens.size());
      SimpleWitness w{k, BitVector::unit(W->dim(), b), gens.size()};
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (degenerate) continue;
        const auto& p = W->product(gens[i], b);
        for (auto q : p) row.set(i * W->dim() + q);
        if (!p.empty() && w.generator == gens.size()) w.generator = i;
      }
      if (w.generator == gens.size()) all = false;
      c.witnesses.push_back(std::move(w));
      rows.push_back(std::move(row));
    }
    bool inj = f2::Subspace(W->dim() * gens.size(), rows).dim() == rows.size();
    c.injective_degrees.emplace_back(k, inj);
    if (!inj) all = false;
  }
  // Poincare duality inside A(n).
  auto An = FiniteAlgebra::A(witness_n);
  const std::size_t top = An->dim() - 1;
  bool duality = true;
  for (unsigned k = 0; k <= c.pd; ++k) {
    bool degree_ok = true;
    for (std::size_t v = An->offset(k); v < An->offset(k) + An->dim(k); ++v) {
      bool found = false;
      for (std::size_t z = An->offset(c.pd - k); z < An->offset(c.pd - k) + An->dim(c.pd - k) && !found; ++z) {
        const auto& p = An->product(z, v);
        found = std::find(p.begin(), p.end(), top) != p.end();
      }
      degree_ok = degree_ok && found;
    }
    if (degree_ok) c.duality_degrees.emplace_back(k, c.pd - k);
    else duality = false;
  }
  Module F = Module::regular(W);
  bool direct_zero = true;
  for (int t = -c.slack; t <= M.top(); ++t) {
    std::size_t h = hom_dimension(M, F, t);
    c.direct.emplace_back(t, h);
    if (h) direct_zero = false;
  }
  c.ok = all && duality && direct_zero;
  std::ostringstream os;
  os << "A(" << witness_n << ") pd=" << c.pd << " window=" << D << " shifts t>=" << -c.slack << ": "
     << (all ? "no simple submodule below pd" : "stacked generator map fails") << ", "
     << (duality ? "duality ok" : "duality fails") << ", direct Hom " << (direct_zero ? "zero" : "NONZERO");
  c.detail = os.str();
  return c;
}

InducedVanishingVerdict hom_induced_vanishing(const Module& L, const std::string& family, const TargetSpec& target,
                                              unsigned window) {
  if (family != "A" && family != "E") throw ModuleError("family must be A or E");
  InducedVanishingVerdict v;
  v.family = family;
  v.window = window;
  const AlgebraPtr& W = L.algebra();
  if (!W->milnor_backed() || W->top() != window || W->profile().name() != "A")
    throw alg::WindowError("hom_induced_vanishing: L must live over the Steenrod window");
  const unsigned shift = target.quotient_by_A ? milnor::pd_degree(*target.quotient_by_A) : 0;
  std::optional<unsigned> stage;
  for (unsigned j = 0; j < 8; ++j) {
    unsigned top = stage_top(family, j);
    if (top <= shift) continue;
    unsigned kmax = top - 1 - shift;
    if (kmax + stage_max_generator(family, j) <= window) stage = j;
  }
  if (!stage) throw alg::WindowError("window too small for any stage of the " + family + " family");
  v.stage = *stage;
  v.top = stage_top(family, *stage);
  const int kmax = static_cast<int>(v.top - 1 - shift);
  Module J = target_module(W, target, &v.detail);
  auto B = family == "A" ? FiniteAlgebra::A(*stage) : FiniteAlgebra::E(*stage);
  std::vector<std::size_t> elems;
  for (auto g : B->generators()) elems.push_back(*W->index_of(B->monomial(g)));
  bool injective = true;
  for (int k = 0; k <= kmax; ++k)
    if (stacked_rank(J, k, elems) != J.dim(k)) injective = false;
  v.vanishes = injective;
  if (!L.empty()) {
    Module LB = L.restrict_to(B), JB = J.restrict_to(B);
    for (int t = L.top() - kmax; t <= L.top(); ++t) {
      std::size_t h = hom_dimension(LB, JB, t);
      v.hom_dims.emplace_back(t, h);
      if (h) v.vanishes = false;
    }
  }
  std::ostringstream os;
  os << "stage " << family << "(" << *stage << ") top " << v.top << ", degrees <= " << kmax << ": "
     << (injective ? "no simple submodule" : "simple submodule found");
  v.detail += os.str();
  return v;
}

std::size_t hom_finite_subalgebra(const Module& L, const AlgebraPtr& B, const TargetSpec& target, unsigned window) {
  const AlgebraPtr& W = L.algebra();
  if (W->top() != window) throw alg::WindowError("L must live over the window");
  Module J = target_module(W, target, nullptr);
  unsigned maxgen = 0;
  for (auto g : B->generators()) maxgen = std::max(maxgen, B->degree(g));
  if (L.empty()) return 0;
  const int kmax = static_cast<int>(window) - static_cast<int>(maxgen);
  Module LB = L.restrict_to(B), JB = J.restrict_to(B);
  std::size_t total = 0;
  for (int t = L.top() - kmax; t <= L.top(); ++t) total += hom_dimension(LB, JB, t);
  return total;
}

}  // namespace steenrod::modcat
