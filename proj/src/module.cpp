#include <algorithm>
#include <numeric>
#include <sstream>

#include "steenrod/module_cat.hpp"

namespace steenrod::modcat {

namespace {

BitVector reversed(const BitVector& v) {
  BitVector out(v.size());
  for (auto i : v.support()) out.set(v.size() - 1 - i);
  return out;
}

void require_same(const AlgebraPtr& a, const AlgebraPtr& b, const char* what) {
  if (a != b && a->name() != b->name()) throw ModuleError(std::string(what) + ": modules over different algebras");
}

// Quotient of F2^n by a subspace kept in reversed coordinates; representatives are the
// lowest-index basis vectors.
struct QuotientLayout {
  f2::Subspace sub;
  std::vector<std::size_t> reps;
  std::vector<std::size_t> pos;

  QuotientLayout(std::size_t n, const std::vector<BitVector>& spanning) : sub(n), pos(n, static_cast<std::size_t>(-1)) {
    for (const auto& v : spanning) sub.insert(reversed(v));
    std::vector<bool> pivot(n, false);
    for (const auto& b : sub.basis()) pivot[b.first_set()] = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!pivot[n - 1 - i]) {
        pos[i] = reps.size();
        reps.push_back(i);
      }
  }
  BitVector project(const BitVector& v) const {
    BitVector r = reversed(sub.reduce(reversed(v)));
    BitVector out(reps.size());
    for (auto i : r.support()) out.set(pos[i]);
    return out;
  }
};

std::vector<std::pair<std::size_t, std::size_t>> free_layout(const FiniteAlgebra& A, const std::vector<int>& gens) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t a = 0; a < A.dim(); ++a) out.emplace_back(i, a);
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    return gens[x.first] + static_cast<int>(A.degree(x.second)) < gens[y.first] + static_cast<int>(A.degree(y.second));
  });
  return out;
}

}  // namespace

// ---- Module ----

Module::Module(AlgebraPtr algebra, std::vector<int> degrees, std::vector<std::string> labels)
    : alg_(std::move(algebra)), degrees_(std::move(degrees)), labels_(std::move(labels)) {
  if (!std::is_sorted(degrees_.begin(), degrees_.end())) throw ModuleError("module basis degrees must be sorted");
  if (labels_.empty())
    for (std::size_t i = 0; i < degrees_.size(); ++i) labels_.push_back("x" + std::to_string(i));
  if (labels_.size() != degrees_.size()) throw ModuleError("label count does not match basis");
  const std::size_t n = dim();
  gen_action_.assign(alg_->generators().size(), std::vector<BitVector>(n, BitVector(n)));
  identity_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) identity_.push_back(BitVector::unit(n, i));
}

Module Module::trivial(AlgebraPtr algebra, int degree) {
  return Module(std::move(algebra), {degree}, {"1"});
}

Module Module::free(AlgebraPtr algebra, const std::vector<int>& gens) {
  const auto& A = *algebra;
  auto layout = free_layout(A, gens);
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    auto [i, a] = layout[k];
    degrees.push_back(gens[i] + static_cast<int>(A.degree(a)));
    std::string g = gens.size() == 1 ? "" : "g" + std::to_string(i);
    labels.push_back(a == 0 ? (g.empty() ? "1" : g) : A.label(a) + (g.empty() ? "" : "*" + g));
    idx[layout[k]] = k;
  }
  Module M(algebra, std::move(degrees), std::move(labels));
  for (auto g : A.generators())
    for (std::size_t k = 0; k < layout.size(); ++k) {
      auto [i, a] = layout[k];
      BitVector y(M.dim());
      for (auto p : A.product(g, a)) y.flip(idx.at({i, p}));
      M.set_action(g, k, std::move(y));
    }
  return M;
}

Module Module::from_generator_action(AlgebraPtr algebra, std::vector<int> degrees,
                                     const std::map<std::size_t, std::vector<BitVector>>& action,
                                     std::vector<std::string> labels) {
  Module M(std::move(algebra), std::move(degrees), std::move(labels));
  for (const auto& [g, images] : action) {
    if (images.size() != M.dim()) throw ModuleError("generator matrix has the wrong number of columns");
    for (std::size_t x = 0; x < images.size(); ++x) M.set_action(g, x, images[x]);
  }
  return M;
}

int Module::bottom() const {
  if (empty()) throw ModuleError("empty module has no bottom degree");
  return degrees_.front();
}

int Module::top() const {
  if (empty()) throw ModuleError("empty module has no top degree");
  return degrees_.back();
}

std::size_t Module::offset(int d) const {
  return static_cast<std::size_t>(std::lower_bound(degrees_.begin(), degrees_.end(), d) - degrees_.begin());
}

std::size_t Module::dim(int d) const { return offset(d + 1) - offset(d); }

void Module::set_action(std::size_t a, std::size_t x, BitVector y) {
  auto pos = alg_->generator_position(a);
  if (!pos) throw ModuleError("set_action: " + alg_->label(a) + " is not an algebra generator");
  if (y.size() != dim()) throw ModuleError("set_action: image has the wrong length");
  int target = degrees_[x] + static_cast<int>(alg_->degree(a));
  for (auto i : y.support())
    if (degrees_[i] != target) throw ModuleError("set_action: image of " + labels_[x] + " is not homogeneous of the right degree");
  gen_action_[*pos][x] = std::move(y);
  cache_ = std::make_shared<Cache>();
}

const std::vector<BitVector>& Module::matrix(std::size_t a) const {
  if (a == 0) return identity_;
  if (auto pos = alg_->generator_position(a)) return gen_action_[*pos];
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->matrices.find(a);
    if (it != cache_->matrices.end()) return it->second;
  }
  const std::size_t n = dim();
  std::vector<BitVector> m(n, BitVector(n));
  const int da = static_cast<int>(alg_->degree(a));
  for (auto [g, c] : alg_->recipe(a)) {
    // Skip basis vectors whose image degree leaves the module.
    const auto& mc = matrix(c);
    const auto& mg = matrix(g);
    for (std::size_t x = 0; x < n; ++x) {
      if (degrees_[x] + da > degrees_.back()) break;
      for (auto y : mc[x].support()) m[x] += mg[y];
    }
  }
  std::lock_guard lock(cache_->mu);
  return cache_->matrices.emplace(a, std::move(m)).first->second;
}

BitVector Module::act(std::size_t a, const BitVector& v) const {
  BitVector out(dim());
  const auto& m = matrix(a);
  for (auto x : v.support()) out += m[x];
  return out;
}

BitVector Module::act_element(const BitVector& a, const BitVector& v) const {
  BitVector out(dim());
  for (auto i : a.support()) out += act(i, v);
  return out;
}

std::optional<std::string> Module::validate() const {
  const auto& A = *alg_;
  const std::size_t n = dim();
  if (n == 0) return std::nullopt;
  for (auto g : A.generators())
    for (std::size_t x = 0; x < n; ++x)
      for (auto y : act(g, x).support())
        if (degrees_[y] != degrees_[x] + static_cast<int>(A.degree(g)))
          return "degree violated by " + A.label(g) + " on " + labels_[x];
  const int span = degrees_.back() - degrees_.front();
  for (auto g : A.generators()) {
    const auto& mg = matrix(g);
    for (std::size_t b = 0; b < A.dim(); ++b) {
      if (static_cast<int>(A.degree(b) + A.degree(g)) > span) break;
      const auto& mb = matrix(b);
      const auto& gb = A.product(g, b);
      for (std::size_t x = 0; x < n; ++x) {
        BitVector lhs(n);
        for (auto y : mb[x].support()) lhs += mg[y];
        BitVector rhs(n);
        for (auto k : gb) rhs += matrix(k)[x];
        if (lhs != rhs) {
          std::ostringstream os;
          os << "relation " << A.label(g) << " * " << A.label(b) << " fails on " << labels_[x];
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

f2::Subspace Module::submodule(const std::vector<BitVector>& generators) const {
  f2::Subspace S(dim());
  std::vector<BitVector> queue;
  for (const auto& v : generators)
    if (S.insert(v)) queue.push_back(v);
  while (!queue.empty()) {
    BitVector v = std::move(queue.back());
    queue.pop_back();
    for (auto g : alg_->generators()) {
      BitVector w = act(g, v);
      if (S.insert(w)) queue.push_back(std::move(w));
    }
  }
  return S;
}

Module Module::quotient(const std::vector<BitVector>& generators) const {
  auto S = submodule(generators);
  QuotientLayout q(dim(), S.basis());
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (auto r : q.reps) {
    degrees.push_back(degrees_[r]);
    labels.push_back(labels_[r]);
  }
  Module Q(alg_, std::move(degrees), std::move(labels));
  for (auto g : alg_->generators())
    for (std::size_t k = 0; k < q.reps.size(); ++k) Q.set_action(g, k, q.project(act(g, q.reps[k])));
  return Q;
}

Module Module::submodule_module(const std::vector<BitVector>& generators, std::vector<BitVector>* inclusion) const {
  auto S = submodule(generators);
  std::vector<std::size_t> order(S.dim());
  std::iota(order.begin(), order.end(), 0);
  const auto& B = S.basis();
  auto deg = [&](std::size_t i) { return degrees_[B[i].first_set()]; };
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return deg(x) < deg(y); });
  std::vector<std::size_t> where(S.dim());
  for (std::size_t k = 0; k < order.size(); ++k) where[order[k]] = k;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (auto i : order) {
    degrees.push_back(deg(i));
    labels.push_back("s" + std::to_string(degrees.size() - 1));
  }
  Module M(alg_, std::move(degrees), std::move(labels));
  for (auto g : alg_->generators())
    for (std::size_t k = 0; k < order.size(); ++k) {
      BitVector c = S.coordinates(act(g, B[order[k]]));
      BitVector y(M.dim());
      for (auto i : c.support()) y.set(where[i]);
      M.set_action(g, k, std::move(y));
    }
  if (inclusion) {
    inclusion->clear();
    for (auto i : order) inclusion->push_back(B[i]);
  }
  return M;
}

Module Module::shift(int k) const {
  Module M = *this;
  for (auto& d : M.degrees_) d += k;
  M.cache_ = std::make_shared<Cache>();
  return M;
}

Module Module::restrict_to(const AlgebraPtr& sub) const {
  if (!sub->milnor_backed() || !alg_->milnor_backed()) throw ModuleError("restriction needs Milnor-backed algebras");
  Module M(sub, degrees_, labels_);
  for (auto g : sub->generators()) {
    const auto& m = sub->monomial(g);
    auto idx = alg_->index_of(m);
    if (!idx) {
      if (m.degree() > alg_->top()) continue;  // acts by zero above the window
      throw ModuleError(sub->name() + " is not a subalgebra of " + alg_->name());
    }
    const auto& mat = matrix(*idx);
    for (std::size_t x = 0; x < dim(); ++x) M.set_action(g, x, mat[x]);
  }
  return M;
}

Module Module::truncate(int D) const {
  const std::size_t n = offset(D + 1);
  std::vector<int> degrees(degrees_.begin(), degrees_.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<std::string> labels(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(n));
  Module M(alg_, std::move(degrees), std::move(labels));
  for (auto g : alg_->generators())
    for (std::size_t x = 0; x < n; ++x) {
      BitVector y(n);
      for (auto i : act(g, x).support())
        if (i < n) y.set(i);
      M.set_action(g, x, std::move(y));
    }
  return M;
}

std::uint64_t Module::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (char c : alg_->name()) mix(static_cast<unsigned char>(c));
  mix(dim());
  for (int d : degrees_) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(d)));
  for (const auto& m : gen_action_)
    for (const auto& v : m)
      for (auto w : v.words()) mix(w);
  return h;
}

Module direct_sum(const Module& a, const Module& b) {
  require_same(a.algebra(), b.algebra(), "direct_sum");
  std::vector<std::pair<int, std::size_t>> order;  // (degree, global old index)
  for (std::size_t i = 0; i < a.dim(); ++i) order.emplace_back(a.degree(i), i);
  for (std::size_t j = 0; j < b.dim(); ++j) order.emplace_back(b.degree(j), a.dim() + j);
  std::stable_sort(order.begin(), order.end(), [](auto x, auto y) { return x.first < y.first; });
  std::vector<std::size_t> where(order.size());
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < order.size(); ++k) {
    where[order[k].second] = k;
    degrees.push_back(order[k].first);
    auto i = order[k].second;
    labels.push_back(i < a.dim() ? a.label(i) : b.label(i - a.dim()) + "'");
  }
  Module S(a.algebra(), std::move(degrees), std::move(labels));
  for (auto g : a.algebra()->generators())
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto i = order[k].second;
      BitVector y(S.dim());
      if (i < a.dim())
        for (auto t : a.act(g, i).support()) y.set(where[t]);
      else
        for (auto t : b.act(g, i - a.dim()).support()) y.set(where[a.dim() + t]);
      S.set_action(g, k, std::move(y));
    }
  return S;
}

std::vector<std::pair<std::size_t, std::size_t>> tensor_basis(const Module& a, const Module& b) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out.emplace_back(i, j);
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    return a.degree(x.first) + b.degree(x.second) < a.degree(y.first) + b.degree(y.second);
  });
  return out;
}

Module tensor(const Module& a, const Module& b) {
  require_same(a.algebra(), b.algebra(), "tensor");
  const auto& A = *a.algebra();
  if (!A.hopf()) throw ModuleError("tensor product needs a coproduct on " + A.name());
  auto basis = tensor_basis(a, b);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto [i, j] = basis[k];
    idx[basis[k]] = k;
    degrees.push_back(a.degree(i) + b.degree(j));
    labels.push_back(a.label(i) + "(x)" + b.label(j));
  }
  Module T(a.algebra(), std::move(degrees), std::move(labels));
  for (auto g : A.generators())
    for (std::size_t k = 0; k < basis.size(); ++k) {
      auto [i, j] = basis[k];
      BitVector y(T.dim());
      for (auto [l, r] : A.coproduct(g)) {
        const auto& u = a.act(l, i);
        const auto& v = b.act(r, j);
        for (auto p : u.support())
          for (auto q : v.support()) y.flip(idx.at({p, q}));
      }
      T.set_action(g, k, std::move(y));
    }
  return T;
}

BitVector ModuleMap::apply(const BitVector& v) const {
  BitVector out(target->dim());
  for (auto i : v.support()) out += images[i];
  return out;
}

std::optional<std::string> ModuleMap::check() const {
  if (images.size() != source->dim()) return "map has the wrong number of images";
  for (std::size_t x = 0; x < source->dim(); ++x)
    for (auto y : images[x].support())
      if (target->degree(y) != source->degree(x) + shift) return "map is not homogeneous on " + source->label(x);
  const auto& A = *source->algebra();
  for (auto g : A.generators())
    for (std::size_t x = 0; x < source->dim(); ++x)
      if (apply(source->act(g, x)) != target->act(g, images[x]))
        return "map does not commute with " + A.label(g) + " on " + source->label(x);
  return std::nullopt;
}

// ---- cosets and induction ----

Module coset_module(const alg::CosetBasis& cosets) {
  const auto& S = *cosets.big();
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::vector<std::size_t> first(S.top() + 2, 0);
  for (unsigned d = 0; d <= S.top(); ++d) {
    first[d] = degrees.size();
    for (auto r : cosets.reps(d)) {
      degrees.push_back(static_cast<int>(d));
      labels.push_back("[" + S.label(r) + "]");
    }
  }
  first[S.top() + 1] = degrees.size();
  Module M(cosets.big(), std::move(degrees), std::move(labels));
  for (auto g : S.generators()) {
    const unsigned dg = S.degree(g);
    for (unsigned d = 0; d + dg <= S.top(); ++d) {
      const auto& reps = cosets.reps(d);
      for (std::size_t k = 0; k < reps.size(); ++k) {
        const unsigned e = d + dg;
        BitVector v(S.dim(e));
        for (auto p : S.product(g, reps[k])) v.flip(p - S.offset(e));
        BitVector c = cosets.reduce(e, v);
        BitVector y(M.dim());
        for (auto i : c.support()) y.set(first[e] + i);
        M.set_action(g, first[d] + k, std::move(y));
      }
    }
  }
  return M;
}

Decomposer::Decomposer(std::shared_ptr<const alg::CosetBasis> cosets) : cosets_(std::move(cosets)) {
  const auto& R = *cosets_->sub();
  for (std::size_t b = 0; b < R.dim(); ++b) {
    auto idx = cosets_->big()->index_of(R.monomial(b));
    embed_.push_back(idx ? *idx : static_cast<std::size_t>(-1));
  }
}

const std::vector<std::pair<std::size_t, std::size_t>>& Decomposer::decompose(std::size_t a) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
  }
  const auto& S = *cosets_->big();
  const auto& R = *cosets_->sub();
  const unsigned d = S.degree(a);
  std::vector<std::pair<std::size_t, std::size_t>> cols;
  for (unsigned e = 0; e <= d; ++e) {
    const unsigned rd = d - e;
    if (rd > R.top()) continue;
    for (auto r : cosets_->reps(e))
      for (std::size_t b = R.offset(rd); b < R.offset(rd) + R.dim(rd); ++b) cols.emplace_back(r, b);
  }
  f2::BitMatrix m(S.dim(d), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto be = embed_[cols[c].second];
    if (be == static_cast<std::size_t>(-1)) throw alg::WindowError("subalgebra element outside the window");
    for (auto p : S.product(cols[c].first, be)) m.flip(p - S.offset(d), c);
  }
  auto x = f2::solve(m, BitVector::unit(S.dim(d), a - S.offset(d)));
  if (!x) throw std::logic_error("window is not free over " + R.name() + " in degree " + std::to_string(d));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto c : x->support()) out.push_back(cols[c]);
  std::lock_guard lock(mu_);
  return cache_.emplace(a, std::move(out)).first->second;
}

std::optional<std::size_t> InducedModule::index(std::size_t rep, std::size_t y) const {
  auto it = index_.find({rep, y});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BitVector InducedModule::tensor(std::size_t a, const BitVector& y) const {
  BitVector out(module.dim());
  for (auto [r, b] : decomposer->decompose(a)) {
    BitVector by = source.act(b, y);
    for (auto j : by.support())
      if (auto k = index(r, j)) out.flip(*k);
  }
  return out;
}

InducedModule induce_up(const Module& source, unsigned D, AlgebraPtr window) {
  const auto& B = source.algebra();
  if (!B->milnor_backed() || B->truncated()) throw ModuleError("induce_up needs a module over a finite profile algebra");
  if (!source.empty() && (source.bottom() < 0 || source.top() > static_cast<int>(D)))
    throw alg::WindowError("window " + std::to_string(D) + " does not contain the source module");
  if (!window) window = FiniteAlgebra::steenrod_window(D);
  if (window->top() != D) throw alg::WindowError("window algebra does not match D");
  auto cosets = std::make_shared<alg::CosetBasis>(window, B);
  InducedModule out;
  out.source = source;
  out.decomposer = std::make_shared<Decomposer>(cosets);
  for (unsigned d = 0; d <= D; ++d)
    for (unsigned e = 0; e <= d; ++e)
      for (auto r : cosets->reps(e))
        for (std::size_t j = source.offset(static_cast<int>(d - e)); j < source.offset(static_cast<int>(d - e) + 1); ++j)
          out.basis.emplace_back(r, j);
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    auto [r, j] = out.basis[k];
    out.index_[out.basis[k]] = k;
    degrees.push_back(static_cast<int>(window->degree(r)) + source.degree(j));
    labels.push_back(window->label(r) + "(x)" + source.label(j));
  }
  out.module = Module(window, std::move(degrees), std::move(labels));
  for (auto g : window->generators())
    for (std::size_t k = 0; k < out.basis.size(); ++k) {
      auto [r, j] = out.basis[k];
      if (window->degree(g) + window->degree(r) > D) continue;
      BitVector y(out.module.dim());
      for (auto p : window->product(g, r)) y += out.tensor(p, BitVector::unit(source.dim(), j));
      out.module.set_action(g, k, std::move(y));
    }
  return out;
}

Module FinitePresentationSpec::cokernel() const {
  Module F = Module::free(algebra, generator_degrees);
  auto layout = free_layout(*algebra, generator_degrees);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t k = 0; k < layout.size(); ++k) idx[layout[k]] = k;
  std::vector<BitVector> rels;
  for (std::size_t j = 0; j < relations.size(); ++j) {
    if (relations[j].size() != generator_degrees.size()) throw ModuleError("relation row has the wrong length");
    BitVector v(F.dim());
    for (std::size_t i = 0; i < relations[j].size(); ++i)
      for (auto a : relations[j][i].support()) {
        if (generator_degrees[i] + static_cast<int>(algebra->degree(a)) != relation_degrees.at(j))
          throw ModuleError("relation " + std::to_string(j) + " is not homogeneous");
        v.flip(idx.at({i, a}));
      }
    rels.push_back(std::move(v));
  }
  return F.quotient(rels);
}

FinitePresentationSpec FinitePresentationSpec::induce(const AlgebraPtr& window) const {
  FinitePresentationSpec out{window, generator_degrees, relation_degrees, {}};
  for (const auto& row : relations) {
    std::vector<BitVector> r;
    for (const auto& e : row) {
      BitVector v(window->dim());
      for (auto a : e.support()) {
        auto idx = window->index_of(algebra->monomial(a));
        if (!idx) throw alg::WindowError("presentation entry outside the window");
        v.set(*idx);
      }
      r.push_back(std::move(v));
    }
    out.relations.push_back(std::move(r));
  }
  return out;
}

// ---- doubling ----

Module double_module(const Module& M, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<const FiniteAlgebra*, unsigned>, AlgebraPtr> doubled;
  AlgebraPtr D;
  {
    std::lock_guard lock(mu);
    auto& slot = doubled[{M.algebra().get(), e}];
    if (!slot) slot = FiniteAlgebra::doubled(M.algebra(), e);
    D = slot;
  }
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < M.dim(); ++i) {
    degrees.push_back(M.degree(i) * (1 << e));
    labels.push_back(M.label(i) + "_(" + std::to_string(e) + ")");
  }
  Module out(D, std::move(degrees), std::move(labels));
  const auto& gs = M.algebra()->generators();
  if (gs != D->generators()) throw std::logic_error("doubling changed the generating set");
  for (auto g : gs)
    for (std::size_t x = 0; x < M.dim(); ++x) out.set_action(g, x, M.act(g, x));
  return out;
}

BitVector verschiebung(const FiniteAlgebra& from, const FiniteAlgebra& to, std::size_t i) {
  BitVector out(to.dim());
  const auto& m = from.monomial(i);
  std::vector<unsigned> half;
  for (unsigned r : m.r) {
    if (r % 2) return out;
    half.push_back(r / 2);
  }
  auto idx = to.index_of(milnor::Monomial(half));
  if (idx) out.set(*idx);
  return out;
}

// ---- twisting ----

TwistingReport check_twisting(const Module& M, const Module& N, unsigned D) {
  TwistingReport rep;
  const auto& W = M.algebra();
  const auto& B = N.algebra();
  if (!W->milnor_backed() || W->top() != D) throw ModuleError("check_twisting: M must be over the window of degree D");
  Module Md = M.truncate(static_cast<int>(D));
  auto ind_n = induce_up(N.truncate(static_cast<int>(D)), D, W);
  Module lhs = tensor(Md, ind_n.module).truncate(static_cast<int>(D));
  auto lhs_basis = tensor_basis(Md, ind_n.module);
  Module mn = tensor(Md.restrict_to(B), N).truncate(static_cast<int>(D));
  auto mn_basis = tensor_basis(Md.restrict_to(B), N);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mn_idx;
  for (std::size_t k = 0; k < mn.dim(); ++k) mn_idx[mn_basis[k]] = k;
  auto ind_mn = induce_up(mn, D, W);
  const Module& rhs = ind_mn.module;
  rep.dimension = lhs.dim();
  if (lhs.dim() != rhs.dim()) {
    rep.detail = "dimensions differ: " + std::to_string(lhs.dim()) + " vs " + std::to_string(rhs.dim());
    return rep;
  }
  auto pair_vec = [&](const BitVector& u, std::size_t n) {
    BitVector out(mn.dim());
    for (auto i : u.support())
      if (auto it = mn_idx.find({i, n}); it != mn_idx.end()) out.flip(it->second);
    return out;
  };
  // theta: m (x) (r (x) n) -> sum r' (x) (chi(r'') m (x) n)
  std::vector<BitVector> theta;
  for (std::size_t k = 0; k < lhs.dim(); ++k) {
    auto [x, i] = lhs_basis[k];
    auto [r, n] = ind_n.basis[i];
    BitVector out(rhs.dim());
    for (auto [a1, a2] : W->coproduct(r)) {
      BitVector cm(Md.dim());
      for (auto c : W->antipode(a2)) cm += Md.act(c, x);
      out += ind_mn.tensor(a1, pair_vec(cm, n));
    }
    theta.push_back(std::move(out));
  }
  // phi: r (x) (m (x) n) -> sum r' m (x) (r'' (x) n)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lhs_idx;
  for (std::size_t k = 0; k < lhs.dim(); ++k) lhs_idx[lhs_basis[k]] = k;
  std::vector<BitVector> phi;
  for (std::size_t k = 0; k < rhs.dim(); ++k) {
    auto [r, j] = ind_mn.basis[k];
    auto [x, n] = mn_basis[j];
    BitVector out(lhs.dim());
    for (auto [a1, a2] : W->coproduct(r)) {
      const auto& am = Md.act(a1, x);
      BitVector an = ind_n.tensor(a2, BitVector::unit(N.dim(), n));
      for (auto p : am.support())
        for (auto q : an.support())
          if (auto it = lhs_idx.find({p, q}); it != lhs_idx.end()) out.flip(it->second);
    }
    phi.push_back(std::move(out));
  }
  rep.invertible = true;
  for (std::size_t k = 0; k < lhs.dim() && rep.invertible; ++k) {
    BitVector back(lhs.dim());
    for (auto i : theta[k].support()) back += phi[i];
    if (back != BitVector::unit(lhs.dim(), k)) {
      rep.invertible = false;
      rep.detail = "phi.theta is not the identity on " + lhs.label(k);
    }
  }
  for (std::size_t k = 0; k < rhs.dim() && rep.invertible; ++k) {
    BitVector back(rhs.dim());
    for (auto i : phi[k].support()) back += theta[i];
    if (back != BitVector::unit(rhs.dim(), k)) {
      rep.invertible = false;
      rep.detail = "theta.phi is not the identity on " + rhs.label(k);
    }
  }
  ModuleMap t{&lhs, &rhs, 0, theta};
  auto err = t.check();
  rep.equivariant = !err;
  if (err && rep.detail.empty()) rep.detail = *err;
  return rep;
}

}  // namespace steenrod::modcat
