#include "steenrod/comodule.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

namespace steenrod::comod {

namespace {

const Monomial kUnit{};

void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.c.e != b.c.e) return a.c.e < b.c.e;
    return a.y < b.y;
  });
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2) out.push_back(terms[i]);
    i = j;
  }
  terms = std::move(out);
}

template <class T>
void cancel(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2) out.push_back(v[i]);
    i = j;
  }
  v = std::move(out);
}

std::vector<std::size_t> in_degree(const ComoduleWindow& M, int d) {
  std::vector<std::size_t> out(M.dim(d));
  std::iota(out.begin(), out.end(), M.offset(d));
  return out;
}

std::set<int> degree_set(const ComoduleWindow& M) { return {M.degrees().begin(), M.degrees().end()}; }

// Kernel, in degree d, of x -> (mu(x) - 1 (x) x) modulo C (x) S.
std::vector<BitVector> kernel_modulo(const ComoduleWindow& M, const f2::Subspace& S, int d) {
  auto xs = in_degree(M, d);
  std::map<MonoKey, std::size_t> block;
  std::vector<std::map<MonoKey, BitVector>> coacts;
  for (auto x : xs) {
    coacts.push_back(M.reduced_coact(BitVector::unit(M.dim(), x)));
    for (auto& [k, v] : coacts.back()) block.emplace(k, 0);
  }
  std::size_t nb = 0;
  for (auto& [k, b] : block) b = nb++;
  const std::size_t n = M.dim();
  std::vector<BitVector> images;
  for (auto& c : coacts) {
    BitVector row(nb * n);
    for (auto& [k, v] : c)
      for (auto y : S.reduce(v).support()) row.set(block[k] * n + y);
    images.push_back(std::move(row));
  }
  std::vector<BitVector> out;
  for (const auto& k : f2::kernel_of_images(images, nb * n)) {
    BitVector v(n);
    for (auto i : k.support()) v.set(xs[i]);
    out.push_back(std::move(v));
  }
  return out;
}

std::string join_label(const ComoduleWindow& M, const BitVector& v) {
  std::string s;
  for (auto i : v.support()) {
    if (!s.empty()) s += "+";
    s += M.label(i);
  }
  return s.empty() ? "0" : s;
}

int vector_degree(const ComoduleWindow& M, const BitVector& v) {
  auto sup = v.support();
  if (sup.empty()) throw ComoduleError("zero vector has no degree");
  int d = M.degree(sup.front());
  for (auto i : sup)
    if (M.degree(i) != d) throw ComoduleError("vector is not homogeneous");
  return d;
}

std::vector<BitVector> homogeneous_parts(const ComoduleWindow& M, const BitVector& v) {
  std::map<int, BitVector> parts;
  for (auto i : v.support()) {
    auto [it, fresh] = parts.try_emplace(M.degree(i), M.dim());
    it->second.set(i);
  }
  std::vector<BitVector> out;
  for (auto& [d, p] : parts) out.push_back(std::move(p));
  return out;
}

std::optional<unsigned> spec_top(const QuotientSpec& q) {
  if (!q.is_finite()) return std::nullopt;
  unsigned top = 0;
  const std::size_t n = std::max(q.low.size(), q.high.size()) + 1;
  for (std::size_t i = 1; i <= n; ++i) {
    unsigned lo = q.low_at(i), hi = q.high_at(i);
    if (lo == dual::kInfinite || hi == dual::kInfinite || hi <= lo) continue;
    unsigned emax = ((1u << hi) - 1) & ~((1u << lo) - 1);
    top += emax * ((1u << i) - 1);
  }
  return top;
}

}  // namespace

// ---- ComoduleWindow ----

ComoduleWindow::ComoduleWindow(QuotientSpec spec, int window, std::vector<int> degrees, std::vector<std::string> labels,
                               std::vector<std::vector<Term>> coaction, Side side, bool complete)
    : spec_(std::move(spec)), window_(window), side_(side), complete_(complete), degrees_(std::move(degrees)),
      labels_(std::move(labels)), coaction_(std::move(coaction)) {
  if (!std::is_sorted(degrees_.begin(), degrees_.end())) throw ComoduleError("basis degrees must be nondecreasing");
  if (!degrees_.empty() && degrees_.back() > window_) throw ComoduleError("basis degree above the window");
  if (coaction_.size() != degrees_.size()) throw ComoduleError("coaction table size mismatch");
  if (labels_.empty())
    for (std::size_t i = 0; i < degrees_.size(); ++i) labels_.push_back("x" + std::to_string(i));
  if (labels_.size() != degrees_.size()) throw ComoduleError("label count mismatch");
  for (auto& t : coaction_) {
    for (auto& term : t)
      if (term.y >= degrees_.size()) throw ComoduleError("coaction term refers to a missing basis element");
    canonicalize(t);
  }
}

ComoduleWindow ComoduleWindow::trivial(QuotientSpec spec, int window, std::vector<int> degrees) {
  std::sort(degrees.begin(), degrees.end());
  std::vector<std::vector<Term>> co(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) co[i] = {Term{kUnit, i}};
  return ComoduleWindow(std::move(spec), window, std::move(degrees), {}, std::move(co));
}

int ComoduleWindow::bottom() const {
  if (empty()) throw ComoduleError("empty comodule");
  return degrees_.front();
}
int ComoduleWindow::top() const {
  if (empty()) throw ComoduleError("empty comodule");
  return degrees_.back();
}
std::size_t ComoduleWindow::offset(int d) const {
  return static_cast<std::size_t>(std::lower_bound(degrees_.begin(), degrees_.end(), d) - degrees_.begin());
}
std::size_t ComoduleWindow::dim(int d) const { return offset(d + 1) - offset(d); }

std::map<MonoKey, BitVector> ComoduleWindow::reduced_coact(const BitVector& v) const {
  std::map<MonoKey, BitVector> out;
  for (auto x : v.support())
    for (const auto& t : coaction_[x]) {
      auto [it, fresh] = out.try_emplace(t.c.e, dim());
      it->second.flip(t.y);
    }
  auto it = out.find(MonoKey{});
  if (it != out.end()) it->second += v;
  else if (!v.is_zero()) out.emplace(MonoKey{}, v);
  for (auto i = out.begin(); i != out.end();) {
    if (i->second.is_zero()) i = out.erase(i);
    else ++i;
  }
  return out;
}

std::optional<std::string> ComoduleWindow::validate() const {
  auto where = [&](std::size_t x) { return "basis element " + labels_[x] + ": "; };
  for (std::size_t x = 0; x < dim(); ++x) {
    bool unit_seen = false;
    for (const auto& t : coaction_[x]) {
      if (!spec_.admits(t.c)) return where(x) + dual::to_string(t.c) + " is not in " + spec_.name();
      if (static_cast<int>(t.c.degree()) + degrees_[t.y] != degrees_[x])
        return where(x) + "term " + dual::to_string(t.c) + " (x) " + labels_[t.y] + " has the wrong degree";
      if (t.c.is_unit()) {
        if (t.y != x) return where(x) + "counit fails: unit term on " + labels_[t.y];
        unit_seen = true;
      }
    }
    if (!unit_seen) return where(x) + "counit fails: no unit term";
  }
  using Triple = std::tuple<MonoKey, MonoKey, std::size_t>;
  for (std::size_t x = 0; x < dim(); ++x) {
    std::vector<Triple> lhs, rhs;
    for (const auto& t : coaction_[x]) {
      for (const auto& [a, b] : dual::coproduct(t.c, spec_)) rhs.emplace_back(a.e, b.e, t.y);
      for (const auto& u : coaction_[t.y]) {
        if (side_ == Side::left) lhs.emplace_back(t.c.e, u.c.e, u.y);
        else lhs.emplace_back(u.c.e, t.c.e, u.y);
      }
    }
    cancel(lhs);
    cancel(rhs);
    if (lhs != rhs) return where(x) + "coassociativity fails";
  }
  return std::nullopt;
}

bool ComoduleWindow::is_trivial() const {
  for (std::size_t x = 0; x < dim(); ++x)
    if (coaction_[x].size() != 1 || !coaction_[x][0].c.is_unit() || coaction_[x][0].y != x) return false;
  return true;
}

std::size_t total_dim(const Graded& g) {
  std::size_t n = 0;
  for (const auto& [d, v] : g) n += v.size();
  return n;
}

// ---- primitives and unipotence ----

std::vector<BitVector> primitives(const ComoduleWindow& M) {
  f2::Subspace zero(M.dim());
  std::vector<BitVector> out;
  for (int d : degree_set(M))
    for (auto& v : kernel_modulo(M, zero, d)) out.push_back(std::move(v));
  return out;
}

Filtration primitive_sequence(const ComoduleWindow& M) {
  Filtration F;
  F.window = M.window();
  f2::Subspace prev(M.dim());
  while (prev.dim() < M.dim()) {
    f2::Subspace next(M.dim());
    for (int d : degree_set(M))
      for (const auto& v : kernel_modulo(M, prev, d)) next.insert(v);
    if (next.dim() == prev.dim()) break;
    F.stages.push_back(next);
    prev = std::move(next);
  }
  return F;
}

bool filtration_has_trivial_quotients(const ComoduleWindow& M, const std::vector<f2::Subspace>& stages) {
  f2::Subspace prev(M.dim());
  for (const auto& S : stages) {
    if (!S.contains(prev)) return false;
    for (const auto& v : S.basis())
      for (const auto& [k, w] : M.reduced_coact(v))
        if (!prev.contains(w)) return false;
    prev = S;
  }
  return true;
}

UnipotenceVerdict is_unipotent(const ComoduleWindow& M) {
  UnipotenceVerdict v;
  v.window = M.window();
  Filtration F = primitive_sequence(M);
  const bool exhausts = M.empty() || (!F.stages.empty() && F.stages.back().dim() == M.dim());
  std::ostringstream os;
  if (!M.complete()) {
    v.certified = false;
    v.unipotent = false;
    os << "not unipotent in window " << M.window() << ": the table truncates an infinite comodule, so exhaustion "
       << (exhausts ? "at stage " + std::to_string(F.length()) + " only reflects the cut" : "fails");
  } else {
    v.certified = true;
    v.unipotent = exhausts;
    os << (exhausts ? "primitive sequence exhausts M at stage " + std::to_string(F.length())
                    : "primitive sequence stabilizes below M");
  }
  v.reason = os.str();
  if (v.unipotent) v.filtration = std::move(F);
  return v;
}

// ---- sub and quotient comodules ----

f2::Subspace generated_subcomodule(const ComoduleWindow& M, const std::vector<BitVector>& vectors) {
  f2::Subspace S(M.dim());
  std::vector<BitVector> queue;
  for (const auto& v : vectors)
    for (auto& p : homogeneous_parts(M, v)) queue.push_back(std::move(p));
  while (!queue.empty()) {
    BitVector v = std::move(queue.back());
    queue.pop_back();
    if (!S.insert(v)) continue;
    for (auto& [k, w] : M.reduced_coact(v)) queue.push_back(w);
  }
  return S;
}

bool is_subcomodule(const ComoduleWindow& M, const f2::Subspace& S) {
  for (const auto& v : S.basis())
    for (const auto& [k, w] : M.reduced_coact(v))
      if (!S.contains(w)) return false;
  return true;
}

ComoduleWindow subcomodule(const ComoduleWindow& M, const f2::Subspace& S, std::vector<BitVector>* inclusion) {
  if (!is_subcomodule(M, S)) throw ComoduleError("subspace is not a subcomodule");
  const auto& B = S.basis();
  std::vector<std::size_t> order(B.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) deg[i] = vector_degree(M, B[i]);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });
  std::vector<std::size_t> pos(B.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::vector<std::vector<Term>> co(B.size());
  if (inclusion) inclusion->clear();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& v = B[order[k]];
    degrees.push_back(deg[order[k]]);
    labels.push_back(join_label(M, v));
    if (inclusion) inclusion->push_back(v);
    co[k].push_back(Term{kUnit, k});
    for (const auto& [key, w] : M.reduced_coact(v))
      for (auto i : S.coordinates(w).support()) co[k].push_back(Term{Monomial(key), pos[i]});
  }
  return ComoduleWindow(M.spec(), M.window(), std::move(degrees), std::move(labels), std::move(co), M.side(),
                        M.complete());
}

ComoduleWindow quotient(const ComoduleWindow& M, const f2::Subspace& S, std::vector<BitVector>* projection) {
  if (!is_subcomodule(M, S)) throw ComoduleError("quotient by a subspace that is not a subcomodule");
  std::vector<std::size_t> kept;
  std::vector<std::size_t> pos(M.dim(), M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i)
    if (S.reduce(BitVector::unit(M.dim(), i)).get(i)) {
      pos[i] = kept.size();
      kept.push_back(i);
    }
  auto coords = [&](const BitVector& v) {
    BitVector r = S.reduce(v), out(kept.size());
    for (auto i : r.support()) out.set(pos[i]);
    return out;
  };
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::vector<std::vector<Term>> co(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    degrees.push_back(M.degree(kept[k]));
    labels.push_back(M.label(kept[k]));
    co[k].push_back(Term{kUnit, k});
    for (const auto& [key, w] : M.reduced_coact(BitVector::unit(M.dim(), kept[k])))
      for (auto i : coords(w).support()) co[k].push_back(Term{Monomial(key), i});
  }
  if (projection) {
    projection->clear();
    for (std::size_t i = 0; i < M.dim(); ++i) projection->push_back(coords(BitVector::unit(M.dim(), i)));
  }
  return ComoduleWindow(M.spec(), M.window(), std::move(degrees), std::move(labels), std::move(co), M.side(),
                        M.complete());
}

ComoduleWindow corestrict(const ComoduleWindow& M, const QuotientSpec& q) {
  std::vector<std::vector<Term>> co(M.dim());
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < M.dim(); ++x) {
    labels.push_back(M.label(x));
    for (const auto& t : M.coaction(x)) {
      if (!q.in_subalgebra(t.c)) throw ComoduleError(dual::to_string(t.c) + " does not lie over " + q.name());
      if (!q.killed(t.c)) co[x].push_back(t);
    }
  }
  return ComoduleWindow(q, M.window(), M.degrees(), std::move(labels), std::move(co), M.side(), M.complete());
}

ComoduleWindow direct_sum(const ComoduleWindow& a, const ComoduleWindow& b) {
  if (!(a.spec() == b.spec()) || a.side() != b.side()) throw ComoduleError("direct sum over different coalgebras");
  // Merge by degree, a before b within a degree.
  std::vector<std::pair<int, std::size_t>> order;  // (degree, combined index)
  for (std::size_t i = 0; i < a.dim(); ++i) order.emplace_back(a.degree(i), i);
  for (std::size_t j = 0; j < b.dim(); ++j) order.emplace_back(b.degree(j), a.dim() + j);
  std::stable_sort(order.begin(), order.end(), [](auto& x, auto& y) { return x.first < y.first; });
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k].second] = k;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::vector<std::vector<Term>> co(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t c = order[k].second;
    degrees.push_back(order[k].first);
    const bool first = c < a.dim();
    const auto& src = first ? a : b;
    std::size_t i = first ? c : c - a.dim();
    labels.push_back(src.label(i));
    for (const auto& t : src.coaction(i)) co[k].push_back(Term{t.c, pos[first ? t.y : t.y + a.dim()]});
  }
  return ComoduleWindow(a.spec(), std::max(a.window(), b.window()), std::move(degrees), std::move(labels),
                        std::move(co), a.side(), a.complete() && b.complete());
}

// ---- tensor and cotensor ----

std::vector<std::pair<std::size_t, std::size_t>> tensor_basis(const ComoduleWindow& a, const ComoduleWindow& b,
                                                              int window) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      if (a.degree(i) + b.degree(j) <= window) out.emplace_back(i, j);
  std::stable_sort(out.begin(), out.end(), [&](auto& x, auto& y) {
    return a.degree(x.first) + b.degree(x.second) < a.degree(y.first) + b.degree(y.second);
  });
  return out;
}

ComoduleWindow tensor_diagonal(const ComoduleWindow& M, const ComoduleWindow& N) {
  if (!(M.spec() == N.spec())) throw ComoduleError("tensor product over different coalgebras");
  if (M.side() != Side::left || N.side() != Side::left) throw ComoduleError("tensor_diagonal takes left comodules");
  const int W = std::min(M.window(), N.window());
  auto pairs = tensor_basis(M, N, W);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < pairs.size(); ++k) index[pairs[k]] = k;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::vector<std::vector<Term>> co(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    degrees.push_back(M.degree(i) + N.degree(j));
    labels.push_back(M.label(i) + "|" + N.label(j));
    for (const auto& s : M.coaction(i))
      for (const auto& u : N.coaction(j)) {
        Monomial c = s.c * u.c;
        if (M.spec().killed(c)) continue;
        co[k].push_back(Term{c, index.at({s.y, u.y})});
      }
  }
  bool whole = M.empty() || N.empty() || M.top() + N.top() <= W;
  return ComoduleWindow(M.spec(), W, std::move(degrees), std::move(labels), std::move(co), Side::left,
                        M.complete() && N.complete() && whole);
}

std::size_t CotensorResult::dim(int d) const {
  auto it = basis.find(d);
  return it == basis.end() ? 0 : it->second.size();
}

CotensorResult cotensor(const ComoduleWindow& M, const ComoduleWindow& N) {
  if (!(M.spec() == N.spec())) throw ComoduleError("cotensor over different coalgebras");
  if (M.side() != Side::right || N.side() != Side::left) throw ComoduleError("cotensor takes a right and a left comodule");
  CotensorResult R;
  R.pairs = tensor_basis(M, N, std::min(M.window(), N.window()));
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t k = 0; k < R.pairs.size(); ++k)
    by_degree[M.degree(R.pairs[k].first) + N.degree(R.pairs[k].second)].push_back(k);
  for (const auto& [d, ks] : by_degree) {
    using Key = std::tuple<std::size_t, MonoKey, std::size_t>;
    std::map<Key, std::size_t> eq;
    std::vector<std::vector<std::size_t>> hits(ks.size());
    auto slot = [&](Key k) { return eq.emplace(std::move(k), eq.size()).first->second; };
    for (std::size_t u = 0; u < ks.size(); ++u) {
      auto [m, n] = R.pairs[ks[u]];
      for (const auto& t : M.coaction(m))
        if (!t.c.is_unit()) hits[u].push_back(slot({t.y, t.c.e, n}));
      for (const auto& t : N.coaction(n))
        if (!t.c.is_unit()) hits[u].push_back(slot({m, t.c.e, t.y}));
    }
    std::vector<BitVector> images(ks.size(), BitVector(eq.size()));
    for (std::size_t u = 0; u < ks.size(); ++u)
      for (auto e : hits[u]) images[u].flip(e);
    for (const auto& k : f2::kernel_of_images(images, eq.size())) {
      BitVector v(R.pairs.size());
      for (auto i : k.support()) v.set(ks[i]);
      R.basis[d].push_back(std::move(v));
    }
  }
  return R;
}

// ---- comodule maps ----

std::optional<std::string> check_comodule_map(const ComoduleWindow& M, const ComoduleWindow& N,
                                              const std::vector<BitVector>& images, int t, std::optional<int> source_cap) {
  if (images.size() != M.dim()) return "image count mismatch";
  using Pair = std::pair<MonoKey, std::size_t>;
  const std::size_t mdim = source_cap ? M.offset(*source_cap + 1) : M.dim();
  for (std::size_t x = 0; x < mdim; ++x) {
    for (auto y : images[x].support())
      if (N.degree(y) != M.degree(x) - t) return "image of " + M.label(x) + " has the wrong degree";
    std::vector<Pair> lhs, rhs;
    for (auto y : images[x].support())
      for (const auto& u : N.coaction(y)) lhs.emplace_back(u.c.e, u.y);
    for (const auto& s : M.coaction(x))
      for (auto y : images[s.y].support()) rhs.emplace_back(s.c.e, y);
    cancel(lhs);
    cancel(rhs);
    if (lhs != rhs) return "coaction not preserved on " + M.label(x);
  }
  return std::nullopt;
}

CohomResult cohom(const ComoduleWindow& M, const ComoduleWindow& N, int t, std::optional<int> source_cap) {
  if (!(M.spec() == N.spec())) throw ComoduleError("cohom over different coalgebras");
  if (M.side() != N.side()) throw ComoduleError("cohom between comodules on different sides");
  CohomResult r;
  r.shift = t;
  const std::size_t mdim = source_cap ? M.offset(*source_cap + 1) : M.dim();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::vector<std::size_t> first(mdim + 1, 0);  // unknowns of x are first[x] .. first[x+1]
  for (std::size_t x = 0; x < mdim; ++x) {
    first[x] = unknowns.size();
    int e = M.degree(x) - t;
    for (std::size_t y = N.offset(e); y < N.offset(e + 1); ++y) unknowns.emplace_back(x, y);
  }
  first[mdim] = unknowns.size();
  r.unknowns = unknowns.size();
  if (unknowns.empty()) return r;
  std::map<MonoKey, std::uint64_t> cid;
  auto c_index = [&](const Monomial& c) { return cid.emplace(c.e, cid.size()).first->second; };
  std::unordered_map<std::uint64_t, std::size_t> eq;
  // Distinct coalgebra monomials are bounded by the number of coaction terms, so 2^20 per slot suffices.
  auto slot = [&](std::size_t x, const Monomial& c, std::size_t y) {
    std::uint64_t key = (static_cast<std::uint64_t>(x) << 42) | (c_index(c) << 21) | y;
    return eq.emplace(key, eq.size()).first->second;
  };
  std::vector<std::vector<std::size_t>> hits(unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    auto [x, y] = unknowns[u];
    for (const auto& s : N.coaction(y))
      if (!s.c.is_unit()) hits[u].push_back(slot(x, s.c, s.y));
  }
  for (std::size_t x = 0; x < mdim; ++x)
    for (const auto& s : M.coaction(x)) {
      if (s.c.is_unit() || first[s.y] == first[s.y + 1]) continue;
      for (std::size_t u = first[s.y]; u < first[s.y + 1]; ++u) hits[u].push_back(slot(x, s.c, unknowns[u].second));
    }
  r.equations = eq.size();
  std::vector<BitVector> images(unknowns.size(), BitVector(eq.size()));
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (auto e : hits[u]) images[u].flip(e);
  auto ker = f2::kernel_of_images(images, eq.size());
  r.rank = unknowns.size() - ker.size();
  for (const auto& k : ker) {
    std::vector<BitVector> f(M.dim(), BitVector(N.dim()));
    for (auto u : k.support()) f[unknowns[u].first].set(unknowns[u].second);
    if (auto bad = check_comodule_map(M, N, f, t, source_cap)) throw std::logic_error("cohom solution fails: " + *bad);
    r.maps.push_back(std::move(f));
  }
  return r;
}

// ---- standard comodules ----

ComoduleWindow coalgebra_comodule(const QuotientSpec& sub, const QuotientSpec& over, int D, Side side) {
  std::vector<Monomial> basis;
  std::map<MonoKey, std::size_t> index;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  for (int d = 0; d <= D; ++d)
    for (auto& m : dual::sub_basis_in_degree(sub, static_cast<unsigned>(d))) {
      index[m.e] = basis.size();
      degrees.push_back(d);
      labels.push_back(dual::to_string(m));
      basis.push_back(std::move(m));
    }
  std::vector<std::vector<Term>> co(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& [a, b] : dual::coproduct(basis[k], sub)) {
      const Monomial& outer = side == Side::left ? a : b;
      const Monomial& inner = side == Side::left ? b : a;
      if (!over.in_subalgebra(outer)) throw ComoduleError(sub.name() + " does not coact through " + over.name());
      if (over.killed(outer)) continue;
      co[k].push_back(Term{outer, index.at(inner.e)});
    }
  auto top = spec_top(sub);
  bool complete = top && static_cast<int>(*top) <= D;
  return ComoduleWindow(over, D, std::move(degrees), std::move(labels), std::move(co), side, complete);
}

ComoduleWindow extended_comodule(const std::vector<int>& w_degrees, const QuotientSpec& spec, int D) {
  struct Cell {
    int degree;
    std::size_t w;
    Monomial c;
  };
  std::vector<Cell> cells;
  for (std::size_t w = 0; w < w_degrees.size(); ++w)
    for (int d = 0; d + w_degrees[w] <= D; ++d)
      for (auto& m : dual::sub_basis_in_degree(spec, static_cast<unsigned>(d))) cells.push_back({d + w_degrees[w], w, m});
  std::stable_sort(cells.begin(), cells.end(), [](auto& a, auto& b) { return a.degree < b.degree; });
  std::map<std::pair<MonoKey, std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < cells.size(); ++k) index[{cells[k].c.e, cells[k].w}] = k;
  std::vector<int> degrees;
  std::vector<std::string> labels;
  std::vector<std::vector<Term>> co(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    degrees.push_back(cells[k].degree);
    labels.push_back(dual::to_string(cells[k].c) + "|w" + std::to_string(cells[k].w));
    for (const auto& [a, b] : dual::coproduct(cells[k].c, spec)) co[k].push_back(Term{a, index.at({b.e, cells[k].w})});
  }
  auto top = spec_top(spec);
  int wmax = w_degrees.empty() ? 0 : *std::max_element(w_degrees.begin(), w_degrees.end());
  bool complete = top && static_cast<int>(*top) + wmax <= D;
  return ComoduleWindow(spec, D, std::move(degrees), std::move(labels), std::move(co), Side::left, complete);
}

// ---- duality with modules ----

modcat::AlgebraPtr dual_algebra(const QuotientSpec& spec, int window) {
  using alg::FiniteAlgebra;
  if (spec == QuotientSpec::full()) return FiniteAlgebra::steenrod_window(static_cast<unsigned>(std::max(window, 1)));
  if (spec.kind == QuotientSpec::Kind::profile) {
    for (unsigned n = 0; n <= 3; ++n) {
      if (spec == QuotientSpec::A(n)) return FiniteAlgebra::A(n);
      if (spec == QuotientSpec::E(n)) return FiniteAlgebra::E(n);
    }
    auto p = milnor::Profile::from_heights(spec.high);
    p.tail = spec.tail_high;
    if (p.is_finite()) return FiniteAlgebra::milnor(p);
    return FiniteAlgebra::milnor(p, static_cast<unsigned>(std::max(window, 1)));
  }
  throw ComoduleError("no Milnor-basis dual algebra for " + spec.name());
}

modcat::Module dualize_comodule(const ComoduleWindow& M) {
  if (M.side() != Side::left) throw ComoduleError("dualize_comodule takes a left comodule");
  auto A = dual_algebra(M.spec(), M.window());
  std::map<std::size_t, std::vector<BitVector>> action;
  for (auto g : A->generators()) {
    const auto& a = A->monomial(g);
    std::vector<BitVector> images(M.dim(), BitVector(M.dim()));
    for (std::size_t i = 0; i < M.dim(); ++i)
      for (const auto& t : M.coaction(i))
        if (dual::pairing(a, t.c)) images[t.y].flip(i);
    action.emplace(g, std::move(images));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < M.dim(); ++i) labels.push_back(M.label(i));
  return modcat::Module::from_generator_action(A, M.degrees(), action, std::move(labels));
}

ComoduleWindow dualize_module(const modcat::Module& N, const QuotientSpec& spec, int window) {
  const auto& A = *N.algebra();
  std::map<int, std::vector<Monomial>> cbasis;
  std::map<int, std::vector<BitVector>> inverse;  // column a of the inverse pairing matrix, over cbasis
  auto prepare = [&](int d) {
    if (inverse.count(d)) return;
    auto mons = dual::sub_basis_in_degree(spec, static_cast<unsigned>(d));
    const std::size_t off = A.offset(static_cast<unsigned>(d)), n = A.dim(static_cast<unsigned>(d));
    if (mons.size() != n) throw ComoduleError("algebra and coalgebra dimensions differ in degree " + std::to_string(d));
    f2::BitMatrix P(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (dual::pairing(A.monomial(off + r), mons[c])) P.set(r, c);
    std::vector<BitVector> cols;
    for (std::size_t r = 0; r < n; ++r) {
      auto sol = f2::solve(P, BitVector::unit(n, r));
      if (!sol) throw ComoduleError("pairing is degenerate in degree " + std::to_string(d));
      cols.push_back(*sol);
    }
    cbasis[d] = std::move(mons);
    inverse[d] = std::move(cols);
  };
  std::vector<std::vector<Term>> co(N.dim());
  for (std::size_t i = 0; i < N.dim(); ++i) co[i].push_back(Term{kUnit, i});
  for (std::size_t j = 0; j < N.dim(); ++j)
    for (std::size_t i = 0; i < N.dim(); ++i) {
      int d = N.degree(i) - N.degree(j);
      if (d <= 0 || d > static_cast<int>(A.top())) continue;
      prepare(d);
      const std::size_t off = A.offset(static_cast<unsigned>(d));
      BitVector kappa(cbasis[d].size());
      for (std::size_t a = 0; a < inverse[d].size(); ++a)
        if (N.act(off + a, j).get(i)) kappa += inverse[d][a];
      for (auto e : kappa.support()) co[i].push_back(Term{cbasis[d][e], j});
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < N.dim(); ++i) labels.push_back(N.label(i));
  return ComoduleWindow(spec, window, N.degrees(), std::move(labels), std::move(co));
}

// ---- JSON ----

std::string to_json(const ComoduleWindow& M) {
  nlohmann::ordered_json j;
  j["format"] = "steenrod-comodule-v1";
  j["coalgebra"] = M.spec().name();
  j["side"] = M.side() == Side::left ? "left" : "right";
  j["window"] = M.window();
  j["complete"] = M.complete();
  auto basis = nlohmann::ordered_json::array();
  auto co = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < M.dim(); ++x) {
    basis.push_back({{"label", M.label(x)}, {"degree", M.degree(x)}});
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : M.coaction(x)) terms.push_back(nlohmann::ordered_json::array({dual::to_string(t.c), t.y}));
    co.push_back(std::move(terms));
  }
  j["basis"] = std::move(basis);
  j["coaction"] = std::move(co);
  return j.dump(1);
}

ComoduleWindow from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ComoduleError(std::string("comodule JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "steenrod-comodule-v1") throw ComoduleError("comodule JSON: unknown format");
    auto spec = dual::parse_spec(j.at("coalgebra").get<std::string>());
    std::string side = j.at("side");
    if (side != "left" && side != "right") throw ComoduleError("comodule JSON: side must be left or right");
    std::vector<int> degrees;
    std::vector<std::string> labels;
    for (const auto& b : j.at("basis")) {
      degrees.push_back(b.at("degree").get<int>());
      labels.push_back(b.at("label").get<std::string>());
    }
    std::vector<std::vector<Term>> co;
    for (const auto& terms : j.at("coaction")) {
      co.emplace_back();
      for (const auto& t : terms) {
        auto p = dual::parse(t.at(0).get<std::string>()).value;
        if (p.terms().size() != 1) throw ComoduleError("comodule JSON: coefficient must be one monomial");
        co.back().push_back(Term{p.terms()[0], t.at(1).get<std::size_t>()});
      }
    }
    ComoduleWindow M(spec, j.at("window").get<int>(), std::move(degrees), std::move(labels), std::move(co),
                     side == "left" ? Side::left : Side::right, j.at("complete").get<bool>());
    if (auto bad = M.validate()) throw ComoduleError("comodule JSON: " + *bad);
    return M;
  } catch (const nlohmann::json::exception& e) {
    throw ComoduleError(std::string("comodule JSON: ") + e.what());
  } catch (const dual::ParseError& e) {
    throw ComoduleError(std::string("comodule JSON: ") + e.what());
  } catch (const dual::SpecError& e) {
    throw ComoduleError(std::string("comodule JSON: ") + e.what());
  }
}

// ---- random comodules ----

namespace {

BitVector random_vector_in_degree(const ComoduleWindow& M, int d, std::mt19937_64& rng) {
  const std::size_t off = M.offset(d), n = M.dim(d);
  BitVector v(M.dim());
  while (v.is_zero())
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1) v.set(off + i);
  return v;
}

int random_degree(const ComoduleWindow& M, std::mt19937_64& rng) {
  auto ds = degree_set(M);
  std::vector<int> v(ds.begin(), ds.end());
  return v[rng() % v.size()];
}

}  // namespace

ComoduleWindow random_comodule(std::uint64_t seed, const RandomComoduleOptions& opt) {
  std::mt19937_64 rng(seed);
  const int D = opt.generator_degree_max;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> w(1 + rng() % 2);
    for (auto& d : w) d = static_cast<int>(rng() % static_cast<std::uint64_t>(D / 2 + 1));
    std::sort(w.begin(), w.end());
    auto E = extended_comodule(w, opt.spec, D);
    std::vector<BitVector> gens(1 + rng() % 2);
    for (auto& g : gens) g = random_vector_in_degree(E, random_degree(E, rng), rng);
    auto S = generated_subcomodule(E, gens);
    if (S.dim() == 0 || S.dim() > opt.max_dim) continue;
    auto C = subcomodule(E, S);
    if (rng() % 2 && C.dim() > 1) {
      auto v = random_vector_in_degree(C, random_degree(C, rng), rng);
      auto T = generated_subcomodule(C, {v});
      if (T.dim() < C.dim()) C = quotient(C, T);
    }
    C.set_complete(true);
    return C;
  }
  throw ComoduleError("random_comodule: no sample within the dimension bound");
}

ShortExact random_short_exact(std::uint64_t seed, const RandomComoduleOptions& opt) {
  ShortExact s;
  s.seed = seed;
  s.M = random_comodule(seed, opt);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  f2::Subspace Ls(s.M.dim());
  switch (rng() % 5) {
    case 0:
      break;  // L = 0
    case 1:
      for (std::size_t i = 0; i < s.M.dim(); ++i) Ls.insert(BitVector::unit(s.M.dim(), i));
      break;  // L = M
    default:
      Ls = generated_subcomodule(s.M, {random_vector_in_degree(s.M, random_degree(s.M, rng), rng)});
  }
  s.L = subcomodule(s.M, Ls, &s.inclusion);
  s.N = quotient(s.M, Ls, &s.projection);
  return s;
}

}  // namespace steenrod::comod
