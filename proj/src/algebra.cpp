#include "steenrod/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace steenrod::alg {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::string monomial_key(const milnor::Monomial& m) {
  std::string k;
  for (unsigned r : m.r) {
    k += std::to_string(r);
    k += ',';
  }
  return k;
}

BitVector reversed(const BitVector& v) {
  BitVector out(v.size());
  for (auto i : v.support()) out.set(v.size() - 1 - i);
  return out;
}

void toggle(Sparse& s, std::uint32_t i) {
  auto it = std::lower_bound(s.begin(), s.end(), i);
  if (it != s.end() && *it == i) s.erase(it);
  else s.insert(it, i);
}

template <class P>
void cancel_pairs(std::vector<P>& v) {
  std::sort(v.begin(), v.end());
  std::vector<P> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2) out.push_back(v[i]);
    i = j;
  }
  v = std::move(out);
}

}  // namespace

BitVector dense(const Sparse& s, std::size_t n) {
  BitVector v(n);
  for (auto i : s) v.flip(i);
  return v;
}

Sparse sparse(const BitVector& v) {
  Sparse out;
  for (auto i : v.support()) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

// ---- CosetBasis ----

CosetBasis::CosetBasis(AlgebraPtr S, AlgebraPtr R) : S_(std::move(S)), R_(std::move(R)) {
  if (!S_->milnor_backed() || !R_->milnor_backed())
    throw WindowError("coset basis needs Milnor-backed algebras");
  std::vector<std::size_t> gens;
  for (auto g : R_->generators()) {
    auto idx = S_->index_of(R_->monomial(g));
    if (!idx) throw WindowError(R_->name() + " is not contained in " + S_->name());
    gens.push_back(*idx);
  }
  const unsigned top = S_->top();
  reps_.resize(top + 1);
  ideal_.resize(top + 1);
  rep_pos_.resize(top + 1);
  for (unsigned d = 0; d <= top; ++d) {
    const std::size_t n = S_->dim(d), off = S_->offset(d);
    f2::Subspace I(n);
    for (auto g : gens) {
      unsigned dg = S_->degree(g);
      if (dg > d) continue;
      for (std::size_t b = S_->offset(d - dg); b < S_->offset(d - dg) + S_->dim(d - dg); ++b) {
        BitVector v(n);
        for (auto k : S_->product(b, g)) v.flip(n - 1 - (k - off));
        I.insert(v);
      }
    }
    std::vector<bool> pivot(n, false);
    for (const auto& v : I.basis()) pivot[v.first_set()] = true;
    rep_pos_[d].assign(n, npos);
    for (std::size_t local = 0; local < n; ++local)
      if (!pivot[n - 1 - local]) {
        rep_pos_[d][local] = reps_[d].size();
        reps_[d].push_back(off + local);
      }
    ideal_[d] = std::move(I);
  }
}

BitVector CosetBasis::reduce(unsigned d, const BitVector& v) const {
  BitVector r = reversed(ideal_.at(d).reduce(reversed(v)));
  BitVector out(reps_[d].size());
  for (auto i : r.support()) out.set(rep_pos_[d][i]);
  return out;
}

std::vector<BitVector> CosetBasis::ideal_basis(unsigned d) const {
  std::vector<BitVector> out;
  for (const auto& v : ideal_.at(d).basis()) out.push_back(reversed(v));
  return out;
}

// ---- FiniteAlgebra ----

void FiniteAlgebra::finish_layout() {
  top_ = degrees_.empty() ? 0 : degrees_.back();
  offsets_.assign(top_ + 2, 0);
  for (unsigned d : degrees_) ++offsets_[d + 1];
  for (std::size_t d = 1; d < offsets_.size(); ++d) offsets_[d] += offsets_[d - 1];
}

void FiniteAlgebra::compute_generators() {
  generators_.clear();
  recipe_.assign(dim(), {});
  for (unsigned d = 1; d <= top_; ++d) {
    const std::size_t n = dim(d), off = offset(d);
    f2::Subspace dec(n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> spans;
    std::vector<BitVector> columns;
    for (auto g : generators_) {
      unsigned dg = degrees_[g];
      if (dg >= d) continue;
      for (std::size_t b = offset(d - dg); b < offset(d - dg) + dim(d - dg); ++b) {
        BitVector v(n);
        for (auto k : product(g, b)) v.flip(n - 1 - (k - off));
        if (dec.insert(v)) {
          spans.emplace_back(static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(b));
          columns.push_back(reversed(v));
        }
      }
    }
    std::vector<bool> pivot(n, false);
    for (const auto& v : dec.basis()) pivot[v.first_set()] = true;
    std::vector<bool> is_gen(n, false);
    for (std::size_t local = 0; local < n; ++local)
      if (!pivot[n - 1 - local]) {
        is_gen[local] = true;
        generators_.push_back(off + local);
        spans.emplace_back(static_cast<std::uint32_t>(off + local), 0);
        columns.push_back(BitVector::unit(n, local));
      }
    f2::BitMatrix m(n, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (auto r : columns[c].support()) m.set(r, c);
    for (std::size_t local = 0; local < n; ++local) {
      if (is_gen[local]) continue;
      auto x = f2::solve(m, BitVector::unit(n, local));
      if (!x) throw std::logic_error("generator recipe failed in " + name_);
      for (auto c : x->support()) recipe_[off + local].push_back(spans[c]);
    }
  }
  gen_pos_.assign(dim(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < generators_.size(); ++k) gen_pos_[generators_[k]] = k;
}

std::optional<std::size_t> FiniteAlgebra::generator_position(std::size_t i) const {
  if (gen_pos_[i] == static_cast<std::size_t>(-1)) return std::nullopt;
  return gen_pos_[i];
}

AlgebraPtr FiniteAlgebra::milnor(const milnor::Profile& p, std::optional<unsigned> window) {
  auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
  a->kind_ = Kind::milnor;
  a->profile_ = p;
  auto ptop = p.top_degree();
  if (!ptop && !window) throw WindowError(p.name() + " is infinite; a window is required");
  unsigned top = ptop ? *ptop : *window;
  if (window && *window < top) top = *window;
  a->truncated_ = window && (!ptop || *window < *ptop);
  a->name_ = p.name();
  if (a->truncated_) a->name_ += "<=" + std::to_string(top);
  for (unsigned d = 0; d <= top; ++d)
    for (auto& m : milnor::basis_in_degree(p, d)) {
      a->index_[monomial_key(m)] = a->monomials_.size();
      a->degrees_.push_back(d);
      a->labels_.push_back(milnor::to_string(m));
      a->monomials_.push_back(std::move(m));
    }
  a->finish_layout();
  a->hopf_ = true;
  const std::size_t N = a->dim();
  a->coproduct_.resize(N);
  a->antipode_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    for (auto& [l, r] : milnor::coproduct(a->monomials_[i]))
      a->coproduct_[i].emplace_back(static_cast<std::uint32_t>(*a->index_of(l)),
                                    static_cast<std::uint32_t>(*a->index_of(r)));
    cancel_pairs(a->coproduct_[i]);
    a->antipode_[i] = sparse(a->from_element(milnor::antipode(a->monomials_[i])));
  }
  a->compute_generators();
  return a;
}

AlgebraPtr FiniteAlgebra::A(unsigned n) { return milnor(milnor::Profile::A(n)); }
AlgebraPtr FiniteAlgebra::E(unsigned n) { return milnor(milnor::Profile::E(n)); }
AlgebraPtr FiniteAlgebra::steenrod_window(unsigned D) { return milnor(milnor::Profile::full(), D); }

AlgebraPtr FiniteAlgebra::quotient(const AlgebraPtr& S, const AlgebraPtr& R) {
  auto cosets = std::make_shared<CosetBasis>(S, R);
  // Normality: the left ideal S.R+ must equal the right ideal R+.S.
  std::vector<std::size_t> gens;
  for (auto g : R->generators()) gens.push_back(*S->index_of(R->monomial(g)));
  for (unsigned d = 1; d <= S->top(); ++d) {
    const std::size_t n = S->dim(d), off = S->offset(d);
    f2::Subspace right(n);
    for (auto g : gens) {
      unsigned dg = S->degree(g);
      if (dg > d) continue;
      for (std::size_t b = S->offset(d - dg); b < S->offset(d - dg) + S->dim(d - dg); ++b) {
        BitVector v(n);
        for (auto k : S->product(g, b)) v.flip(n - 1 - (k - off));
        right.insert(v);
      }
    }
    const auto& left = cosets->ideal(d);
    if (!left.contains(right) || !right.contains(left)) {
      std::ostringstream os;
      os << R->name() << " is not normal in " << S->name() << ": S.R+ and R+.S differ in degree " << d;
      throw NotNormal(os.str());
    }
  }
  auto q = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
  q->kind_ = Kind::quotient;
  q->name_ = S->name() + "//" + R->name();
  q->parent_ = S;
  q->cosets_ = cosets;
  q->truncated_ = S->truncated();
  for (unsigned d = 0; d <= S->top(); ++d)
    for (auto idx : cosets->reps(d)) {
      q->lift_.push_back(idx);
      q->degrees_.push_back(d);
      q->labels_.push_back(S->label(idx));
    }
  q->finish_layout();
  q->projection_.resize(S->dim());
  for (std::size_t i = 0; i < S->dim(); ++i) {
    unsigned d = S->degree(i);
    BitVector local(S->dim(d));
    local.set(i - S->offset(d));
    Sparse out;
    for (auto k : cosets->reduce(d, local).support()) out.push_back(static_cast<std::uint32_t>(q->offset(d) + k));
    q->projection_[i] = std::move(out);
  }
  q->hopf_ = S->hopf();
  if (q->hopf_) {
    const std::size_t N = q->dim();
    q->coproduct_.resize(N);
    q->antipode_.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      for (auto [l, r] : S->coproduct(q->lift_[i]))
        for (auto pl : q->projection_[l])
          for (auto pr : q->projection_[r]) q->coproduct_[i].emplace_back(pl, pr);
      cancel_pairs(q->coproduct_[i]);
      for (auto k : S->antipode(q->lift_[i]))
        for (auto p : q->projection_[k]) toggle(q->antipode_[i], p);
    }
  }
  q->compute_generators();
  return q;
}

AlgebraPtr FiniteAlgebra::doubled(const AlgebraPtr& A, unsigned e) {
  auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
  a->kind_ = Kind::doubled;
  a->source_ = A;
  a->doubling_ = e;
  a->name_ = "D^" + std::to_string(e) + "(" + A->name() + ")";
  a->truncated_ = A->truncated();
  for (std::size_t i = 0; i < A->dim(); ++i) {
    a->degrees_.push_back(A->degree(i) << e);
    a->labels_.push_back("D" + A->label(i));
  }
  a->finish_layout();
  a->hopf_ = A->hopf();
  if (a->hopf_) {
    for (std::size_t i = 0; i < A->dim(); ++i) {
      a->coproduct_.push_back(A->coproduct(i));
      a->antipode_.push_back(A->antipode(i));
    }
  }
  a->compute_generators();
  return a;
}

std::optional<std::size_t> FiniteAlgebra::index_of(const milnor::Monomial& m) const {
  auto it = index_.find(monomial_key(m));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BitVector FiniteAlgebra::from_element(const milnor::Element& e) const {
  BitVector v(dim());
  for (const auto& m : e.terms()) {
    if (m.degree() > top_) continue;
    auto idx = index_of(m);
    if (!idx) throw WindowError(milnor::to_string(m) + " is not in " + name_);
    v.flip(*idx);
  }
  return v;
}

milnor::Element FiniteAlgebra::to_element(const BitVector& v) const {
  std::vector<milnor::Monomial> terms;
  for (auto i : v.support()) terms.push_back(monomials_.at(i));
  return milnor::Element::from_terms(std::move(terms));
}

Sparse FiniteAlgebra::compute_product(std::size_t i, std::size_t j) const {
  if (degrees_[i] + degrees_[j] > top_) return {};
  switch (kind_) {
    case Kind::milnor:
      return sparse(from_element(milnor::product(monomials_[i], monomials_[j])));
    case Kind::quotient: {
      Sparse out;
      for (auto k : parent_->product(lift_[i], lift_[j]))
        for (auto p : projection_[k]) toggle(out, p);
      return out;
    }
    case Kind::doubled:
      return source_->product(i, j);
  }
  return {};
}

const Sparse& FiniteAlgebra::product(std::size_t i, std::size_t j) const {
  const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
  {
    std::lock_guard lock(mu_);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
  }
  Sparse p = compute_product(i, j);
  std::lock_guard lock(mu_);
  return products_.emplace(key, std::move(p)).first->second;
}

BitVector FiniteAlgebra::multiply(const BitVector& a, const BitVector& b) const {
  BitVector out(dim());
  for (auto i : a.support())
    for (auto j : b.support())
      for (auto k : product(i, j)) out.flip(k);
  return out;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>>& FiniteAlgebra::coproduct(std::size_t i) const {
  if (!hopf_) throw std::logic_error(name_ + " carries no coproduct");
  return coproduct_.at(i);
}

const Sparse& FiniteAlgebra::antipode(std::size_t i) const {
  if (!hopf_) throw std::logic_error(name_ + " carries no antipode");
  return antipode_.at(i);
}

}  // namespace steenrod::alg
