#include "steenrod/spectral.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace steenrod::ss {

using f2::BitVector;

std::size_t SSPage::dim(int p, int q, int t) const {
  for (const auto& c : cells)
    if (c.p == p && c.q == q && c.t == t) return c.dim;
  return 0;
}

std::size_t SSPage::total(int s, int t) const {
  std::size_t n = 0;
  for (const auto& c : cells)
    if (c.p + c.q == s && c.t == t) n += c.dim;
  return n;
}

const SSPage& CEResult::page(int r) const {
  for (const auto& P : pages)
    if (P.r == r) return P;
  return pages.back();
}

std::optional<std::pair<int, int>> CEResult::abutment_mismatch() const {
  for (int s = 0; s <= s_max; ++s)
    for (int t = 0; t <= t_max; ++t) {
      auto a = e_infinity().total(s, t);
      if (a != abutment.at(s, t) || a != total[s][t]) return std::make_pair(s, t);
    }
  return std::nullopt;
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Piece {
  std::vector<std::pair<std::size_t, std::size_t>> basis;  // (generator of P_q, coset representative in A)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
};

class Builder {
 public:
  Builder(const AlgebraPtr& B, const AlgebraPtr& A, const Module& M, int s_max, int t_max)
      : A_(A), cos_(A, B), s_max_(s_max), t_max_(t_max) {
    Q_ = alg::FiniteAlgebra::quotient(A, B);
    for (unsigned d = 0; d <= A->top(); ++d) {
      std::size_t sum = 0;
      for (unsigned i = 0; i <= d; ++i) sum += B->dim(i) * Q_->dim(d - i);
      if (sum != A->dim(d)) throw SpectralError(A->name() + " is not free over " + B->name());
    }
    lift_.assign(Q_->dim(), npos);
    for (std::size_t i = 0; i < A->dim(); ++i) {
      const auto& pr = Q_->projection(i);
      if (pr.size() == 1 && lift_[pr[0]] == npos) lift_[pr[0]] = i;
    }
    for (auto l : lift_)
      if (l == npos) throw SpectralError("quotient element without a monomial lift");
    P_ = modcat::minimal_free_resolution(M, s_max + 1, t_max);
    X_ = modcat::minimal_free_resolution(Module::trivial(Q_), s_max + 1, t_max);
    C_.assign(s_max + 2, std::vector<Piece>(t_max + 1));
    for (int q = 0; q <= s_max + 1; ++q) {
      const auto& gens = P_.stages[q].generators();
      for (int v = 0; v <= t_max; ++v)
        for (std::size_t h = 0; h < gens.size(); ++h) {
          int d = v - gens[h];
          if (d < 0 || cos_.dim(static_cast<unsigned>(d)) == 0) continue;
          for (auto r : cos_.reps(static_cast<unsigned>(d))) {
            C_[q][v].index[{h, r}] = C_[q][v].basis.size();
            C_[q][v].basis.emplace_back(h, r);
          }
        }
    }
    // chi of lifted coefficients in the differential of X
    xd_.resize(s_max + 2);
    for (int p = 1; p <= s_max + 1; ++p) {
      const auto& gens = X_.stages[p].generators();
      xd_[p].resize(gens.size());
      for (std::size_t g = 0; g < gens.size(); ++g) {
        std::map<std::size_t, BitVector> by_gen;
        for (auto k : X_.d[p][g].support()) {
          auto [g0, a] = X_.stages[p - 1].basis(gens[g], k);
          auto chi = alg::dense(A_->antipode(lift_[a]), A_->dim());
          auto it = by_gen.find(g0);
          if (it == by_gen.end()) by_gen.emplace(g0, chi);
          else it->second += chi;
        }
        for (auto& [g0, chi] : by_gen)
          if (!chi.is_zero()) xd_[p][g].emplace_back(g0, std::move(chi));
      }
    }
  }

  const AlgebraPtr& quotient() const { return Q_; }
  const modcat::ResolutionWindow& P() const { return P_; }
  const modcat::ResolutionWindow& X() const { return X_; }
  const Piece& C(int q, int v) const { return C_[q][v]; }
  std::size_t lift(std::size_t a) const { return lift_[a]; }
  const alg::CosetBasis& cosets() const { return cos_; }

  // Class in C_q of degree v of an element of P_q given per generator by local A-vectors.
  BitVector reduce(int q, int v, const std::map<std::size_t, BitVector>& parts) const {
    const auto& piece = C_[q][v];
    BitVector out(piece.basis.size());
    const auto& gens = P_.stages[q].generators();
    for (const auto& [h, vec] : parts) {
      if (vec.is_zero()) continue;
      unsigned d = static_cast<unsigned>(v - gens[h]);
      auto coords = cos_.reduce(d, vec);
      const auto& reps = cos_.reps(d);
      for (auto i : coords.support()) out.flip(piece.index.at({h, reps[i]}));
    }
    return out;
  }

  // x . y for x a homogeneous element of A (global coordinates) of degree e and y basis element k of C_q in degree v.
  BitVector act(const BitVector& x, int e, int q, int v, std::size_t k) const {
    auto [h, r] = C_[q][v].basis[k];
    const int gdeg = P_.stages[q].generators()[h];
    const unsigned d = static_cast<unsigned>(v - gdeg + e);
    std::map<std::size_t, BitVector> parts;
    if (v + e > t_max_) throw SpectralError("action leaves the degree window");
    if (d > A_->top()) return BitVector(C_[q][v + e].basis.size());
    auto prod = A_->multiply(x, BitVector::unit(A_->dim(), r));
    BitVector local(A_->dim(d));
    for (auto i : prod.support()) local.flip(i - A_->offset(d));
    parts.emplace(h, std::move(local));
    return reduce(q, v + e, parts);
  }

  // Boundary C_q -> C_{q-1} in degree v.
  BitVector boundary(int q, int v, std::size_t k) const {
    auto [h, r] = C_[q][v].basis[k];
    const auto& prev = P_.stages[q - 1];
    const int hdeg = P_.stages[q].generators()[h];
    std::map<std::size_t, BitVector> parts;
    for (auto kk : P_.d[q][h].support()) {
      auto [g, a] = prev.basis(hdeg, kk);
      unsigned d = static_cast<unsigned>(v - prev.generators()[g]);
      const auto& prod = A_->product(r, a);
      if (prod.empty()) continue;
      auto& slot = parts.try_emplace(g, BitVector(A_->dim(d))).first->second;
      for (auto c : prod) slot.flip(c - A_->offset(d));
    }
    return reduce(q - 1, v, parts);
  }

  const std::vector<std::pair<std::size_t, BitVector>>& xd(int p, std::size_t g) const { return xd_[p][g]; }
  int chi_degree(const BitVector& x) const { return static_cast<int>(A_->degree(x.first_set())); }

 private:
  AlgebraPtr A_, Q_;
  alg::CosetBasis cos_;
  int s_max_, t_max_;
  std::vector<std::size_t> lift_;
  modcat::ResolutionWindow P_, X_;
  std::vector<std::vector<Piece>> C_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, BitVector>>>> xd_;
};

struct Total {
  std::vector<int> p;                                      // filtration of each basis element
  std::vector<std::tuple<int, std::size_t, std::size_t>> cells;  // (p, generator of X_p, index in C_q)
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
};

std::size_t rank_of(const std::vector<BitVector>& rows, std::size_t cols) {
  f2::Subspace S(cols);
  for (const auto& r : rows) S.insert(r);
  return S.dim();
}

}  // namespace

CEResult ce_spectral_sequence(const AlgebraPtr& B, const AlgebraPtr& A, const Module& M, int s_max, int t_max) {
  if (s_max < 0 || t_max < 0) throw SpectralError("bounds must be nonnegative");
  if (M.algebra()->name() != A->name()) throw SpectralError("module is not over " + A->name());
  Builder b(B, A, M, s_max, t_max);
  CEResult R;
  R.sub = B->name();
  R.big = A->name();
  R.quotient = b.quotient()->name();
  R.s_max = s_max;
  R.t_max = t_max;
  const int n_top = s_max + 1;

  const int pages = s_max + 2;
  std::vector<SSPage> out(pages);
  for (int r = 1; r <= pages; ++r) out[r - 1].r = r;
  R.total.assign(s_max + 1, std::vector<std::size_t>(t_max + 1, 0));

  for (int t = 0; t <= t_max; ++t) {
    std::vector<Total> D(n_top + 1);
    for (int n = 0; n <= n_top; ++n)
      for (int p = 0; p <= n; ++p) {
        const int q = n - p;
        const auto& gens = b.X().stages[p].generators();
        for (std::size_t g = 0; g < gens.size(); ++g) {
          int v = t - gens[g];
          if (v < 0) continue;
          for (std::size_t k = 0; k < b.C(q, v).basis.size(); ++k) {
            D[n].index[{p, g, k}] = D[n].cells.size();
            D[n].cells.emplace_back(p, g, k);
            D[n].p.push_back(p);
          }
        }
      }
    // boundary[n][e] for e in D_n, n >= 1, in D_{n-1}
    std::vector<std::vector<BitVector>> bd(n_top + 1);
    for (int n = 1; n <= n_top; ++n) {
      for (const auto& [p, g, k] : D[n].cells) {
        BitVector img(D[n - 1].cells.size());
        const int q = n - p;
        const int v = t - b.X().stages[p].generators()[g];
        if (q >= 1)
          for (auto k2 : b.boundary(q, v, k).support()) img.flip(D[n - 1].index.at({p, g, k2}));
        if (p >= 1)
          for (const auto& [g0, chi] : b.xd(p, g)) {
            int e = b.chi_degree(chi);
            for (auto k2 : b.act(chi, e, q, v, k).support()) img.flip(D[n - 1].index.at({p - 1, g0, k2}));
          }
        bd[n].push_back(std::move(img));
      }
    }
    for (int n = 2; n <= n_top && !R.dd_failure; ++n)
      for (std::size_t e = 0; e < bd[n].size(); ++e) {
        BitVector acc(D[n - 2].cells.size());
        for (auto k : bd[n][e].support()) acc += bd[n - 1][k];
        if (!acc.is_zero()) {
          R.dd_failure = "total boundary squares to nonzero at t = " + std::to_string(t);
          break;
        }
      }
    // R_n(a, b): rank of the cochain differential from F^a D^n to D^{n+1} / F^b.
    std::map<std::tuple<int, int, int>, std::size_t> memo;
    auto Rk = [&](int n, int a, int bb) -> std::size_t {
      if (n < 0 || n + 1 > n_top) return 0;
      a = std::max(a, 0);
      bb = std::min(bb, n + 2);
      if (bb <= a) return 0;
      auto key = std::make_tuple(n, a, bb);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      std::vector<BitVector> rows;
      for (std::size_t e = 0; e < bd[n + 1].size(); ++e) {
        if (D[n + 1].p[e] >= bb) continue;
        BitVector v = bd[n + 1][e];
        for (auto k : bd[n + 1][e].support())
          if (D[n].p[k] < a) v.flip(k);
        rows.push_back(std::move(v));
      }
      return memo[key] = rank_of(rows, D[n].cells.size());
    };
    auto dimD = [&](int p, int n) {
      return static_cast<std::size_t>(std::count(D[n].p.begin(), D[n].p.end(), p));
    };
    for (int n = 0; n <= s_max; ++n)
      R.total[n][t] = D[n].cells.size() - Rk(n, 0, n + 2) - Rk(n - 1, 0, n + 1);

    std::vector<std::vector<std::size_t>> dims(pages + 2, std::vector<std::size_t>());
    auto E = [&](int r, int p, int n) -> long long {
      return static_cast<long long>(dimD(p, n)) - static_cast<long long>(Rk(n, p, p + r)) +
             static_cast<long long>(Rk(n, p + 1, p + r)) + static_cast<long long>(Rk(n - 1, p - r + 1, p)) -
             static_cast<long long>(Rk(n - 1, p - r + 1, p + 1));
    };
    for (int r = 1; r <= pages; ++r) {
      std::map<std::pair<int, int>, long long> rank_out;  // (p, n)
      for (int n = 0; n <= s_max; ++n)
        for (int p = 0; p <= n; ++p) {
          long long now = E(r, p, n), next = E(r + 1, p, n);
          if (now < 0 || next < 0 || next > now) throw SpectralError("inconsistent page dimensions");
          long long in = (p - r >= 0 && n >= 1) ? rank_out[{p - r, n - 1}] : 0;
          long long ro = now - next - in;
          if (ro < 0) throw SpectralError("negative differential rank");
          rank_out[{p, n}] = ro;
          if (now > 0)
            out[r - 1].cells.push_back(SSCell{p, n - p, t, static_cast<std::size_t>(now), static_cast<std::size_t>(ro)});
        }
    }
  }
  auto order = [](const SSCell& a, const SSCell& c) {
    return std::make_tuple(a.p + a.q, a.t, a.p) < std::make_tuple(c.p + c.q, c.t, c.p);
  };
  for (auto& P : out) std::sort(P.cells.begin(), P.cells.end(), order);
  R.pages = std::move(out);

  // Two-stage E2 and the edge map.
  const auto& Q = b.quotient();
  R.e2_two_stage.r = 2;
  for (int q = 0; q <= s_max; ++q) {
    struct Level {
      std::vector<BitVector> reps;
      f2::Subspace bounds;
    };
    std::vector<Level> lv(t_max + 1);
    for (int v = 0; v <= t_max; ++v) {
      const std::size_t n = b.C(q, v).basis.size();
      std::vector<BitVector> rows;
      for (std::size_t y = 0; y < b.C(q + 1, v).basis.size(); ++y) rows.push_back(b.boundary(q + 1, v, y));
      std::vector<BitVector> Z;
      if (rows.empty()) {
        for (std::size_t i = 0; i < n; ++i) Z.push_back(BitVector::unit(n, i));
      } else {
        Z = f2::kernel_basis(f2::BitMatrix::from_rows(rows, n));
      }
      f2::Subspace Bd(n);
      if (q >= 1 && n > 0) {
        std::vector<BitVector> brows;
        for (std::size_t y = 0; y < n; ++y) brows.push_back(b.boundary(q, v, y));
        auto m = f2::BitMatrix::from_rows(brows, b.C(q - 1, v).basis.size()).transpose();
        for (std::size_t z = 0; z < m.rows(); ++z) Bd.insert(m.row(z));
      }
      lv[v].bounds = Bd;
      f2::Subspace span = Bd;
      for (const auto& z : Z)
        if (span.insert(z)) lv[v].reps.push_back(z);
      // edge map: generators of P_q in degree v
      const auto& gens = b.P().stages[q].generators();
      f2::Subspace edge = Bd;
      std::size_t unit = b.cosets().reps(0).front();
      for (std::size_t h = 0; h < gens.size(); ++h)
        if (gens[h] == v) edge.insert(BitVector::unit(n, b.C(q, v).index.at({h, unit})));
      if (edge.dim() > Bd.dim()) R.edge_rank[{q, v}] = edge.dim() - Bd.dim();
    }
    auto class_of = [&](int v, const BitVector& f) {
      const auto& L = lv[v];
      const std::size_t n = f.size();
      f2::BitMatrix m(n, L.reps.size());
      for (std::size_t j = 0; j < L.reps.size(); ++j)
        for (auto i : L.bounds.reduce(L.reps[j]).support()) m.set(i, j);
      auto x = f2::solve(m, L.bounds.reduce(f));
      if (!x) throw SpectralError("action left the cocycles");
      return *x;
    };
    // Q-module on the classes, degree -v.
    std::vector<int> degrees;
    std::vector<std::pair<int, std::size_t>> where;  // (v, rep index)
    std::map<std::pair<int, std::size_t>, std::size_t> pos;
    for (int v = t_max; v >= 0; --v)
      for (std::size_t j = 0; j < lv[v].reps.size(); ++j) {
        pos[{v, j}] = degrees.size();
        degrees.push_back(-v);
        where.emplace_back(v, j);
      }
    if (degrees.empty()) continue;
    std::map<std::size_t, std::vector<BitVector>> action;
    for (auto gq : Q->generators()) {
      const int e = static_cast<int>(Q->degree(gq));
      auto chi = alg::dense(A->antipode(b.lift(gq)), A->dim());
      std::vector<BitVector> images(degrees.size(), BitVector(degrees.size()));
      for (std::size_t i = 0; i < where.size(); ++i) {
        auto [v, j] = where[i];
        if (v - e < 0) continue;
        const auto& f = lv[v].reps[j];
        BitVector xf(b.C(q, v - e).basis.size());
        for (std::size_t y = 0; y < xf.size(); ++y)
          if (b.act(chi, e, q, v - e, y).dot(f)) xf.set(y);
        auto cls = class_of(v - e, xf);
        for (auto c : cls.support()) images[i].set(pos.at({v - e, c}));
      }
      action.emplace(gq, std::move(images));
    }
    auto N = Module::from_generator_action(Q, degrees, action);
    if (auto why = N.validate()) throw SpectralError("Ext_B is not a Q-module: " + *why);
    auto ext = modcat::ext_groups(Module::trivial(Q), N, s_max - q, t_max);
    for (int p = 0; p <= s_max - q; ++p)
      for (int t = 0; t <= t_max; ++t)
        if (auto d = ext.at(p, t)) R.e2_two_stage.cells.push_back(SSCell{p, q, t, d, 0});
  }
  std::sort(R.e2_two_stage.cells.begin(), R.e2_two_stage.cells.end(), order);

  R.ext_sub = modcat::ext_groups(M.restrict_to(B), Module::trivial(B), s_max, t_max);
  R.abutment = modcat::ext_groups(M, Module::trivial(A), s_max, t_max);
  return R;
}

}  // namespace steenrod::ss
