#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

#include "steenrod/module_cat.hpp"

namespace steenrod::modcat {

namespace {

struct Layout {
  std::vector<std::size_t> start;  // per generator, size rank + 1
  std::vector<std::pair<std::uint32_t, std::uint32_t>> basis;  // (generator, algebra index)
};

Layout layout(const FreeModule& F, int t) {
  const auto& A = *F.algebra();
  Layout L;
  L.start.reserve(F.rank() + 1);
  for (std::size_t i = 0; i < F.rank(); ++i) {
    L.start.push_back(L.basis.size());
    int e = t - F.generators()[i];
    if (e < 0 || e > static_cast<int>(A.top())) continue;
    for (std::size_t a = A.offset(e); a < A.offset(e) + A.dim(e); ++a)
      L.basis.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(a));
  }
  L.start.push_back(L.basis.size());
  return L;
}

// a * v, v in degree t of F (layout from), result in layout to.
BitVector act_free(const FreeModule& F, const Layout& from, const Layout& to, std::size_t a, const BitVector& v) {
  const auto& A = *F.algebra();
  BitVector out(to.basis.size());
  for (auto k : v.support()) {
    auto [i, b] = from.basis[k];
    const unsigned e = A.degree(a) + A.degree(b);
    for (auto p : A.product(a, b)) out.flip(to.start[i] + (p - A.offset(e)));
  }
  return out;
}

template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < std::min(threads, n); ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += threads) f(i);
    }));
  for (auto& j : jobs) j.get();
}

}  // namespace

FreeModule::FreeModule(AlgebraPtr algebra, std::vector<int> generator_degrees)
    : alg_(std::move(algebra)), gens_(std::move(generator_degrees)) {
  if (!std::is_sorted(gens_.begin(), gens_.end())) throw ModuleError("free module generators must be sorted by degree");
}

void FreeModule::add_generator(int degree) {
  if (!gens_.empty() && degree < gens_.back()) throw ModuleError("generators must be added in degree order");
  gens_.push_back(degree);
}

std::size_t FreeModule::dim(int t) const {
  std::size_t n = 0;
  for (int g : gens_)
    if (t - g >= 0) n += alg_->dim(static_cast<unsigned>(t - g));
  return n;
}

std::pair<std::size_t, std::size_t> FreeModule::basis(int t, std::size_t k) const {
  auto L = layout(*this, t);
  return L.basis.at(k);
}

std::optional<std::size_t> FreeModule::index(int t, std::size_t gen, std::size_t a) const {
  if (gen >= gens_.size() || gens_[gen] + static_cast<int>(alg_->degree(a)) != t) return std::nullopt;
  auto L = layout(*this, t);
  return L.start[gen] + (a - alg_->offset(alg_->degree(a)));
}

BitVector FreeModule::act(std::size_t a, int t, std::size_t k) const {
  auto from = layout(*this, t);
  auto to = layout(*this, t + static_cast<int>(alg_->degree(a)));
  return act_free(*this, from, to, a, BitVector::unit(from.basis.size(), k));
}

BitVector FreeModule::generator_vector(std::size_t gen) const {
  auto L = layout(*this, gens_.at(gen));
  BitVector v(L.basis.size());
  v.set(L.start[gen]);
  return v;
}

// ---- resolution ----

std::size_t ResolutionWindow::generators(int s, int t) const {
  if (s < 0 || s >= static_cast<int>(stages.size())) return 0;
  const auto& g = stages[s].generators();
  return static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), t) - std::lower_bound(g.begin(), g.end(), t));
}

BitVector ResolutionWindow::apply_d(int s, int t, std::size_t k) const {
  const auto& F = stages.at(s);
  auto L = layout(F, t);
  auto [i, a] = L.basis.at(k);
  const BitVector& dg = d[s][i];
  if (s == 0) return module.act(a, dg);
  const auto& Q = stages[s - 1];
  return act_free(Q, layout(Q, F.generators()[i]), layout(Q, t), a, dg);
}

namespace {

// d applied to a whole vector of (F_s)_t.
BitVector apply_vector(const ResolutionWindow& R, int s, int t, const BitVector& v) {
  const std::size_t n = s == 0 ? R.module.dim() : layout(R.stages[s - 1], t).basis.size();
  BitVector out(n);
  for (auto k : v.support()) out += R.apply_d(s, t, k);
  return out;
}

}  // namespace

std::optional<std::string> ResolutionWindow::check_dd() const {
  for (int s = 1; s <= s_max && s < static_cast<int>(stages.size()); ++s)
    for (int t = module.empty() ? 0 : module.bottom(); t <= t_max; ++t) {
      auto L = layout(stages[s], t);
      for (std::size_t k = 0; k < L.basis.size(); ++k) {
        BitVector v = apply_d(s, t, k);
        if (!apply_vector(*this, s - 1, t, v).is_zero()) {
          std::ostringstream os;
          os << "d d != 0 at s=" << s << " t=" << t << " basis " << k;
          return os.str();
        }
      }
    }
  return std::nullopt;
}

std::optional<std::string> ResolutionWindow::check_minimal() const {
  const auto& A = *algebra;
  for (int s = 1; s < static_cast<int>(stages.size()); ++s) {
    const auto& Q = stages[s - 1];
    for (std::size_t g = 0; g < stages[s].rank(); ++g) {
      const int t = stages[s].generators()[g];
      auto L = layout(Q, t);
      for (auto k : d[s][g].support())
        if (A.degree(L.basis[k].second) == 0) {
          std::ostringstream os;
          os << "unit entry in d_" << s << " on generator " << g << " (t=" << t << ")";
          return os.str();
        }
    }
  }
  // Stage 0 generators must stay independent modulo A+ M.
  if (!stages.empty()) {
    std::vector<BitVector> decomposables;
    for (std::size_t x = 0; x < module.dim(); ++x)
      for (auto g : A.generators()) decomposables.push_back(module.act(g, x));
    f2::Subspace S(module.dim(), decomposables);
    for (std::size_t g = 0; g < stages[0].rank(); ++g)
      if (!S.insert(d[0][g])) return "stage 0 generator " + std::to_string(g) + " is decomposable";
  }
  return std::nullopt;
}

std::optional<std::string> ResolutionWindow::check_exact() const {
  // rank d_s at t equals dim ker d_{s-1} at t; for s = 0, d_0 is onto M_t.
  for (int s = 0; s <= s_max && s < static_cast<int>(stages.size()); ++s)
    for (int t = module.empty() ? 0 : module.bottom(); t <= t_max; ++t) {
      auto L = layout(stages[s], t);
      std::vector<BitVector> images;
      for (std::size_t k = 0; k < L.basis.size(); ++k) images.push_back(apply_d(s, t, k));
      std::size_t target_dim, kernel_dim;
      if (s == 0) {
        target_dim = module.dim();
        kernel_dim = module.dim(t);
      } else {
        auto Q = layout(stages[s - 1], t);
        target_dim = Q.basis.size();
        std::vector<BitVector> qimg;
        for (std::size_t k = 0; k < Q.basis.size(); ++k) qimg.push_back(apply_d(s - 1, t, k));
        std::size_t prev = s - 1 == 0 ? module.dim() : layout(stages[s - 2], t).basis.size();
        kernel_dim = f2::kernel_of_images(qimg, prev).size();
      }
      f2::Subspace im(target_dim, images);
      if (im.dim() != kernel_dim) {
        std::ostringstream os;
        os << "not exact at s=" << s << " t=" << t << ": image " << im.dim() << " kernel " << kernel_dim;
        return os.str();
      }
    }
  return std::nullopt;
}

ResolutionWindow minimal_free_resolution(const Module& M, int s_max, int t_max) {
  const auto& Aptr = M.algebra();
  if (Aptr->truncated()) throw ModuleError("resolutions need a finite algebra, not a window");
  ResolutionWindow R;
  R.algebra = Aptr;
  R.module = M;
  R.s_max = s_max;
  R.t_max = t_max;
  if (M.empty()) {
    for (int s = 0; s <= s_max; ++s) {
      R.stages.emplace_back(Aptr, std::vector<int>{});
      R.d.emplace_back();
    }
    return R;
  }
  const int t0 = M.bottom();
  for (int s = 0; s <= s_max; ++s) {
    const int n_t = t_max - t0 + 1;
    // Kernel of the previous map, degreewise.
    std::vector<std::vector<BitVector>> kernels(std::max(n_t, 0));
    parallel_for(kernels.size(), [&](std::size_t i) {
      const int t = t0 + static_cast<int>(i);
      if (s == 0) {
        for (std::size_t x = M.offset(t); x < M.offset(t + 1); ++x) kernels[i].push_back(BitVector::unit(M.dim(), x));
        return;
      }
      auto Q = layout(R.stages[s - 1], t);
      std::vector<BitVector> images;
      for (std::size_t k = 0; k < Q.basis.size(); ++k) images.push_back(R.apply_d(s - 1, t, k));
      std::size_t prev = s - 1 == 0 ? M.dim() : layout(R.stages[s - 2], t).basis.size();
      kernels[i] = f2::kernel_of_images(images, prev);
    });
    R.stages.emplace_back(Aptr, std::vector<int>{});
    R.d.emplace_back();
    auto& F = R.stages.back();
    auto& dF = R.d.back();
    for (int t = t0; t <= t_max; ++t) {
      const auto& K = kernels[t - t0];
      if (K.empty()) continue;
      const std::size_t qdim = K.front().size();
      f2::Subspace image(qdim);
      auto L = layout(F, t);
      for (std::size_t k = 0; k < L.basis.size(); ++k) image.insert(R.apply_d(s, t, k));
      for (const auto& v : K)
        if (image.insert(v)) {
          F.add_generator(t);
          dF.push_back(v);
        }
    }
  }
  return R;
}

std::size_t ExtTable::at(int s, int t) const {
  if (s < 0 || s > s_max || t < t_min || t > t_max) return 0;
  return dims[s][t - t_min];
}

ExtTable ext_groups(const ResolutionWindow& R, const Module& N, int s_max, int t_max) {
  ExtTable E;
  E.s_max = s_max;
  E.t_max = t_max;
  if (R.module.empty() || N.empty()) {
    E.t_min = 0;
    E.dims.assign(s_max + 1, std::vector<std::size_t>(t_max + 1, 0));
    return E;
  }
  E.t_min = R.module.bottom() - N.top();
  if (R.s_max < s_max + 1 || R.t_max < t_max + N.top())
    throw ModuleError("resolution window too small for the requested Ext range");
  const auto& A = *R.algebra;
  const int width = t_max - E.t_min + 1;
  E.dims.assign(s_max + 1, std::vector<std::size_t>(std::max(width, 0), 0));
  // Cochains at (s,t): pairs (generator g of F_s, y in N_{|g|-t}).
  auto cochains = [&](int s, int t) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const auto& gens = R.stages[s].generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      int e = gens[g] - t;
      for (std::size_t y = N.offset(e); y < N.offset(e + 1); ++y) out.emplace_back(g, y);
    }
    return out;
  };
  // rank of delta: C^{s,t} -> C^{s+1,t}
  auto delta_rank = [&](int s, int t) -> std::size_t {
    if (s < 0) return 0;
    auto src = cochains(s, t);
    auto dst = cochains(s + 1, t);
    if (src.empty() || dst.empty()) return 0;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> didx;
    for (std::size_t k = 0; k < dst.size(); ++k) didx[dst[k]] = k;
    std::vector<BitVector> images(src.size(), BitVector(dst.size()));
    const auto& Q = R.stages[s];
    const auto& gens1 = R.stages[s + 1].generators();
    for (std::size_t h = 0; h < gens1.size(); ++h) {
      int e = gens1[h] - t;
      if (N.dim(e) == 0) continue;
      auto L = layout(Q, gens1[h]);
      for (auto k : R.d[s + 1][h].support()) {
        auto [g, a] = L.basis[k];
        for (std::size_t c = 0; c < src.size(); ++c) {
          if (src[c].first != g) continue;
          for (auto y : N.act(a, src[c].second).support()) images[c].flip(didx.at({h, y}));
        }
      }
    }
    (void)A;
    return f2::Subspace(dst.size(), images).dim();
  };
  for (int t = E.t_min; t <= t_max; ++t) {
    std::vector<std::size_t> ranks(s_max + 2, 0);
    for (int s = 0; s <= s_max; ++s) ranks[s] = delta_rank(s, t);
    for (int s = 0; s <= s_max; ++s) {
      std::size_t c = cochains(s, t).size();
      std::size_t prev = s > 0 ? ranks[s - 1] : 0;
      E.dims[s][t - E.t_min] = c - ranks[s] - prev;
    }
  }
  return E;
}

ExtTable ext_groups(const Module& M, const Module& N, int s_max, int t_max) {
  if (M.algebra() != N.algebra() && M.algebra()->name() != N.algebra()->name())
    throw ModuleError("ext_groups: modules over different algebras");
  int top = N.empty() ? 0 : N.top();
  auto R = minimal_free_resolution(M, s_max + 1, t_max + top);
  return ext_groups(R, N, s_max, t_max);
}

}  // namespace steenrod::modcat
