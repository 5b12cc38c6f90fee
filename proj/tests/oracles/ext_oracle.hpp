#pragma once

// Brute-force Ext over small finite profile algebras, with its own dense F2
// elimination and the Adem-based Milnor product. Shares no code with the library.

#include <map>
#include <vector>

#include "oracles/adem_oracle.hpp"

namespace oracle {

using Row = std::vector<unsigned char>;

// Reduced basis of a span; rows kept with distinct leading positions.
struct Span {
  std::vector<Row> rows;
  std::vector<std::size_t> lead;

  Row reduce(Row v) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (v[lead[i]])
        for (std::size_t k = 0; k < v.size(); ++k) v[k] ^= rows[i][k];
    return v;
  }
  bool add(const Row& v) {
    Row r = reduce(v);
    for (std::size_t k = 0; k < r.size(); ++k)
      if (r[k]) {
        rows.push_back(r);
        lead.push_back(k);
        return true;
      }
    return false;
  }
};

// Null space of the map sending basis vector i to images[i].
inline std::vector<Row> null_space(const std::vector<Row>& images, std::size_t target) {
  const std::size_t n = images.size();
  std::vector<Row> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = images[i];
    aug[i].resize(target + n, 0);
    aug[i][target + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < target && r < n; ++c) {
    std::size_t p = r;
    while (p < n && !aug[p][c]) ++p;
    if (p == n) continue;
    std::swap(aug[p], aug[r]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && aug[i][c])
        for (std::size_t k = 0; k < aug[i].size(); ++k) aug[i][k] ^= aug[r][k];
    ++r;
  }
  std::vector<Row> out;
  for (std::size_t i = r; i < n; ++i) out.emplace_back(aug[i].begin() + static_cast<long>(target), aug[i].end());
  return out;
}

struct SmallAlgebra {
  std::vector<Exps> basis;
  std::vector<unsigned> deg;
  std::map<Exps, std::size_t> index;
  std::vector<std::vector<std::vector<std::size_t>>> mul;
  unsigned top = 0;

  std::vector<std::size_t> in_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (static_cast<int>(deg[i]) == d) out.push_back(i);
    return out;
  }
};

// Sq(R) with r_i < 2^{h_i}.
inline SmallAlgebra profile_algebra(const std::vector<unsigned>& h) {
  SmallAlgebra A;
  for (std::size_t i = 0; i < h.size(); ++i) A.top += ((1u << h[i]) - 1) * ((2u << i) - 1);
  for (unsigned d = 0; d <= A.top; ++d)
    for (const auto& r : milnor_basis(d)) {
      bool ok = r.size() <= h.size();
      for (std::size_t i = 0; ok && i < r.size(); ++i) ok = r[i] < (1u << h[i]);
      if (!ok) continue;
      A.index[r] = A.basis.size();
      A.basis.push_back(r);
      A.deg.push_back(d);
    }
  MilnorViaAdem M;
  A.mul.assign(A.basis.size(), std::vector<std::vector<std::size_t>>(A.basis.size()));
  for (std::size_t i = 0; i < A.basis.size(); ++i)
    for (std::size_t j = 0; j < A.basis.size(); ++j) {
      if (A.deg[i] + A.deg[j] > A.top) continue;
      for (const auto& m : M.multiply(A.basis[i], A.basis[j])) A.mul[i][j].push_back(A.index.at(m));
    }
  return A;
}

// dims[s][t] of Ext_A(k, k): minimal generators of each stage counted as
// dim K_t - dim (A+ K)_t for the full kernel K of the previous map.
inline std::vector<std::vector<int>> ext_of_trivial(const SmallAlgebra& A, int s_max, int t_max) {
  struct Free {
    std::vector<int> gens;
    // basis of degree t: (gen, algebra index)
    std::vector<std::pair<std::size_t, std::size_t>> basis(int t, const SmallAlgebra& A) const {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (auto a : A.in_degree(t - gens[g])) out.emplace_back(g, a);
      return out;
    }
  };
  std::vector<std::vector<int>> dims(s_max + 1, std::vector<int>(t_max + 1, 0));
  // Stage 0: one generator in degree 0 mapping onto k.
  std::vector<Free> F(1);
  F[0].gens = {0};
  std::vector<std::vector<Row>> images(1, {Row{1}});  // d(g) in the previous stage, at degree |g|
  dims[0][0] = 1;
  // d on a basis element (g, a) of F[s] at degree t, landing in F[s-1] at degree t.
  auto apply = [&](int s, int t, std::pair<std::size_t, std::size_t> ga) {
    const auto [g, a] = ga;
    if (s == 0) {  // augmentation: only the unit survives
      return Row{static_cast<unsigned char>(t == 0 ? 1 : 0)};
    }
    auto src = F[s - 1].basis(F[s].gens[g], A);
    auto dst = F[s - 1].basis(t, A);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
    for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = k;
    Row out(dst.size(), 0);
    const Row& img = images[s][g];
    for (std::size_t k = 0; k < src.size(); ++k)
      if (img[k])
        for (auto p : A.mul[a][src[k].second]) out[pos.at({src[k].first, p})] ^= 1;
    return out;
  };
  for (int s = 1; s <= s_max; ++s) {
    F.emplace_back();
    images.emplace_back();
    std::vector<std::vector<Row>> kernel(t_max + 1);
    for (int t = 0; t <= t_max; ++t) {
      auto basis = F[s - 1].basis(t, A);
      std::vector<Row> imgs;
      std::size_t target = s - 1 == 0 ? 1 : F[s - 2].basis(t, A).size();
      for (auto& b : basis) {
        Row r = apply(s - 1, t, b);
        r.resize(target, 0);
        imgs.push_back(r);
      }
      // Stage 0 maps to k only in degree 0.
      if (s - 1 == 0 && t != 0)
        for (auto& r : imgs) std::fill(r.begin(), r.end(), 0);
      kernel[t] = null_space(imgs, target);
    }
    for (int t = 0; t <= t_max; ++t) {
      auto basis = F[s - 1].basis(t, A);
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
      for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k]] = k;
      Span dec;
      for (int u = 0; u < t; ++u) {
        auto ub = F[s - 1].basis(u, A);
        for (const auto& kv : kernel[u])
          for (auto a : A.in_degree(t - u)) {
            if (A.deg[a] == 0) continue;
            Row r(basis.size(), 0);
            for (std::size_t k = 0; k < ub.size(); ++k)
              if (kv[k])
                for (auto p : A.mul[a][ub[k].second]) r[pos.at({ub[k].first, p})] ^= 1;
            dec.add(r);
          }
      }
      for (const auto& kv : kernel[t])
        if (dec.add(kv)) {
          F[s].gens.push_back(t);
          images[s].push_back(kv);
          ++dims[s][t];
        }
    }
  }
  return dims;
}

// Ext over an exterior algebra on generators of the given degrees: polynomial on (1, d_i).
inline std::vector<std::vector<int>> exterior_ext(const std::vector<unsigned>& degrees, int s_max, int t_max) {
  std::vector<std::vector<int>> dims(s_max + 1, std::vector<int>(t_max + 1, 0));
  dims[0][0] = 1;
  for (unsigned d : degrees) {
    auto next = dims;
    for (int s = 0; s <= s_max; ++s)
      for (int t = 0; t <= t_max; ++t) {
        int v = 0;
        for (int k = 0; k <= s && static_cast<int>(k * d) <= t; ++k) v += dims[s - k][t - k * d];
        next[s][t] = v;
      }
    dims = next;
  }
  return dims;
}

}  // namespace oracle
