#pragma once

// Exhaustive checks on tiny coaction tables: every vector or every linear map
// is enumerated and tested term by term.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// table[x] = list of (coalgebra monomial exponents, y); degrees[x].
struct Table {
  std::vector<int> degrees;
  std::vector<std::vector<std::pair<std::vector<unsigned>, std::size_t>>> terms;
};

using TermSet = std::set<std::pair<std::vector<unsigned>, std::size_t>>;

inline void toggle(TermSet& s, const std::pair<std::vector<unsigned>, std::size_t>& t) {
  auto it = s.find(t);
  if (it == s.end()) s.insert(t);
  else s.erase(it);
}

inline TermSet coact(const Table& T, std::uint64_t mask, const std::vector<std::size_t>& basis) {
  TermSet s;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (mask >> k & 1)
      for (const auto& t : T.terms[basis[k]]) toggle(s, t);
  return s;
}

// Number of primitive vectors (including 0) in degree d.
inline std::uint64_t count_primitives(const Table& T, int d) {
  std::vector<std::size_t> basis;
  for (std::size_t x = 0; x < T.degrees.size(); ++x)
    if (T.degrees[x] == d) basis.push_back(x);
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    TermSet want;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (mask >> k & 1) want.insert({{}, basis[k]});
    if (coact(T, mask, basis) == want) ++count;
  }
  return count;
}

// Number of comodule maps M -> N with f(M_d) in N_{d-t}, by enumerating all
// degree-respecting linear maps. Only for tiny cases.
inline std::uint64_t count_maps(const Table& M, const Table& N, int t) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t x = 0; x < M.degrees.size(); ++x)
    for (std::size_t y = 0; y < N.degrees.size(); ++y)
      if (N.degrees[y] == M.degrees[x] - t) slots.emplace_back(x, y);
  if (slots.size() > 20) return 0;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    auto image = [&](std::size_t x) {
      std::vector<std::size_t> ys;
      for (std::size_t k = 0; k < slots.size(); ++k)
        if ((mask >> k & 1) && slots[k].first == x) ys.push_back(slots[k].second);
      return ys;
    };
    bool ok = true;
    for (std::size_t x = 0; x < M.degrees.size() && ok; ++x) {
      TermSet lhs, rhs;
      for (auto y : image(x))
        for (const auto& u : N.terms[y]) toggle(lhs, u);
      for (const auto& [c, xp] : M.terms[x])
        for (auto y : image(xp)) toggle(rhs, {c, y});
      ok = lhs == rhs;
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace oracle
