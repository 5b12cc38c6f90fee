#pragma once

// The mod 2 Steenrod algebra in the Milnor basis.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace steenrod::milnor {

inline constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();

struct Monomial {
  std::vector<unsigned> r;  // r[0] = r_1; no trailing zeros

  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exps);

  unsigned degree() const;
  bool is_unit() const { return r.empty(); }
  unsigned get(std::size_t i) const { return i < r.size() ? r[i] : 0; }  // 0-based
  void trim();

  bool operator==(const Monomial&) const = default;
};

// Graded, then lexicographically decreasing in (r_1, r_2, ...): Sq(3) before Sq(0,1).
bool basis_less(const Monomial& a, const Monomial& b);

class Element {
 public:
  Element() = default;
  Element(const Monomial& m);  // NOLINT
  static Element unit() { return Element(Monomial{}); }
  static Element from_terms(std::vector<Monomial> terms);  // duplicates cancel

  const std::vector<Monomial>& terms() const& { return terms_; }
  std::vector<Monomial> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const { return degree_; }
  bool contains(const Monomial& m) const;

  Element& operator+=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  bool operator==(const Element&) const = default;

 private:
  std::vector<Monomial> terms_;  // sorted by basis_less, unique
  unsigned degree_ = 0;
};

struct Profile {
  std::vector<unsigned> heights;  // h(1), h(2), ...; kInfinite allowed
  unsigned tail = kInfinite;      // h(i) for i beyond heights
  std::string label;

  static Profile full();
  static Profile A(unsigned n);
  static Profile E(unsigned n);  // exterior on Q_0..Q_n: h = (1,...,1,0)
  static Profile from_heights(std::vector<unsigned> h, std::string label = {});

  unsigned height(std::size_t i) const;  // 1-based
  bool admits(const Monomial& m) const;
  bool is_finite() const;
  std::optional<unsigned> top_degree() const;  // empty for infinite profiles
  std::string name() const;
};

Element product(const Monomial& a, const Monomial& b);
Element product(const Element& a, const Element& b);
inline Element operator*(const Element& a, const Element& b) { return product(a, b); }

using Tensor = std::vector<std::pair<Monomial, Monomial>>;
Tensor coproduct(const Monomial& m);
Tensor coproduct(const Element& a);  // pure tensors, F2 coefficients

Element antipode(const Monomial& m);
Element antipode(const Element& a);

std::vector<Monomial> basis_in_degree(const Profile& p, unsigned d);
std::size_t dimension(const Profile& p, unsigned d);

unsigned pd_degree(unsigned n);

struct PDWitness {
  unsigned n = 0;
  unsigned pd = 0;
  std::vector<std::size_t> dims;           // dim A(n)^k, k = 0..pd
  std::vector<std::size_t> pairing_ranks;  // rank of A^k x A^{pd-k} -> A^{pd}
  std::optional<unsigned> degenerate_at;

  bool ok() const { return !degenerate_at && !dims.empty() && dims.back() == 1; }
};

PDWitness poincare_duality_check(unsigned n);

Element verschiebung(const Element& a);

// Sq(1,2) + Sq(3); "0" for zero, "Sq(0)" or "1" for the unit.
std::string to_string(const Monomial& m);
std::string to_string(const Element& a);

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
Element parse(std::string_view text);

}  // namespace steenrod::milnor
