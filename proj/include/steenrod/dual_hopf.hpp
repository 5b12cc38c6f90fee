#pragma once

// The dual Steenrod algebra A* = F2[z1, z2, ...] (z_n = chi(xi_n)), its
// subquotient Hopf algebras described by exponent bounds, the adjoint
// coaction and the coaction on the classes q_n.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steenrod/milnor.hpp"

namespace steenrod::dual {

inline constexpr unsigned kInfinite = milnor::kInfinite;

struct Monomial {
  std::vector<unsigned> e;  // e[0] = exponent of z1; no trailing zeros

  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exps);
  static Monomial generator(unsigned n, unsigned power = 1);

  unsigned degree() const;
  unsigned poly_degree() const;
  bool is_unit() const { return e.empty(); }
  unsigned get(std::size_t i) const { return i < e.size() ? e[i] : 0; }  // 0-based
  void trim();

  bool operator==(const Monomial&) const = default;
};

bool basis_less(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Monomial& m);  // NOLINT
  static Polynomial unit() { return Polynomial(Monomial{}); }
  static Polynomial from_terms(std::vector<Monomial> terms);  // duplicates cancel

  const std::vector<Monomial>& terms() const& { return terms_; }
  std::vector<Monomial> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const { return degree_; }
  bool contains(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<Monomial> terms_;
  unsigned degree_ = 0;
};

Polynomial product(const Polynomial& a, const Polynomial& b);
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return product(a, b); }
Polynomial power(const Polynomial& p, unsigned e);

// Subquotient of A*: the subalgebra F2[z_i^{2^low(i)}] (low = kInfinite drops
// z_i) modulo the ideal generated by z_i^{2^high(i)}.
struct QuotientSpec {
  enum class Kind { full, profile, quotient_by_P, frobenius, P, frobenius_quotient };

  Kind kind = Kind::full;
  std::vector<unsigned> low, high;  // indexed by generator i-1
  unsigned tail_low = 0, tail_high = kInfinite;
  unsigned n = 0, s = 0, t = 0;     // parameters for naming
  std::string label;

  static QuotientSpec full();
  static QuotientSpec A(unsigned n);                         // A(n)*
  static QuotientSpec E(unsigned n);                         // E(n)*
  static QuotientSpec profile(const milnor::Profile& p);     // dual of a profile subalgebra
  static QuotientSpec quotient_by_P(unsigned n);             // A*//P(n)*
  static QuotientSpec frobenius(unsigned s);                 // A^(s)*
  static QuotientSpec P(unsigned n, unsigned s = 0);         // P(n)^(s)*
  static QuotientSpec frobenius_quotient(unsigned s, unsigned t);  // A^(s)*//A^(t)*

  unsigned low_at(std::size_t i) const;   // 1-based generator index
  unsigned high_at(std::size_t i) const;
  bool admits(const Monomial& m) const;
  bool in_subalgebra(const Monomial& m) const;  // low conditions only
  bool killed(const Monomial& m) const;         // divisible by some z_i^{2^high}
  bool is_finite() const;
  std::string name() const;

  bool operator==(const QuotientSpec& o) const;  // same bounds, ignoring naming
};

struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
QuotientSpec parse_spec(std::string_view text);

// First generator (i, 2^k power) whose coproduct escapes I(x)S + S(x)I, within degree D.
std::optional<std::string> hopf_ideal_violation(const QuotientSpec& q, unsigned D);

Polynomial reduce(const Polynomial& p, const QuotientSpec& q);

using Tensor = std::vector<std::pair<Monomial, Monomial>>;  // F2 sum of pure tensors

Tensor normalize(Tensor t);
Tensor tensor_product(const Tensor& a, const Tensor& b, const QuotientSpec* q = nullptr);
Tensor tensor(const Polynomial& a, const Polynomial& b);
Tensor operator+(const Tensor& a, const Tensor& b);

struct NotAdmissible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
Tensor coproduct(const Monomial& m, const QuotientSpec& q = QuotientSpec::full());
Tensor coproduct(const Polynomial& p, const QuotientSpec& q = QuotientSpec::full());
Tensor reduce(const Tensor& t, const QuotientSpec& q);

Polynomial antipode(const Monomial& m);
Polynomial antipode(const Polynomial& p);

// xi_n^e written in the z basis; xi^E likewise.
Polynomial xi(unsigned n, unsigned e = 1);
Polynomial xi_monomial(const Monomial& E);
// Coefficients of p with respect to the xi-monomial basis.
Polynomial to_xi_basis(const Polynomial& p);

Monomial double_monomial(const Monomial& m, unsigned e);
Polynomial double_poly(const Polynomial& p, unsigned e);

std::vector<Monomial> sub_basis_in_degree(const QuotientSpec& q, unsigned d,
                                          std::optional<unsigned> max_poly_degree = std::nullopt);

// <Sq(R), z^E>
bool pairing(const milnor::Monomial& r, const Monomial& e);

// Left adjoint coaction, from the closed formula and from x -> sum x1 chi(x3) (x) x2.
Tensor adjoint_coaction(const Monomial& m);
Tensor adjoint_coaction(const Polynomial& p);
Tensor adjoint_coaction_composite(const Monomial& m);

struct QClass {
  unsigned n = 0;
  unsigned degree() const { return (2u << n) - 1; }
  bool operator==(const QClass&) const = default;
};

std::vector<std::pair<Polynomial, QClass>> coaction_on_q(unsigned n, const QuotientSpec& target);

std::string to_string(const Monomial& m, bool xi_names = false);
std::string to_string(const Polynomial& p, bool xi_basis = false);
std::string to_string(const Polynomial& p, const QuotientSpec& q, bool xi_basis = false);

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct Parsed {
  Polynomial value;
  QuotientSpec spec;
};
// z1^3*z2 + xi2^2@A^(1)*//A^(2)*
Parsed parse(std::string_view text);

}  // namespace steenrod::dual
