#include "steenrod/dual_hopf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace steenrod::dual {

namespace {

unsigned weight(std::size_t i) { return (1u << i) - 1; }  // degree of z_i, 1-based

bool tensor_less(const std::pair<Monomial, Monomial>& x, const std::pair<Monomial, Monomial>& y) {
  if (basis_less(x.first, y.first)) return true;
  if (basis_less(y.first, x.first)) return false;
  return basis_less(x.second, y.second);
}

template <class T, class Less>
void cancel_pairs(std::vector<T>& v, Less less) {
  std::sort(v.begin(), v.end(), less);
  std::vector<T> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(std::move(v[i]));
    i = j;
  }
  v = std::move(out);
}

}  // namespace

Monomial::Monomial(std::vector<unsigned> exps) : e(std::move(exps)) { trim(); }

Monomial Monomial::generator(unsigned n, unsigned power) {
  if (n == 0 || power == 0) return Monomial{};
  std::vector<unsigned> e(n, 0);
  e[n - 1] = power;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * weight(i + 1);
  return d;
}

unsigned Monomial::poly_degree() const {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

bool basis_less(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  std::size_t n = std::max(a.e.size(), b.e.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto x = a.get(i), y = b.get(i);
    if (x != y) return x > y;
  }
  return false;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<unsigned> e(std::max(a.e.size(), b.e.size()), 0);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.get(i) + b.get(i);
  return Monomial(std::move(e));
}

Polynomial::Polynomial(const Monomial& m) : terms_{m}, degree_(m.degree()) {}

Polynomial Polynomial::from_terms(std::vector<Monomial> terms) {
  Polynomial p;
  if (terms.empty()) return p;
  unsigned d = terms.front().degree();
  for (const auto& t : terms)
    if (t.degree() != d) throw std::invalid_argument("Polynomial: terms of different degrees");
  cancel_pairs(terms, basis_less);
  p.terms_ = std::move(terms);
  p.degree_ = p.terms_.empty() ? 0 : d;
  return p;
}

bool Polynomial::contains(const Monomial& m) const {
  return std::binary_search(terms_.begin(), terms_.end(), m, basis_less);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (degree_ != o.degree_) throw std::invalid_argument("Polynomial: sum of different degrees");
  std::vector<Monomial> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  cancel_pairs(all, basis_less);
  terms_ = std::move(all);
  if (terms_.empty()) degree_ = 0;
  return *this;
}

Polynomial product(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) out.push_back(x * y);
  return Polynomial::from_terms(std::move(out));
}

Monomial double_monomial(const Monomial& m, unsigned e) {
  std::vector<unsigned> out(m.e);
  for (auto& x : out) x <<= e;
  return Monomial(std::move(out));
}

Polynomial double_poly(const Polynomial& p, unsigned e) {
  std::vector<Monomial> out;
  for (const auto& m : p.terms()) out.push_back(double_monomial(m, e));
  return Polynomial::from_terms(std::move(out));
}

Polynomial power(const Polynomial& p, unsigned e) {
  Polynomial result = Polynomial::unit();
  for (unsigned k = 0; e >> k; ++k)
    if (e >> k & 1) result = result * double_poly(p, k);
  return result;
}

// ---- quotient specs ----

QuotientSpec QuotientSpec::full() {
  QuotientSpec q;
  q.kind = Kind::full;
  return q;
}

QuotientSpec QuotientSpec::profile(const milnor::Profile& p) {
  QuotientSpec q;
  q.kind = Kind::profile;
  q.high = p.heights;
  q.tail_high = p.tail;
  q.label = p.name() + "*";
  return q;
}

QuotientSpec QuotientSpec::A(unsigned n) {
  auto q = profile(milnor::Profile::A(n));
  q.n = n;
  return q;
}

QuotientSpec QuotientSpec::E(unsigned n) {
  auto q = profile(milnor::Profile::E(n));
  q.n = n;
  return q;
}

QuotientSpec QuotientSpec::quotient_by_P(unsigned n) {
  QuotientSpec q;
  q.kind = Kind::quotient_by_P;
  q.n = n;
  q.high.assign(n, 0);
  return q;
}

QuotientSpec QuotientSpec::frobenius(unsigned s) {
  QuotientSpec q;
  q.kind = s == 0 ? Kind::full : Kind::frobenius;
  q.s = s;
  q.tail_low = s;
  return q;
}

QuotientSpec QuotientSpec::P(unsigned n, unsigned s) {
  QuotientSpec q;
  q.kind = Kind::P;
  q.n = n;
  q.s = s;
  q.low.assign(n, s);
  q.tail_low = kInfinite;
  return q;
}

QuotientSpec QuotientSpec::frobenius_quotient(unsigned s, unsigned t) {
  if (t <= s) throw SpecError("A^(s)*//A^(t)* needs s < t");
  QuotientSpec q;
  q.kind = Kind::frobenius_quotient;
  q.s = s;
  q.t = t;
  q.tail_low = s;
  q.tail_high = t;
  return q;
}

unsigned QuotientSpec::low_at(std::size_t i) const { return i - 1 < low.size() ? low[i - 1] : tail_low; }
unsigned QuotientSpec::high_at(std::size_t i) const { return i - 1 < high.size() ? high[i - 1] : tail_high; }

bool QuotientSpec::in_subalgebra(const Monomial& m) const {
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    unsigned lo = low_at(i + 1);
    if (lo == kInfinite) return false;
    if (lo >= 32 || (m.e[i] & ((1u << lo) - 1)) != 0) return false;
  }
  return true;
}

bool QuotientSpec::killed(const Monomial& m) const {
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    unsigned hi = high_at(i + 1);
    if (hi == kInfinite || hi >= 32) continue;
    if (m.e[i] >= (1u << hi)) return true;
  }
  return false;
}

bool QuotientSpec::admits(const Monomial& m) const { return in_subalgebra(m) && !killed(m); }

bool QuotientSpec::is_finite() const {
  auto bounded = [&](std::size_t i) { return low_at(i) == kInfinite || high_at(i) != kInfinite; };
  std::size_t n = std::max(low.size(), high.size());
  for (std::size_t i = 1; i <= n; ++i)
    if (!bounded(i)) return false;
  return tail_low == kInfinite || tail_high == 0 || (tail_high != kInfinite && tail_high <= tail_low);
}

bool QuotientSpec::operator==(const QuotientSpec& o) const {
  std::size_t n = std::max({low.size(), high.size(), o.low.size(), o.high.size()}) + 1;
  for (std::size_t i = 1; i <= n; ++i) {
    // z_i contributes nothing beyond exponent 0 when high <= low
    auto norm = [](unsigned lo, unsigned hi) {
      if (lo == kInfinite || (hi != kInfinite && hi <= lo)) return std::make_pair(kInfinite, kInfinite);
      return std::make_pair(lo, hi);
    };
    if (norm(low_at(i), high_at(i)) != norm(o.low_at(i), o.high_at(i))) return false;
  }
  auto tail = [](unsigned lo, unsigned hi) {
    if (lo == kInfinite || (hi != kInfinite && hi <= lo)) return std::make_pair(kInfinite, kInfinite);
    return std::make_pair(lo, hi);
  };
  return tail(tail_low, tail_high) == tail(o.tail_low, o.tail_high);
}

std::string QuotientSpec::name() const {
  if (!label.empty()) return label;
  auto num = [](unsigned x) { return std::to_string(x); };
  switch (kind) {
    case Kind::full:
      return "A*";
    case Kind::quotient_by_P:
      return "A*//P(" + num(n) + ")*";
    case Kind::frobenius:
      return "A^(" + num(s) + ")*";
    case Kind::P:
      return s == 0 ? "P(" + num(n) + ")*" : "P(" + num(n) + ")^(" + num(s) + ")*";
    case Kind::frobenius_quotient:
      return (s == 0 ? std::string("A*") : "A^(" + num(s) + ")*") + "//A^(" + num(t) + ")*";
    case Kind::profile:
      break;
  }
  std::ostringstream os;
  os << "profile(";
  for (std::size_t i = 0; i < high.size(); ++i) {
    if (i) os << ',';
    if (high[i] == kInfinite) os << "inf";
    else os << high[i];
  }
  os << ")*";
  return os.str();
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

bool parse_uint(const std::string& s, unsigned& out) {
  if (s.empty() || s.size() > 6) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = static_cast<unsigned>(std::stoul(s));
  return true;
}

// "A(k)*" or "A^(k)*" -> k
std::optional<unsigned> frobenius_index(const std::string& s) {
  std::string body;
  if (s.rfind("A^(", 0) == 0 && s.size() > 5 && s.substr(s.size() - 2) == ")*") body = s.substr(3, s.size() - 5);
  else if (s.rfind("A(", 0) == 0 && s.size() > 4 && s.substr(s.size() - 2) == ")*") body = s.substr(2, s.size() - 4);
  else return std::nullopt;
  unsigned k;
  if (!parse_uint(body, k)) return std::nullopt;
  return k;
}

std::optional<unsigned> wrapped_index(const std::string& s, const std::string& head, const std::string& tail) {
  if (s.size() <= head.size() + tail.size()) return std::nullopt;
  if (s.compare(0, head.size(), head) != 0) return std::nullopt;
  if (s.compare(s.size() - tail.size(), tail.size(), tail) != 0) return std::nullopt;
  unsigned k;
  if (!parse_uint(s.substr(head.size(), s.size() - head.size() - tail.size()), k)) return std::nullopt;
  return k;
}

}  // namespace

QuotientSpec parse_spec(std::string_view text) {
  std::string s = strip(text);
  if (s == "A*") return QuotientSpec::full();
  auto sep = s.find("//");
  if (sep != std::string::npos) {
    std::string left = s.substr(0, sep), right = s.substr(sep + 2);
    unsigned lo = 0;
    if (left != "A*") {
      auto k = frobenius_index(left);
      if (!k) throw SpecError("unrecognized coalgebra '" + left + "'");
      lo = *k;
    }
    if (auto n = wrapped_index(right, "P(", ")*")) {
      if (lo != 0) throw SpecError("only A*//P(n)* is supported");
      return QuotientSpec::quotient_by_P(*n);
    }
    if (auto t = frobenius_index(right)) {
      if (*t <= lo) throw SpecError("'" + s + "' needs the right-hand index to exceed the left");
      return QuotientSpec::frobenius_quotient(lo, *t);
    }
    throw SpecError("unrecognized quotient '" + right + "'");
  }
  if (auto n = wrapped_index(s, "A(", ")*")) return QuotientSpec::A(*n);
  if (auto n = wrapped_index(s, "E(", ")*")) return QuotientSpec::E(*n);
  if (auto k = wrapped_index(s, "A^(", ")*")) return QuotientSpec::frobenius(*k);
  if (auto n = wrapped_index(s, "P(", ")*")) return QuotientSpec::P(*n, 0);
  if (s.rfind("P(", 0) == 0) {
    auto close = s.find(")^(");
    if (close != std::string::npos) {
      unsigned n, k;
      if (parse_uint(s.substr(2, close - 2), n) && s.size() > close + 5 && s.substr(s.size() - 2) == ")*" &&
          parse_uint(s.substr(close + 3, s.size() - close - 5), k))
        return QuotientSpec::P(n, k);
    }
  }
  if (s.rfind("profile(", 0) == 0 && s.size() > 10 && s.substr(s.size() - 2) == ")*") {
    std::string body = s.substr(8, s.size() - 10);
    std::vector<unsigned> h;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      unsigned v;
      if (item == "inf") h.push_back(kInfinite);
      else if (parse_uint(item, v)) h.push_back(v);
      else throw SpecError("bad profile entry '" + item + "'");
    }
    auto q = QuotientSpec::profile(milnor::Profile::from_heights(h));
    q.label.clear();
    return q;
  }
  throw SpecError("unrecognized coalgebra '" + s + "'");
}

// ---- tensors and coproduct ----

Tensor normalize(Tensor t) {
  cancel_pairs(t, tensor_less);
  return t;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  Tensor all = a;
  all.insert(all.end(), b.begin(), b.end());
  return normalize(std::move(all));
}

Tensor tensor(const Polynomial& a, const Polynomial& b) {
  Tensor out;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) out.emplace_back(x, y);
  return normalize(std::move(out));
}

Tensor tensor_product(const Tensor& a, const Tensor& b, const QuotientSpec* q) {
  Tensor out;
  out.reserve(a.size() * b.size());
  for (const auto& [a1, a2] : a)
    for (const auto& [b1, b2] : b) {
      auto l = a1 * b1;
      auto r = a2 * b2;
      if (q && (q->killed(l) || q->killed(r))) continue;
      out.emplace_back(std::move(l), std::move(r));
    }
  return normalize(std::move(out));
}

Tensor reduce(const Tensor& t, const QuotientSpec& q) {
  Tensor out;
  for (const auto& [a, b] : t) {
    if (!q.in_subalgebra(a) || !q.in_subalgebra(b)) throw NotAdmissible("tensor term outside the subalgebra");
    if (!q.killed(a) && !q.killed(b)) out.emplace_back(a, b);
  }
  return out;
}

Polynomial reduce(const Polynomial& p, const QuotientSpec& q) {
  std::vector<Monomial> out;
  for (const auto& m : p.terms()) {
    if (!q.in_subalgebra(m)) throw NotAdmissible(to_string(m) + " is outside " + q.name());
    if (!q.killed(m)) out.push_back(m);
  }
  return Polynomial::from_terms(std::move(out));
}

namespace {

// psi(z_n)^{2^k} = sum_i z_i^{2^k} (x) z_{n-i}^{2^{i+k}}
Tensor generator_coproduct(unsigned n, unsigned k) {
  Tensor t;
  for (unsigned i = 0; i <= n; ++i)
    t.emplace_back(Monomial::generator(i, 1u << k), Monomial::generator(n - i, 1u << (i + k)));
  return normalize(std::move(t));
}

}  // namespace

Tensor coproduct(const Monomial& m, const QuotientSpec& q) {
  if (!q.admits(m)) throw NotAdmissible(to_string(m) + " is not admissible for " + q.name());
  Tensor acc{{Monomial{}, Monomial{}}};
  for (std::size_t i = 0; i < m.e.size(); ++i)
    for (unsigned k = 0; m.e[i] >> k; ++k)
      if (m.e[i] >> k & 1) acc = tensor_product(acc, generator_coproduct(static_cast<unsigned>(i + 1), k), &q);
  return reduce(acc, q);
}

Tensor coproduct(const Polynomial& p, const QuotientSpec& q) {
  Tensor all;
  for (const auto& m : p.terms()) {
    auto c = coproduct(m, q);
    all.insert(all.end(), c.begin(), c.end());
  }
  return normalize(std::move(all));
}

std::optional<std::string> hopf_ideal_violation(const QuotientSpec& q, unsigned D) {
  auto full = QuotientSpec::full();
  for (std::size_t i = 1; weight(i) <= D; ++i) {
    unsigned lo = q.low_at(i);
    if (lo != kInfinite && lo < 31 && (weight(i) << lo) <= D) {
      auto g = Monomial::generator(static_cast<unsigned>(i), 1u << lo);
      for (const auto& [a, b] : coproduct(g, full))
        if (!q.in_subalgebra(a) || !q.in_subalgebra(b))
          return "coproduct of " + to_string(g) + " leaves the subalgebra";
    }
    unsigned hi = q.high_at(i);
    if (lo == kInfinite || hi == kInfinite || hi >= 31) continue;
    unsigned p = std::max(hi, lo);
    if ((weight(i) << p) > D) continue;
    auto g = Monomial::generator(static_cast<unsigned>(i), 1u << p);
    for (const auto& [a, b] : coproduct(g, full))
      if (!q.killed(a) && !q.killed(b))
        return "coproduct of " + to_string(g) + " has term " + to_string(a) + " (x) " + to_string(b) +
               " outside the ideal";
  }
  return std::nullopt;
}

// ---- antipode ----

namespace {

struct ChiCache {
  std::shared_mutex mutex;
  std::vector<Polynomial> generators{Polynomial::unit()};
  std::map<std::vector<unsigned>, Polynomial> monomials;
};

ChiCache& chi_cache() {
  static ChiCache c;
  return c;
}

Polynomial chi_generator(unsigned n) {
  auto& c = chi_cache();
  {
    std::shared_lock lock(c.mutex);
    if (n < c.generators.size()) return c.generators[n];
  }
  // chi(z_n) = sum_{i=1..n} z_i chi(z_{n-i})^{2^i}
  Polynomial result;
  for (unsigned i = 1; i <= n; ++i)
    result += Polynomial(Monomial::generator(i)) * double_poly(chi_generator(n - i), i);
  std::unique_lock lock(c.mutex);
  if (c.generators.size() == n) c.generators.push_back(result);
  return result;
}

}  // namespace

Polynomial antipode(const Monomial& m) {
  if (m.is_unit()) return Polynomial::unit();
  auto& c = chi_cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.monomials.find(m.e);
    if (it != c.monomials.end()) return it->second;
  }
  Polynomial result = Polynomial::unit();
  for (std::size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i]) result = result * power(chi_generator(static_cast<unsigned>(i + 1)), m.e[i]);
  std::unique_lock lock(c.mutex);
  c.monomials.emplace(m.e, result);
  return result;
}

Polynomial antipode(const Polynomial& p) {
  Polynomial out;
  for (const auto& m : p.terms()) out += antipode(m);
  return out;
}

Polynomial xi(unsigned n, unsigned e) { return power(chi_generator(n), e); }
Polynomial xi_monomial(const Monomial& E) { return antipode(E); }
Polynomial to_xi_basis(const Polynomial& p) { return antipode(p); }

bool pairing(const milnor::Monomial& r, const Monomial& e) {
  if (r.degree() != e.degree()) return false;
  return antipode(e).contains(Monomial(r.r));
}

// ---- bases ----

namespace {

void enumerate(const QuotientSpec& q, unsigned remaining, std::size_t index, std::vector<unsigned>& e,
               std::optional<unsigned> budget, std::vector<Monomial>& out) {
  if (index == 0) {
    if (remaining == 0) out.emplace_back(e);
    return;
  }
  unsigned w = weight(index);
  unsigned lo = q.low_at(index), hi = q.high_at(index);
  unsigned step = 1, bound = remaining / w;
  if (lo == kInfinite) bound = 0;
  else if (lo < 31) step = 1u << lo;
  else bound = 0;
  if (hi != kInfinite && hi < 31) bound = std::min(bound, (1u << hi) - 1);
  if (budget) bound = std::min(bound, *budget);
  for (unsigned x = 0; x <= bound; x += step) {
    e[index - 1] = x;
    std::optional<unsigned> rest = budget ? std::optional<unsigned>(*budget - x) : std::nullopt;
    enumerate(q, remaining - x * w, index - 1, e, rest, out);
  }
  e[index - 1] = 0;
}

}  // namespace

std::vector<Monomial> sub_basis_in_degree(const QuotientSpec& q, unsigned d, std::optional<unsigned> max_poly_degree) {
  std::size_t len = 0;
  while (weight(len + 1) <= d) ++len;
  std::vector<unsigned> e(len, 0);
  std::vector<Monomial> out;
  enumerate(q, d, len, e, max_poly_degree, out);
  std::sort(out.begin(), out.end(), basis_less);
  return out;
}

// ---- adjoint coaction ----

Tensor adjoint_coaction(const Monomial& m) {
  Tensor acc{{Monomial{}, Monomial{}}};
  for (std::size_t idx = 0; idx < m.e.size(); ++idx) {
    unsigned n = static_cast<unsigned>(idx + 1);
    for (unsigned k = 0; m.e[idx] >> k; ++k) {
      if (!(m.e[idx] >> k & 1)) continue;
      // mu(z_n) = sum_{i+j<=n} z_i xi_{n-i-j}^{2^{i+j}} (x) z_j^{2^i}, raised to 2^k
      Tensor factor;
      for (unsigned i = 0; i <= n; ++i)
        for (unsigned j = 0; i + j <= n; ++j) {
          auto left = Polynomial(Monomial::generator(i)) * double_poly(xi(n - i - j), i + j);
          auto t = tensor(double_poly(left, k), Polynomial(Monomial::generator(j, 1u << (i + k))));
          factor.insert(factor.end(), t.begin(), t.end());
        }
      acc = tensor_product(acc, normalize(std::move(factor)));
    }
  }
  return acc;
}

Tensor adjoint_coaction(const Polynomial& p) {
  Tensor all;
  for (const auto& m : p.terms()) {
    auto t = adjoint_coaction(m);
    all.insert(all.end(), t.begin(), t.end());
  }
  return normalize(std::move(all));
}

Tensor adjoint_coaction_composite(const Monomial& m) {
  Tensor out;
  for (const auto& [a, b] : coproduct(m))
    for (const auto& [b1, b2] : coproduct(b)) {
      auto t = tensor(Polynomial(a) * antipode(b2), Polynomial(b1));
      out.insert(out.end(), t.begin(), t.end());
    }
  return normalize(std::move(out));
}

std::vector<std::pair<Polynomial, QClass>> coaction_on_q(unsigned n, const QuotientSpec& target) {
  if (!(target == QuotientSpec::frobenius(1) || target == QuotientSpec::frobenius_quotient(1, 3) ||
        target == QuotientSpec::frobenius_quotient(1, 2)))
    throw SpecError("coaction on q_n is defined over A^(1)*, A^(1)*//A^(3)* or A^(1)*//A^(2)*, not " +
                    target.name());
  std::vector<std::pair<Polynomial, QClass>> out;
  for (unsigned j = 0; j <= n; ++j) {
    auto left = reduce(double_poly(xi(n - j), j + 1), target);
    if (!left.is_zero()) out.emplace_back(std::move(left), QClass{j});
  }
  return out;
}

// ---- text ----

std::string to_string(const Monomial& m, bool xi_names) {
  if (m.is_unit()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (!m.e[i]) continue;
    if (!out.empty()) out += '*';
    out += (xi_names ? "xi" : "z") + std::to_string(i + 1);
    if (m.e[i] != 1) out += "^" + std::to_string(m.e[i]);
  }
  return out;
}

std::string to_string(const Polynomial& p, bool xi_basis) {
  const Polynomial& shown = xi_basis ? to_xi_basis(p) : p;
  if (shown.is_zero()) return "0";
  std::string out;
  for (const auto& m : shown.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(m, xi_basis);
  }
  return out;
}

std::string to_string(const Polynomial& p, const QuotientSpec& q, bool xi_basis) {
  auto body = to_string(p, xi_basis);
  if (q == QuotientSpec::full()) return body;
  return body + "@" + q.name();
}

namespace {

struct Reader {
  std::string_view s;
  std::size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(std::string_view w) {
    skip();
    return s.substr(pos, w.size()) == w;
  }
  bool eat(std::string_view w) {
    if (!peek(w)) return false;
    pos += w.size();
    return true;
  }
  unsigned number() {
    skip();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError("expected a number at offset " + std::to_string(pos));
    unsigned long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<unsigned>(s[pos++] - '0');
      if (v > 4096) throw ParseError("exponent or index too large at offset " + std::to_string(pos));
    }
    return static_cast<unsigned>(v);
  }
};

Polynomial factor(Reader& r) {
  bool is_xi = false;
  if (r.eat("xi")) is_xi = true;
  else if (r.eat("z")) is_xi = false;
  else if (r.eat("1")) return Polynomial::unit();
  else throw ParseError("expected z<n>, xi<n> or 1 at offset " + std::to_string(r.pos));
  unsigned n = r.number();
  if (n == 0 || n > 20) throw ParseError("generator index out of range at offset " + std::to_string(r.pos));
  unsigned e = 1;
  if (r.eat("^")) e = r.number();
  return is_xi ? xi(n, e) : Polynomial(Monomial::generator(n, e));
}

}  // namespace

Parsed parse(std::string_view text) {
  auto at = text.find('@');
  Parsed out{Polynomial{}, QuotientSpec::full()};
  std::string_view body = text.substr(0, at);
  if (at != std::string_view::npos) {
    try {
      out.spec = parse_spec(text.substr(at + 1));
    } catch (const SpecError& e) {
      throw ParseError(e.what());
    }
  }
  Reader r{body};
  r.skip();
  if (r.eat("0")) {
    r.skip();
    if (r.pos != body.size()) throw ParseError("trailing input at offset " + std::to_string(r.pos));
    return out;
  }
  Polynomial total;
  do {
    Polynomial term = factor(r);
    while (r.eat("*")) term = term * factor(r);
    try {
      total += term;
    } catch (const std::invalid_argument&) {
      throw ParseError("terms of different degrees");
    }
  } while (r.eat("+"));
  r.skip();
  if (r.pos != body.size()) throw ParseError("trailing input at offset " + std::to_string(r.pos));
  try {
    out.value = reduce(total, out.spec);
  } catch (const NotAdmissible& e) {
    throw ParseError(e.what());
  }
  return out;
}

}  // namespace steenrod::dual
