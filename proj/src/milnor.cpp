#include "steenrod/milnor.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "steenrod/f2linalg.hpp"

namespace steenrod::milnor {

Monomial::Monomial(std::vector<unsigned> exps) : r(std::move(exps)) { trim(); }

void Monomial::trim() {
  while (!r.empty() && r.back() == 0) r.pop_back();
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (std::size_t i = 0; i < r.size(); ++i) d += r[i] * ((1u << (i + 1)) - 1);
  return d;
}

bool basis_less(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  std::size_t n = std::max(a.r.size(), b.r.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto x = a.get(i), y = b.get(i);
    if (x != y) return x > y;
  }
  return false;
}

namespace {

void normalize(std::vector<Monomial>& terms) {
  std::sort(terms.begin(), terms.end(), basis_less);
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(std::move(terms[i]));
    i = j;
  }
  terms = std::move(out);
}

}  // namespace

Element::Element(const Monomial& m) : terms_{m}, degree_(m.degree()) {}

Element Element::from_terms(std::vector<Monomial> terms) {
  Element e;
  if (terms.empty()) return e;
  unsigned d = terms.front().degree();
  for (const auto& t : terms)
    if (t.degree() != d) throw std::invalid_argument("Element: terms of different degrees");
  normalize(terms);
  e.terms_ = std::move(terms);
  e.degree_ = e.terms_.empty() ? 0 : d;
  return e;
}

bool Element::contains(const Monomial& m) const {
  return std::binary_search(terms_.begin(), terms_.end(), m, basis_less);
}

Element& Element::operator+=(const Element& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (degree_ != o.degree_) throw std::invalid_argument("Element: sum of different degrees");
  std::vector<Monomial> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && basis_less(terms_[i], o.terms_[j]))) {
      merged.push_back(terms_[i++]);
    } else if (i == terms_.size() || basis_less(o.terms_[j], terms_[i])) {
      merged.push_back(o.terms_[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  if (terms_.empty()) degree_ = 0;
  return *this;
}

Profile Profile::full() { return Profile{{}, kInfinite, "A"}; }

Profile Profile::A(unsigned n) {
  Profile p;
  for (unsigned i = 1; i <= n + 1; ++i) p.heights.push_back(n + 2 - i);
  p.tail = 0;
  p.label = "A(" + std::to_string(n) + ")";
  return p;
}

Profile Profile::E(unsigned n) {
  Profile p;
  p.heights.assign(n + 1, 1);
  p.tail = 0;
  p.label = "E(" + std::to_string(n) + ")";
  return p;
}

Profile Profile::from_heights(std::vector<unsigned> h, std::string label) {
  return Profile{std::move(h), 0, std::move(label)};
}

unsigned Profile::height(std::size_t i) const { return i - 1 < heights.size() ? heights[i - 1] : tail; }

bool Profile::admits(const Monomial& m) const {
  for (std::size_t i = 0; i < m.r.size(); ++i) {
    unsigned h = height(i + 1);
    if (h == kInfinite) continue;
    if (h >= 32) continue;
    if (m.r[i] >= (1u << h)) return false;
  }
  return true;
}

bool Profile::is_finite() const {
  if (tail != 0) return false;
  return std::none_of(heights.begin(), heights.end(), [](unsigned h) { return h == kInfinite; });
}

std::optional<unsigned> Profile::top_degree() const {
  if (!is_finite()) return std::nullopt;
  unsigned d = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) d += ((1u << heights[i]) - 1) * ((1u << (i + 1)) - 1);
  return d;
}

std::string Profile::name() const {
  if (!label.empty()) return label;
  std::ostringstream os;
  os << "profile(";
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (i) os << ',';
    if (heights[i] == kInfinite) os << "inf";
    else os << heights[i];
  }
  os << ')';
  return os.str();
}

namespace {

bool disjoint_bits(const std::vector<unsigned>& xs) {
  unsigned seen = 0;
  for (unsigned x : xs) {
    if (seen & x) return false;
    seen |= x;
  }
  return true;
}

}  // namespace

// Milnor matrices: M[0][j] = s_j, M[i][0] = r_i, row i weighted by 2^j.
Element product(const Monomial& a, const Monomial& b) {
  const auto& r = a.r;
  const auto& s = b.r;
  if (r.empty()) return Element(b);
  if (s.empty()) return Element(a);
  const std::size_t rows = r.size() + 1, cols = s.size() + 1, diags = r.size() + s.size();
  std::vector<std::vector<long>> M(rows, std::vector<long>(cols, 0));
  for (std::size_t j = 1; j < cols; ++j) M[0][j] = s[j - 1];
  for (std::size_t i = 1; i < rows; ++i) M[i][0] = r[i - 1];

  std::vector<Monomial> out;
  std::vector<unsigned> diag_entries;
  bool found = true;
  while (found) {
    std::vector<unsigned> t(diags, 0);
    bool nonzero = true;
    for (std::size_t n = 1; n <= diags && nonzero; ++n) {
      diag_entries.clear();
      std::size_t lo = n + 1 > cols ? n + 1 - cols : 0;
      std::size_t hi = std::min(n + 1, rows);
      unsigned sum = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        diag_entries.push_back(static_cast<unsigned>(M[i][n - i]));
        sum += static_cast<unsigned>(M[i][n - i]);
      }
      nonzero = disjoint_bits(diag_entries);
      t[n - 1] = sum;
    }
    if (nonzero) out.emplace_back(std::move(t));

    found = false;
    for (std::size_t i = 1; !found && i < rows; ++i) {
      long total = M[i][0];
      for (std::size_t j = 1; !found && j < cols; ++j) {
        long p2 = 1L << j;
        if (total >= p2) {
          long above = 0;
          for (std::size_t k = 0; k < i; ++k) above += M[k][j];
          if (above != 0) {
            found = true;
            for (std::size_t row = 1; row < i; ++row) {
              M[row][0] = r[row - 1];
              for (std::size_t col = 1; col < cols; ++col) {
                M[0][col] += M[row][col];
                M[row][col] = 0;
              }
            }
            for (std::size_t col = 1; col < j; ++col) {
              M[0][col] += M[i][col];
              M[i][col] = 0;
            }
            M[0][j] -= 1;
            M[i][j] += 1;
            M[i][0] = total - p2;
          } else {
            total += M[i][j] * p2;
          }
        } else {
          total += M[i][j] * p2;
        }
      }
    }
  }
  return Element::from_terms(std::move(out));
}

Element product(const Element& a, const Element& b) {
  std::vector<Monomial> acc;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      auto p = product(x, y);
      acc.insert(acc.end(), p.terms().begin(), p.terms().end());
    }
  return Element::from_terms(std::move(acc));
}

namespace {

template <class F>
void for_each_split(const Monomial& m, F&& f) {
  const auto& r = m.r;
  std::vector<unsigned> a(r.size(), 0);
  while (true) {
    std::vector<unsigned> b(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) b[i] = r[i] - a[i];
    f(Monomial(a), Monomial(std::move(b)));
    std::size_t i = 0;
    while (i < r.size() && a[i] == r[i]) a[i++] = 0;
    if (i == r.size()) break;
    ++a[i];
  }
}

bool tensor_less(const std::pair<Monomial, Monomial>& x, const std::pair<Monomial, Monomial>& y) {
  if (basis_less(x.first, y.first)) return true;
  if (basis_less(y.first, x.first)) return false;
  return basis_less(x.second, y.second);
}

}  // namespace

Tensor coproduct(const Monomial& m) {
  Tensor out;
  for_each_split(m, [&](Monomial a, Monomial b) { out.emplace_back(std::move(a), std::move(b)); });
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return tensor_less(y, x); });
  return out;
}

Tensor coproduct(const Element& a) {
  Tensor all;
  for (const auto& m : a.terms()) {
    auto c = coproduct(m);
    all.insert(all.end(), c.begin(), c.end());
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return tensor_less(y, x); });
  Tensor out;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(all[i]);
    i = j;
  }
  return out;
}

namespace {

struct AntipodeCache {
  std::shared_mutex mutex;
  std::map<std::vector<unsigned>, Element> values;
};

AntipodeCache& antipode_cache() {
  static AntipodeCache cache;
  return cache;
}

}  // namespace

Element antipode(const Monomial& m) {
  if (m.is_unit()) return Element::unit();
  auto& cache = antipode_cache();
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.values.find(m.r);
    if (it != cache.values.end()) return it->second;
  }
  Element result;
  for_each_split(m, [&](const Monomial& a, const Monomial& b) {
    if (b.is_unit()) return;
    result += product(antipode(a), Element(b));
  });
  std::unique_lock lock(cache.mutex);
  cache.values.emplace(m.r, result);
  return result;
}

Element antipode(const Element& a) {
  Element out;
  for (const auto& m : a.terms()) out += antipode(m);
  return out;
}

namespace {

void enumerate(const Profile& p, unsigned remaining, std::size_t index, std::vector<unsigned>& r,
               std::vector<Monomial>& out) {
  if (index == 0) {
    if (remaining == 0) out.emplace_back(r);
    return;
  }
  unsigned w = (1u << index) - 1;
  unsigned h = p.height(index);
  unsigned bound = remaining / w;
  if (h != kInfinite && h < 32) bound = std::min(bound, (1u << h) - 1);
  for (unsigned e = 0; e <= bound; ++e) {
    r[index - 1] = e;
    enumerate(p, remaining - e * w, index - 1, r, out);
  }
  r[index - 1] = 0;
}

}  // namespace

std::vector<Monomial> basis_in_degree(const Profile& p, unsigned d) {
  std::size_t len = 0;
  while (((1u << (len + 1)) - 1) <= d) ++len;
  std::vector<unsigned> r(len, 0);
  std::vector<Monomial> out;
  enumerate(p, d, len, r, out);
  std::sort(out.begin(), out.end(), basis_less);
  return out;
}

std::size_t dimension(const Profile& p, unsigned d) { return basis_in_degree(p, d).size(); }

unsigned pd_degree(unsigned n) {
  auto p = Profile::A(n);
  unsigned top = *p.top_degree();
  while (top > 0 && basis_in_degree(p, top).empty()) --top;
  return top;
}

PDWitness poincare_duality_check(unsigned n) {
  PDWitness w;
  w.n = n;
  w.pd = pd_degree(n);
  auto p = Profile::A(n);
  std::vector<std::vector<Monomial>> bases(w.pd + 1);
  for (unsigned k = 0; k <= w.pd; ++k) {
    bases[k] = basis_in_degree(p, k);
    w.dims.push_back(bases[k].size());
  }
  if (w.dims.back() != 1) {
    w.degenerate_at = w.pd;
    return w;
  }
  const Monomial& top = bases[w.pd].front();
  for (unsigned k = 0; k <= w.pd; ++k) {
    const auto& left = bases[k];
    const auto& right = bases[w.pd - k];
    f2::BitMatrix pairing(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j)
        if (product(left[i], right[j]).contains(top)) pairing.set(i, j);
    auto rk = f2::rank(pairing);
    w.pairing_ranks.push_back(rk);
    if (!w.degenerate_at && (rk != left.size() || rk != right.size())) w.degenerate_at = k;
  }
  return w;
}

Element verschiebung(const Element& a) {
  std::vector<Monomial> out;
  for (const auto& m : a.terms()) {
    if (std::all_of(m.r.begin(), m.r.end(), [](unsigned x) { return x % 2 == 0; })) {
      std::vector<unsigned> half(m.r.size());
      for (std::size_t i = 0; i < m.r.size(); ++i) half[i] = m.r[i] / 2;
      out.emplace_back(std::move(half));
    }
  }
  return Element::from_terms(std::move(out));
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  os << "Sq(";
  if (m.r.empty()) os << '0';
  for (std::size_t i = 0; i < m.r.size(); ++i) {
    if (i) os << ',';
    os << m.r[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const Element& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& m : a.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(m);
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat(std::string_view w) {
    skip();
    if (s.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  unsigned number() {
    skip();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError("expected a number at offset " + std::to_string(pos));
    unsigned long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<unsigned>(s[pos++] - '0');
      if (v > 1u << 20) throw ParseError("exponent too large");
    }
    return static_cast<unsigned>(v);
  }
  bool done() {
    skip();
    return pos == s.size();
  }
};

}  // namespace

Element parse(std::string_view text) {
  Cursor c{text};
  if (c.eat('0') && c.done()) return Element{};
  c.pos = 0;
  std::vector<Monomial> terms;
  do {
    if (c.eat("Sq(")) {
      std::vector<unsigned> r;
      r.push_back(c.number());
      while (c.eat(',')) r.push_back(c.number());
      if (!c.eat(')')) throw ParseError("expected ')' at offset " + std::to_string(c.pos));
      terms.emplace_back(std::move(r));
    } else if (c.eat('1')) {
      terms.emplace_back();
    } else {
      throw ParseError("expected Sq(...) at offset " + std::to_string(c.pos));
    }
  } while (c.eat('+'));
  if (!c.done()) throw ParseError("trailing input at offset " + std::to_string(c.pos));
  try {
    return Element::from_terms(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace steenrod::milnor
