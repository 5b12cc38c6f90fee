#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "steenrod/cache.hpp"
#include "steenrod/charts.hpp"
#include "steenrod/checks.hpp"
#include "steenrod/cobar.hpp"
#include "steenrod/milnor.hpp"
#include "steenrod/spectral.hpp"

using namespace steenrod;

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 0;
  std::string cache_dir;
  bool no_cache = false;
};

std::optional<std::filesystem::path> cache_dir(const Options& o) {
  if (o.cache_dir.empty()) return std::nullopt;
  return std::filesystem::path(o.cache_dir);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + o.output);
  out << text;
}

// ---- specs ----

alg::AlgebraPtr parse_algebra(const std::string& text) {
  static const std::regex finite(R"(^\s*([AE])\((\d)\)\s*$)");
  static const std::regex doubled(R"(^\s*double(?:\^(\d))?\((.*)\)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, finite)) {
    unsigned n = static_cast<unsigned>(std::stoi(m[2]));
    if (n > 2) throw ConfigError("finite algebras are supported for n <= 2, got " + text);
    return m[1] == "A" ? alg::FiniteAlgebra::A(n) : alg::FiniteAlgebra::E(n);
  }
  if (std::regex_match(text, m, doubled)) {
    unsigned e = m[1].matched ? static_cast<unsigned>(std::stoi(m[1])) : 1;
    if (e == 0 || e > 3) throw ConfigError("doubling exponent must be 1..3");
    return alg::FiniteAlgebra::doubled(parse_algebra(m[2]), e);
  }
  throw ConfigError("unsupported algebra '" + text + "' (expected A(n), E(n) or double(...))");
}

modcat::Module parse_coefficients(const std::string& text, const alg::AlgebraPtr& A) {
  if (text == "k" || text == "F2") return modcat::Module::trivial(A);
  if (text == "free") return modcat::Module::regular(A);
  if (text.rfind("//", 0) == 0) return modcat::coset_module(alg::CosetBasis(A, parse_algebra(text.substr(2))));
  throw ConfigError("unsupported coefficients '" + text + "' (expected k, free or //B)");
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (auto* a : allowed)
    if (f == a) return;
  std::string list;
  for (auto* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError("format '" + f + "' is not available here (use " + list + ")");
}

// ---- mul ----

class ExprParser {
 public:
  explicit ExprParser(std::string text) : s_(std::move(text)) {}

  milnor::Element parse() {
    auto v = sum();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& why) const {
    throw milnor::ParseError("at position " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  milnor::Element sum() {
    auto v = product();
    skip();
    while (i_ < s_.size() && s_[i_] == '+') {
      ++i_;
      auto w = product();
      if (!v.is_zero() && !w.is_zero() && v.degree() != w.degree()) error("inhomogeneous sum");
      v += w;
      skip();
    }
    return v;
  }
  milnor::Element product() {
    auto v = factor();
    skip();
    while (i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      v = v * factor();
      skip();
    }
    return v;
  }
  milnor::Element factor() {
    skip();
    if (i_ >= s_.size()) error("expected a factor");
    if (s_[i_] == '(') {
      ++i_;
      auto v = sum();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') error("expected ')'");
      ++i_;
      return v;
    }
    const std::size_t start = i_;
    if (s_.compare(i_, 3, "Sq(") == 0) {
      auto close = s_.find(')', i_);
      if (close == std::string::npos) error("unterminated Sq(");
      i_ = close + 1;
    } else if (s_[i_] == '0' || s_[i_] == '1') {
      ++i_;
    } else {
      error("expected Sq(...), 0, 1 or '('");
    }
    try {
      return milnor::parse(s_.substr(start, i_ - start));
    } catch (const milnor::ParseError& e) {
      i_ = start;
      error(e.what());
    }
  }

  std::string s_;
  std::size_t i_ = 0;
};

int cmd_mul(const std::string& expr, bool dual_mode, int window) {
  if (dual_mode) {
    auto p = dual::parse(expr);
    if (window >= 0 && !p.value.is_zero() && static_cast<int>(p.value.degree()) > window)
      throw ConfigError("degree " + std::to_string(p.value.degree()) + " exceeds the window " + std::to_string(window));
    std::cout << dual::to_string(p.value, p.spec) << "\n";
    return 0;
  }
  auto v = ExprParser(expr).parse();
  if (window >= 0 && !v.is_zero() && static_cast<int>(v.degree()) > window)
    throw ConfigError("degree " + std::to_string(v.degree()) + " exceeds the window " + std::to_string(window));
  std::cout << milnor::to_string(v) << "\n";
  return 0;
}

// ---- charts ----

std::string text_grid(const io::Header& h, const io::Chart& c) {
  std::ostringstream o;
  o << "# " << io::tool_version() << "\n# command: " << h.command << "\n# tag: " << h.tag << "\n# seed: " << h.seed
    << "\n# window:";
  for (const auto& [k, v] : h.window) o << " " << k << "=" << v;
  o << "\n" << c.title << "\n";
  int xmax = 0;
  for (const auto& x : c.cells) xmax = std::max(xmax, x.t - x.s);
  for (int s = c.s_max; s >= 0; --s) {
    o << (s < 10 ? " " : "") << s << " |";
    for (int x = 0; x <= xmax; ++x) {
      std::size_t d = 0;
      for (const auto& cell : c.cells)
        if (cell.s == s && cell.t - cell.s == x) d = cell.dim;
      o << "  " << (d ? std::to_string(d) : ".");
    }
    o << "\n";
  }
  o << "    ";
  for (int x = 0; x <= xmax; ++x) o << (x < 10 ? "  " : " ") << x;
  o << "\n";
  return o.str();
}

std::string render(const Options& o, const io::Header& h, const io::Chart& c) {
  check_format(o.format, {"tsv", "json", "svg", "text"});
  if (o.format == "tsv") return io::to_tsv(h, c);
  if (o.format == "json") return io::to_json(h, c);
  if (o.format == "svg") return io::to_svg(h, c);
  return text_grid(h, c);
}

struct Bounds {
  int s_max = 6;
  int t_max = -1;
  int range = -1;
  void resolve() {
    if (s_max < 0) throw ConfigError("--smax must be nonnegative");
    if (range < -1 || t_max < -1) throw ConfigError("bounds must be nonnegative");
    if (t_max < 0) t_max = s_max + (range >= 0 ? range : 12);
  }
  void filter(io::Chart& c) const {
    if (range < 0) return;
    std::erase_if(c.cells, [&](const io::ChartCell& x) { return x.t - x.s > range; });
  }
  void add(io::Header& h) const {
    h.window.emplace_back("smax", std::to_string(s_max));
    h.window.emplace_back("tmax", std::to_string(t_max));
    if (range >= 0) h.window.emplace_back("range", std::to_string(range));
  }
  std::string flags() const {
    std::string f = " --smax " + std::to_string(s_max) + " --tmax " + std::to_string(t_max);
    if (range >= 0) f += " --range " + std::to_string(range);
    return f;
  }
};

int cmd_chart_ext(const Options& o, const std::string& algebra, const std::string& coeffs, Bounds b) {
  b.resolve();
  auto A = parse_algebra(algebra);
  auto M = parse_coefficients(coeffs, A);
  modcat::ResolutionWindow R;
  if (o.no_cache) {
    R = modcat::minimal_free_resolution(M, b.s_max, b.t_max);
  } else {
    auto L = cache::cached_resolution(M, b.s_max, b.t_max, cache_dir(o));
    R = std::move(L.resolution);
    std::cerr << (L.hit ? "cache hit " : "cache store ") << L.file.string() << "\n";
  }
  io::Header h;
  h.command = "chart ext --algebra " + A->name() + " --coeffs " + coeffs + b.flags();
  h.tag = "ext-minimal-resolution";
  h.seed = o.seed;
  h.window.emplace_back("algebra", A->name());
  h.window.emplace_back("coeffs", coeffs);
  b.add(h);
  auto c = io::chart_from_resolution("Ext_" + A->name() + "(" + coeffs + ", F2)", R, b.s_max, b.t_max);
  b.filter(c);
  emit(o, render(o, h, c));
  return 0;
}

int cmd_chart_cotor(const Options& o, const std::string& coalgebra, Bounds b) {
  b.resolve();
  auto spec = dual::parse_spec(coalgebra);
  auto T = cobar::cobar_cotor(spec, b.s_max, b.t_max);
  io::Header h;
  h.command = "chart cotor --coalgebra " + spec.name() + b.flags();
  h.tag = "cotor-ring-shape";
  h.seed = o.seed;
  h.window.emplace_back("coalgebra", spec.name());
  b.add(h);
  auto c = io::chart_from_cotor("Cotor_" + spec.name() + "(F2, F2)", T);
  b.filter(c);
  emit(o, render(o, h, c));
  return 0;
}

int cmd_chart_ss(const Options& o, const std::string& sub, const std::string& algebra, const std::string& page,
                 Bounds b) {
  b.resolve();
  auto A = parse_algebra(algebra);
  auto B = parse_algebra(sub);
  auto R = ss::ce_spectral_sequence(B, A, modcat::Module::trivial(A), b.s_max, b.t_max);
  int r = 0;
  if (page == "inf" || page == "infinity") {
    r = R.e_infinity().r;
  } else {
    try {
      r = std::stoi(page);
    } catch (const std::exception&) {
      throw ConfigError("--page must be a positive integer or 'inf'");
    }
    if (r < 1) throw ConfigError("--page must be at least 1");
    r = std::min(r, R.e_infinity().r);
  }
  const auto& P = R.page(r);
  io::Header h;
  h.command = "chart ss-page --sub " + B->name() + " --algebra " + A->name() + " --page " + std::to_string(r) + b.flags();
  h.tag = "ce-spectral-sequence";
  h.seed = o.seed;
  h.window.emplace_back("sub", B->name());
  h.window.emplace_back("algebra", A->name());
  h.window.emplace_back("page", std::to_string(r));
  b.add(h);
  check_format(o.format, {"tsv", "json", "svg", "text"});
  if (o.format == "tsv") {
    emit(o, io::to_tsv(h, P));
  } else if (o.format == "json") {
    emit(o, io::to_json(h, R, r));
  } else if (o.format == "svg") {
    emit(o, io::to_svg(h, P, b.s_max, b.t_max));
  } else {
    std::ostringstream s;
    s << io::to_tsv(h, P);
    for (const auto& d : io::differentials(P))
      s << "# d" << d.r << " (" << d.source[0] << "," << d.source[1] << "," << d.source[2] << ") -> (" << d.target[0]
        << "," << d.target[1] << "," << d.target[2] << ") rank " << d.rank << "\n";
    emit(o, s.str());
  }
  return 0;
}

// ---- verify ----

struct VerifyParams {
  std::string target;
  unsigned k = 1;
  int degree = -1;
  unsigned n = 1;
  std::string mutate = "none";
  int slack = 8;
  int window = 12;
  std::string spectrum = "H";
  std::string module = "k";
  std::string sub = "E(1)";
  std::string algebra = "A(1)";
  int s_max = 6, t_max = 14, range = 8;
};

struct Verdict {
  bool ok = true;
  std::vector<std::string> lines;
  std::optional<std::string> witness;
  std::string tag;
  std::vector<std::pair<std::string, std::string>> window;
};

std::string show(const Options& o, const VerifyParams& p, const Verdict& v) {
  io::Header h;
  h.command = "verify " + p.target;
  for (const auto& [k, val] : v.window) h.command += " --" + k + " " + val;
  h.tag = v.tag;
  h.seed = o.seed;
  h.window = v.window;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["tool"] = io::tool_version();
    j["command"] = h.command;
    j["tag"] = h.tag;
    j["seed"] = h.seed;
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    for (const auto& [k, val] : h.window) w[k] = val;
    j["window"] = w;
    j["lines"] = v.lines;
    j["verdict"] = v.ok ? "confirmed" : "falsified";
    if (v.witness) j["witness"] = *v.witness;
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "# " << io::tool_version() << "\n# command: " << h.command << "\n# tag: " << h.tag << "\n# seed: " << h.seed
    << "\n# window:";
  for (const auto& [k, val] : h.window) s << " " << k << "=" << val;
  s << "\n";
  for (const auto& l : v.lines) s << l << "\n";
  s << "verdict: " << (v.ok ? "confirmed" : "FALSIFIED");
  if (v.witness) s << " (witness: " << *v.witness << ")";
  s << "\n";
  return s.str();
}

modcat::Module finite_module(const std::string& which, const alg::AlgebraPtr& W, std::uint64_t seed) {
  if (which == "k") return modcat::Module::trivial(W);
  if (which == "A(0)") return modcat::Module::free(W, {0}).truncate(1);
  if (which == "random") return checks::random_finite_module(W, seed, 4, 8);
  throw ConfigError("unsupported module '" + which + "' (expected k, A(0) or random)");
}

Verdict verify_palg(const Options& o, const VerifyParams& p) {
  Verdict v;
  v.tag = "hom-into-free-vanishing";
  if (p.window < 1) throw ConfigError("--window must be positive");
  if (p.n < 1 || p.n > 2) throw ConfigError("--n must be 1 or 2");
  auto W = alg::FiniteAlgebra::steenrod_window(static_cast<unsigned>(p.window));
  auto M = finite_module(p.module, W, o.seed);
  modcat::VanishingOptions opt;
  if (p.mutate == "degenerate-pairing") opt.degenerate_degree = 3;
  else if (p.mutate != "none") throw ConfigError("palg-finite supports --mutate none or degenerate-pairing");
  v.window = {{"module", p.module}, {"n", std::to_string(p.n)}, {"window", std::to_string(p.window)},
              {"mutate", p.mutate}};
  auto c = modcat::hom_to_free_vanishing(M, p.n, static_cast<unsigned>(p.window), opt);
  v.lines.push_back("module dim " + std::to_string(M.dim()) + ", witness A(" + std::to_string(c.witness_n) + "), pd " +
                    std::to_string(c.pd) + ", shifts t >= " + std::to_string(-c.slack));
  for (auto [k, inj] : c.injective_degrees)
    v.lines.push_back("degree " + std::to_string(k) + ": v -> (Sq(2^i) v) injective: " + (inj ? "yes" : "no"));
  for (auto [k, z] : c.duality_degrees)
    v.lines.push_back("degree " + std::to_string(k) + ": duality witness z of degree " + std::to_string(z));
  bool direct_zero = true;
  for (auto [t, d] : c.direct) {
    v.lines.push_back("shift " + std::to_string(t) + ": dim Hom = " + std::to_string(d));
    direct_zero = direct_zero && d == 0;
  }
  if (!c.detail.empty()) v.lines.push_back(c.detail);
  v.ok = c.ok && direct_zero;
  if (!v.ok) v.witness = c.ok ? "nonzero Hom in the direct solve" : "certificate failed: " + c.detail;
  return v;
}

Verdict from_vanishing(const cobar::VanishingVerdict& r) {
  Verdict v;
  v.lines.push_back("source dim " + std::to_string(r.source_dim) + ", target dim " + std::to_string(r.target_dim) +
                    ", slack " + std::to_string(r.slack) + ", mutation " + cobar::to_string(r.mutation));
  for (const auto& row : r.rows)
    v.lines.push_back("shift " + std::to_string(row.shift) + ": source cap " + std::to_string(row.source_cap) +
                      ", unknowns " + std::to_string(row.unknowns) + ", equations " + std::to_string(row.equations) +
                      ", rank " + std::to_string(row.rank) + ", dim " + std::to_string(row.dim));
  v.ok = r.all_zero();
  v.witness = r.witness;
  return v;
}

Verdict verify_a1(const VerifyParams& p) {
  cobar::VerifyOptions opt;
  opt.mutation = cobar::parse_mutation(p.mutate);
  opt.slack = p.slack;
  const int D = p.degree < 0 ? 14 : p.degree;
  auto v = from_vanishing(cobar::verify_A1_to_cotor_vanishing(p.k, D, opt));
  v.tag = "a1-to-cotor-vanishing";
  v.window = {{"k", std::to_string(p.k)}, {"degree", std::to_string(D)}, {"slack", std::to_string(p.slack)},
              {"mutate", p.mutate}};
  return v;
}

Verdict verify_leqk(const VerifyParams& p) {
  cobar::VerifyOptions opt{.mutation = cobar::parse_mutation(p.mutate), .slack = p.slack, .k_max = 2, .D_max = 20};
  const int D = p.degree < 0 ? 12 : p.degree;
  auto v = from_vanishing(cobar::verify_A_leqk_vanishing(p.k, D, opt));
  v.tag = "a-to-leqk-vanishing";
  v.window = {{"k", std::to_string(p.k)}, {"degree", std::to_string(D)}, {"slack", std::to_string(p.slack)},
              {"mutate", p.mutate}};
  return v;
}

Verdict verify_ce(const VerifyParams& p) {
  Verdict v;
  v.tag = "ce-spectral-sequence";
  v.window = {{"sub", p.sub}, {"algebra", p.algebra}, {"smax", std::to_string(p.s_max)},
              {"tmax", std::to_string(p.t_max)}, {"range", std::to_string(p.range)}};
  if (p.s_max < 0 || p.t_max < 0 || p.range < 0) throw ConfigError("bounds must be nonnegative");
  auto A = parse_algebra(p.algebra);
  auto B = parse_algebra(p.sub);
  auto R = ss::ce_spectral_sequence(B, A, modcat::Module::trivial(A), p.s_max, p.t_max);
  auto cot = cobar::cobar_cotor(dual::parse_spec(A->name() + "*"), p.s_max, p.t_max);
  if (R.dd_failure) v.ok = false, v.witness = *R.dd_failure;
  for (int s = 0; s <= p.s_max; ++s)
    for (int t = s; t <= p.t_max && t - s <= p.range; ++t) {
      auto einf = R.e_infinity().total(s, t);
      auto ext = R.abutment.at(s, t);
      auto tot = R.total[s][t];
      auto c = cot.at(s, t);
      if (einf || ext || tot || c)
        v.lines.push_back("s " + std::to_string(s) + " t " + std::to_string(t) + ": E_inf " + std::to_string(einf) +
                          ", Ext " + std::to_string(ext) + ", H(Tot) " + std::to_string(tot) + ", Cotor " +
                          std::to_string(c));
      if ((einf != ext || ext != tot || ext != c) && v.ok) {
        v.ok = false;
        v.witness = "disagreement at (s, t) = (" + std::to_string(s) + ", " + std::to_string(t) + ")";
      }
    }
  std::size_t e2_bad = 0;
  for (const auto& c : R.page(2).cells) e2_bad += R.e2_two_stage.dim(c.p, c.q, c.t) != c.dim;
  for (const auto& c : R.e2_two_stage.cells) e2_bad += R.page(2).dim(c.p, c.q, c.t) != c.dim;
  v.lines.push_back("E2 against the two-stage composite: " + std::to_string(e2_bad) + " mismatched cells");
  if (e2_bad && v.ok) v.ok = false, v.witness = "E2 differs from the two-stage composite";
  for (const auto& P : R.pages) {
    std::size_t total = 0, rk = 0;
    for (const auto& c : P.cells) total += c.dim, rk += c.rank_out;
    v.lines.push_back("page " + std::to_string(P.r) + ": total dim " + std::to_string(total) + ", rank of d_" +
                      std::to_string(P.r) + " " + std::to_string(rk));
  }
  return v;
}

Verdict from_report(const checks::Report& r) {
  Verdict v;
  v.lines.push_back(r.name + ": " + std::to_string(r.checks) + " identities");
  for (const auto& l : r.lines) v.lines.push_back("  " + l);
  v.ok = r.ok;
  v.witness = r.witness;
  return v;
}

Verdict verify_hopf(const VerifyParams& p) {
  const int D = p.degree < 0 ? 24 : p.degree;
  if (D > 40) throw ConfigError("--degree is capped at 40");
  auto a = from_report(checks::hopf_axioms_milnor(static_cast<unsigned>(D)));
  auto b = from_report(checks::hopf_axioms_dual(static_cast<unsigned>(D)));
  Verdict v;
  v.tag = "hopf-axioms";
  v.window = {{"degree", std::to_string(D)}};
  v.lines = a.lines;
  v.lines.insert(v.lines.end(), b.lines.begin(), b.lines.end());
  v.ok = a.ok && b.ok;
  v.witness = a.witness ? a.witness : b.witness;
  return v;
}

Verdict verify_poincare(const VerifyParams& p) {
  if (p.n > 3) throw ConfigError("--n must be at most 3");
  auto w = milnor::poincare_duality_check(p.n);
  Verdict v;
  v.tag = "poincare-duality";
  v.window = {{"n", std::to_string(p.n)}};
  std::size_t total = 0;
  for (std::size_t k = 0; k < w.dims.size(); ++k) {
    total += w.dims[k];
    v.lines.push_back("degree " + std::to_string(k) + ": dim " + std::to_string(w.dims[k]) + ", pairing rank " +
                      (k < w.pairing_ranks.size() ? std::to_string(w.pairing_ranks[k]) : "-"));
  }
  v.lines.push_back("dim A(" + std::to_string(p.n) + ") = " + std::to_string(total));
  v.lines.push_back("pd=" + std::to_string(w.pd));
  v.ok = w.ok() && w.pd == milnor::pd_degree(p.n);
  if (!v.ok) v.witness = w.degenerate_at ? "pairing degenerate in degree " + std::to_string(*w.degenerate_at) : "top not 1-dim";
  return v;
}

Verdict verify_adams(const VerifyParams& p) {
  auto r = cobar::adams_e2_vanishing_report(p.spectrum, p.window);
  Verdict v;
  v.tag = "adams-e2-vanishing";
  v.window = {{"spectrum", p.spectrum}, {"window", std::to_string(p.window)}};
  v.lines.push_back("method: " + r.method);
  for (const auto& row : r.rows)
    v.lines.push_back(row.label + " s " + std::to_string(row.s) + " t " + std::to_string(row.t) + ": dim " +
                      std::to_string(row.dim));
  v.lines.push_back(r.detail);
  v.ok = r.all_zero();
  if (!v.ok)
    for (const auto& row : r.rows)
      if (row.dim) {
        v.witness = row.label + " at t = " + std::to_string(row.t);
        break;
      }
  return v;
}

int cmd_verify(const Options& o, const VerifyParams& p) {
  check_format(o.format, {"text", "json"});
  Verdict v;
  if (p.target == "palg-finite") v = verify_palg(o, p);
  else if (p.target == "a1-cotor") v = verify_a1(p);
  else if (p.target == "a-leqk") v = verify_leqk(p);
  else if (p.target == "ce-abutment") v = verify_ce(p);
  else if (p.target == "hopf-axioms") v = verify_hopf(p);
  else if (p.target == "poincare") v = verify_poincare(p);
  else if (p.target == "adams-e2") v = verify_adams(p);
  else throw ConfigError("unknown verify target " + p.target);
  emit(o, show(o, p, v));
  return v.ok ? 0 : 1;
}

// ---- cache ----

int cmd_cache(const Options& o, const std::string& action) {
  const auto dir = cache_dir(o);
  if (action == "path") {
    std::cout << cache::resolve_dir(dir).string() << "\n";
  } else if (action == "list") {
    for (const auto& e : cache::list(dir))
      std::cout << e.file.filename().string() << "\t" << (e.valid_header ? e.algebra : "?") << "\tsmax=" << e.s_max
                << "\ttmax=" << e.t_max << "\t" << e.bytes << " bytes" << (e.valid_header ? "" : "\tINVALID") << "\n";
  } else if (action == "clear") {
    std::cout << "removed " << cache::clear(dir) << " files\n";
  } else {
    throw ConfigError("unknown cache action " + action);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steenrod algebra, comodule and spectral sequence calculator"};
  app.set_version_flag("--version", io::tool_version());
  app.require_subcommand(1);
  Options opt;
  auto common = [&](CLI::App* c, const char* formats) {
    if (formats) c->add_option("--format", opt.format, formats);
    c->add_option("-o,--output", opt.output, "output file (default stdout)");
    c->add_option("--seed", opt.seed, "random seed, recorded in every output");
    c->add_option("--cache-dir", opt.cache_dir, "resolution cache directory");
  };

  auto* mul = app.add_subcommand("mul", "multiply Milnor basis elements or dual monomials");
  std::string expr;
  bool dual_mode = false;
  int mul_window = -1;
  mul->add_option("expr", expr, "expression, e.g. \"Sq(1)*Sq(2)\" or with --dual \"z1*z2\"")->required();
  mul->add_flag("--dual", dual_mode, "work in the dual A*");
  mul->add_option("--window", mul_window, "reject results above this degree");

  auto* chart = app.add_subcommand("chart", "write Ext, Cotor or spectral sequence charts");
  chart->require_subcommand(1);
  Bounds bounds;
  std::string algebra = "A(1)", coeffs = "k", coalgebra = "A*//A(1)*", sub = "E(1)", page = "2";
  auto bound_opts = [&](CLI::App* c) {
    c->add_option("--smax", bounds.s_max, "largest homological degree");
    c->add_option("--tmax", bounds.t_max, "largest internal degree");
    c->add_option("--range", bounds.range, "largest stem t - s");
    common(c, "tsv, json, svg or text");
  };
  auto* ext = chart->add_subcommand("ext", "Ext_A(M, F2) from a minimal resolution");
  ext->add_option("--algebra", algebra, "A(n), E(n) or double(...)");
  ext->add_option("--coeffs", coeffs, "k, free or //B");
  ext->add_flag("--no-cache", opt.no_cache, "do not read or write the resolution cache");
  bound_opts(ext);
  auto* cot = chart->add_subcommand("cotor", "Cotor_C(F2, F2) from the cobar complex");
  cot->add_option("--coalgebra", coalgebra, "quotient spec such as A*//A(1)* or A(1)*");
  bound_opts(cot);
  auto* ssp = chart->add_subcommand("ss-page", "a page of the Cartan-Eilenberg spectral sequence");
  ssp->add_option("--sub", sub, "normal subalgebra");
  ssp->add_option("--algebra", algebra, "ambient algebra");
  ssp->add_option("--page", page, "page number or inf");
  bound_opts(ssp);

  auto* verify = app.add_subcommand("verify", "check a vanishing or structural claim in a window");
  VerifyParams vp;
  verify->add_option("target", vp.target, "claim to check")
      ->required()
      ->check(CLI::IsMember({"palg-finite", "a1-cotor", "a-leqk", "ce-abutment", "hopf-axioms", "poincare", "adams-e2"}));
  verify->add_option("--k", vp.k, "cohomological degree k");
  verify->add_option("--degree", vp.degree, "degree bound D");
  verify->add_option("--n", vp.n, "A(n) index");
  verify->add_option("--mutate", vp.mutate, "negative control");
  verify->add_option("--slack", vp.slack, "extra source window");
  verify->add_option("--window", vp.window, "window degree");
  verify->add_option("--spectrum", vp.spectrum, "H, BP or A1*");
  verify->add_option("--module", vp.module, "k, A(0) or random");
  verify->add_option("--sub", vp.sub, "normal subalgebra");
  verify->add_option("--algebra", vp.algebra, "ambient algebra");
  verify->add_option("--smax", vp.s_max, "largest homological degree");
  verify->add_option("--tmax", vp.t_max, "largest internal degree");
  verify->add_option("--range", vp.range, "largest stem t - s");
  common(verify, "text or json");

  auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the resolution cache");
  std::string action;
  cache_cmd->add_option("action", action, "list, clear or path")->required()->check(CLI::IsMember({"list", "clear", "path"}));
  common(cache_cmd, nullptr);

  auto* version = app.add_subcommand("version", "print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*version) {
      std::cout << io::tool_version() << "\n";
      return 0;
    }
    if (*mul) return cmd_mul(expr, dual_mode, mul_window);
    if (*ext) return cmd_chart_ext(opt, algebra, coeffs, bounds);
    if (*cot) return cmd_chart_cotor(opt, coalgebra, bounds);
    if (*ssp) return cmd_chart_ss(opt, sub, algebra, page, bounds);
    if (*verify) return cmd_verify(opt, vp);
    if (*cache_cmd) return cmd_cache(opt, action);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
