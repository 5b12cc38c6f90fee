#include "steenrod/charts.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#ifndef STEENROD_VERSION
#define STEENROD_VERSION "0.0.0"
#endif

namespace steenrod::io {

std::string tool_version() { return std::string("steenrod ") + STEENROD_VERSION; }

namespace {

void sort_cells(std::vector<ChartCell>& cells) {
  std::sort(cells.begin(), cells.end(),
            [](const ChartCell& a, const ChartCell& b) { return std::make_pair(a.s, a.t) < std::make_pair(b.s, b.t); });
}

std::string tsv_header(const Header& h) {
  std::ostringstream o;
  o << "# " << tool_version() << "\n";
  o << "# command: " << h.command << "\n";
  o << "# tag: " << h.tag << "\n";
  o << "# seed: " << h.seed << "\n";
  o << "# window:";
  for (const auto& [k, v] : h.window) o << " " << k << "=" << v;
  o << "\n";
  return o.str();
}

nlohmann::ordered_json json_header(const Header& h) {
  nlohmann::ordered_json j;
  j["tool"] = tool_version();
  j["command"] = h.command;
  j["tag"] = h.tag;
  j["seed"] = h.seed;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& [k, v] : h.window) w[k] = v;
  j["window"] = w;
  return j;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr int kCell = 40;
constexpr int kMargin = 48;

struct Canvas {
  int xs, ys;  // number of columns and rows
  int width() const { return 2 * kMargin + xs * kCell; }
  int height() const { return 2 * kMargin + ys * kCell; }
  int px(int x) const { return kMargin + x * kCell + kCell / 2; }
  int py(int y) const { return height() - kMargin - y * kCell - kCell / 2; }
};

void svg_open(std::ostringstream& o, const Header& h, const Canvas& cv, const std::string& title) {
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width() << "\" height=\"" << cv.height()
    << "\" viewBox=\"0 0 " << cv.width() << " " << cv.height() << "\">\n";
  o << "<title>" << xml_escape(title) << "</title>\n";
  o << "<desc id=\"tool\">" << xml_escape(tool_version()) << "</desc>\n";
  o << "<desc id=\"command\">" << xml_escape(h.command) << "</desc>\n";
  o << "<desc id=\"tag\">" << xml_escape(h.tag) << "</desc>\n";
  o << "<desc id=\"seed\">" << h.seed << "</desc>\n";
  std::string w;
  for (const auto& [k, v] : h.window) w += (w.empty() ? "" : " ") + k + "=" + v;
  o << "<desc id=\"window\">" << xml_escape(w) << "</desc>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << cv.width() << "\" height=\"" << cv.height() << "\" fill=\"white\"/>\n";
  o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int x = 0; x <= cv.xs; ++x)
    o << "<line x1=\"" << kMargin + x * kCell << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin + x * kCell
      << "\" y2=\"" << cv.height() - kMargin << "\"/>\n";
  for (int y = 0; y <= cv.ys; ++y)
    o << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin + y * kCell << "\" x2=\"" << cv.width() - kMargin
      << "\" y2=\"" << kMargin + y * kCell << "\"/>\n";
  o << "</g>\n<g font-family=\"monospace\" font-size=\"11\" fill=\"black\" text-anchor=\"middle\">\n";
  for (int x = 0; x < cv.xs; ++x)
    o << "<text x=\"" << cv.px(x) << "\" y=\"" << cv.height() - kMargin + 16 << "\">" << x << "</text>\n";
  for (int y = 0; y < cv.ys; ++y)
    o << "<text x=\"" << kMargin - 14 << "\" y=\"" << cv.py(y) + 4 << "\">" << y << "</text>\n";
  o << "<text x=\"" << cv.width() / 2 << "\" y=\"" << cv.height() - 10 << "\">t - s</text>\n";
  o << "<text x=\"14\" y=\"" << cv.height() / 2 << "\">s</text>\n";
  o << "<text x=\"" << cv.width() / 2 << "\" y=\"20\">" << xml_escape(title) << "</text>\n</g>\n";
}

void svg_dots(std::ostringstream& o, const Canvas& cv, int x, int y, std::size_t n, const char* fill) {
  const int step = 7;
  const int start = -static_cast<int>((std::min<std::size_t>(n, 5) - 1) * step / 2);
  for (std::size_t i = 0; i < std::min<std::size_t>(n, 5); ++i)
    o << "<circle cx=\"" << cv.px(x) + start + static_cast<int>(i) * step << "\" cy=\"" << cv.py(y)
      << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
  if (n > 5)
    o << "<text x=\"" << cv.px(x) << "\" y=\"" << cv.py(y) - 8
      << "\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">" << n << "</text>\n";
}

}  // namespace

Chart chart_from_ext(const std::string& title, const modcat::ExtTable& E, int s_max, int t_max) {
  Chart c{title, s_max, t_max, {}};
  for (int s = 0; s <= s_max; ++s)
    for (int t = 0; t <= t_max; ++t)
      if (auto d = E.at(s, t)) c.cells.push_back({s, t, d, {}});
  sort_cells(c.cells);
  return c;
}

Chart chart_from_resolution(const std::string& title, const modcat::ResolutionWindow& R, int s_max, int t_max) {
  Chart c{title, s_max, t_max, {}};
  for (int s = 0; s <= std::min(s_max, R.s_max); ++s) {
    const auto& g = R.stages[s].generators();
    std::map<int, std::vector<std::string>> by_t;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] <= t_max) by_t[g[i]].push_back("g" + std::to_string(s) + "." + std::to_string(i));
    for (auto& [t, labels] : by_t) c.cells.push_back({s, t, labels.size(), std::move(labels)});
  }
  sort_cells(c.cells);
  return c;
}

Chart chart_from_cotor(const std::string& title, const cobar::CotorTable& T) {
  Chart c{title, T.s_max, T.t_max, {}};
  for (int s = 0; s <= T.s_max; ++s)
    for (int t = 0; t <= T.t_max; ++t)
      if (auto d = T.at(s, t)) c.cells.push_back({s, t, d, {}});
  sort_cells(c.cells);
  return c;
}

std::string to_tsv(const Header& h, const Chart& c) {
  std::ostringstream o;
  o << tsv_header(h);
  o << "s\tt\tdim\n";
  for (const auto& x : c.cells) o << x.s << "\t" << x.t << "\t" << x.dim << "\n";
  return o.str();
}

std::string to_json(const Header& h, const Chart& c) {
  auto j = json_header(h);
  j["title"] = c.title;
  j["s_max"] = c.s_max;
  j["t_max"] = c.t_max;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& x : c.cells) {
    nlohmann::ordered_json e;
    e["s"] = x.s;
    e["t"] = x.t;
    e["dim"] = x.dim;
    if (!x.labels.empty()) e["generators"] = x.labels;
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string to_svg(const Header& h, const Chart& c) {
  Canvas cv{std::max(1, c.t_max + 1), std::max(1, c.s_max + 1)};
  std::ostringstream o;
  svg_open(o, h, cv, c.title);
  o << "<g id=\"classes\">\n";
  for (const auto& x : c.cells)
    if (x.t - x.s >= 0 && x.t - x.s < cv.xs) svg_dots(o, cv, x.t - x.s, x.s, x.dim, "black");
  o << "</g>\n</svg>\n";
  return o.str();
}

std::vector<Differential> differentials(const ss::SSPage& P) {
  std::vector<Differential> out;
  for (const auto& c : P.cells) {
    if (!c.rank_out) continue;
    Differential d;
    d.r = P.r;
    d.source[0] = c.p;
    d.source[1] = c.q;
    d.source[2] = c.t;
    d.target[0] = c.p + P.r;
    d.target[1] = c.q - P.r + 1;
    d.target[2] = c.t;
    d.rank = c.rank_out;
    out.push_back(d);
  }
  return out;
}

std::string to_tsv(const Header& h, const ss::SSPage& P) {
  std::ostringstream o;
  o << tsv_header(h);
  o << "# page: " << P.r << "\n";
  o << "p\tq\tt\tdim\trank_d\n";
  auto cells = P.cells;
  std::sort(cells.begin(), cells.end(), [](const ss::SSCell& a, const ss::SSCell& b) {
    return std::make_tuple(a.p + a.q, a.t, a.p) < std::make_tuple(b.p + b.q, b.t, b.p);
  });
  for (const auto& c : cells) o << c.p << "\t" << c.q << "\t" << c.t << "\t" << c.dim << "\t" << c.rank_out << "\n";
  return o.str();
}

std::string to_json(const Header& h, const ss::CEResult& R, int r) {
  const auto& P = R.page(r);
  auto j = json_header(h);
  j["sub"] = R.sub;
  j["algebra"] = R.big;
  j["quotient"] = R.quotient;
  j["page"] = P.r;
  j["s_max"] = R.s_max;
  j["t_max"] = R.t_max;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : P.cells) {
    nlohmann::ordered_json e;
    e["p"] = c.p;
    e["q"] = c.q;
    e["t"] = c.t;
    e["dim"] = c.dim;
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  auto ds = nlohmann::ordered_json::array();
  for (const auto& d : differentials(P)) {
    nlohmann::ordered_json e;
    e["r"] = d.r;
    e["source"] = {d.source[0], d.source[1], d.source[2]};
    e["target"] = {d.target[0], d.target[1], d.target[2]};
    e["rank"] = d.rank;
    ds.push_back(std::move(e));
  }
  j["differentials"] = std::move(ds);
  auto ab = nlohmann::ordered_json::array();
  for (int s = 0; s <= R.s_max; ++s)
    for (int t = 0; t <= R.t_max; ++t)
      if (auto d = R.abutment.at(s, t)) ab.push_back({{"s", s}, {"t", t}, {"dim", d}, {"e_infinity", R.e_infinity().total(s, t)}});
  j["abutment"] = std::move(ab);
  return j.dump(2) + "\n";
}

std::string to_svg(const Header& h, const ss::SSPage& P, int s_max, int t_max) {
  Canvas cv{std::max(1, t_max + 1), std::max(1, s_max + 1)};
  std::ostringstream o;
  svg_open(o, h, cv, "E" + std::to_string(P.r));
  // one colour per filtration p
  static const char* palette[] = {"black", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::map<std::pair<int, int>, std::vector<const ss::SSCell*>> at;
  for (const auto& c : P.cells) at[{c.t - c.p - c.q, c.p + c.q}].push_back(&c);
  o << "<g id=\"classes\">\n";
  for (const auto& [xy, cs] : at) {
    auto [x, y] = xy;
    if (x < 0 || x >= cv.xs) continue;
    const int step = 7;
    std::size_t n = 0;
    for (auto* c : cs) n += c->dim;
    int k = -static_cast<int>((std::min<std::size_t>(n, 5) - 1) * step / 2);
    std::size_t drawn = 0;
    for (auto* c : cs)
      for (std::size_t i = 0; i < c->dim && drawn < 5; ++i, ++drawn, k += step)
        o << "<circle cx=\"" << cv.px(x) + k << "\" cy=\"" << cv.py(y) << "\" r=\"3\" fill=\"" << palette[c->p % 8]
          << "\"/>\n";
    if (n > 5)
      o << "<text x=\"" << cv.px(x) << "\" y=\"" << cv.py(y) - 8
        << "\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">" << n << "</text>\n";
  }
  o << "</g>\n<g id=\"differentials\" stroke=\"#d62728\" stroke-width=\"1.5\">\n";
  for (const auto& d : differentials(P)) {
    const int sx = d.source[2] - d.source[0] - d.source[1], sy = d.source[0] + d.source[1];
    if (sx < 0 || sx >= cv.xs || sy + 1 > s_max) continue;
    o << "<line x1=\"" << cv.px(sx) << "\" y1=\"" << cv.py(sy) << "\" x2=\"" << cv.px(sx - 1) << "\" y2=\""
      << cv.py(sy + 1) << "\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace steenrod::io
