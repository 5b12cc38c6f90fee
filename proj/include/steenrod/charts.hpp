#pragma once

// Deterministic chart emitters: TSV (s, t, dim), JSON, and SVG dot charts with
// x = t - s, y = s. Every document starts with the same provenance header.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "steenrod/cobar.hpp"
#include "steenrod/module_cat.hpp"
#include "steenrod/spectral.hpp"

namespace steenrod::io {

std::string tool_version();

struct Header {
  std::string command;  // canonical form of the invocation
  std::string tag;      // which claim the output exercises
  std::vector<std::pair<std::string, std::string>> window;  // ordered parameters
  std::uint64_t seed = 0;
};

struct ChartCell {
  int s = 0, t = 0;
  std::size_t dim = 0;
  std::vector<std::string> labels;  // optional, one per basis element
};

struct Chart {
  std::string title;
  int s_max = 0, t_max = 0;
  std::vector<ChartCell> cells;  // nonzero, sorted by (s, t)
};

Chart chart_from_ext(const std::string& title, const modcat::ExtTable& E, int s_max, int t_max);
// Generator labels "g<s>.<i>" from a minimal resolution.
Chart chart_from_resolution(const std::string& title, const modcat::ResolutionWindow& R, int s_max, int t_max);
Chart chart_from_cotor(const std::string& title, const cobar::CotorTable& T);

std::string to_tsv(const Header& h, const Chart& c);
std::string to_json(const Header& h, const Chart& c);
std::string to_svg(const Header& h, const Chart& c);

// Spectral sequence pages: cells (p, q, t), d_r from (p, q, t) to (p + r, q - r + 1, t).
// Charts place a cell at x = t - (p + q), y = p + q.
struct Differential {
  int r = 0;
  int source[3] = {0, 0, 0};
  int target[3] = {0, 0, 0};
  std::size_t rank = 0;
};
std::vector<Differential> differentials(const ss::SSPage& P);

std::string to_tsv(const Header& h, const ss::SSPage& P);
std::string to_json(const Header& h, const ss::CEResult& R, int r);
std::string to_svg(const Header& h, const ss::SSPage& P, int s_max, int t_max);

}  // namespace steenrod::io
