#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "sl4branch/branching.hpp"
#include "sl4branch/decompose.hpp"

namespace sl4branch {

namespace render {

inline char mult_glyph(long long m) {
  if (m <= 0) return '.';
  if (m <= 9) return static_cast<char>('0' + m);
  if (m <= 35) return static_cast<char>('a' + (m - 10));
  return '+';
}

struct Bounds {
  long long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

inline Bounds table_bounds(const MultTable<Weight>& t) {
  Bounds b;
  for (const auto& [w, m] : t.entries()) {
    (void)m;
    b.xmin = std::min(b.xmin, w.x);
    b.xmax = std::max(b.xmax, w.x);
    b.ymin = std::min(b.ymin, w.y);
    b.ymax = std::max(b.ymax, w.y);
  }
  return b;
}

}  // namespace render

/// Plain-text lattice picture: columns x ascending, rows y descending,
/// one glyph per lattice point.  Byte-identical output for equal tables.
inline std::string ascii_grid(const MultTable<Weight>& t,
                              const std::string& note = "") {
  render::Bounds b = render::table_bounds(t);
  std::ostringstream os;
  os << "# x: " << b.xmin << ".." << b.xmax << " (left to right), y: " << b.ymin
     << ".." << b.ymax << " (top to bottom, descending)\n";
  os << "# multiplicity: '.' = 0, digits, then a..z = 10..35, '+' beyond\n";
  if (!note.empty()) os << "# " << note << "\n";
  for (long long y = b.ymax; y >= b.ymin; --y) {
    for (long long x = b.xmin; x <= b.xmax; ++x) {
      if (x > b.xmin) os << ' ';
      os << render::mult_glyph(t.at({x, y}));
    }
    os << "\n";
  }
  return os.str();
}

/// Weight projection of a U(2)-type table (all keys share one variant).
inline MultTable<Weight> hw_projection(const MultTable<U2Irrep>& t) {
  MultTable<Weight> out(t.region());
  for (const auto& [k, m] : t.entries()) out.add(k.hw, m);
  return out;
}

/// SVG twin of the ASCII grid: a dot per nonzero entry, label when the
/// multiplicity exceeds one, optional slope-one guide lines through given
/// base points.  Integer geometry only, so the output is reproducible.
inline std::string svg_grid(const MultTable<Weight>& t,
                            const std::vector<Weight>& ray_bases = {}) {
  render::Bounds b = render::table_bounds(t);
  const long long cell = 24, margin = 36;
  long long width = margin * 2 + (b.xmax - b.xmin) * cell;
  long long height = margin * 2 + (b.ymax - b.ymin) * cell;
  auto px = [&](long long x) { return margin + (x - b.xmin) * cell; };
  auto py = [&](long long y) { return margin + (b.ymax - y) * cell; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  if (b.xmin <= 0 && 0 <= b.xmax)
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(b.ymin) << "\" x2=\"" << px(0)
       << "\" y2=\"" << py(b.ymax) << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  if (b.ymin <= 0 && 0 <= b.ymax)
    os << "<line x1=\"" << px(b.xmin) << "\" y1=\"" << py(0) << "\" x2=\""
       << px(b.xmax) << "\" y2=\"" << py(0)
       << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  for (const Weight& base : ray_bases) {
    long long steps = std::min(b.xmax - base.x, b.ymax - base.y);
    if (steps < 0) continue;
    os << "<line x1=\"" << px(base.x) << "\" y1=\"" << py(base.y) << "\" x2=\""
       << px(base.x + steps) << "\" y2=\"" << py(base.y + steps)
       << "\" stroke=\"#55f\" stroke-width=\"1\"/>\n";
  }
  for (const auto& [w, m] : t.entries()) {
    os << "<circle cx=\"" << px(w.x) << "\" cy=\"" << py(w.y)
       << "\" r=\"4\" fill=\"black\"/>\n";
    if (m > 1)
      os << "<text x=\"" << px(w.x) + 6 << "\" y=\"" << py(w.y) - 6
         << "\" font-family=\"monospace\" font-size=\"12\">" << m << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

struct Figure {
  std::string name;
  std::string txt;
  std::string svg;
};

/// The nine lattice pictures the library can draw, at the given box size.
/// Pairs six/seven and eight/nine come from the two different sides of the
/// pseudo-dual grid and render identically exactly because the grid
/// statement holds.
inline std::vector<Figure> lattice_figures(long long max_norm) {
  if (max_norm < 6)
    throw std::invalid_argument("lattice_figures: box must be >= 6");
  std::vector<Figure> figs;
  auto add = [&figs](const std::string& name, const MultTable<Weight>& t,
                     const std::string& note = "",
                     const std::vector<Weight>& rays = {}) {
    figs.push_back({name, ascii_grid(t, note), svg_grid(t, rays)});
  };

  MultTable<Weight> aq_ktypes = ktypes(ModuleDescriptor::aq(0), max_norm);
  add("fig1", aq_ktypes, "K-types of aq:0, all multiplicity one");

  RestrictionResult res =
      restrict_module(ModuleDescriptor::aq(0), U2Variant::V1, max_norm);
  MultTable<Weight> restricted = hw_projection(res.table);
  add("fig2", restricted, "V1 types of aq:0; diagonal (n,n) carries n-2");

  add("fig3", hw_projection(h_summand_table(ModuleDescriptor::sp_summand(0), max_norm)),
      "V1 types of sp:0, multiplicity free");

  DecompositionCertificate sp_cert =
      decompose(res.table, PeelFamily::SpCones, max_norm);
  MultTable<Weight> sp_minimals(max_norm);
  for (const auto& [s, m] : sp_cert.summands) sp_minimals.add(s.minimal_type().hw, m);
  add("fig4", sp_minimals, "minimal V1 types of the sp summands of aq:0");

  DecompositionCertificate gl_cert =
      decompose(res.table, PeelFamily::GlRays, max_norm);
  std::vector<Weight> bases;
  for (const auto& [s, m] : gl_cert.summands) {
    (void)m;
    bases.push_back(s.ray_min);
  }
  add("fig5", restricted,
      "V1 types of aq:0; each even-sum key with x,y >= 3 heads a slope-one ray",
      bases);

  add("fig6",
      hw_projection(h_summand_table(
          ModuleDescriptor::gl_ray(U2Irrep(U2Variant::V1, {3, 3})), max_norm)),
      "V1 types of the minimal gl summand glray:3,3", {Weight{3, 3}});

  add("fig7", sp_minimals,
      "each V1 type of glray:3,3 heads one sp summand (matches fig6)");

  add("fig8", hw_projection(h_summand_table(ModuleDescriptor::sp_summand(0), max_norm)),
      "V1 types of the minimal sp summand sp:0 (matches fig3)");

  MultTable<Weight> gl_minimals(max_norm);
  for (const auto& [s, m] : gl_cert.summands) gl_minimals.add(s.minimal_type().hw, m);
  add("fig9", gl_minimals,
      "each V1 type of sp:0 heads one gl summand (matches fig8)");

  return figs;
}

}  // namespace sl4branch
