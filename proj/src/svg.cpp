#include "uf/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "uf/json_io.hpp"

namespace uf {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

struct Mapper {
  Vec2 lo, hi;
  double vscale = 1.0;
  static constexpr double kSize = 800.0;

  Vec2 map(const Vec2& p) const {
    return Vec2((p.x() - lo.x()) * vscale, kSize - (p.y() - lo.y()) * vscale);
  }
  double len(double d) const { return d * vscale; }
};

void path_from_loop(std::string& out, const Mapper& m, const std::vector<Vec2>& pts,
                    const std::string& style, bool close) {
  if (pts.empty()) return;
  out += "<path d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 q = m.map(pts[i]);
    out += (i == 0 ? "M" : "L");
    out += num(q.x()) + " " + num(q.y());
  }
  if (close) out += "Z";
  out += "\" " + style + "/>\n";
}

}  // namespace

std::string render_figure(const FigureSpec& fig) {
  if (fig.region == nullptr) throw std::invalid_argument("figure needs a region");
  Vec2 lo, hi;
  fig.region->bounds(lo, hi);
  if (fig.hull) {
    for (const Vec2& p : fig.hull->vertices()) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const Vec2 span = hi - lo;
  const double margin = 0.1 * std::max({span.x(), span.y(), 1e-9});
  Mapper m;
  m.lo = lo - Vec2(margin, margin);
  m.hi = hi + Vec2(margin, margin);
  const Vec2 full = m.hi - m.lo;
  m.vscale = Mapper::kSize / std::max(full.x(), full.y());

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

  const std::string fill_style =
      "fill=\"#c8dcf0\" stroke=\"#4878a8\" stroke-width=\"1.5\"";
  for (const Primitive& prim : fig.region->primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            if (p.size() >= 3) {
              path_from_loop(svg, m, p.vertices(), fill_style, true);
            } else if (p.size() == 2) {
              path_from_loop(svg, m, p.vertices(),
                             "fill=\"none\" stroke=\"#4878a8\" stroke-width=\"3\"", false);
            } else if (p.size() == 1) {
              const Vec2 q = m.map(p.vertices()[0]);
              svg += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
                     "\" r=\"3\" fill=\"#4878a8\"/>\n";
            }
          } else if constexpr (std::is_same_v<T, Disc>) {
            const Vec2 q = m.map(p.center);
            svg += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) + "\" r=\"" +
                   num(m.len(p.radius)) + "\" " + fill_style + "/>\n";
          } else if constexpr (std::is_same_v<T, Segment>) {
            path_from_loop(svg, m, {p.a, p.b},
                           "fill=\"none\" stroke=\"#4878a8\" stroke-width=\"3\"", false);
          } else {
            const Vec2 q = m.map(p.p);
            svg += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
                   "\" r=\"3\" fill=\"#4878a8\"/>\n";
          }
        },
        prim);
  }
  if (fig.hull && !fig.hull->empty()) {
    path_from_loop(svg, m, fig.hull->vertices(),
                   "fill=\"none\" stroke=\"#707070\" stroke-width=\"1.5\" "
                   "stroke-dasharray=\"8 5\"",
                   true);
  }
  if (fig.unfolded && !fig.unfolded->empty()) {
    if (fig.unfolded->size() >= 3) {
      path_from_loop(svg, m, fig.unfolded->vertices(),
                     "fill=\"#f0c0c0\" fill-opacity=\"0.55\" stroke=\"#b03030\" "
                     "stroke-width=\"3\"",
                     true);
    } else {
      for (const Vec2& p : fig.unfolded->vertices()) {
        const Vec2 q = m.map(p);
        svg += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
               "\" r=\"4\" fill=\"#b03030\"/>\n";
      }
      if (fig.unfolded->size() == 2) {
        path_from_loop(svg, m, fig.unfolded->vertices(),
                       "fill=\"none\" stroke=\"#b03030\" stroke-width=\"3\"", false);
      }
    }
  }
  if (fig.centroid) {
    const Vec2 q = m.map(*fig.centroid);
    svg += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
           "\" r=\"4\" fill=\"#202020\"/>\n";
  }
  if (fig.marker) {
    const Vec2 q = m.map(*fig.marker);
    svg += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
           "\" r=\"5\" fill=\"none\" stroke=\"#108010\" stroke-width=\"2.5\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_figure(const std::string& path, const FigureSpec& fig) {
  write_text_file(path, render_figure(fig));
}

}  // namespace uf
