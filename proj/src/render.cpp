#include "gasketpile/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace gasketpile {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;
constexpr double kRadius = 0.3;  // disc radius in edge units

struct Canvas {
  int width = 0, height = 0;
  double margin = 0;
};

Canvas canvas_for(const GasketGraph& g, int scale) {
  const double side = static_cast<double>(g.side()) * scale;
  Canvas c;
  c.margin = std::ceil(scale * 0.5);
  c.width = static_cast<int>(side + 2 * c.margin) + 1;
  c.height = static_cast<int>(std::ceil(side * kSqrt3Half) + 2 * c.margin) + 1;
  return c;
}

// Pixel-space centre; y grows downward in image coordinates.
std::pair<double, double> centre(const GasketCoord& v, int scale, const Canvas& cv) {
  const double x = (static_cast<double>(v.a) + static_cast<double>(v.b) / 2) * scale + cv.margin;
  const double y = static_cast<double>(v.b) * kSqrt3Half * scale;
  return {x, cv.height - 1 - cv.margin - y};
}

std::string ppm(const GasketGraph& g, const Configuration& c, const RenderSpec& spec) {
  const Canvas cv = canvas_for(g, spec.scale);
  std::vector<Rgb> px(static_cast<std::size_t>(cv.width) * static_cast<std::size_t>(cv.height), spec.background);
  const double r = kRadius * spec.scale;
  for (Index v = 0; v < g.size(); ++v) {
    const auto [cx, cy] = centre(g.coord(v), spec.scale, cv);
    const Rgb& col = spec.color(c.chips(v));
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(cv.width - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(cv.height - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r) px[static_cast<std::size_t>(y) * cv.width + x] = col;
      }
  }
  std::string out = "P6\n" + std::to_string(cv.width) + " " + std::to_string(cv.height) + "\n255\n";
  out.reserve(out.size() + px.size() * 3);
  for (const Rgb& p : px) {
    out.push_back(static_cast<char>(p.r));
    out.push_back(static_cast<char>(p.g));
    out.push_back(static_cast<char>(p.b));
  }
  return out;
}

std::string svg(const GasketGraph& g, const Configuration& c, const RenderSpec& spec) {
  const Canvas cv = canvas_for(g, spec.scale);
  auto hex = [](const Rgb& p) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", p.r, p.g, p.b);
    return std::string(buf);
  };
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return std::string(buf);
  };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(cv.width) +
                    "\" height=\"" + std::to_string(cv.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"" + hex(spec.background) + "\"/>\n";
  const double r = kRadius * spec.scale;
  for (Index v = 0; v < g.size(); ++v) {
    const auto [cx, cy] = centre(g.coord(v), spec.scale, cv);
    out += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
           hex(spec.color(c.chips(v))) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

ImageFormat parse_image_format(const std::string& s) {
  if (s == "ppm") return ImageFormat::Ppm;
  if (s == "svg") return ImageFormat::Svg;
  throw std::invalid_argument("unknown image format '" + s + "' (expected ppm or svg)");
}

const Rgb& RenderSpec::color(std::int64_t chips) const {
  return palette[static_cast<std::size_t>(std::clamp<std::int64_t>(chips, 0, 4))];
}

std::string render(const GasketGraph& g, const Configuration& c, const RenderSpec& spec) {
  if (!c.belongs_to(g)) throw std::invalid_argument("configuration does not belong to the graph");
  if (spec.scale < 1) throw std::invalid_argument("scale must be positive");
  return spec.format == ImageFormat::Ppm ? ppm(g, c, spec) : svg(g, c, spec);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace gasketpile
