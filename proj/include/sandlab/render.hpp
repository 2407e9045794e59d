#pragma once

// Binary PPM (P6) images of chip configurations on embedded graphs. Pixel
// values depend only on integers, so output is byte-identical everywhere.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sandlab/aggregate.hpp"
#include "sandlab/graph.hpp"
#include "sandlab/sandpile.hpp"

namespace sandlab {

using Rgb = std::array<std::uint8_t, 3>;

namespace color {
inline constexpr Rgb orange{255, 165, 0};
inline constexpr Rgb red{255, 0, 0};
inline constexpr Rgb green{0, 200, 0};
inline constexpr Rgb blue{0, 0, 255};
inline constexpr Rgb white{255, 255, 255};
inline constexpr Rgb black{0, 0, 0};
}  // namespace color

/// grid4: 0 orange, 1 red, 2 green, 3 blue.
/// torus2: 0 white, 1 black, the sink red.
enum class Palette { Grid4, Torus2 };

inline Palette parse_palette(std::string_view name) {
  if (name == "grid4") return Palette::Grid4;
  if (name == "torus2") return Palette::Torus2;
  throw InvalidInput("unknown palette '" + std::string(name) + "' (expected grid4 or torus2)");
}

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(int w, int h, Rgb fill = color::white) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < rgb.size(); i += 3) std::copy(fill.begin(), fill.end(), rgb.begin() + i);
  }

  void fill_cell(int col, int row, int cell, Rgb c) {
    for (int dy = 0; dy < cell; ++dy)
      for (int dx = 0; dx < cell; ++dx) {
        auto i = (static_cast<std::size_t>(row * cell + dy) * width + col * cell + dx) * 3;
        std::copy(c.begin(), c.end(), rgb.begin() + i);
      }
  }
};

inline std::string to_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + ' ' + std::to_string(img.height) + "\n255\n";
  out.append(img.rgb.begin(), img.rgb.end());
  return out;
}

inline Rgb palette_color(Palette p, Count chips, bool sink) {
  if (p == Palette::Torus2) {
    if (sink) return color::red;
    if (chips == 0) return color::white;
    if (chips == 1) return color::black;
  } else {
    static constexpr std::array<Rgb, 4> grid{color::orange, color::red, color::green, color::blue};
    if (sink) return color::white;
    if (chips >= 0 && chips < 4) return grid[static_cast<std::size_t>(chips)];
  }
  throw InvalidInput("chip count " + std::to_string(chips) + " has no color in this palette");
}

/// One cell per embedded vertex; vertices without coordinates are skipped.
/// Larger y is drawn higher up.
inline Image render_config(const Digraph& g, const ChipConfig& c, Palette p, int cell = 1) {
  detail::require(cell >= 1, "cell size must be positive");
  detail::require(c.size() == g.vertex_count(), "configuration does not match the graph");
  detail::require(g.has_embedding(), "rendering needs vertex coordinates");
  std::int64_t xmin = INT64_MAX, xmax = INT64_MIN, ymin = INT64_MAX, ymax = INT64_MIN;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (auto q = g.coord(v)) {
      xmin = std::min(xmin, q->x), xmax = std::max(xmax, q->x);
      ymin = std::min(ymin, q->y), ymax = std::max(ymax, q->y);
    }
  const auto cols = static_cast<int>(xmax - xmin + 1), rows = static_cast<int>(ymax - ymin + 1);
  detail::require(static_cast<std::int64_t>(cols) * rows * cell * cell <= (1ll << 28), "image too large");
  Image img(cols * cell, rows * cell);
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (auto q = g.coord(v)) {
      bool sink = g.sink() && *g.sink() == v;
      img.fill_cell(static_cast<int>(q->x - xmin), static_cast<int>(ymax - q->y), cell, palette_color(p, c[v], sink));
    }
  return img;
}

/// Heights of fired sites in the grid4 palette; unfired sites white. The
/// image is cropped to the smallest square holding the fired set.
inline Image render_aggregate(const Aggregate& a, int cell = 1) {
  detail::require(cell >= 1, "cell size must be positive");
  std::int64_t r = std::max<std::int64_t>(a.fired_radius(), 0);
  const auto side = static_cast<int>(2 * r + 1);
  Image img(side * cell, side * cell);
  for (std::int64_t y = -r; y <= r; ++y)
    for (std::int64_t x = -r; x <= r; ++x)
      if (a.fired(x, y))
        img.fill_cell(static_cast<int>(x + r), static_cast<int>(r - y), cell, palette_color(Palette::Grid4, a.height(x, y), false));
  return img;
}

}  // namespace sandlab
