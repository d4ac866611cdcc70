#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rootdyn/error.hpp"
#include "rootdyn/extended_complex.hpp"
#include "rootdyn/operators.hpp"
#include "rootdyn/orbit.hpp"
#include "rootdyn/parallel.hpp"

namespace rootdyn {

struct Window {
  double x_min = -3.2;
  double x_max = 3.2;
  double y_min = -3.2;
  double y_max = 3.2;

  void validate() const {
    if (!(x_min < x_max && y_min < y_max)) {
      throw DynamicsError(ErrorKind::invalid_parameter, "window needs x_min < x_max and y_min < y_max");
    }
  }
  friend bool operator==(const Window&, const Window&) = default;
};

struct GridSpec {
  int width = 1501;
  int height = 1501;

  void validate() const {
    if (width < 2 || height < 2) throw DynamicsError(ErrorKind::invalid_parameter, "grid needs width, height >= 2");
  }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Compact per-pixel classification.
struct GridCell {
  Outcome outcome = Outcome::undecided;
  bool degenerate = false;
  std::uint16_t attractor = 0xffff;  // attractor index for to_strange, else 0xffff
  std::uint32_t iterations = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

enum class PlaneMode : std::uint8_t { parameter = 0, dynamical = 1 };

struct PlaneGrid {
  Window window;
  GridSpec spec;
  PlaneMode mode = PlaneMode::parameter;
  int max_iter = 100;
  std::vector<GridCell> cells;  // row-major, row 0 at y_max

  const GridCell& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.width) + static_cast<std::size_t>(i)];
  }
  friend bool operator==(const PlaneGrid&, const PlaneGrid&) = default;
};

/// Center of pixel (i, j), with j counted downward from the top row.
/// Offsets are taken from the window midpoint so mirrored pixels of a
/// symmetric window get exactly opposite coordinates.
inline Complex pixel_center(const Window& w, const GridSpec& g, int i, int j) {
  const double dx = (w.x_max - w.x_min) / g.width;
  const double dy = (w.y_max - w.y_min) / g.height;
  const double x_mid = 0.5 * (w.x_min + w.x_max);
  const double y_mid = 0.5 * (w.y_min + w.y_max);
  const double x = x_mid + (i - 0.5 * (g.width - 1)) * dx;
  const double y = y_mid - (j - 0.5 * (g.height - 1)) * dy;
  return {x, y};
}

struct BehlFamily {};
struct GeneralFamily {
  int n = 4;
  int k = 1;
};
using Family = std::variant<BehlFamily, GeneralFamily>;

namespace detail {

inline GridCell to_cell(const OrbitClassification& c) {
  GridCell cell;
  cell.outcome = c.outcome;
  cell.degenerate = c.degenerate;
  if (c.outcome == Outcome::to_strange && c.attractor_id >= 0) cell.attractor = static_cast<std::uint16_t>(c.attractor_id);
  cell.iterations = static_cast<std::uint32_t>(c.iterations);
  return cell;
}

template <class Classify>
PlaneGrid render_rows(const Window& window, const GridSpec& spec, PlaneMode mode, int max_iter, int threads,
                      Classify&& classify) {
  window.validate();
  spec.validate();
  PlaneGrid grid{window, spec, mode, max_iter, {}};
  grid.cells.resize(static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height));
  parallel_for(spec.height, threads, [&](int j) {
    for (int i = 0; i < spec.width; ++i) {
      grid.cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.width) + static_cast<std::size_t>(i)] =
          to_cell(classify(pixel_center(window, spec, i, j)));
    }
  });
  return grid;
}

}  // namespace detail

/// Each pixel center is a parameter; the cell records the orbit of c+.
inline PlaneGrid render_parameter_plane(const Family& family, const Window& window, const GridSpec& spec,
                                        const EscapeConfig& cfg = {}, int threads = 1) {
  cfg.validate();
  if (const auto* g = std::get_if<GeneralFamily>(&family)) {
    GeneralParams{Complex(0.5, 0.0), g->n, g->k}.validate();
    return detail::render_rows(window, spec, PlaneMode::parameter, cfg.max_iter, threads, [&](Complex a) {
      return classify_critical_orbit(GeneralParams{a, g->n, g->k}, cfg);
    });
  }
  return detail::render_rows(window, spec, PlaneMode::parameter, cfg.max_iter, threads,
                             [&](Complex b) { return classify_critical_orbit(BehlParams{b}, cfg); });
}

/// Each pixel center is a seed of the fixed map p.
template <class Params>
PlaneGrid render_dynamical_plane(const Params& p, const Window& window, const GridSpec& spec,
                                 const EscapeConfig& cfg, std::span<const ExtendedComplex> attractors,
                                 int threads = 1) {
  cfg.validate();
  return detail::render_rows(window, spec, PlaneMode::dynamical, cfg.max_iter, threads,
                             [&](Complex z) { return classify_seed(p, ExtendedComplex(z), cfg, attractors); });
}

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct ColorStop {
  double at;  // position in [0, 1]
  Rgb color;
};

struct Palette {
  std::vector<ColorStop> escape_ramp;
  Rgb non_escape{0, 0, 0};
  std::vector<ColorStop> to_zero_ramp;
  std::vector<ColorStop> to_inf_ramp;

  /// Pale blue, green, yellow, red for escape times; blue and red shades
  /// for the two root basins of a dynamical plane.
  static Palette standard() {
    Palette p;
    p.escape_ramp = {{0.0, {200, 220, 255}}, {1.0 / 3.0, {0, 160, 60}}, {2.0 / 3.0, {255, 220, 0}}, {1.0, {200, 0, 0}}};
    p.to_zero_ramp = {{0.0, {40, 90, 255}}, {1.0, {10, 20, 90}}};
    p.to_inf_ramp = {{0.0, {255, 70, 50}}, {1.0, {100, 10, 10}}};
    return p;
  }

  /// Single-tone variant that shows only the escape/no-escape split.
  static Palette gray() {
    Palette p;
    p.escape_ramp = {{0.0, {255, 255, 255}}, {1.0, {120, 120, 120}}};
    p.to_zero_ramp = {{0.0, {230, 230, 230}}, {1.0, {150, 150, 150}}};
    p.to_inf_ramp = {{0.0, {200, 200, 200}}, {1.0, {90, 90, 90}}};
    return p;
  }

  static Palette by_name(const std::string& name) {
    if (name == "standard") return standard();
    if (name == "gray") return gray();
    throw DynamicsError(ErrorKind::invalid_parameter, "unknown palette '" + name + "'");
  }
};

/// Piecewise-linear interpolation through the stops, rounded to nearest.
inline Rgb ramp_color(std::span<const ColorStop> ramp, double t) {
  if (ramp.empty()) return {};
  t = std::clamp(t, 0.0, 1.0);
  if (t <= ramp.front().at) return ramp.front().color;
  for (std::size_t s = 1; s < ramp.size(); ++s) {
    if (t <= ramp[s].at) {
      const ColorStop& lo = ramp[s - 1];
      const ColorStop& hi = ramp[s];
      const double u = (t - lo.at) / (hi.at - lo.at);
      auto mix = [u](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + u * (static_cast<double>(b) - a)));
      };
      return {mix(lo.color.r, hi.color.r), mix(lo.color.g, hi.color.g), mix(lo.color.b, hi.color.b)};
    }
  }
  return ramp.back().color;
}

/// Iteration count 1 maps to 0 and max_iter to 1.
inline double iteration_fraction(std::uint32_t iterations, int max_iter) {
  if (max_iter <= 1) return 0.0;
  return std::clamp((static_cast<double>(iterations) - 1.0) / (max_iter - 1.0), 0.0, 1.0);
}

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first, 3 bytes per pixel

  Rgb pixel(int i, int j) const {
    const std::size_t o = 3 * (static_cast<std::size_t>(j) * static_cast<std::size_t>(width) + static_cast<std::size_t>(i));
    return {rgb[o], rgb[o + 1], rgb[o + 2]};
  }
  friend bool operator==(const Image&, const Image&) = default;
};

inline Image colorize(const PlaneGrid& grid, const Palette& palette, PlaneMode mode) {
  Image img{grid.spec.width, grid.spec.height, {}};
  img.rgb.reserve(grid.cells.size() * 3);
  for (const GridCell& c : grid.cells) {
    Rgb color = palette.non_escape;
    const double t = iteration_fraction(c.iterations, grid.max_iter);
    if (mode == PlaneMode::parameter) {
      if (c.outcome == Outcome::to_zero || c.outcome == Outcome::to_infinity) color = ramp_color(palette.escape_ramp, t);
    } else if (c.outcome == Outcome::to_zero) {
      color = ramp_color(palette.to_zero_ramp, t);
    } else if (c.outcome == Outcome::to_infinity) {
      color = ramp_color(palette.to_inf_ramp, t);
    }
    img.rgb.insert(img.rgb.end(), {color.r, color.g, color.b});
  }
  return img;
}

struct OutcomeCounts {
  std::array<std::size_t, 4> by_outcome{};  // indexed by Outcome
  std::size_t degenerate = 0;

  std::size_t operator[](Outcome o) const { return by_outcome[static_cast<std::size_t>(o)]; }
};

inline OutcomeCounts count_outcomes(const PlaneGrid& grid) {
  OutcomeCounts c;
  for (const GridCell& cell : grid.cells) {
    ++c.by_outcome[static_cast<std::size_t>(cell.outcome)];
    if (cell.degenerate) ++c.degenerate;
  }
  return c;
}

}  // namespace rootdyn
