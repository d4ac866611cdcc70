#include <gtest/gtest.h>

#include <cmath>

#include "rootdyn/plane.hpp"

using namespace rootdyn;

namespace {

EscapeConfig default_cfg() { return EscapeConfig{}; }

}  // namespace

TEST(Plane, PixelCenters) {
  const Window w{-1.0, 1.0, -2.0, 2.0};
  const GridSpec g{4, 8};
  const Complex first = pixel_center(w, g, 0, 0);
  EXPECT_DOUBLE_EQ(first.real(), -1.0 + 0.25);
  EXPECT_DOUBLE_EQ(first.imag(), 2.0 - 0.25);
  const Complex last = pixel_center(w, g, 3, 7);
  EXPECT_DOUBLE_EQ(last.real(), 1.0 - 0.25);
  EXPECT_DOUBLE_EQ(last.imag(), -2.0 + 0.25);
  // Mirror pixels of a symmetric window are exact negatives.
  const Window s{-3.2, 3.2, -3.2, 3.2};
  const GridSpec h{301, 301};
  for (int i = 0; i < 301; i += 7) {
    for (int j = 0; j < 301; j += 11) {
      EXPECT_EQ(pixel_center(s, h, i, j), -pixel_center(s, h, 300 - i, 300 - j));
    }
  }
}

TEST(Plane, Validation) {
  EXPECT_THROW((Window{1.0, 0.0, 0.0, 1.0}.validate()), DynamicsError);
  EXPECT_THROW((GridSpec{1, 5}.validate()), DynamicsError);
  EXPECT_THROW(render_parameter_plane(GeneralFamily{1, 1}, Window{}, GridSpec{4, 4}), DynamicsError);
}

TEST(Plane, ThreadCountDoesNotChangeResult) {
  const GridSpec g{61, 47};
  const PlaneGrid one = render_parameter_plane(GeneralFamily{4, 1}, Window{}, g, default_cfg(), 1);
  for (int threads : {2, 3, 8}) {
    EXPECT_EQ(one, render_parameter_plane(GeneralFamily{4, 1}, Window{}, g, default_cfg(), threads));
  }
  const PlaneGrid b1 = render_parameter_plane(BehlFamily{}, Window{-50, 10, -15, 15}, g, default_cfg(), 1);
  EXPECT_EQ(b1, render_parameter_plane(BehlFamily{}, Window{-50, 10, -15, 15}, g, default_cfg(), 5));
}

TEST(Plane, SignSymmetryForOddDegree) {
  const GridSpec g{101, 101};
  for (auto fam : {GeneralFamily{4, 1}, GeneralFamily{3, 2}}) {
    const PlaneGrid grid = render_parameter_plane(fam, Window{}, g, default_cfg(), 4);
    for (int j = 0; j < 101; ++j) {
      for (int i = 0; i < 101; ++i) {
        const GridCell& a = grid.at(i, j);
        const GridCell& b = grid.at(100 - i, 100 - j);
        EXPECT_EQ(a.outcome, b.outcome) << i << "," << j;
        EXPECT_EQ(a.iterations, b.iterations) << i << "," << j;
      }
    }
  }
}

TEST(Plane, ParameterPlaneRegions) {
  const GridSpec g{301, 301};
  const PlaneGrid grid = render_parameter_plane(GeneralFamily{4, 1}, Window{}, g, default_cfg(), 4);
  std::size_t disk = 0, disk_black = 0, zpm = 0, zpm_black = 0;
  for (int j = 0; j < 301; ++j) {
    for (int i = 0; i < 301; ++i) {
      const Complex a = pixel_center(grid.window, g, i, j);
      const bool black = grid.at(i, j).outcome == Outcome::undecided;
      if (std::abs(a - 1.75) < 0.2 || std::abs(a + 1.75) < 0.2) {
        ++disk;
        disk_black += black;
      }
      if (a.real() >= 2.05 && a.real() <= 2.4 && std::abs(a.imag()) <= 0.05) {
        ++zpm;
        zpm_black += black;
      }
    }
  }
  ASSERT_GT(disk, 0u);
  EXPECT_EQ(disk_black, disk);
  ASSERT_GT(zpm, 0u);
  EXPECT_GE(static_cast<double>(zpm_black) / zpm, 0.95);
}

TEST(Plane, BehlInfiniteAntenna) {
  const Window w{-50, 10, -15, 15};
  const GridSpec g{301, 151};
  const PlaneGrid grid = render_parameter_plane(BehlFamily{}, w, g, default_cfg(), 4);
  const int mid = 75;
  EXPECT_NEAR(pixel_center(w, g, 0, mid).imag(), 0.0, 1e-12);
  const double bound = -7.0 - 2.0 * std::sqrt(10.0);
  for (int i = 0; i < 301; ++i) {
    if (pixel_center(w, g, i, mid).real() < bound) {
      EXPECT_EQ(grid.at(i, mid).outcome, Outcome::undecided) << i;
    }
  }
}

TEST(Plane, DynamicalPlanes) {
  const GridSpec g{81, 81};
  const EscapeConfig cfg{};
  const GeneralParams monomial{0.0, 4, 1};
  const PlaneGrid m = render_dynamical_plane(monomial, Window{-2, 2, -2, 2}, g, cfg, {}, 2);
  for (int j = 0; j < 81; ++j) {
    for (int i = 0; i < 81; ++i) {
      const double r = std::abs(pixel_center(m.window, g, i, j));
      if (r < 0.999) {
        EXPECT_EQ(m.at(i, j).outcome, Outcome::to_zero);
      }
      if (r > 1.001) {
        EXPECT_EQ(m.at(i, j).outcome, Outcome::to_infinity);
      }
    }
  }

  const GeneralParams q{5.0 / 3.0, 4, 1};
  const auto attractors = known_attractors(q);
  const PlaneGrid d = render_dynamical_plane(q, Window{-1.2, 2, -1.6, 1.6}, g, cfg, attractors, 2);
  const OutcomeCounts c = count_outcomes(d);
  EXPECT_GT(c[Outcome::to_zero], 0u);
  EXPECT_GT(c[Outcome::to_infinity], 0u);
  EXPECT_GT(c[Outcome::to_strange], 0u);

  // a = 3: preimages of the pole 1/3 punch to_infinity holes into the basin of 0.
  const GeneralParams three{3.0, 4, 1};
  const GridSpec fine{201, 201};
  const PlaneGrid h = render_dynamical_plane(three, Window{-1.1, 1.1, -1.1, 1.1}, fine, cfg, {}, 4);
  std::size_t holes = 0;
  for (int j = 0; j < 201; ++j) {
    for (int i = 0; i < 201; ++i) {
      if (std::abs(pixel_center(h.window, fine, i, j)) < 0.6 && h.at(i, j).outcome == Outcome::to_infinity) ++holes;
    }
  }
  EXPECT_GT(holes, 0u);
}

TEST(Plane, Colorize) {
  PlaneGrid grid;
  grid.spec = {3, 2};
  grid.max_iter = 100;
  grid.cells.resize(6);
  const Image black = colorize(grid, Palette::standard(), PlaneMode::parameter);
  EXPECT_TRUE(std::all_of(black.rgb.begin(), black.rgb.end(), [](std::uint8_t v) { return v == 0; }));

  grid.cells[0] = {Outcome::to_zero, false, 0xffff, 1};
  grid.cells[1] = {Outcome::to_infinity, false, 0xffff, 100};
  grid.cells[2] = {Outcome::to_strange, false, 0, 40};
  const Palette pal = Palette::standard();
  const Image img = colorize(grid, pal, PlaneMode::parameter);
  EXPECT_EQ(img.pixel(0, 0), (Rgb{200, 220, 255}));
  EXPECT_EQ(img.pixel(1, 0), (Rgb{200, 0, 0}));
  EXPECT_EQ(img.pixel(2, 0), (Rgb{0, 0, 0}));
  EXPECT_EQ(img, colorize(grid, pal, PlaneMode::parameter));

  const Image dyn = colorize(grid, pal, PlaneMode::dynamical);
  EXPECT_EQ(dyn.pixel(0, 0), pal.to_zero_ramp.front().color);
  EXPECT_EQ(dyn.pixel(1, 0), pal.to_inf_ramp.back().color);
  EXPECT_EQ(dyn.pixel(2, 0), (Rgb{0, 0, 0}));
}

TEST(Plane, RampInterpolation) {
  const Palette pal = Palette::standard();
  EXPECT_EQ(ramp_color(pal.escape_ramp, 1.0 / 3.0), (Rgb{0, 160, 60}));
  EXPECT_EQ(ramp_color(pal.escape_ramp, 2.0 / 3.0), (Rgb{255, 220, 0}));
  EXPECT_EQ(ramp_color(pal.escape_ramp, 1.0 / 6.0), (Rgb{100, 190, 158}));
  EXPECT_DOUBLE_EQ(iteration_fraction(1, 100), 0.0);
  EXPECT_DOUBLE_EQ(iteration_fraction(100, 100), 1.0);
  EXPECT_THROW(Palette::by_name("neon"), DynamicsError);
}
