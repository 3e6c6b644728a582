#include <doctest.h>

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "mech_modes.hpp"

using namespace spade;

namespace {

const RibbonGeometry kRibbon{380e-6, 7e-3, 75e-9};

}  // namespace

TEST_CASE("torsion shape values") {
    ModeShape torsion = ModeShape::torsion(kRibbon);
    CHECK(torsion.eval(kRibbon.width / 2, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(torsion.eval(-kRibbon.width / 2, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
    for (double y : {-3e-3, 0.0, 2e-3}) CHECK(torsion.eval(0.0, y) == 0.0);
    // the field misses the ribbon outside the domain
    CHECK(torsion.eval(kRibbon.width, 0.0) == 0.0);
    CHECK(torsion.eval(0.1 * kRibbon.width, kRibbon.length) == 0.0);
}

TEST_CASE("flexural shape values") {
    ModeShape flex = ModeShape::flexural(kRibbon);
    CHECK(flex.eval(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(flex.eval(1e-4, kRibbon.length / 2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flex.eval(1e-4, -kRibbon.length / 2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("analytic gradients") {
    ModeShape torsion = ModeShape::torsion(kRibbon);
    auto [gx, gy] = torsion.gradient(0.0, 0.0);
    CHECK(gx == doctest::Approx(2.0 / kRibbon.width).epsilon(1e-14));
    CHECK(gy == 0.0);
    auto [gx2, gy2] = torsion.gradient(1e-4, 0.0);
    CHECK(gy2 == doctest::Approx(0.0).epsilon(1e-12));

    ModeShape flex = ModeShape::flexural(kRibbon);
    CHECK(flex.gradient(1e-4, 0.0).second == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flex.gradient(1e-4, 0.0).first == 0.0);
}

TEST_CASE("gradient matches central differences at interior points") {
    const double h = 1e-8 * std::min(kRibbon.width, kRibbon.length);
    for (const ModeShape& shape : {ModeShape::torsion(kRibbon), ModeShape::flexural(kRibbon)}) {
        for (double x : {-1e-4, 3e-5, 1.2e-4}) {
            for (double y : {-2.5e-3, 1e-3, 3.1e-3}) {
                auto [gx, gy] = shape.gradient(x, y);
                const double fdx = (shape.eval(x + h, y) - shape.eval(x - h, y)) / (2 * h);
                const double fdy = (shape.eval(x, y + h) - shape.eval(x, y - h)) / (2 * h);
                CHECK(gx == doctest::Approx(fdx).epsilon(1e-6));
                CHECK(gy == doctest::Approx(fdy).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("gridded shape normalizes to unit peak and reproduces nodes") {
    GridSpec grid{-1e-4, 1e-4, -2e-4, 2e-4, 21, 31};
    std::vector<double> values(grid.node_count());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            values[static_cast<std::size_t>(j) * grid.nx + i] =
                0.37 * std::sin(grid.x(i) / 1e-4) * std::cos(grid.y(j) / 2e-4);

    ModeShape shape = ModeShape::gridded(grid, values);
    double peak = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            peak = std::max(peak, std::abs(shape.eval(grid.x(i), grid.y(j))));
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));

    // bilinear interpolation is exact on nodes
    double max_node = 0.0;
    for (double v : values) max_node = std::max(max_node, std::abs(v));
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double expect = values[static_cast<std::size_t>(j) * grid.nx + i] / max_node;
            CHECK(shape.eval(grid.x(i), grid.y(j)) == doctest::Approx(expect).epsilon(1e-12));
        }
    CHECK(shape.eval(2e-4, 0.0) == 0.0);  // outside the gridded domain
}

TEST_CASE("modeshape file round trip") {
    GridSpec grid{-1.9e-4, 1.9e-4, -3.5e-3, 3.5e-3, 41, 61};
    ModeShape torsion = ModeShape::torsion(kRibbon);
    std::vector<double> values;
    values.reserve(grid.node_count());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) values.push_back(torsion.eval(grid.x(i), grid.y(j)));

    std::stringstream file;
    write_grid_shape(file, grid, values);
    ModeShape loaded = load_grid_shape(file);
    CHECK(loaded.kind() == ModeShape::Kind::gridded);
    for (double x : {-1.2e-4, 0.0, 1.5e-4})
        for (double y : {-3e-3, 1e-3})
            CHECK(loaded.eval(x, y) == doctest::Approx(torsion.eval(x, y)).epsilon(1e-3));
}

TEST_CASE("modeshape parse errors carry line numbers") {
    {
        std::istringstream bad("3 3\n0 1 0 1\n1 2 3\nnot_a_number 5 6\n7 8 9\n");
        CHECK_THROWS_WITH_AS(load_grid_shape(bad), doctest::Contains("line 4"), ParseError);
    }
    {
        std::istringstream zeros("2 2\n0 1 0 1\n0 0\n0 0\n");
        CHECK_THROWS_AS(load_grid_shape(zeros), ParseError);
    }
    {
        std::istringstream short_file("3 3\n0 1 0 1\n1 2 3\n");
        CHECK_THROWS_AS(load_grid_shape(short_file), ParseError);
    }
    {
        std::istringstream bad_bounds("3 3\n1 0 0 1\n1 2 3 4 5 6 7 8 9\n");
        CHECK_THROWS_AS(load_grid_shape(bad_bounds), ParseError);
    }
}

TEST_CASE("minimal 2x2 grid is accepted with a coarse warning") {
    std::istringstream tiny("2 2\n0 1 0 1\n0.1 0.2\n0.3 0.4\n");
    ModeShape shape = load_grid_shape(tiny);
    CHECK(shape.coarse_grid_warning());
    CHECK(shape.eval(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mechanical mode derived quantities") {
    MechanicalMode mode{ModeShape::torsion(kRibbon), 52.5e3, 65e6, 2.8e-18, 295.0};
    CHECK_NOTHROW(mode.validate());
    CHECK(mode.angular_frequency() == doctest::Approx(329867.2286).epsilon(1e-9));
    CHECK(mode.linewidth() == doctest::Approx(329867.2286 / 65e6).epsilon(1e-9));

    MechanicalMode bad = mode;
    bad.quality_factor = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}
