#include <doctest.h>

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "grid.hpp"
#include "hg_basis.hpp"

using namespace spade;

namespace {

constexpr double kWaist = 150e-6;

OpticalMode mode(int m, int n, double rotation = 0.0, double cx = 0.0, double cy = 0.0) {
    return {m, n, kWaist, cx, cy, rotation};
}

GridSpec default_grid() { return GridSpec::centered(4 * kWaist, 4 * kWaist, 257, 257); }

}  // namespace

TEST_CASE("hermite recurrence matches closed forms") {
    for (double t : {-1.7, -0.3, 0.0, 0.9, 2.4}) {
        CHECK(hermite(0, t) == 1.0);
        CHECK(hermite(1, t) == 2.0 * t);
        CHECK(hermite(2, t) == doctest::Approx(4 * t * t - 2).epsilon(1e-14));
        CHECK(hermite(3, t) == doctest::Approx(8 * t * t * t - 12 * t).epsilon(1e-14));
        CHECK(hermite(4, t) ==
              doctest::Approx(16 * t * t * t * t - 48 * t * t + 12).epsilon(1e-13));
    }
}

TEST_CASE("fundamental mode peak value") {
    // sqrt(2/(pi w0^2)) at the origin for w0 = 150 um
    CHECK(eval_hg(mode(0, 0), 0.0, 0.0) == doctest::Approx(5319.2304).epsilon(1e-6));
}

TEST_CASE("HG10 node line and x-scaling relation") {
    for (double y : {-2e-4, 0.0, 1e-4})
        CHECK(eval_hg(mode(1, 0), 0.0, y) == 0.0);
    // u10 = (2x/w0) u00
    const double x = kWaist / 2;
    CHECK(eval_hg(mode(1, 0), x, 0.0) ==
          doctest::Approx(eval_hg(mode(0, 0), x, 0.0)).epsilon(1e-12));
}

TEST_CASE("rotation normalizes into (-pi, pi]") {
    const double pi = 3.14159265358979323846;
    OpticalMode m = mode(1, 0, 3 * pi / 2);
    CHECK(m.normalized_rotation().rotation == doctest::Approx(-pi / 2).epsilon(1e-14));
    CHECK(mode(0, 0, -pi).normalized_rotation().rotation == doctest::Approx(pi).epsilon(1e-14));
    CHECK(mode(0, 0, 5 * pi).normalized_rotation().rotation == doctest::Approx(pi).epsilon(1e-12));
    // the amplitude pattern is unchanged by the wrap
    OpticalMode wrapped = mode(2, 1, 3 * pi / 2).normalized_rotation();
    CHECK(eval_hg(wrapped, 1e-4, -3e-5) ==
          doctest::Approx(eval_hg(mode(2, 1, 3 * pi / 2), 1e-4, -3e-5)).epsilon(1e-12));
}

TEST_CASE("mode validation") {
    OpticalMode bad = mode(0, 0);
    bad.waist = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    OpticalMode high = mode(6, 5);  // m+n = 11 exceeds the sorter bound
    CHECK_THROWS_AS(high.validate(), ValidationError);
    CHECK_NOTHROW(mode(5, 5).validate());
}

TEST_CASE("self inner product converges on the default window") {
    ComplexField f = sample_mode(mode(0, 0), default_grid());
    CHECK_FALSE(f.truncation_warning());
    CHECK(std::abs(inner_product(f, f).real() - 1.0) < 1e-6);
}

TEST_CASE("narrow window sets the truncation warning") {
    GridSpec tight = GridSpec::centered(kWaist, kWaist, 65, 65);
    CHECK(sample_mode(mode(0, 0), tight).truncation_warning());
    // off-center mode close to an edge triggers it too
    ComplexField off = sample_mode(mode(0, 0, 0.0, 3 * kWaist, 0.0), default_grid());
    CHECK(off.truncation_warning());
}

TEST_CASE("rotating HG01 by pi/2 gives HG10 up to sign") {
    GridSpec grid = default_grid();
    ComplexField rotated = sample_mode(mode(0, 1, 3.14159265358979323846 / 2), grid);
    ComplexField ref = sample_mode(mode(1, 0), grid);
    double max_diff = 0.0, max_val = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            max_diff = std::max(max_diff, std::abs(rotated.at(i, j).real() + ref.at(i, j).real()));
            max_val = std::max(max_val, std::abs(ref.at(i, j).real()));
        }
    CHECK(max_diff < 1e-9 * max_val);
}

TEST_CASE("orthonormality across the low-order family") {
    GridSpec grid = default_grid();
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; m + n <= 3; ++n)
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; p + q <= 3; ++q) {
                    ComplexField a = sample_mode(mode(m, n), grid);
                    ComplexField b = sample_mode(mode(p, q), grid);
                    const double expected = (m == p && n == q) ? 1.0 : 0.0;
                    CHECK(std::abs(inner_product(a, b).real() - expected) < 1e-6);
                }
}

TEST_CASE("norm is rotation invariant") {
    GridSpec grid = default_grid();
    for (double angle : {0.0, 0.37, -1.2, 2.9}) {
        ComplexField f = sample_mode(mode(2, 1, angle), grid);
        CHECK(std::abs(inner_product(f, f).real() - 1.0) < 1e-8);
    }
}

TEST_CASE("inner product rejects mismatched grids") {
    ComplexField a = sample_mode(mode(0, 0), default_grid());
    ComplexField b = sample_mode(mode(0, 0), GridSpec::centered(4 * kWaist, 4 * kWaist, 129, 129));
    CHECK_THROWS_AS(inner_product(a, b), ValidationError);
}

TEST_CASE("grid validation") {
    GridSpec empty_x{0, 0, -1, 1, 9, 9};
    CHECK_THROWS_AS(empty_x.validate(), ValidationError);
    GridSpec single_col{-1, 1, -1, 1, 1, 9};
    CHECK_THROWS_AS(single_col.validate(), ValidationError);
    GridSpec minimal{-1, 1, -1, 1, 2, 2};
    CHECK_NOTHROW(minimal.validate());
}

TEST_CASE("superposition norm") {
    GridSpec grid = default_grid();
    ModeSuperposition det;
    det.terms = {{std::cos(0.3), mode(1, 0)}, {std::sin(0.3), mode(0, 1)}};
    ComplexField f = det.sample(grid);
    CHECK(std::abs(inner_product(f, f).real() - 1.0) < 1e-6);
}
