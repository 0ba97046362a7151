#include <doctest.h>

#include <cmath>
#include <random>

#include "fuzzavail/availability.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace fuzzavail;
using testing::error_code;

namespace {

Grid make_grid(std::size_t rows, std::size_t cols, std::vector<double> values) {
    return {unit_samples(rows), unit_samples(cols), std::move(values)};
}

std::size_t vertex_count(const ContourSet& set) {
    std::size_t n = 0;
    for (const auto& p : set.polylines) n += p.vertices.size();
    return n;
}

}  // namespace

TEST_CASE("constant grid has no contours") {
    const Grid g = make_grid(4, 4, std::vector<double>(16, 0.3));
    const auto sets = contours(g, {0.1, 0.5, 0.9});
    REQUIRE(sets.size() == 3);
    for (const auto& s : sets) CHECK(s.polylines.empty());
}

TEST_CASE("single cell ramp") {
    const Grid g = make_grid(2, 2, {0, 0, 1, 1});
    const auto sets = contours(g, {0.5});
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].level == 0.5);
    REQUIRE(sets[0].polylines.size() == 1);
    const auto& line = sets[0].polylines[0];
    CHECK_FALSE(line.closed);
    REQUIRE(line.vertices.size() == 2);
    for (const auto& v : line.vertices) CHECK(v.kd == 0.5);
    CHECK(std::min(line.vertices[0].ks, line.vertices[1].ks) == 0.0);
    CHECK(std::max(line.vertices[0].ks, line.vertices[1].ks) == 1.0);

    // interpolation follows the straddling values
    const auto quarter = contours(g, {0.25});
    for (const auto& v : quarter[0].polylines.at(0).vertices) CHECK(v.kd == 0.25);
}

TEST_CASE("levels outside the value range give nothing") {
    const Grid g = make_grid(2, 2, {0, 0, 1, 1});
    CHECK(contours(g, {1.5})[0].polylines.empty());
    CHECK(contours(g, {-0.5})[0].polylines.empty());
    CHECK(contours(g, {}).empty());
}

TEST_CASE("empty grid") {
    CHECK(error_code([] { contours(Grid{}, {0.5}); }) == "empty-grid");
}

TEST_CASE("peak gives a closed loop") {
    const Grid g = make_grid(3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 0});
    const auto sets = contours(g, {0.5});
    REQUIRE(sets[0].polylines.size() == 1);
    const auto& loop = sets[0].polylines[0];
    CHECK(loop.closed);
    REQUIRE(loop.vertices.size() == 4);
    for (const auto& v : loop.vertices) {
        const double d = std::abs(v.kd - 0.5) + std::abs(v.ks - 0.5);
        CHECK(d == doctest::Approx(0.25));
    }
}

TEST_CASE("saddle cells follow the centre value") {
    SUBCASE("low centre isolates the high corners") {
        const Grid g = make_grid(2, 2, {1, 0, 0, 0.9});
        const auto sets = contours(g, {0.5});
        REQUIRE(sets[0].polylines.size() == 2);
        for (const auto& line : sets[0].polylines) {
            REQUIRE(line.vertices.size() == 2);
            // each segment cuts off one corner: kd and ks on the same side of 1/2
            const double kd = line.vertices[0].kd + line.vertices[1].kd;
            const double ks = line.vertices[0].ks + line.vertices[1].ks;
            CHECK((kd - 1.0) * (ks - 1.0) > 0.0);
        }
    }
    SUBCASE("high centre isolates the low corners") {
        const Grid g = make_grid(2, 2, {1, 0.2, 0, 1});
        const auto sets = contours(g, {0.5});
        REQUIRE(sets[0].polylines.size() == 2);
        for (const auto& line : sets[0].polylines) {
            const double kd = line.vertices[0].kd + line.vertices[1].kd;
            const double ks = line.vertices[0].ks + line.vertices[1].ks;
            CHECK((kd - 1.0) * (ks - 1.0) < 0.0);
        }
    }
}

TEST_CASE("vertices lie on the bilinear interpolant of the reference surface") {
    const Grid g = surface(101, 101);
    const auto sets = contours(g, default_contour_levels());
    for (const auto& set : sets) {
        CAPTURE(set.level);
        for (const auto& line : set.polylines) {
            for (const auto& v : line.vertices) {
                REQUIRE(v.kd >= 0.0);
                REQUIRE(v.kd <= 1.0);
                REQUIRE(v.ks >= 0.0);
                REQUIRE(v.ks <= 1.0);
                REQUIRE(std::abs(oracle::bilinear(g, v.kd, v.ks) - set.level) <= 1e-9);
            }
        }
    }
    CHECK(vertex_count(sets[4]) > 0);
}

TEST_CASE("random fields: vertices on edges, interpolated consistently") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 50; ++n) {
        const std::size_t rows = 2 + n % 7;
        const std::size_t cols = 2 + (n * 3) % 5;
        std::vector<double> values(rows * cols);
        for (auto& v : values) v = u(rng);
        const Grid g = make_grid(rows, cols, values);
        const double level = u(rng);
        const auto sets = contours(g, {level});
        for (const auto& line : sets[0].polylines) {
            if (line.closed) REQUIRE(line.vertices.size() >= 3);
            else REQUIRE(line.vertices.size() >= 2);
            for (const auto& v : line.vertices) {
                const double fi = v.kd * static_cast<double>(rows - 1);
                const double fj = v.ks * static_cast<double>(cols - 1);
                const bool on_row = std::abs(fi - std::round(fi)) <= 1e-9;
                const bool on_col = std::abs(fj - std::round(fj)) <= 1e-9;
                REQUIRE((on_row || on_col));
                REQUIRE(std::abs(oracle::bilinear(g, v.kd, v.ks) - level) <= 1e-9);
            }
        }
    }
}
