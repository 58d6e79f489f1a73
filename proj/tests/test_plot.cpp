#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "zplot/affine.hpp"
#include "zplot/plot.hpp"

using namespace zplot;
using fixtures::odometer;

TEST_CASE("exhaustive layers of the basic machines") {
    PlotSet id = layer(identity_machine(2), 2);
    REQUIRE(id.points.size() == 4);
    for (std::int64_t x = 0; x < 4; ++x) CHECK(id.points[x] == ExactPoint{2, x, x});

    PlotSet odo = layer(odometer(2), 2);
    CHECK(odo.points[0] == ExactPoint{2, 0, 1});
    CHECK(odo.points[1] == ExactPoint{2, 1, 2});
    CHECK(odo.points[2] == ExactPoint{2, 2, 3});
    CHECK(odo.points[3] == ExactPoint{2, 3, 0});

    Transducer lin = synth_affine(PadicRational(5, 3, 2), PadicRational(0, 1, 2));
    PlotSet ps = layer(lin, 4);
    REQUIRE(ps.points.size() == 16);
    for (const ExactPoint& pt : ps.points) CHECK((3 * pt.y - 5 * pt.x) % 16 == 0);
}

TEST_CASE("layers are identical for any worker count") {
    Transducer lin = synth_affine(PadicRational(3, 5, 2), PadicRational(1, 3, 2));
    PlotSet serial = layer(lin, 10, false, 1);
    PlotSet threaded = layer(lin, 10, false, 4);
    CHECK(serial.points == threaded.points);
}

TEST_CASE("exhaustive budget is enforced but overridable") {
    Transducer id = identity_machine(2);
    CHECK_THROWS_AS(layer(id, 25), std::domain_error);
    CHECK_NOTHROW(layer(id, 25, true));
    CHECK_THROWS_AS(layer(id, 80, true), std::domain_error);  // beyond 64-bit
}

TEST_CASE("sampling is deterministic per seed") {
    Transducer lin = synth_affine(PadicRational(3, 5, 2), PadicRational(1, 3, 2));
    SampleSpec spec{200, 42};
    PlotSet a = layer_sampled(lin, 30, spec);
    PlotSet b = layer_sampled(lin, 30, spec);
    CHECK(a.points == b.points);
    spec.seed = 43;
    CHECK(layer_sampled(lin, 30, spec).points != a.points);
}

TEST_CASE("p-shift projection: layer k folds onto layer k-1") {
    SplitMix64 rng(37);
    std::vector<Transducer> machines{identity_machine(2), odometer(2),
                                     synth_affine(PadicRational(3, 5, 2), PadicRational(1, 3, 2)),
                                     fixtures::random_machine(rng, 2, 5)};
    for (const Transducer& t : machines) {
        std::vector<PlotSet> layers;
        for (int k = 1; k <= 8; ++k) layers.push_back(layer(t, k));
        for (int k = 2; k <= 8; ++k) {
            std::uint64_t pk1 = std::uint64_t(1) << (k - 1);
            for (const ExactPoint& pt : layers[static_cast<std::size_t>(k - 1)].points) {
                ExactPoint expect = layers[static_cast<std::size_t>(k - 2)]
                                        .points[static_cast<std::size_t>(pt.x % static_cast<std::int64_t>(pk1))];
                CHECK(expect.y == pt.y % static_cast<std::int64_t>(pk1));
            }
        }
    }
}

TEST_CASE("monna points reverse digit significance") {
    PlotSet id = monna_points(identity_machine(2), 3);
    CHECK(id.points[4] == ExactPoint{3, 1, 1});  // X=4 reverses to 1: the point (1/8, 1/8)

    PlotSet odo = monna_points(odometer(2), 3);
    CHECK(odo.points[3] == ExactPoint{3, 6, 1});  // (3/4, 1/8)

    PeriodForm f = period_form(PadicRational(1, 3, 2));
    Transducer c = constant_machine(2, f.preperiod, f.period);
    PlotSet cp = monna_points(c, 4);
    for (const ExactPoint& pt : cp.points) CHECK(pt.y == 13);  // mon of 1011 = 13/16
}

TEST_CASE("raster fill ratios") {
    Bitmap diag = raster(layer(identity_machine(2), 10), 32);
    CHECK(diag.fill_ratio() == mpq_class(1, 32));  // 32 cells of 1024

    PlotSet empty;
    empty.p = 2;
    CHECK(raster(empty, 16).fill_ratio() == 0);
    CHECK_THROWS_AS(raster(empty, 1), std::invalid_argument);

    Bitmap link = raster(layer(synth_affine(PadicRational(3, 5, 2), PadicRational(1, 3, 2)), 16, false, 2), 256);
    CHECK(link.fill_ratio() < mpq_class(1, 10));
    CHECK(link.fill_ratio() > 0);
}

TEST_CASE("torus embedding of corner points") {
    PlotSet ps;
    ps.p = 2;
    ps.points = {{1, 0, 0}, {1, 1, 0}, {2, 0, 1}};  // (0,0), (1/2,0), (0,1/4)
    auto xyz = torus3d(ps, 2.0, 1.0);
    CHECK(xyz[0][0] == doctest::Approx(3.0));
    CHECK(xyz[0][1] == doctest::Approx(0.0));
    CHECK(xyz[0][2] == doctest::Approx(0.0));
    CHECK(xyz[1][0] == doctest::Approx(-3.0));
    CHECK(xyz[2][0] == doctest::Approx(2.0));
    CHECK(xyz[2][2] == doctest::Approx(1.0));
    CHECK_THROWS_AS(torus3d(ps, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("csv export and import") {
    PlotSet ps;
    ps.p = 2;
    ps.points = {{2, 1, 2}};
    std::ostringstream os;
    export_csv(ps, os);
    CHECK(os.str() == "k,X,Y\n2,1,2\n");

    std::istringstream is(os.str());
    PlotSet back = import_csv(is, 2);
    CHECK(back.points == ps.points);

    std::istringstream bad("X,Y\n1,2\n");
    CHECK_THROWS_AS(import_csv(bad, 2), std::invalid_argument);
}

TEST_CASE("pgm golden bytes") {
    PlotSet ps;
    ps.p = 2;
    ps.points = {{2, 1, 2}};  // cell (0, 1) at res 2
    std::ostringstream os;
    export_pgm(raster(ps, 2), os);
    std::string want = "P5 2 2 255\n";
    want += '\0';                     // top row, left cell set
    want += static_cast<char>(255);  // top row, right
    want += static_cast<char>(255);  // bottom row
    want += static_cast<char>(255);
    CHECK(os.str() == want);
}

TEST_CASE("svg overlays the diagonal cable as a single flipped line") {
    PlotSet ps = layer(identity_machine(2), 5);
    std::ostringstream os;
    export_svg(ps, 32, {{mpq_class(1), mpq_class(0)}}, os);
    CHECK(os.str().find("<line x1=\"0\" y1=\"32\" x2=\"32\" y2=\"0\"") != std::string::npos);
}

TEST_CASE("plot union stacks layers") {
    PlotSet u = plot_union(identity_machine(2), 4);
    CHECK(u.points.size() == 2 + 4 + 8 + 16);
}
