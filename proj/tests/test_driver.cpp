#include <doctest.h>

#include "dtile/constructions.hpp"
#include "dtile/driver.hpp"
#include "dtile/errors.hpp"
#include "dtile/io.hpp"

using namespace dtile;

TEST_CASE("driver takes the extremal branch on planted instances") {
    auto g = planted_extremal(16);
    auto r = solve_driver(g);
    CHECK(r.status == SearchStatus::found);
    CHECK(r.branch == Branch::extremal);
    REQUIRE(r.tiling);
    CHECK(validate_tiling(g, *r.tiling, true).ok);
}

TEST_CASE("driver proves G1 infeasible through the exact fallback") {
    auto r = solve_driver(construct_G1(8));
    CHECK(r.status == SearchStatus::infeasible);
    CHECK(r.branch == Branch::exact_fallback);
    CHECK_FALSE(r.tiling);
}

TEST_CASE("driver takes the non-extremal branch on a dense random instance") {
    auto g = random_codegree_instance(60, 20, 7).graph;
    DriverParams p;
    p.seed = 7;
    auto r = solve_driver(g, p);
    CHECK(r.status == SearchStatus::found);
    CHECK(r.branch == Branch::non_extremal);
    REQUIRE(r.tiling);
    CHECK(validate_tiling(g, *r.tiling, true).ok);
    auto again = solve_driver(g, p);
    CHECK(certificate_string(*again.tiling, true) == certificate_string(*r.tiling, true));
    CHECK(again.report.dump() == r.report.dump());
}

TEST_CASE("driver modes and input errors") {
    CHECK_THROWS_AS(solve_driver(complete_3graph(10)), InputError);
    DriverParams exact;
    exact.mode = DriverMode::exact;
    auto r = solve_driver(complete_3graph(12), exact);
    CHECK(r.status == SearchStatus::found);
    CHECK(r.branch == Branch::exact_fallback);
    DriverParams forced;
    forced.mode = DriverMode::extremal;
    auto f = solve_driver(construct_G1(8), forced);
    CHECK(f.status == SearchStatus::exhausted);
    CHECK(f.report["extremal"].contains("failure"));
    CHECK(parse_driver_mode("absorb") == DriverMode::absorb);
    CHECK_THROWS_AS(parse_driver_mode("fast"), InputError);
}
