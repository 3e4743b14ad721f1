#include <doctest.h>

#include "pinctl/dynamics.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/spectral.hpp"
#include "pinctl/strategies.hpp"

#include "test_support.hpp"

#include <cmath>

using namespace pinctl;
using namespace pinctl::testing;

TEST_CASE("chen right-hand side") {
    const ChenParams p; // 35, 3, 28
    SUBCASE("origin is an equilibrium of both variants") {
        const auto a = chen_rhs({0, 0, 0}, p, ChenVariant::Standard);
        const auto b = chen_rhs({0, 0, 0}, p, ChenVariant::PaperLiteral);
        for (int i = 0; i < 3; ++i) {
            CHECK(a[i] == 0.0);
            CHECK(b[i] == 0.0);
        }
    }
    SUBCASE("standard at (1,1,1): (0, 20, -2)") {
        const auto d = chen_rhs({1, 1, 1}, p, ChenVariant::Standard);
        CHECK(d[0] == doctest::Approx(0.0));
        CHECK(d[1] == doctest::Approx(20.0));
        CHECK(d[2] == doctest::Approx(-2.0));
    }
    SUBCASE("paper literal at (0,1,0): (35, 53, 0)") {
        const auto d = chen_rhs({0, 1, 0}, p, ChenVariant::PaperLiteral);
        CHECK(d[0] == doctest::Approx(35.0));
        CHECK(d[1] == doctest::Approx(53.0));
        CHECK(d[2] == doctest::Approx(0.0));
    }
}

TEST_CASE("all nodes pinned with tiny initial error syncs immediately") {
    const Graph g = complete(3);
    DynamicsConfig cfg;
    cfg.init_box = 1e-5;
    cfg.t_max = 0.5;
    cfg.seed = 5;
    const PinSet pins = pins_of({0, 1, 2});
    const auto sum = simulate(g, pins, cfg, FailureMask::none(3));
    REQUIRE(sum.sync_time.has_value());
    CHECK(*sum.sync_time == 0.0);
    CHECK(sum.final_error < cfg.eps);
}

TEST_CASE("all pins failed leaves chaos unsynchronized") {
    GenSpec spec;
    spec.model = NetModel::BA;
    spec.n = 30;
    spec.ba_m = 2;
    spec.seed = 12;
    const Graph g = generate(spec);
    const PinSet pins = select_degree(g, 5).pins();
    FailureMask mask;
    mask.beta.assign(5, 1);

    int timeouts = 0;
    for (int trial = 0; trial < 20; ++trial) {
        DynamicsConfig cfg;
        cfg.t_max = 1.0;
        cfg.seed = 1000 + trial;
        const auto sum = simulate(g, pins, cfg, mask);
        if (!sum.sync_time.has_value()) ++timeouts;
    }
    CHECK(timeouts == 20);
}

TEST_CASE("simulate is deterministic for fixed inputs") {
    const Graph g = gen_er(20, 0.3, 8);
    const PinSet pins = select_degree(g, 4).pins();
    DynamicsConfig cfg;
    cfg.t_max = 0.5;
    cfg.seed = 77;
    const auto a = simulate(g, pins, cfg, FailureMask::none(4));
    const auto b = simulate(g, pins, cfg, FailureMask::none(4));
    CHECK(a.final_error == b.final_error);
    CHECK(a.sync_time.has_value() == b.sync_time.has_value());
    if (a.sync_time) CHECK(*a.sync_time == *b.sync_time);
}

TEST_CASE("halving dt moves sync time by less than dt") {
    GenSpec spec;
    spec.model = NetModel::ER;
    spec.n = 50;
    spec.er_p = 0.3;
    spec.seed = 3;
    spec.require_connected = true;
    const Graph g = generate(spec);
    const PinSet pins = select_degree(g, 10).pins();

    DynamicsConfig cfg;
    cfg.seed = 9;
    cfg.t_max = 2.0;
    const auto coarse = simulate(g, pins, cfg, FailureMask::none(10));
    cfg.dt /= 2.0;
    const auto fine = simulate(g, pins, cfg, FailureMask::none(10));
    REQUIRE(coarse.sync_time.has_value());
    REQUIRE(fine.sync_time.has_value());
    CHECK(std::abs(*coarse.sync_time - *fine.sync_time) < 2.0 * cfg.dt + 1e-12);
}

TEST_CASE("simulate error paths") {
    const Graph g = complete(3);
    DynamicsConfig cfg;
    SUBCASE("empty pins") {
        CHECK_THROWS_AS(simulate(g, pins_of({}), cfg, FailureMask{}), Error);
    }
    SUBCASE("mask length mismatch") {
        FailureMask mask;
        mask.beta.assign(2, 0);
        CHECK_THROWS_AS(simulate(g, pins_of({0}), cfg, mask), Error);
    }
    SUBCASE("divergence is reported with its time") {
        cfg.dt = 0.2; // far past the RK4 stability limit
        cfg.t_max = 50.0;
        cfg.seed = 3;
        CHECK_THROWS_AS(simulate(g, pins_of({0}), cfg, FailureMask::none(1)),
                        DivergenceError);
    }
    SUBCASE("config validation") {
        cfg.dt = -1.0;
        CHECK_THROWS_AS(cfg.validate(), Error);
    }
}

TEST_CASE("linear consensus decay rate matches 2 c lambda") {
    SUBCASE("K3 pins {0}, c = 1: rate 2") {
        const Graph g = complete(3);
        const PinSet pins = pins_of({0});
        const std::vector<double> u{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
        const double rate = measure_decay_rate(g, pins, 1.0, u);
        CHECK(rate == doctest::Approx(2.0).epsilon(0.01));
    }
    SUBCASE("higher eigenvector: rate 2 c lambda_h") {
        GenSpec spec;
        spec.model = NetModel::ER;
        spec.n = 24;
        spec.er_p = 0.25;
        spec.seed = 19;
        spec.require_connected = true;
        const Graph g = generate(spec);
        const PinSet pins = random_pins(g, 3, 4);
        const GroundedView v(g, pins);
        const auto spectrum = dense_spectrum_oracle(v);
        const double c = 0.7;
        for (int h : {0, 2}) {
            std::vector<double> u(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) u[i] = spectrum.vectors(i, h);
            const double rate = measure_decay_rate(g, pins, c, u);
            CHECK(rate == doctest::Approx(2.0 * c * spectrum.values(h)).epsilon(0.01));
        }
    }
    SUBCASE("doubling c doubles the rate") {
        const Graph g = complete(3);
        const std::vector<double> u{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
        const double r1 = measure_decay_rate(g, pins_of({0}), 1.0, u);
        const double r2 = measure_decay_rate(g, pins_of({0}), 2.0, u);
        CHECK(r2 == doctest::Approx(2.0 * r1).epsilon(0.01));
    }
    SUBCASE("structurally zero lambda_1 is an error") {
        const Graph g = two_triangles();
        const std::vector<double> u(5, 1.0);
        CHECK_THROWS_AS((void)measure_decay_rate(g, pins_of({0}), 1.0, u), Error);
    }
}
