#include <doctest.h>

#include "pinctl/errors.hpp"
#include "pinctl/spectral.hpp"

#include "test_support.hpp"

#include <cmath>

using namespace pinctl;
using namespace pinctl::testing;

namespace {
double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}
} // namespace

TEST_CASE("smallest eigenpair on closed-form cases") {
    SUBCASE("K3 pins {0}: eigenvalues 1 and 3") {
        const GroundedView v(complete(3), pins_of({0}));
        const SpectralPair p = smallest_eigenpair(v);
        CHECK(p.lambda1 == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(p.u.size() == 2);
        CHECK(p.u[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));
        CHECK(p.u[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));
        CHECK(p.residual <= 1e-10);
    }
    SUBCASE("star S4 pins {leaf}: lambda_1 = 2 - sqrt(3)") {
        const GroundedView v(star(3), pins_of({1}));
        const SpectralPair p = smallest_eigenpair(v);
        CHECK(p.lambda1 == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-9));
    }
    SUBCASE("two triangles pins {0}: structural zero with component indicator") {
        const GroundedView v(two_triangles(), pins_of({0}));
        const SpectralPair p = smallest_eigenpair(v);
        CHECK(p.lambda1 == 0.0);
        CHECK(p.iterations == 0);
        REQUIRE(p.u.size() == 5);
        const double w = 1.0 / std::sqrt(3.0);
        // locals: 1,2,3,4,5 -> indicator of {3,4,5}
        CHECK(p.u[0] == 0.0);
        CHECK(p.u[1] == 0.0);
        CHECK(p.u[2] == doctest::Approx(w));
        CHECK(p.u[3] == doctest::Approx(w));
        CHECK(p.u[4] == doctest::Approx(w));
    }
}

TEST_CASE("dense spectrum oracle on closed-form cases") {
    SUBCASE("K3 pins {0}") {
        const auto s = dense_spectrum_oracle(GroundedView(complete(3), pins_of({0})));
        REQUIRE(s.values.size() == 2);
        CHECK(s.values(0) == doctest::Approx(1.0));
        CHECK(s.values(1) == doctest::Approx(3.0));
    }
    SUBCASE("P3 pins {center}: disconnected leaves give diag(1,1)") {
        const auto s = dense_spectrum_oracle(GroundedView(path(3), pins_of({1})));
        CHECK(s.values(0) == doctest::Approx(1.0));
        CHECK(s.values(1) == doctest::Approx(1.0));
    }
    SUBCASE("P3 pins {end}: (3 +- sqrt(5)) / 2") {
        const auto s = dense_spectrum_oracle(GroundedView(path(3), pins_of({0})));
        CHECK(s.values(0) == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0));
        CHECK(s.values(1) == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0));
    }
}

TEST_CASE("iterative solver agrees with the dense oracle") {
    RandomStream rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        const Graph g = random_graph(rep, 8, 60);
        const node_t n_pins = 1 + static_cast<node_t>(rng.below(g.node_count() / 2));
        const PinSet pins = random_pins(g, n_pins, rep * 13 + 1);
        const GroundedView v(g, pins);
        const SpectralPair p = smallest_eigenpair(v);
        const double dense = dense_lambda1(v);
        CAPTURE(rep);
        CHECK(std::abs(p.lambda1 - dense) <= 1e-8);
        CHECK(p.residual <= 1e-10);
        CHECK(std::abs(norm(p.u) - 1.0) <= 1e-12);
    }
}

TEST_CASE("interlacing: more pins never lower lambda_1") {
    for (int rep = 0; rep < 12; ++rep) {
        const Graph g = random_graph(rep + 40, 10, 50);
        PinSet small = random_pins(g, 2, rep);
        PinSet big = small;
        for (node_t i = 0; i < g.node_count() && big.members.size() < 5; ++i) {
            bool used = false;
            for (node_t m : big.members) used |= (m == i);
            if (!used) big.members.push_back(i);
        }
        const double lo = smallest_eigenpair(GroundedView(g, small)).lambda1;
        const double hi = smallest_eigenpair(GroundedView(g, big)).lambda1;
        CHECK(hi >= lo - 1e-9);
    }
}

TEST_CASE("Perron property and Rayleigh bound") {
    for (int rep = 0; rep < 12; ++rep) {
        GenSpec spec;
        spec.model = NetModel::ER;
        spec.n = 30;
        spec.er_p = 0.15;
        spec.seed = 900 + rep;
        spec.require_connected = true;
        const Graph g = generate(spec);
        const PinSet pins = random_pins(g, 3, rep);
        const auto comps = unpinned_components(g, pins);
        bool all_touch = true;
        for (const auto& c : comps) all_touch &= c.touches_pinned;
        const GroundedView v(g, pins);
        const SpectralPair p = smallest_eigenpair(v);

        // lambda_1 <= min full-graph degree over unpinned nodes
        CHECK(p.lambda1 <= v.min_diag() + 1e-9);

        if (all_touch && comps.size() == 1) {
            for (double ui : p.u) CHECK(ui > 0.0);
        }
    }
}

TEST_CASE("sign convention: component sum is nonnegative") {
    for (int rep = 0; rep < 8; ++rep) {
        const Graph g = random_graph(rep + 77, 10, 40);
        const PinSet pins = random_pins(g, 2, rep + 3);
        const SpectralPair p = smallest_eigenpair(GroundedView(g, pins));
        double sum = 0.0;
        for (double ui : p.u) sum += ui;
        CHECK(sum >= -1e-12);
    }
}

TEST_CASE("warm starts converge to the same eigenvalue") {
    const Graph g = gen_er(40, 0.2, 31);
    const GroundedView v(g, pins_of({0, 5}));
    const SpectralPair cold = smallest_eigenpair(v);

    const node_t victim = v.parent_of(7);
    const GroundedView v2 = v.dropped(victim);
    const SpectralPair cold2 = smallest_eigenpair(v2);

    std::vector<double> warm = cold.u;
    warm.erase(warm.begin() + 7);
    SpectralOptions opts;
    opts.warm = warm;
    const SpectralPair warmed = smallest_eigenpair(v2, opts);
    CHECK(warmed.lambda1 == doctest::Approx(cold2.lambda1).epsilon(1e-9));
    CHECK(warmed.iterations <= cold2.iterations + 1);
}

TEST_CASE("solver error paths") {
    SUBCASE("non-convergence carries the best iterate") {
        const GroundedView v(path(3), pins_of({0}));
        SpectralOptions opts;
        opts.max_iter = 1;
        opts.tol = 1e-14;
        try {
            (void)smallest_eigenpair(v, opts);
            FAIL("expected ConvergenceError");
        } catch (const ConvergenceError& e) {
            CHECK(e.iterate().size() == 2);
            CHECK(e.residual() > 0.0);
            CHECK(e.lambda_best() > 0.0);
        }
    }
    SUBCASE("dense cap") {
        const Graph g = gen_er(2002, 0.0, 1);
        const GroundedView v(g, pins_of({0}));
        CHECK_THROWS_AS((void)dense_spectrum_oracle(v), Error);
        CHECK_THROWS_AS((void)dense_lambda1(v), Error);
    }
    SUBCASE("bad tolerance") {
        const GroundedView v(path(3), pins_of({0}));
        SpectralOptions opts;
        opts.tol = 0.0;
        CHECK_THROWS_AS((void)smallest_eigenpair(v, opts), Error);
    }
}
