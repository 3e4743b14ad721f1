#include <doctest.h>

#include "pinctl/errors.hpp"
#include "pinctl/strategies.hpp"

#include "test_support.hpp"

#include <cmath>

using namespace pinctl;
using namespace pinctl::testing;

namespace {

bool trace_lambda_nondecreasing(const SelectionTrace& t) {
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
        if (t.steps[i].lambda1 < t.steps[i - 1].lambda1 - 1e-9) return false;
    }
    return true;
}

} // namespace

TEST_CASE("degree strategy") {
    SUBCASE("star: unique max degree") {
        const auto t = select_degree(star(3), 1);
        CHECK(t.steps[0].node == 0);
    }
    SUBCASE("K3: all tied, index order") {
        const auto t = select_degree(complete(3), 2);
        CHECK(t.steps[0].node == 0);
        CHECK(t.steps[1].node == 1);
    }
    SUBCASE("P3: center, grounded view diag(1,1)") {
        const auto t = select_degree(path(3), 1);
        CHECK(t.steps[0].node == 1);
        CHECK(t.steps[0].lambda1 == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("betweenness centrality values") {
    SUBCASE("P3: only the center carries a path") {
        const auto bc = betweenness_centrality(path(3));
        CHECK(bc[0] == doctest::Approx(0.0));
        CHECK(bc[1] == doctest::Approx(1.0));
        CHECK(bc[2] == doctest::Approx(0.0));
        CHECK(select_betweenness(path(3), 1).steps[0].node == 1);
    }
    SUBCASE("K3: all pairs adjacent") {
        const auto bc = betweenness_centrality(complete(3));
        for (double v : bc) CHECK(v == doctest::Approx(0.0));
        CHECK(select_betweenness(complete(3), 1).steps[0].node == 0);
    }
    SUBCASE("star S5: C(4,2) leaf pairs through the center") {
        const auto bc = betweenness_centrality(star(4));
        CHECK(bc[0] == doctest::Approx(6.0));
        CHECK(bc[1] == doctest::Approx(0.0));
    }
}

TEST_CASE("BFG closed-form selections") {
    SUBCASE("P3: center beats the end candidate") {
        const auto t = select_bfg(path(3), 1);
        CHECK(t.steps[0].node == 1);
        CHECK(t.steps[0].lambda1 == doctest::Approx(1.0).epsilon(1e-9));
        // losing candidate for reference: lambda_1 = (3 - sqrt(5)) / 2
        const double losing = dense_lambda1(GroundedView(path(3), pins_of({0})));
        CHECK(losing == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0));
    }
    SUBCASE("K3: symmetric tie, smallest index") {
        const auto t = select_bfg(complete(3), 1);
        CHECK(t.steps[0].node == 0);
        CHECK(t.steps[0].lambda1 == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("star S4: center yields diag(1,1,1)") {
        const auto t = select_bfg(star(3), 1);
        CHECK(t.steps[0].node == 0);
        CHECK(t.steps[0].lambda1 == doctest::Approx(1.0).epsilon(1e-9));
        const double leaf = dense_lambda1(GroundedView(star(3), pins_of({1})));
        CHECK(leaf == doctest::Approx(2.0 - std::sqrt(3.0)));
    }
    SUBCASE("all candidates structurally zero still tie-break") {
        const auto t = select_bfg(two_triangles(), 1);
        CHECK(t.steps[0].node == 0);
        CHECK(t.steps[0].lambda1 == 0.0);
    }
}

TEST_CASE("BFG step optimality against the dense oracle") {
    for (int rep = 0; rep < 8; ++rep) {
        const Graph g = random_graph(rep + 300, 8, 40);
        const node_t k = 1 + rep % 4;
        const auto trace = select_bfg(g, k);

        std::vector<char> pinned(g.node_count(), 0);
        PinSet pins;
        pins.origin = "check";
        for (const auto& step : trace.steps) {
            double best = -1.0;
            node_t best_node = -1;
            double chosen_lambda = -1.0;
            for (node_t v = 0; v < g.node_count(); ++v) {
                if (pinned[v]) continue;
                PinSet cand = pins;
                cand.members.push_back(v);
                const double lambda = dense_lambda1(GroundedView(g, cand));
                if (v == step.node) chosen_lambda = lambda;
                if (lambda > best + 1e-9) {
                    best = lambda;
                    best_node = v;
                }
            }
            CAPTURE(rep);
            CHECK(chosen_lambda >= best - 1e-8);
            CHECK(step.node <= best_node);
            pinned[step.node] = 1;
            pins.members.push_back(step.node);
        }
    }
}

TEST_CASE("BFG equals the exhaustive oracle at k = 1") {
    for (int rep = 0; rep < 6; ++rep) {
        const Graph g = random_graph(rep + 900, 6, 16);
        const auto bfg = select_bfg(g, 1);
        const auto best = exhaustive_oracle(g, 1);
        CHECK(bfg.steps[0].node == best.pins.members[0]);
        CHECK(bfg.steps[0].lambda1 == doctest::Approx(best.lambda1).epsilon(1e-8));
    }
}

TEST_CASE("PBO first step and perturbation index") {
    SUBCASE("first selection is a maximum-degree node on connected graphs") {
        for (int rep = 0; rep < 8; ++rep) {
            GenSpec spec;
            spec.model = NetModel::BA;
            spec.n = 40;
            spec.ba_m = 2;
            spec.seed = 700 + rep;
            const Graph g = generate(spec);
            const auto t = select_pbo(g, 1);
            const node_t chosen = t.steps[0].node;
            for (node_t v = 0; v < g.node_count(); ++v) {
                CHECK(g.degree(chosen) >= g.degree(v));
                if (g.degree(v) == g.degree(chosen)) CHECK(chosen <= v);
            }
        }
    }
    SUBCASE("star S4 with leaf pinned: index prefers the center") {
        // by hand from the eigenpair of [[3,-1,-1],[-1,1,0],[-1,0,1]]:
        // delta(center) = (7 sqrt(3) - 9) / 6, delta(leaf) = (2 sqrt(3) - 3) / (6 - 2 sqrt(3))
        const Graph g = star(3);
        const GroundedView v(g, pins_of({1}));
        const auto spectrum = dense_spectrum_oracle(v);
        const double lambda = spectrum.values(0);
        auto delta = [&](std::size_t local) {
            const double ui = spectrum.vectors(local, 0);
            return ui * ui * (v.diag()[local] - 2.0 * lambda);
        };
        CHECK(delta(0) == doctest::Approx((7.0 * std::sqrt(3.0) - 9.0) / 6.0));
        CHECK(delta(0) == doctest::Approx(0.5207).epsilon(1e-3));
        CHECK(delta(1) ==
              doctest::Approx((2.0 * std::sqrt(3.0) - 3.0) / (6.0 - 2.0 * std::sqrt(3.0))));
        CHECK(delta(1) == doctest::Approx(0.1830).epsilon(1e-3));
        CHECK(delta(0) > delta(1));
    }
    SUBCASE("K3 after pinning 0: symmetric tie resolves to node 1") {
        const auto t = select_pbo(complete(3), 2);
        CHECK(t.steps[0].node == 0);
        CHECK(t.steps[1].node == 1);
    }
    SUBCASE("negative indices still produce an argmax (star step 2)") {
        const auto t = select_pbo(star(3), 2);
        CHECK(t.steps[0].node == 0); // center, max degree
        CHECK(t.steps[1].node == 1); // all leaves tie at u_i^2 (1 - 2)
        CHECK(t.steps[1].score <= 0.0);
    }
}

TEST_CASE("traces are deterministic, monotone, prefix-stable") {
    const Graph g = random_graph(4242, 20, 40);
    const node_t k = 8;
    for (Strategy s : {Strategy::Degree, Strategy::Betweenness, Strategy::BFG, Strategy::PBO}) {
        CAPTURE(strategy_name(s));
        const auto a = select(g, s, k);
        const auto b = select(g, s, k);
        REQUIRE(a.steps.size() == static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < a.steps.size(); ++i) {
            CHECK(a.steps[i].node == b.steps[i].node);
            CHECK(a.steps[i].lambda1 == b.steps[i].lambda1);
        }
        CHECK(trace_lambda_nondecreasing(a));

        const auto short_run = select(g, s, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(short_run.steps[i].node == a.steps[i].node);
        }

        // distinct picks
        PinSet p = a.pins();
        CHECK_NOTHROW(p.validate(g));
    }
}

TEST_CASE("exhaustive oracle") {
    SUBCASE("P3 and K3") {
        const auto p3 = exhaustive_oracle(path(3), 1);
        CHECK(p3.pins.members == std::vector<node_t>{1});
        CHECK(p3.lambda1 == doctest::Approx(1.0));
        const auto k3 = exhaustive_oracle(complete(3), 1);
        CHECK(k3.pins.members == std::vector<node_t>{0});
    }
    SUBCASE("P4: best single pin is an interior node") {
        const auto r = exhaustive_oracle(path(4), 1);
        // 4-case enumeration against the dense oracle
        double best = -1.0;
        node_t best_node = -1;
        for (node_t v = 0; v < 4; ++v) {
            const double lambda = dense_lambda1(GroundedView(path(4), pins_of({v})));
            if (lambda > best + 1e-12) {
                best = lambda;
                best_node = v;
            }
        }
        CHECK((best_node == 1 || best_node == 2));
        CHECK(r.pins.members[0] == best_node);
        CHECK(r.lambda1 == doctest::Approx(best));
    }
    SUBCASE("combinatorial cap") {
        const Graph g = gen_er(80, 0.1, 3);
        CHECK_THROWS_AS((void)exhaustive_oracle(g, 10), Error);
    }
}

TEST_CASE("budget validation") {
    const Graph g = path(4);
    CHECK_THROWS_AS((void)select_degree(g, 0), Error);
    CHECK_THROWS_AS((void)select_degree(g, 4), Error);
    CHECK_THROWS_AS((void)select_pbo(g, 5), Error);
}
