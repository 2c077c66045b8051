#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbfill/cap.hpp"
#include "plumbfill/rbd.hpp"

#include <algorithm>
#include <numeric>

using namespace plumbfill;

TEST_CASE("build_cap examples") {
    {
        auto cap = build_cap(SeifertData(5, {{2, 1}, {2, 1}, {2, 1}}));
        CHECK(cap.essential_arms == std::vector<std::vector<long long>>{{-2}, {-2}, {-2}});
        CHECK(cap.minus_one_arm_count == 1);
    }
    {
        auto cap = build_cap(SeifertData(4, {{3, 1}, {3, 1}, {3, 1}}));
        CHECK(cap.essential_arms == std::vector<std::vector<long long>>{{-2, -2}, {-2, -2}, {-2, -2}});
        CHECK(cap.minus_one_arm_count == 0);
    }
    CHECK_THROWS_AS(build_cap(SeifertData(3, {{2, 1}, {2, 1}, {2, 1}})), CapUnavailable);
    try {
        build_cap(SeifertData(3, {{2, 1}, {2, 1}, {2, 1}}));
    } catch (const CapUnavailable& e) {
        CHECK(e.b == 3);
        CHECK(e.n == 3);
    }
}

TEST_CASE("cap arms are continued-fraction duals of the plumbing arms") {
    for (long long alpha = 2; alpha <= 40; ++alpha)
        for (long long beta = 1; beta < alpha; ++beta) {
            if (std::gcd(alpha, beta) != 1) continue;
            SeifertData data(3, {{alpha, beta}});
            auto cap = build_cap(data);
            auto graph = plumbing_graph(data);
            std::vector<long long> plumb, dual;
            for (long long w : graph.arms[0]) plumb.push_back(-w);
            for (long long w : cap.essential_arms[0]) dual.push_back(-w);
            CHECK(cf_dual(plumb) == dual);
        }
}

TEST_CASE("gamma_pqr_graph shapes") {
    auto g0 = gamma_pqr_graph(0, 0, 0);
    CHECK(g0.central_weight == -4);
    CHECK(g0.arms == std::vector<std::vector<long long>>{{-3}, {-3}, {-3}});
    CHECK(g0.vertex_count() == 4);

    auto g1 = gamma_pqr_graph(1, 0, 0);
    CHECK(g1.central_weight == -4);
    CHECK(g1.arms == std::vector<std::vector<long long>>{{-4}, {-3}, {-2, -3}});

    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q)
            for (int r = 0; r <= 3; ++r) {
                CHECK(gamma_pqr_graph(p, q, r).vertex_count() == p + q + r + 4);
                CHECK(is_negative_definite(intersection_matrix(gamma_pqr_graph(p, q, r))));
            }
}

TEST_CASE("rational ball catalog") {
    CHECK(admits_rational_ball(RbdGraph::linear({-4})));
    CHECK(admits_rational_ball(RbdGraph::linear({-5, -2})));
    CHECK(admits_rational_ball(RbdGraph::linear({-2, -5})));
    CHECK(admits_rational_ball(RbdGraph::linear({-6, -2, -2})));
    CHECK_FALSE(admits_rational_ball(RbdGraph::linear({-2, -2})));
    CHECK_FALSE(admits_rational_ball(RbdGraph::linear({-5})));
    CHECK_FALSE(admits_rational_ball(RbdGraph::linear({-3, -3})));
    CHECK(admits_rational_ball(RbdGraph::gamma(0, 0, 0)));
    CHECK(admits_rational_ball(RbdGraph::gamma(2, 1, 0)));
}

TEST_CASE("cap_of_gamma_pqr") {
    auto c0 = cap_of_gamma_pqr(0, 0, 0);
    CHECK(c0.essential_arms == std::vector<std::vector<long long>>{{-2, -2}, {-2, -2}, {-2, -2}});
    // arm heads follow the duals of the plumbing arms; the drawn labels in
    // the source figure carry q and r exchanged relative to the graph figure
    auto c = cap_of_gamma_pqr(1, 2, 3);
    CHECK(c.essential_arms ==
          std::vector<std::vector<long long>>{{-4, -2, -2}, {-5, -2, -2, -2}, {-3, -2, -2, -2, -2}});
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int r = 0; r <= 2; ++r) {
                auto cap = cap_of_gamma_pqr(p, q, r);
                REQUIRE(cap.essential_arms.size() == 3);
                CHECK(cap.essential_arms[0].size() == static_cast<size_t>(p + 2));
                CHECK(cap.essential_arms[1].size() == static_cast<size_t>(q + 2));
                CHECK(cap.essential_arms[2].size() == static_cast<size_t>(r + 2));
            }
}

TEST_CASE("cap_of_gamma_pqr matches the Seifert cap of the gamma boundary") {
    // The boundary of Gamma_{p,q,r} is the Seifert manifold whose plumbing
    // graph is Gamma itself; its cap must agree arm-for-arm with the figure.
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int r = 0; r <= 2; ++r) {
                auto graph = gamma_pqr_graph(p, q, r);
                std::vector<std::pair<long long, long long>> pairs;
                for (const auto& arm : graph.arms) {
                    std::vector<long long> cf;
                    for (long long w : arm) cf.push_back(-w);
                    auto v = cf_evaluate(cf);
                    pairs.emplace_back(numerator(v).convert_to<long long>(),
                                       denominator(v).convert_to<long long>());
                }
                SeifertData data(4, pairs);
                auto via_seifert = build_cap(data).essential_arms;
                auto via_figure = cap_of_gamma_pqr(p, q, r).essential_arms;
                std::sort(via_seifert.begin(), via_seifert.end());
                std::sort(via_figure.begin(), via_figure.end());
                CHECK(via_seifert == via_figure);
            }
}

TEST_CASE("cap_of_linear via the realization search") {
    CHECK_THROWS_AS(cap_of_linear(RbdGraph::linear({-2, -2})), domain_error);
    auto c4 = cap_of_linear(RbdGraph::linear({-4}));
    // frozen from the realization search: the smallest complement of a -4
    // sphere blown up from a two-line point
    CHECK(c4.essential_arms == std::vector<std::vector<long long>>{{-1}, {-1, -2}});
    auto c52 = cap_of_linear(RbdGraph::linear({-5, -2}));
    CHECK(c52.essential_arms.size() >= 2);
}
