#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbfill/rbd.hpp"

#include <algorithm>
#include <set>

using namespace plumbfill;

TEST_CASE("candidate graphs") {
    auto gs = candidate_graphs(2, 4);
    bool has4 = false, has52 = false;
    for (const auto& g : gs) {
        if (g.kind == RbdGraph::Linear && g.weights == std::vector<long long>{-4}) has4 = true;
        if (g.kind == RbdGraph::Linear && g.weights == std::vector<long long>{-5, -2}) has52 = true;
        CHECK(admits_rational_ball(g));
        CHECK(g.vertex_count() <= 4);
    }
    CHECK(has4);
    CHECK(has52);
    bool gamma = false;
    for (const auto& g : candidate_graphs(3, 5))
        if (g.kind == RbdGraph::GammaPQR) gamma = true;
    CHECK(gamma);
}

TEST_CASE("local realizations of a -4 sphere") {
    std::vector<std::vector<long long>> bounds2{{-2, -2}, {-2, -2}};
    auto r2 = realize_from_point(RbdGraph::linear({-4}), 2, bounds2);
    REQUIRE(!r2.empty());
    bool saw = false;
    for (const auto& r : r2) {
        CHECK(r.connectors.size() == 2);
        auto chains = r.chains;
        std::sort(chains.begin(), chains.end());
        if (chains == std::vector<std::vector<long long>>{{-1, -2}, {-1}} ||
            chains == std::vector<std::vector<long long>>{{-1}, {-1, -2}})
            saw = true;
    }
    CHECK(saw);

    std::vector<std::vector<long long>> bounds3{{-1}, {-1}, {-1}};
    auto r3 = realize_from_point(RbdGraph::linear({-4}), 3, bounds3);
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].chains == std::vector<std::vector<long long>>{{-1}, {-1}, {-1}});
    CHECK(r3[0].index_count == 4);
}

TEST_CASE("local realization of Gamma_000") {
    std::vector<std::vector<long long>> bounds{{-2, -2}, {-2, -2}, {-2, -2}};
    auto rs = realize_from_point(RbdGraph::gamma(0, 0, 0), 3, bounds);
    REQUIRE(!rs.empty());
    bool saw = false;
    for (const auto& r : rs) {
        CHECK(r.connectors.size() == 3);
        if (r.chains == std::vector<std::vector<long long>>{{-2, -2}, {-2, -2}, {-2, -2}}) saw = true;
    }
    CHECK(saw);
}

TEST_CASE("yn_seifert") {
    CHECK(yn_seifert(3) == SeifertData(6, {{2, 1}, {2, 1}, {3, 1}, {7, 3}, {7, 5}}));
    CHECK_THROWS_AS(yn_seifert(2), domain_error);
    for (int n = 3; n <= 6; ++n) {
        SeifertData data = yn_seifert(n);
        CHECK(data.b == n + 3);
        CHECK(data.arm_count() == n + 2);  // boundary case b = (arm count) + 1
        auto cap = build_cap(data);
        CHECK(cap.minus_one_arm_count == 0);
        std::vector<std::vector<long long>> want;
        for (int i = 0; i < n - 1; ++i) want.push_back({-2});
        want.push_back({-2, -2});
        want.push_back({-2, -(static_cast<long long>(n) + 1)});
        want.push_back({-(static_cast<long long>(n) + 1), -2});
        auto got = cap.essential_arms;
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
}

TEST_CASE("wn_filling structure") {
    for (int n = 3; n <= 4; ++n) {
        auto w = wn_filling(n);
        CHECK_NOTHROW(w.config.validate());
        auto cls = classify_arrangement(w.arrangement);
        CHECK(cls == ArrangementClass{ArrangementClass::Concurrent, n + 2, n + 1});
        CHECK(w.b2 == n - 1);  // regression constant from the scripted construction
        CHECK(w.config.N == 2 * n + 4);
        CHECK(w.type_tag == FillingType::BoundaryCase);
        CHECK_FALSE(w.minimal_resolution);
        // the homology class of every leftover (-1) strand shows up in at
        // least two arms of the cap
        for (const auto& s : w.config.strands) {
            if (s.role != StrandRole::Exceptional) continue;
            int lead = 0;
            for (int k = 1; k <= w.config.N && !lead; ++k)
                if (s.cls.coeff(k) == -1) lead = k;
            std::set<std::pair<int, int>> arms_touched;
            for (const auto& t : w.config.strands) {
                if (!t.in_cap() || t.role == StrandRole::CapCentral) continue;
                if (t.cls.coeff(lead) > 0)
                    arms_touched.insert({t.role == StrandRole::Auxiliary ? 1 : 0, t.arm});
            }
            CHECK(arms_touched.size() >= 2);
        }
    }
}

TEST_CASE("minimal resolution reaches the free-line filling of Y(-5; 2/1 x3)") {
    SeifertData data(5, {{2, 1}, {2, 1}, {2, 1}});
    auto fillings = enumerate_fillings(data).fillings;
    REQUIRE(fillings.size() == 2);
    const FillingDescriptor* target = nullptr;
    for (const auto& f : fillings)
        if (!f.minimal_resolution) target = &f;
    REQUIRE(target);

    auto start = minimal_resolution_descriptor(data);
    auto succ = rbd_successors(start);
    CHECK(!succ.empty());
    bool reached = false;
    for (auto& [step, s] : succ) {
        CHECK(s.b2 == start.b2 - step.graph.vertex_count());
        CHECK(multi_point_count(s.arrangement) <= multi_point_count(start.arrangement));
        if (config_equivalent(s.config, target->config)) {
            reached = true;
            CHECK(step.graph.vertex_count() == 2);  // [-5,-2]
        }
    }
    CHECK(reached);

    auto steps = synthesize_sequence(*target);
    REQUIRE(steps.size() == 1);
    std::string diag;
    bool ok = verify_sequence(start, steps, *target, &diag);
    INFO(diag);
    CHECK(ok);

    CHECK(synthesize_sequence(start).empty());
    CHECK(verify_sequence(start, {}, start, &diag));
    CHECK_FALSE(verify_sequence(start, {}, *target, &diag));

    auto cert = check_reachable(*target, 3);
    CHECK(cert.verdict == ReachabilityCertificate::Reachable);
    CHECK(verify_sequence(start, cert.steps, *target, &diag));
}

TEST_CASE("type C filling of Y(-6; 5/4, 3/1, 3/1) synthesizes") {
    SeifertData data(6, {{5, 4}, {3, 1}, {3, 1}});
    auto fillings = enumerate_fillings(data).fillings;
    const FillingDescriptor* target = nullptr;
    for (const auto& f : fillings)
        if (f.type_tag == FillingType::C) target = &f;
    REQUIRE(target);
    auto steps = synthesize_sequence(*target);
    CHECK(!steps.empty());
    std::string diag;
    bool ok = verify_sequence(minimal_resolution_descriptor(data), steps, *target, &diag);
    INFO(diag);
    CHECK(ok);
}

TEST_CASE("obstruction certificate for two multi-points") {
    // Y(-7; 4/3 x6): six [-4] arms; lines 1-3 and 4-6 meet in two triple
    // points, all other intersections transverse doubles.
    SeifertData data(7, {{4, 3}, {4, 3}, {4, 3}, {4, 3}, {4, 3}, {4, 3}});
    auto cap = build_cap(data);
    REQUIRE(cap.essential_arms == std::vector<std::vector<long long>>(6, {-4}));
    REQUIRE(cap.minus_one_arm_count == 0);

    int N = 2 + 9 + 6;
    CurveConfiguration c;
    c.N = N;
    c.arm_weights = cap.essential_arms;
    c.aux_arm_count = 0;
    Strand central;
    central.id = 0;
    central.cls = HomologyClass::line(N);
    central.role = StrandRole::CapCentral;
    c.strands.push_back(central);
    int dbl = 3;
    std::vector<std::vector<int>> on_line(6);
    for (int i = 0; i < 3; ++i) on_line[i].push_back(1);
    for (int i = 3; i < 6; ++i) on_line[i].push_back(2);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) {
            on_line[i].push_back(dbl);
            on_line[j].push_back(dbl);
            ++dbl;
        }
    for (int i = 0; i < 6; ++i) on_line[i].push_back(12 + i);
    for (int i = 0; i < 6; ++i) {
        Strand t;
        t.id = 1 + i;
        t.cls = HomologyClass(N, 1);
        for (int k : on_line[i]) t.cls.set_coeff(k, 1);
        t.role = StrandRole::CapArm;
        t.arm = i;
        t.pos = 0;
        c.strands.push_back(t);
    }
    for (int k = 1; k <= N; ++k) {
        Strand e;
        e.id = 7 + k;
        e.cls = HomologyClass(N);
        e.cls.set_coeff(k, -1);
        e.role = StrandRole::Exceptional;
        c.strands.push_back(e);
    }
    c.validate();
    FillingDescriptor d;
    d.seifert = data;
    d.config = c;
    d.arrangement = arrangement_of_filling(c.first_arm_classes());
    d.b2 = b2_of(c);
    CHECK(multi_point_count(d.arrangement) == 2);

    auto cert = check_reachable(d, 3);
    CHECK(cert.verdict == ReachabilityCertificate::Obstructed);
    CHECK(cert.n_s == 2);
}

TEST_CASE("wn_filling appears among the boundary-case fillings") {
    auto w = wn_filling(3);
    auto res = enumerate_fillings(w.seifert);
    CHECK(res.complete);
    bool found = false;
    for (const auto& f : res.fillings)
        if (config_equivalent(f.config, w.config)) found = true;
    CHECK(found);
}
