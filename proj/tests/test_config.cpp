#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbfill/config.hpp"

using namespace plumbfill;

TEST_CASE("cap_leq on the stated examples") {
    CHECK_FALSE(cap_leq({{-2}, {-2}}, {{-2, -2}, {-3}}));
    CHECK(cap_leq({{-2, -2}, {-3}}, {{-2, -2}, {-3}}));
    CHECK(cap_leq({{-2}}, {{-3, -2}}));
    std::vector<std::vector<long long>> one{{-2}}, two{{-2}, {-2}};
    CHECK_FALSE(cap_leq(one, two));
}

TEST_CASE("minimal resolution of Y(-5; 2/1 x3)") {
    SeifertData data(5, {{2, 1}, {2, 1}, {2, 1}});
    auto d = minimal_resolution_descriptor(data);
    CHECK(d.b2 == plumbing_graph(data).vertex_count());
    CHECK(d.minimal_resolution);
    CHECK(classify_arrangement(d.arrangement) == ArrangementClass{ArrangementClass::Concurrent, 4, 4});
    CHECK(d.config.N == 8);
    CHECK_NOTHROW(d.config.validate());
}

TEST_CASE("initial configurations") {
    auto cap = build_cap(SeifertData(6, {{2, 1}, {2, 1}, {2, 1}}));
    auto inits = initial_configurations(cap);
    REQUIRE(inits.size() == 3);
    CHECK(inits[0].label == 'a');
    CHECK(inits[1].label == 'b');
    CHECK(inits[2].label == 'c');
    CHECK_FALSE(inits[0].boundary_case);
    // (a): five lines of degree 0 and the multi-point exceptional
    int zeros = 0;
    for (const auto& s : inits[0].config.strands)
        if (s.cls.l == 1 && s.role != StrandRole::CapCentral && self_intersection(s.cls) == 0) ++zeros;
    CHECK(zeros == 5);
    // (b): every line but the first drops to -1 and the e_i are marked
    CHECK(inits[1].marked_ids.size() == 4);
    // (c): free-line shape
    CHECK(inits[2].marked_ids.size() == 4);
}

TEST_CASE("standard blow-ups complete a partial cap") {
    SeifertData data(4, {{3, 1}, {2, 1}});
    auto cap = build_cap(data);
    auto inits = initial_configurations(cap);
    auto done = standard_blowups(inits[0].config, cap);
    CHECK_NOTHROW(done.validate());
    CHECK(b2_of(done) == plumbing_graph(data).vertex_count());
}

TEST_CASE("enumeration for Y(-5; 2/1 x3) finds the two fillings") {
    SeifertData data(5, {{2, 1}, {2, 1}, {2, 1}});
    auto res = enumerate_fillings(data);
    CHECK(res.complete);
    REQUIRE(res.fillings.size() == 2);
    int minres = 0, typeb = 0;
    for (const auto& f : res.fillings) {
        CHECK_NOTHROW(f.config.validate());
        CHECK(multi_point_count(f.arrangement) <= 1);
        if (f.minimal_resolution) {
            ++minres;
            CHECK(f.b2 == 4);
            CHECK(f.type_tag == FillingType::A);
        } else {
            CHECK(f.b2 == 2);
            CHECK(f.type_tag == FillingType::B);
            ++typeb;
        }
    }
    CHECK(minres == 1);
    CHECK(typeb == 1);
}

TEST_CASE("enumeration for Y(-6; 2/1 x3): only the minimal resolution") {
    SeifertData data(6, {{2, 1}, {2, 1}, {2, 1}});
    auto res = enumerate_fillings(data);
    REQUIRE(res.fillings.size() == 1);
    CHECK(res.fillings[0].minimal_resolution);
    CHECK(res.fillings[0].type_tag == FillingType::A);
}

TEST_CASE("config equivalence is blind to index relabeling") {
    SeifertData data(5, {{2, 1}, {2, 1}, {2, 1}});
    auto d = minimal_resolution_descriptor(data);
    auto other = d.config;
    // swap two interchangeable free indices living on different arms
    for (auto& s : other.strands) {
        auto c5 = s.cls.coeff(5), c7 = s.cls.coeff(7);
        s.cls.set_coeff(5, c7);
        s.cls.set_coeff(7, c5);
    }
    CHECK(config_equivalent(d.config, other));
    CHECK(canonical_key(d.config) == canonical_key(other));
}

TEST_CASE("every enumerated strand passes adjunction and the -1 rule") {
    SeifertData data(6, {{5, 4}, {3, 1}, {3, 1}});
    auto res = enumerate_fillings(data);
    CHECK(res.fillings.size() >= 2);
    bool saw_c = false;
    for (const auto& f : res.fillings) {
        for (const auto& s : f.config.strands) {
            CHECK(adjunction_check(s.cls));
            if (s.role == StrandRole::Exceptional) CHECK(self_intersection(s.cls) == -1);
        }
        if (f.type_tag == FillingType::C) saw_c = true;
        // blowing down every exceptional strand repeatedly lands on the
        // arrangement with the complex line at +1: b2 accounting must agree
        CHECK(f.b2 == (f.config.N + 1) - f.config.cap_strand_count());
    }
    CHECK(saw_c);
}
