#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbfill/homology.hpp"

#include <random>

using namespace plumbfill;

namespace {

Strand make_strand(int id, HomologyClass cls) {
    Strand s;
    s.id = id;
    s.cls = std::move(cls);
    return s;
}

}  // namespace

TEST_CASE("pairing basics") {
    HomologyClass l = HomologyClass::line(2);
    HomologyClass e1 = HomologyClass::exceptional(2, 1);
    CHECK(pair(l, l) == 1);
    CHECK(pair(e1, e1) == -1);
    HomologyClass a(3, 1), b(3, 1);
    a.set_coeff(1, 1);
    a.set_coeff(2, 1);
    b.set_coeff(1, 1);
    b.set_coeff(3, 1);
    CHECK(pair(a, b) == 0);
    HomologyClass other(4);
    CHECK_THROWS_AS(pair(a, other), domain_error);
}

TEST_CASE("pair is symmetric and bilinear") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int N = 1 + static_cast<int>(rng() % 6);
        auto rand_class = [&]() {
            HomologyClass x(N, static_cast<long long>(rng() % 5) - 2);
            for (int k = 1; k <= N; ++k) x.set_coeff(k, static_cast<long long>(rng() % 5) - 2);
            return x;
        };
        HomologyClass x = rand_class(), y = rand_class(), z = rand_class();
        CHECK(pair(x, y) == pair(y, x));
        HomologyClass yz(N, y.l + z.l);
        for (int k = 1; k <= N; ++k) yz.set_coeff(k, y.coeff(k) + z.coeff(k));
        CHECK(pair(x, yz) == pair(x, y) + pair(x, z));
    }
}

TEST_CASE("adjunction examples") {
    CHECK(adjunction_check(HomologyClass::line(1)));
    CHECK(adjunction_check(HomologyClass::exceptional(1, 1)));
    HomologyClass conic(1, 2);
    CHECK(adjunction_check(conic));
    HomologyClass bad(2, 1);
    bad.set_coeff(1, 2);
    CHECK_FALSE(adjunction_check(bad));
}

TEST_CASE("blow_up examples") {
    // one line, blow up a free point
    std::vector<Strand> strands{make_strand(0, HomologyClass::line(0))};
    int e = blow_up(strands, {0});
    REQUIRE(strands.size() == 2);
    CHECK(self_intersection(strands[0].cls) == 0);
    CHECK(strands[0].cls.l == 1);
    CHECK(self_intersection(strands[1].cls) == -1);
    CHECK(strands[1].id == e);
    CHECK(pair(strands[0].cls, strands[1].cls) == 1);

    // two lines meeting once
    std::vector<Strand> pairls{make_strand(0, HomologyClass::line(0)),
                               make_strand(1, HomologyClass::line(0))};
    blow_up(pairls, {0, 1});
    CHECK(pair(pairls[0].cls, pairls[1].cls) == 0);
    CHECK(pair(pairls[0].cls, pairls[2].cls) == 1);
    CHECK(pair(pairls[1].cls, pairls[2].cls) == 1);

    // triple point
    std::vector<Strand> triple{make_strand(0, HomologyClass::line(0)),
                               make_strand(1, HomologyClass::line(0)),
                               make_strand(2, HomologyClass::line(0))};
    blow_up(triple, {0, 1, 2});
    for (int i = 0; i < 3; ++i) {
        CHECK(self_intersection(triple[i].cls) == 0);
        CHECK(pair(triple[i].cls, triple[3].cls) == 1);
        for (int j = i + 1; j < 3; ++j) CHECK(pair(triple[i].cls, triple[j].cls) == 0);
    }

    CHECK_THROWS_AS(blow_up(triple, {}), domain_error);
    CHECK_THROWS_AS(blow_up(triple, {99}), domain_error);
}

TEST_CASE("blow_down examples") {
    {
        std::vector<Strand> s{make_strand(0, HomologyClass::line(0))};
        int e = blow_up(s, {0});
        auto rec = blow_down(s, e);
        CHECK(rec.removed_index == 1);
        REQUIRE(s.size() == 1);
        CHECK(s[0].cls == HomologyClass::line(0));
    }
    {
        // blow down e2 in {l-e1-e2, l-e2, e2}: their pairing rises 0 -> 1
        HomologyClass a(2, 1), b(2, 1);
        a.set_coeff(1, 1);
        a.set_coeff(2, 1);
        b.set_coeff(2, 1);
        std::vector<Strand> s{make_strand(0, a), make_strand(1, b),
                              make_strand(2, HomologyClass::exceptional(2, 2))};
        CHECK(pair(s[0].cls, s[1].cls) == 0);
        blow_down(s, 2);
        REQUIRE(s.size() == 2);
        CHECK(pair(s[0].cls, s[1].cls) == 1);
        CHECK(s[0].cls.N == 1);
        CHECK(s[0].cls.coeff(1) == 1);
        CHECK(s[1].cls.coeff(1) == 0);
    }
    {
        std::vector<Strand> s{make_strand(0, HomologyClass::line(1)),
                              make_strand(1, HomologyClass::exceptional(1, 1))};
        CHECK_THROWS_AS(blow_down(s, 0), domain_error);
    }
}

TEST_CASE("blow_up then blow_down is the identity on random configurations") {
    std::mt19937 rng(20240810);
    for (int trial = 0; trial < 1000; ++trial) {
        int N = static_cast<int>(rng() % 13);
        int count = 2 + static_cast<int>(rng() % 4);
        std::vector<Strand> strands;
        for (int i = 0; i < count; ++i) {
            HomologyClass x(N, 1);
            int picks = static_cast<int>(rng() % 3);
            for (int p = 0; p < picks && N > 0; ++p) x.set_coeff(1 + static_cast<int>(rng() % N), 1);
            strands.push_back(make_strand(i, x));
        }
        auto before = strands;
        std::vector<int> point;
        point.push_back(0);
        if (count > 1 && pair(strands[0].cls, strands[1].cls) >= 1 && rng() % 2) point.push_back(1);
        int e = blow_up(strands, point);
        for (size_t i = 0; i < before.size(); ++i)
            if (adjunction_check(before[i].cls)) CHECK(adjunction_check(strands[i].cls));
        long long drop = 0;
        for (int id : point) {
            long long then = self_intersection(before[id].cls);
            long long now = self_intersection(strands[id].cls);
            CHECK(now == then - 1);
            drop += then - now;
        }
        CHECK(drop == static_cast<long long>(point.size()));
        CHECK(self_intersection(strands.back().cls) == -1);
        blow_down(strands, e);
        REQUIRE(strands.size() == before.size());
        for (size_t i = 0; i < before.size(); ++i) {
            CHECK(strands[i].cls == before[i].cls);
            for (size_t j = i + 1; j < before.size(); ++j)
                CHECK(pair(strands[i].cls, strands[j].cls) == pair(before[i].cls, before[j].cls));
        }
    }
}
