#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbfill/arrangement.hpp"

using namespace plumbfill;

TEST_CASE("make_snm normal forms") {
    auto s33 = make_snm(3, 3);
    CHECK(s33.n_lines == 3);
    CHECK(s33.points == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2, 3}});
    CHECK(multi_point_count(s33) == 1);

    auto s43 = make_snm(4, 3);
    CHECK(multi_point_count(s43) == 1);
    // the triple point plus the three double points with line 4
    int doubles = 0;
    for (const auto& pt : s43.points)
        if (pt.front() != 0 && pt.size() == 2) ++doubles;
    CHECK(doubles == 3);

    CHECK(multi_point_count(make_snm(4, 4)) == 1);
    CHECK(multi_point_count(make_snm(5, 3)) == 1);
    CHECK(multi_point_count(make_snm(3, 0)) == 0);

    CHECK_THROWS_AS(make_snm(2, 3), domain_error);
    CHECK_THROWS_AS(make_snm(4, 2), domain_error);
    CHECK_THROWS_AS(make_snm(0, 0), domain_error);
}

TEST_CASE("pairwise-once invariant across normal forms") {
    for (int n = 1; n <= 12; ++n) {
        CHECK_NOTHROW(make_snm(n, 0).validate());
        for (int m = 3; m <= n; ++m) CHECK_NOTHROW(make_snm(n, m).validate());
    }
}

TEST_CASE("classification") {
    CHECK(classify_arrangement(make_snm(5, 4)) == ArrangementClass{ArrangementClass::Concurrent, 5, 4});
    CHECK(classify_arrangement(make_snm(4, 0)) == ArrangementClass{ArrangementClass::Generic, 4, 0});
    for (int n = 3; n <= 12; ++n)
        for (int m = 3; m <= n; ++m) {
            auto cls = classify_arrangement(make_snm(n, m));
            CHECK(cls == ArrangementClass{ArrangementClass::Concurrent, n, m});
        }
    // two triple points among six lines
    LineArrangement two;
    two.n_lines = 6;
    two.points = {{1, 2, 3}, {4, 5, 6}};
    for (int i = 1; i <= 3; ++i)
        for (int j = 4; j <= 6; ++j) two.points.push_back({i, j});
    for (int i = 1; i <= 6; ++i) two.points.push_back({0, i});
    two.canonicalize();
    CHECK(classify_arrangement(two).kind == ArrangementClass::NotNormalForm);
}

TEST_CASE("invalid arrangements are rejected") {
    LineArrangement bad;
    bad.n_lines = 2;
    bad.points = {{1, 2}, {1, 2}, {0, 1}, {0, 2}};
    CHECK_THROWS_AS(bad.validate(), domain_error);

    LineArrangement complex_multi;
    complex_multi.n_lines = 2;
    complex_multi.points = {{0, 1, 2}};
    CHECK_THROWS_AS(complex_multi.validate(), domain_error);
}

TEST_CASE("arrangement_of_filling") {
    // three lines through one blown-up point
    {
        std::vector<HomologyClass> lines;
        for (int i = 0; i < 3; ++i) {
            HomologyClass x(1, 1);
            x.set_coeff(1, 1);
            lines.push_back(x);
        }
        auto S = arrangement_of_filling(lines);
        CHECK(S == make_snm(3, 3));
    }
    // generic triangle
    {
        HomologyClass a(3, 1), b(3, 1), c(3, 1);
        a.set_coeff(1, 1);
        a.set_coeff(2, 1);
        b.set_coeff(1, 1);
        b.set_coeff(3, 1);
        c.set_coeff(2, 1);
        c.set_coeff(3, 1);
        auto S = arrangement_of_filling({a, b, c});
        CHECK(S == make_snm(3, 0));
        CHECK(multi_point_count(S) == 0);
    }
    // pairwise-once violations are flagged
    {
        HomologyClass a(2, 1), b(2, 1);
        a.set_coeff(1, 1);
        a.set_coeff(2, 1);
        b.set_coeff(1, 1);
        b.set_coeff(2, 1);
        CHECK_THROWS_AS(arrangement_of_filling({a, b}), domain_error);
    }
}
