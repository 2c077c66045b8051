#pragma once

#include "plumbfill/homology.hpp"

#include <set>
#include <string>
#include <vector>

namespace plumbfill {

// Combinatorial symplectic line arrangement. Line 0 is the complex line; the
// symplectic lines are 1..n_lines. Points are canonically sorted member
// lists. Every pair of lines shares exactly one point, and the complex line
// never sits on a point with two or more symplectic lines.
struct LineArrangement {
    int n_lines = 0;
    std::vector<std::vector<int>> points;

    void validate() const;
    void canonicalize();
    bool operator==(const LineArrangement&) const = default;
};

struct ArrangementClass {
    enum Kind { Generic, Concurrent, NotNormalForm } kind = Generic;
    int n = 0;
    int m = 0;  // Concurrent only, m >= 3

    bool operator==(const ArrangementClass&) const = default;
    std::string to_string() const;
};

// Points with at least three symplectic lines (the complex line does not
// count toward the three).
int multi_point_count(const LineArrangement& S);

// Normal form S_{n,m}: lines 1..m concurrent, everything else double points.
// m = 0 builds the generic arrangement.
LineArrangement make_snm(int n, int m);

// Reads the arrangement off the first-component classes of the cap arms:
// two lines share the point labelled by an exceptional index iff both
// classes contain it.
LineArrangement arrangement_of_filling(const std::vector<HomologyClass>& first_arm_classes);

ArrangementClass classify_arrangement(const LineArrangement& S);

}  // namespace plumbfill
