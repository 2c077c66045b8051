#include "plumbfill/arrangement.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace plumbfill {

void LineArrangement::validate() const {
    std::map<std::pair<int, int>, int> pair_count;
    for (const auto& pt : points) {
        if (pt.size() < 2) throw domain_error("arrangement: point with fewer than two lines");
        int symplectic = 0;
        for (int line : pt) {
            if (line < 0 || line > n_lines) throw domain_error("arrangement: line index out of range");
            if (line > 0) ++symplectic;
        }
        if (pt.front() == 0 && symplectic >= 2)
            throw domain_error("arrangement: complex line on a point with two or more symplectic lines");
        for (size_t a = 0; a < pt.size(); ++a)
            for (size_t b = a + 1; b < pt.size(); ++b)
                ++pair_count[{std::min(pt[a], pt[b]), std::max(pt[a], pt[b])}];
    }
    for (int i = 0; i <= n_lines; ++i)
        for (int j = i + 1; j <= n_lines; ++j) {
            auto it = pair_count.find({i, j});
            int c = it == pair_count.end() ? 0 : it->second;
            if (c != 1) throw domain_error("arrangement: lines must meet exactly once");
        }
}

void LineArrangement::canonicalize() {
    for (auto& pt : points) std::sort(pt.begin(), pt.end());
    std::sort(points.begin(), points.end());
}

std::string ArrangementClass::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Generic: os << "Generic(" << n << ")"; break;
        case Concurrent: os << "Concurrent(" << n << "," << m << ")"; break;
        case NotNormalForm: os << "NotNormalForm(" << n << ")"; break;
    }
    return os.str();
}

int multi_point_count(const LineArrangement& S) {
    int count = 0;
    for (const auto& pt : S.points) {
        int symplectic = 0;
        for (int line : pt)
            if (line > 0) ++symplectic;
        if (symplectic >= 3) ++count;
    }
    return count;
}

LineArrangement make_snm(int n, int m) {
    if (n < 1) throw domain_error("make_snm: need at least one line");
    if (m == 1 || m == 2) throw domain_error("make_snm: m in {1,2} carries no multi-point; use m = 0");
    if (m != 0 && (m < 3 || m > n)) throw domain_error("make_snm: require 3 <= m <= n");
    LineArrangement S;
    S.n_lines = n;
    if (m >= 3) {
        std::vector<int> multi;
        for (int i = 1; i <= m; ++i) multi.push_back(i);
        S.points.push_back(multi);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!(j <= m)) S.points.push_back({i, j});
    for (int i = 1; i <= n; ++i) S.points.push_back({0, i});
    S.canonicalize();
    S.validate();
    return S;
}

LineArrangement arrangement_of_filling(const std::vector<HomologyClass>& first_arm_classes) {
    int n = static_cast<int>(first_arm_classes.size());
    if (n == 0) throw domain_error("arrangement_of_filling: no lines");
    int N = first_arm_classes.front().N;
    for (const auto& c : first_arm_classes) {
        if (c.N != N) throw domain_error("arrangement_of_filling: ambient mismatch");
        if (c.l != 1) throw domain_error("arrangement_of_filling: class is not a line");
        if (!adjunction_check(c)) throw domain_error("arrangement_of_filling: adjunction fails");
    }
    // Each un-blown-up pair of lines must meet exactly once: with 0/1
    // coefficients that means exactly one shared exceptional index.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int shared = 0;
            for (int k = 1; k <= N; ++k)
                if (first_arm_classes[i].coeff(k) != 0 && first_arm_classes[j].coeff(k) != 0) ++shared;
            if (shared != 1)
                throw domain_error("arrangement_of_filling: pairwise-once violated");
        }
    LineArrangement S;
    S.n_lines = n;
    for (int k = 1; k <= N; ++k) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (first_arm_classes[i].coeff(k) != 0) members.push_back(i + 1);
        if (members.size() >= 2) S.points.push_back(members);
    }
    for (int i = 1; i <= n; ++i) S.points.push_back({0, i});
    S.canonicalize();
    S.validate();
    return S;
}

ArrangementClass classify_arrangement(const LineArrangement& S) {
    S.validate();
    int multis = multi_point_count(S);
    ArrangementClass c;
    c.n = S.n_lines;
    if (multis >= 2) {
        c.kind = ArrangementClass::NotNormalForm;
        return c;
    }
    if (multis == 0) {
        c.kind = ArrangementClass::Generic;
        return c;
    }
    c.kind = ArrangementClass::Concurrent;
    for (const auto& pt : S.points) {
        int symplectic = 0;
        for (int line : pt)
            if (line > 0) ++symplectic;
        if (symplectic >= 3) c.m = symplectic;
    }
    return c;
}

}  // namespace plumbfill
