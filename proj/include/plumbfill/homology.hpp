#pragma once

#include "plumbfill/seifert.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumbfill {

// Class a*l - sum c_i*e_i in H_2 of CP^2 # N CP^2-bar. `e` stores the c_i,
// dense over 1..N (index 0 unused).
struct HomologyClass {
    long long l = 0;
    std::vector<long long> e;  // e[k] = c_k for 1 <= k <= N
    int N = 0;

    HomologyClass() = default;
    explicit HomologyClass(int ambient, long long l_coeff = 0) : l(l_coeff), e(ambient + 1, 0), N(ambient) {}

    long long coeff(int k) const { return (k >= 1 && k <= N) ? e[k] : 0; }
    void set_coeff(int k, long long c);

    static HomologyClass line(int ambient) { return HomologyClass(ambient, 1); }
    static HomologyClass exceptional(int ambient, int k);

    // Support: indices with nonzero coefficient, ascending.
    std::vector<int> support() const;
    bool operator==(const HomologyClass&) const = default;
    std::string to_string() const;
};

long long pair(const HomologyClass& x, const HomologyClass& y);
inline long long self_intersection(const HomologyClass& x) { return pair(x, x); }

// Embedded-sphere condition against the canonical class -3l + sum e_i.
bool adjunction_check(const HomologyClass& x);

enum class StrandRole {
    CapCentral,   // the +1 central sphere, class l
    CapArm,       // component (arm, pos) of an essential arm
    Auxiliary,    // one of the b-(n+1) single (-1) arms of the cap
    Exceptional,  // any other strand (all end at self-intersection -1)
};

struct Strand {
    int id = -1;
    HomologyClass cls;
    StrandRole role = StrandRole::Exceptional;
    int arm = -1;  // CapArm: arm index (0-based); Auxiliary: slot index
    int pos = -1;  // CapArm: component position (0-based, 0 = attached to central)

    bool in_cap() const { return role != StrandRole::Exceptional; }
};

// Blows up a common point of the listed strands: each gains -e_{N+1}, and a
// new Exceptional strand with class e_{N+1} is appended. Returns the new
// strand's id.
int blow_up(std::vector<Strand>& strands, const std::vector<int>& point_ids);

// Result of blow_down: the permutation old index -> new index (0 marks the
// removed index), kept for audit trails.
struct BlowDownRecord {
    int removed_index = 0;
    std::vector<int> index_map;  // size N+1, index_map[k] = new index or 0
};

// Removes the strand whose class is exactly e_k, folds the coefficient into
// every other class, and reindexes densely.
BlowDownRecord blow_down(std::vector<Strand>& strands, int exceptional_id);

}  // namespace plumbfill
