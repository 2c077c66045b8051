#pragma once

#include "plumbfill/seifert.hpp"

#include <string>
#include <vector>

namespace plumbfill {

// The concave cap: central +1 sphere, one essential arm per singular fiber
// (weights -a_{i1},...,-a_{im_i}), plus b-(n+1) extra arms made of a single
// (-1) sphere each. Caps arising as K_G carry -1 entries inside the
// essential arms; build_cap output always has entries <= -2.
struct ConcaveCap {
    std::vector<std::vector<long long>> essential_arms;  // negative weights
    int minus_one_arm_count = 0;

    int arm_count() const { return static_cast<int>(essential_arms.size()) + minus_one_arm_count; }
    int strand_count() const;  // central + all arm components
    bool operator==(const ConcaveCap&) const = default;

    // Arm weight list seen by the realization engine: essential arms first,
    // then the (-1) arms as single-entry lists.
    std::vector<std::vector<long long>> all_arms() const;
};

struct CapUnavailable : domain_error {
    long long b;
    int n;
    CapUnavailable(long long b_, int n_);
};

// Fails with CapUnavailable unless b >= n+1.
ConcaveCap build_cap(const SeifertData& data);

// Rational blowdown alphabet: linear chains and the three-armed graphs with
// central -4 and arm ends -(p+3), -(q+3), -(r+3).
struct RbdGraph {
    enum Kind { Linear, GammaPQR } kind = Linear;
    std::vector<long long> weights;  // Linear: chain weights, all <= -2
    int p = 0, q = 0, r = 0;

    static RbdGraph linear(std::vector<long long> w);
    static RbdGraph gamma(int p, int q, int r);

    int vertex_count() const;
    PlumbingGraph as_plumbing() const;
    std::string to_string() const;
    bool operator==(const RbdGraph&) const = default;
};

PlumbingGraph gamma_pqr_graph(int p, int q, int r);

// Whether the boundary lens space of a linear chain bounds a rational
// homology ball: the chain must expand p^2/(pq-1) for coprime 0 < q < p.
// Gamma graphs always qualify.
bool admits_rational_ball(const RbdGraph& g);

// Concave cap K_G of the boundary of G, produced by the blow-up realization
// search from a single point (minimal realization). Linear input must pass
// the rational-ball catalog.
ConcaveCap cap_of_linear(const RbdGraph& g);

// Exact shape for Gamma_{p,q,r}: arms [-(r+2), -2 x (p+1)],
// [-(p+2), -2 x (q+1)], [-(q+2), -2 x (r+1)].
ConcaveCap cap_of_gamma_pqr(int p, int q, int r);

}  // namespace plumbfill
