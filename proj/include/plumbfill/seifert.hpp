#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace plumbfill {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational carrier for alpha_i/beta_i and the definiteness sign test.
// Stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Seifert invariants (-b; (a1,b1),...,(an,bn)) with 0 < beta_i < alpha_i,
// gcd(alpha_i, beta_i) = 1 and at least one singular fiber.
struct SeifertData {
    long long b = 0;
    std::vector<std::pair<long long, long long>> pairs;

    SeifertData() = default;
    SeifertData(long long b_, std::vector<std::pair<long long, long long>> pairs_);

    int arm_count() const { return static_cast<int>(pairs.size()); }
    bool operator==(const SeifertData&) const = default;

    // Text form: Y(-5; 2/1, 2/1, 2/1)
    std::string to_text() const;
    static SeifertData parse(const std::string& text);
};

// Star-shaped plumbing graph: central weight plus linear arms, weights
// listed root to leaf.
struct PlumbingGraph {
    long long central_weight = 0;
    std::vector<std::vector<long long>> arms;

    int vertex_count() const;
    bool operator==(const PlumbingGraph&) const = default;
};

// Hirzebruch-Jung expansion alpha/beta = [b1,...,br] with every entry >= 2.
std::vector<long long> cf_expand(long long alpha, long long beta);

// Value of the nested fraction b1 - 1/(b2 - 1/(... - 1/br)).
Rational cf_evaluate(const std::vector<long long>& entries);

// Riemenschneider dual: if `entries` expands alpha/beta, the result expands
// alpha/(alpha-beta). Involutive.
std::vector<long long> cf_dual(const std::vector<long long>& entries);

PlumbingGraph plumbing_graph(const SeifertData& data);

// Symmetric matrix in canonical vertex order: central first, then arms in
// order, root to leaf.
std::vector<std::vector<long long>> intersection_matrix(const PlumbingGraph& graph);

// Exact test via leading principal minors (Bareiss elimination over cpp_int).
bool is_negative_definite(const std::vector<std::vector<long long>>& matrix);

// Orbifold sign test b - sum(beta_i/alpha_i), exact.
Rational euler_sign(const SeifertData& data);

}  // namespace plumbfill
