#include "plumbfill/cap.hpp"

#include <cmath>
#include <sstream>

namespace plumbfill {

int ConcaveCap::strand_count() const {
    int n = 1 + minus_one_arm_count;
    for (const auto& arm : essential_arms) n += static_cast<int>(arm.size());
    return n;
}

std::vector<std::vector<long long>> ConcaveCap::all_arms() const {
    auto arms = essential_arms;
    for (int i = 0; i < minus_one_arm_count; ++i) arms.push_back({-1});
    return arms;
}

CapUnavailable::CapUnavailable(long long b_, int n_)
    : domain_error("concave cap requires b >= n+1, got b = " + std::to_string(b_) +
                   ", n = " + std::to_string(n_)),
      b(b_), n(n_) {}

ConcaveCap build_cap(const SeifertData& data) {
    if (data.b < data.arm_count() + 1) throw CapUnavailable(data.b, data.arm_count());
    ConcaveCap cap;
    for (auto [alpha, beta] : data.pairs) {
        auto dual = cf_dual(cf_expand(alpha, beta));
        std::vector<long long> arm;
        arm.reserve(dual.size());
        for (long long a : dual) arm.push_back(-a);
        cap.essential_arms.push_back(std::move(arm));
    }
    cap.minus_one_arm_count = static_cast<int>(data.b) - (data.arm_count() + 1);
    return cap;
}

RbdGraph RbdGraph::linear(std::vector<long long> w) {
    RbdGraph g;
    g.kind = Linear;
    if (w.empty()) throw domain_error("linear graph: empty chain");
    for (long long x : w)
        if (x > -2) throw domain_error("linear graph: weights must be <= -2");
    g.weights = std::move(w);
    return g;
}

RbdGraph RbdGraph::gamma(int p, int q, int r) {
    RbdGraph g;
    g.kind = GammaPQR;
    if (p < 0 || q < 0 || r < 0) throw domain_error("gamma graph: p,q,r must be non-negative");
    g.p = p;
    g.q = q;
    g.r = r;
    return g;
}

int RbdGraph::vertex_count() const {
    return kind == Linear ? static_cast<int>(weights.size()) : p + q + r + 4;
}

PlumbingGraph RbdGraph::as_plumbing() const {
    if (kind == GammaPQR) return gamma_pqr_graph(p, q, r);
    PlumbingGraph g;
    g.central_weight = weights.front();
    if (weights.size() > 1)
        g.arms.push_back(std::vector<long long>(weights.begin() + 1, weights.end()));
    return g;
}

std::string RbdGraph::to_string() const {
    std::ostringstream os;
    if (kind == Linear) {
        os << "[";
        for (size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
        os << "]";
    } else {
        os << "Gamma(" << p << "," << q << "," << r << ")";
    }
    return os.str();
}

PlumbingGraph gamma_pqr_graph(int p, int q, int r) {
    if (p < 0 || q < 0 || r < 0) throw domain_error("gamma_pqr_graph: p,q,r must be non-negative");
    PlumbingGraph g;
    g.central_weight = -4;
    auto chain = [](int twos, long long end) {
        std::vector<long long> arm(twos, -2);
        arm.push_back(end);
        return arm;
    };
    g.arms.push_back(chain(q, -(static_cast<long long>(p) + 3)));
    g.arms.push_back(chain(r, -(static_cast<long long>(q) + 3)));
    g.arms.push_back(chain(p, -(static_cast<long long>(r) + 3)));
    return g;
}

bool admits_rational_ball(const RbdGraph& g) {
    if (g.kind == RbdGraph::GammaPQR) return true;
    std::vector<long long> entries;
    for (long long w : g.weights) entries.push_back(-w);
    Rational v = cf_evaluate(entries);
    long long alpha = numerator(v).convert_to<long long>();
    long long beta = denominator(v).convert_to<long long>();
    long long p = std::llround(std::sqrt(static_cast<double>(alpha)));
    for (long long cand : {p - 1, p, p + 1})
        if (cand >= 2 && cand * cand == alpha) {
            p = cand;
            if ((beta + 1) % p == 0) {
                long long q = (beta + 1) / p;
                return 1 <= q && q < p;
            }
            return false;
        }
    return false;
}

ConcaveCap cap_of_gamma_pqr(int p, int q, int r) {
    // Arm i is the continued-fraction dual of arm i of gamma_pqr_graph:
    // dual([2^q, p+3]) = [q+2, 2^{p+1}] and cyclically. The arm lengths are
    // p+2, q+2, r+2.
    ConcaveCap cap;
    auto arm = [](long long head, int twos) {
        std::vector<long long> a{-head};
        for (int i = 0; i < twos; ++i) a.push_back(-2);
        return a;
    };
    cap.essential_arms.push_back(arm(q + 2, p + 1));
    cap.essential_arms.push_back(arm(r + 2, q + 1));
    cap.essential_arms.push_back(arm(p + 2, r + 1));
    return cap;
}

}  // namespace plumbfill
