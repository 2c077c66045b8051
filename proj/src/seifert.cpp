#include "plumbfill/seifert.hpp"

#include <numeric>
#include <sstream>

namespace plumbfill {

SeifertData::SeifertData(long long b_, std::vector<std::pair<long long, long long>> pairs_)
    : b(b_), pairs(std::move(pairs_)) {
    if (b <= 0) throw domain_error("SeifertData: central multiplicity b must be positive");
    if (pairs.empty()) throw domain_error("SeifertData: at least one singular fiber required");
    for (auto [alpha, beta] : pairs) {
        if (!(0 < beta && beta < alpha))
            throw domain_error("SeifertData: require 0 < beta < alpha");
        if (std::gcd(alpha, beta) != 1)
            throw domain_error("SeifertData: require gcd(alpha, beta) = 1");
    }
}

std::string SeifertData::to_text() const {
    std::ostringstream os;
    os << "Y(-" << b << ";";
    for (size_t i = 0; i < pairs.size(); ++i)
        os << (i ? ", " : " ") << pairs[i].first << "/" << pairs[i].second;
    os << ")";
    return os.str();
}

SeifertData SeifertData::parse(const std::string& text) {
    // Accepted form: Y(-b; a1/b1, a2/b2, ...) with optional whitespace.
    auto fail = [&]() -> SeifertData {
        throw domain_error("cannot parse Seifert data: " + text);
    };
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto expect = [&](char c) { skip_ws(); if (i >= text.size() || text[i] != c) fail(); ++i; };
    auto number = [&]() -> long long {
        skip_ws();
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail();
        return std::stoll(text.substr(start, i - start));
    };
    skip_ws();
    if (i >= text.size() || (text[i] != 'Y' && text[i] != 'y')) fail();
    ++i;
    expect('(');
    long long b = -number();
    expect(';');
    std::vector<std::pair<long long, long long>> pairs;
    while (true) {
        long long alpha = number();
        expect('/');
        long long beta = number();
        pairs.emplace_back(alpha, beta);
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        break;
    }
    expect(')');
    skip_ws();
    if (i != text.size()) fail();
    return SeifertData(b, std::move(pairs));
}

int PlumbingGraph::vertex_count() const {
    int n = 1;
    for (const auto& arm : arms) n += static_cast<int>(arm.size());
    return n;
}

std::vector<long long> cf_expand(long long alpha, long long beta) {
    if (!(0 < beta && beta < alpha))
        throw domain_error("cf_expand: require 0 < beta < alpha");
    if (std::gcd(alpha, beta) != 1)
        throw domain_error("cf_expand: require gcd(alpha, beta) = 1");
    std::vector<long long> entries;
    while (beta > 0) {
        long long q = (alpha + beta - 1) / beta;  // ceil(alpha/beta)
        entries.push_back(q);
        long long next = q * beta - alpha;        // 0 <= next < beta
        alpha = beta;
        beta = next;
    }
    return entries;
}

Rational cf_evaluate(const std::vector<long long>& entries) {
    if (entries.empty()) throw domain_error("cf_evaluate: empty expansion");
    for (long long e : entries)
        if (e < 2) throw domain_error("cf_evaluate: entries must be >= 2");
    BigInt num = entries.back(), den = 1;
    for (auto it = entries.rbegin() + 1; it != entries.rend(); ++it) {
        BigInt new_num = BigInt(*it) * num - den;
        den = num;
        num = new_num;
    }
    return Rational(num, den);
}

std::vector<long long> cf_dual(const std::vector<long long>& entries) {
    // One canonical code path: evaluate, then expand alpha/(alpha-beta).
    Rational v = cf_evaluate(entries);
    long long alpha = numerator(v).convert_to<long long>();
    long long beta = denominator(v).convert_to<long long>();
    return cf_expand(alpha, alpha - beta);
}

PlumbingGraph plumbing_graph(const SeifertData& data) {
    PlumbingGraph g;
    g.central_weight = -data.b;
    for (auto [alpha, beta] : data.pairs) {
        auto cf = cf_expand(alpha, beta);
        std::vector<long long> arm;
        arm.reserve(cf.size());
        for (long long e : cf) arm.push_back(-e);
        g.arms.push_back(std::move(arm));
    }
    return g;
}

std::vector<std::vector<long long>> intersection_matrix(const PlumbingGraph& graph) {
    int n = graph.vertex_count();
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    m[0][0] = graph.central_weight;
    int idx = 1;
    for (const auto& arm : graph.arms) {
        int prev = 0;
        for (long long w : arm) {
            m[idx][idx] = w;
            m[idx][prev] = m[prev][idx] = 1;
            prev = idx;
            ++idx;
        }
    }
    return m;
}

bool is_negative_definite(const std::vector<std::vector<long long>>& matrix) {
    size_t n = matrix.size();
    for (const auto& row : matrix)
        if (row.size() != n) throw domain_error("is_negative_definite: matrix not square");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (matrix[i][j] != matrix[j][i])
                throw domain_error("is_negative_definite: matrix not symmetric");
    if (n == 0) return true;

    // Bareiss fraction-free elimination; the pivots are the leading principal
    // minors d_1, ..., d_n, which must alternate in sign starting negative.
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = matrix[i][j];
    BigInt prev = 1;
    for (size_t k = 0; k < n; ++k) {
        BigInt pivot = a[k][k];
        bool negative = (k % 2 == 0);
        if (negative ? pivot >= 0 : pivot <= 0) return false;
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev;
        prev = pivot;
    }
    return true;
}

Rational euler_sign(const SeifertData& data) {
    Rational s(data.b, 1);
    for (auto [alpha, beta] : data.pairs) s -= Rational(beta, alpha);
    return s;
}

}  // namespace plumbfill
