#include "plumbfill/homology.hpp"

#include <algorithm>
#include <sstream>

namespace plumbfill {

void HomologyClass::set_coeff(int k, long long c) {
    if (k < 1 || k > N) throw domain_error("HomologyClass: index out of range");
    e[k] = c;
}

HomologyClass HomologyClass::exceptional(int ambient, int k) {
    HomologyClass x(ambient);
    x.set_coeff(k, -1);  // class e_k = -(-1)*e_k in the a*l - sum c_i*e_i convention
    return x;
}

std::vector<int> HomologyClass::support() const {
    std::vector<int> s;
    for (int k = 1; k <= N; ++k)
        if (e[k] != 0) s.push_back(k);
    return s;
}

std::string HomologyClass::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (l != 0) {
        if (l == 1) os << "l";
        else if (l == -1) os << "-l";
        else os << l << "l";
        first = false;
    }
    for (int k = 1; k <= N; ++k) {
        long long c = -e[k];
        if (c == 0) continue;
        if (c > 0 && !first) os << "+";
        if (c == -1) os << "-";
        else if (c != 1) os << c << "*";
        os << "e" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

long long pair(const HomologyClass& x, const HomologyClass& y) {
    if (x.N != y.N) throw domain_error("pair: ambient mismatch");
    long long acc = x.l * y.l;
    for (int k = 1; k <= x.N; ++k) acc -= x.e[k] * y.e[k];
    return acc;
}

bool adjunction_check(const HomologyClass& x) {
    long long ksum = 0, sq = x.l * x.l;
    for (int k = 1; k <= x.N; ++k) {
        ksum += x.e[k];
        sq -= x.e[k] * x.e[k];
    }
    return -3 * x.l + ksum == -2 - sq;
}

namespace {

int find_strand(const std::vector<Strand>& strands, int id) {
    for (size_t i = 0; i < strands.size(); ++i)
        if (strands[i].id == id) return static_cast<int>(i);
    throw domain_error("strand id not found");
}

int ambient_of(const std::vector<Strand>& strands) {
    if (strands.empty()) throw domain_error("empty strand list");
    return strands.front().cls.N;
}

}  // namespace

int blow_up(std::vector<Strand>& strands, const std::vector<int>& point_ids) {
    if (point_ids.empty()) throw domain_error("blow_up: empty point");
    int N = ambient_of(strands);
    std::vector<int> idx;
    for (int id : point_ids) idx.push_back(find_strand(strands, id));
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b)
            if (pair(strands[idx[a]].cls, strands[idx[b]].cls) < 1)
                throw domain_error("blow_up: listed strands do not intersect");

    int newN = N + 1;
    for (auto& s : strands) {
        s.cls.e.resize(newN + 1, 0);
        s.cls.N = newN;
    }
    for (int i : idx) strands[i].cls.set_coeff(newN, 1);

    Strand exc;
    exc.id = 0;
    for (const auto& s : strands) exc.id = std::max(exc.id, s.id + 1);
    exc.cls = HomologyClass::exceptional(newN, newN);
    exc.role = StrandRole::Exceptional;
    strands.push_back(exc);
    return exc.id;
}

BlowDownRecord blow_down(std::vector<Strand>& strands, int exceptional_id) {
    int N = ambient_of(strands);
    int pos = find_strand(strands, exceptional_id);
    const HomologyClass& cls = strands[pos].cls;
    int k = 0;
    if (cls.l != 0) throw domain_error("blow_down: strand is not a unit exceptional class");
    for (int i = 1; i <= N; ++i) {
        if (cls.e[i] == -1 && k == 0) k = i;
        else if (cls.e[i] != 0) throw domain_error("blow_down: strand is not a unit exceptional class");
    }
    if (k == 0) throw domain_error("blow_down: strand is not a unit exceptional class");

    strands.erase(strands.begin() + pos);
    BlowDownRecord rec;
    rec.removed_index = k;
    rec.index_map.assign(N + 1, 0);
    for (int i = 1; i <= N; ++i) rec.index_map[i] = i < k ? i : (i == k ? 0 : i - 1);

    for (auto& s : strands) {
        // x -> x + (x . e_k) e_k drops the e_k coefficient.
        std::vector<long long> ne(N, 0);  // new ambient N-1, slot 0 unused
        for (int i = 1; i <= N; ++i)
            if (i != k) ne[rec.index_map[i]] = s.cls.e[i];
        s.cls.e = std::move(ne);
        s.cls.N = N - 1;
    }
    return rec;
}

}  // namespace plumbfill
