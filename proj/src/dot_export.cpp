#include "plumbfill/dot_export.hpp"

#include <sstream>

namespace plumbfill {

namespace {

std::string node(int id) { return "v" + std::to_string(id); }

}  // namespace

std::string export_dot(const PlumbingGraph& g) {
    std::ostringstream os;
    os << "graph plumbing {\n";
    os << "  " << node(0) << " [label=\"" << g.central_weight << "\", shape=doublecircle];\n";
    int idx = 1;
    for (const auto& arm : g.arms) {
        int prev = 0;
        for (long long w : arm) {
            os << "  " << node(idx) << " [label=\"" << w << "\"];\n";
            os << "  " << node(prev) << " -- " << node(idx) << ";\n";
            prev = idx++;
        }
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const ConcaveCap& c) {
    std::ostringstream os;
    os << "graph cap {\n";
    os << "  " << node(0) << " [label=\"+1\", shape=doublecircle];\n";
    int idx = 1;
    for (const auto& arm : c.essential_arms) {
        int prev = 0;
        for (long long w : arm) {
            os << "  " << node(idx) << " [label=\"" << w << "\"];\n";
            os << "  " << node(prev) << " -- " << node(idx) << ";\n";
            prev = idx++;
        }
    }
    for (int j = 0; j < c.minus_one_arm_count; ++j) {
        os << "  " << node(idx) << " [label=\"-1\", style=dashed];\n";
        os << "  " << node(0) << " -- " << node(idx) << ";\n";
        ++idx;
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const CurveConfiguration& c) {
    std::ostringstream os;
    os << "graph configuration {\n";
    for (const auto& s : c.strands) {
        os << "  " << node(s.id) << " [label=\"" << self_intersection(s.cls);
        if (s.role == StrandRole::CapArm) os << " C" << s.arm + 1 << "_" << s.pos + 1;
        os << "\"";
        if (s.role == StrandRole::CapCentral) os << ", shape=doublecircle";
        if (s.role == StrandRole::Exceptional) os << ", style=dashed";
        os << "];\n";
    }
    for (size_t i = 0; i < c.strands.size(); ++i)
        for (size_t j = i + 1; j < c.strands.size(); ++j) {
            long long p = pair(c.strands[i].cls, c.strands[j].cls);
            for (long long t = 0; t < p; ++t)
                os << "  " << node(c.strands[i].id) << " -- " << node(c.strands[j].id) << ";\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace plumbfill
