#pragma once

// Internal machinery shared by the configuration enumerator and the
// rational-blowdown engine. Not part of the public surface.

#include "plumbfill/arrangement.hpp"
#include "plumbfill/config.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace plumbfill::detail {

using Mask = std::uint64_t;

// Blow-up bookkeeping over one arrangement: line i carries the set of
// indices on it; exceptional k carries the set of indices blown on its
// strand after creation (its own lead excluded).
struct RawState {
    int A = 0;
    std::vector<Mask> line_mask;
    std::vector<Mask> exc_mask;  // 1-based, slot 0 unused
    int extra_used = 0;

    int n_indices() const { return static_cast<int>(exc_mask.size()) - 1; }
    int line_degree(int i) const;
    int exc_degree(int k) const;
    int new_index();
};

// Strand numbering: 0..A-1 lines, A+k-1 = exceptional k.
long long raw_pair(const RawState& s, int u, int v);
void apply_blow(RawState& s, int u, int v /* -1 = non-intersection point */);
RawState phase0(int A, const LineArrangement& base);

struct ColoredDigraph {
    int n = 0;
    std::vector<int> base_color;
    std::vector<std::vector<int>> out, in;
    std::string canonical_form() const;
};

ColoredDigraph configuration_digraph(const std::vector<std::vector<int>>& line_supports,
                                     const std::vector<std::vector<int>>& exc_masks,
                                     const std::vector<int>& line_colors);

std::vector<int> arm_groups(const std::vector<std::vector<long long>>& arms);

std::string raw_key(const RawState& s, const std::vector<int>& line_colors);

// Interior assignment and strand construction for a finished raw state.
struct EngineTask {
    std::vector<std::vector<long long>> arms;
    int aux_count = 0;
    EnumerationLimits limits;
};

struct CompAssignment {
    std::map<std::pair<int, int>, int> comp;  // (arm, pos>=1) -> index
};

bool try_assign(const RawState& s, const EngineTask& task, CompAssignment& out);
CurveConfiguration realize_configuration(const RawState& s, const EngineTask& task,
                                         const CompAssignment& assign);

}  // namespace plumbfill::detail
