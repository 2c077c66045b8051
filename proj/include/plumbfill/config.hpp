#pragma once

#include "plumbfill/arrangement.hpp"
#include "plumbfill/cap.hpp"
#include "plumbfill/homology.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plumbfill {

enum class FillingType { A, B, C, BoundaryCase };
std::string to_string(FillingType t);

// A configuration of strands realizing a cap inside CP^2 # N CP^2-bar.
// Strand order: central, then essential arm components arm-major root to
// leaf, then the single (-1) cap arms, then the leftover (-1) exceptionals.
struct CurveConfiguration {
    int N = 0;
    std::vector<Strand> strands;
    std::vector<std::vector<long long>> arm_weights;  // essential arms only
    int aux_arm_count = 0;

    int essential_arm_count() const { return static_cast<int>(arm_weights.size()); }
    int arm_count() const { return essential_arm_count() + aux_arm_count; }
    int cap_strand_count() const;
    const Strand& central() const;
    const Strand* find_comp(int arm, int pos) const;  // essential arms
    const Strand* find_aux(int slot) const;

    // First components of every arm, essential then aux; these are the
    // symplectic lines of the underlying arrangement.
    std::vector<HomologyClass> first_arm_classes() const;

    // Checks chain adjacency, weights, adjunction, and that every strand
    // outside the cap has self-intersection exactly -1.
    void validate() const;
};

// Exact canonical form under permutations of exceptional indices and of
// arms with identical weight lists.
std::string canonical_key(const CurveConfiguration& c);
bool config_equivalent(const CurveConfiguration& a, const CurveConfiguration& b);

struct FillingDescriptor {
    SeifertData seifert;
    CurveConfiguration config;
    LineArrangement arrangement;
    int b2 = 0;
    FillingType type_tag = FillingType::A;
    bool minimal_resolution = false;
};

// Arm-wise partial order K' <= K on cap-shaped weight lists (weights given
// negative, arms aligned by position). Entry i of `lo` may be shorter;
// strictness of the last compared entry is required when it is.
bool cap_leq(const std::vector<std::vector<long long>>& lo,
             const std::vector<std::vector<long long>>& hi);
bool cap_leq(const ConcaveCap& lo, const ConcaveCap& hi);

// A starting position for the filling search, before any completion.
struct InitialConfiguration {
    char label = 'a';  // 'a', 'b' or 'c'
    CurveConfiguration config;
    int e_strand_id = -1;             // exceptional of the multi-point
    std::vector<int> marked_ids;      // the e_i strands of (b)/(c)
    bool boundary_case = false;       // b == n+1
};

// The three starting configurations of the cap over the two admissible
// arrangements; (b) is only produced when the cap has at least two arms to
// separate. For b == n+1 the boundary_case flag is set.
std::vector<InitialConfiguration> initial_configurations(const ConcaveCap& cap);

// Completes a configuration whose cap part K' sits below K by blowing up
// non-intersection points only.
CurveConfiguration standard_blowups(const CurveConfiguration& partial, const ConcaveCap& cap);

// The standard configuration over the fully concurrent arrangement; its b2
// equals the vertex count of the plumbing graph.
FillingDescriptor minimal_resolution_descriptor(const SeifertData& data);

FillingType classify_type(const FillingDescriptor& d);

struct EnumerationLimits {
    int max_extra = 4;
    long long max_nodes = 2'000'000;
};

struct EnumerationResult {
    std::vector<FillingDescriptor> fillings;
    bool complete = true;
    long long explored = 0;
};

// All curve configurations whose cap strands match build_cap(data) over the
// two admissible arrangements, deduplicated up to equivalence.
EnumerationResult enumerate_fillings(const SeifertData& data, const EnumerationLimits& limits = {});
EnumerationResult enumerate_fillings(const SeifertData& data, int max_extra);

// Engine entry used for rational-ball fillings of intermediate caps: all
// configurations of an explicit cap over an explicit arrangement.
struct RawEnumerationResult {
    std::vector<CurveConfiguration> configs;
    bool complete = true;
    long long explored = 0;
};
RawEnumerationResult enumerate_cap_configurations(const std::vector<std::vector<long long>>& arms,
                                                  const LineArrangement& base,
                                                  const EnumerationLimits& limits = {});

// The two admissible base arrangements on `lines` symplectic lines.
LineArrangement concurrent_arrangement(int lines);
LineArrangement free_line_arrangement(int lines);

int b2_of(const CurveConfiguration& c);

}  // namespace plumbfill
