#pragma once

#include "plumbfill/config.hpp"

#include <string>
#include <vector>

namespace plumbfill {

enum class BallShape { Concurrent, FreeLine };
std::string to_string(BallShape s);

// One rational blowdown: replace an embedded G, realized by blow-ups from
// the site point, with the rational homology ball filling of its boundary.
// `exceptional_set` records E_G, the predecessor indices consumed by the
// surgery; `free_arm` names the affected arm whose line leaves the common
// point when the ball arrangement is the free-line shape (-1 otherwise).
struct RbdStep {
    RbdGraph graph;
    std::vector<int> site_point;       // arm indices through p' (0-based, essential then aux)
    BallShape ball_choice = BallShape::Concurrent;
    int free_arm = -1;
    std::vector<int> affected_arms;    // equals site_point
    std::vector<int> exceptional_set;  // E_G, sorted

    std::string to_string() const;
};

struct ReachabilityCertificate {
    enum Verdict { Reachable, Obstructed, UnreachableExhaustive } verdict = Reachable;
    std::vector<RbdStep> steps;  // Reachable
    int n_s = 0;                 // Obstructed: the offending multi-point count
    long long explored = 0;      // UnreachableExhaustive: visited descriptor count
    int depth = 0;
    bool bounded = true;
    std::string note;
};

// All single-surgery successors, deduplicated, in canonical order.
std::vector<std::pair<RbdStep, FillingDescriptor>> rbd_successors(const FillingDescriptor& w);

// Applies one step; throws domain_error when the step is not realizable.
FillingDescriptor apply_rbd_step(const FillingDescriptor& w, const RbdStep& step);

// A rational-blowdown sequence from the minimal resolution to the target.
// Requires b >= n+2 and a target arrangement with at most one
// multi-intersection point; otherwise use check_reachable.
std::vector<RbdStep> synthesize_sequence(const FillingDescriptor& target);

bool verify_sequence(const FillingDescriptor& start, const std::vector<RbdStep>& steps,
                     const FillingDescriptor& target, std::string* diagnostic = nullptr);

ReachabilityCertificate check_reachable(const FillingDescriptor& target, int depth_bound,
                                        int jobs = 1);

// The boundary-case family: central multiplicity n+3, arms (n-1) x (2,1),
// (3,1), and the two fractions expanding [3,2^{n-1}] and [2^{n-1},3].
SeifertData yn_seifert(int n);

// The scripted filling over the free-line arrangement on n+2 lines whose
// curve configuration blows up the multi-point exceptional.
FillingDescriptor wn_filling(int n);

// ---------------------------------------------------------------------------
// Local realization oracle: blow-up sequences from a single point of k lines
// that produce G, the cap chains K_G over the lines, and exactly k
// connecting (-1) spheres.

struct LocalRealization {
    RbdGraph graph;
    int k = 0;
    int index_count = 0;
    std::vector<std::vector<long long>> chains;       // K_G arm weights per line
    std::vector<std::vector<int>> line_supports;      // local indices per line
    std::vector<std::vector<int>> exc_masks;          // 1-based, excluding own lead
    std::vector<std::vector<std::pair<int, int>>> chain_comps;  // per line: (pos>=1, lead index)
    std::vector<int> g_leads;                         // lead indices of G strands
    std::vector<int> connectors;                      // lead indices of connectors
};

// chain_bounds: per available arm slot a weight list the chain may not
// exceed (prefix-wise, entry-wise at most as negative). The realization is
// valid if its chains fit under some injection into the bounds.
// max_indices < 0 derives the blow-up budget from the bounds.
std::vector<LocalRealization> realize_from_point(const RbdGraph& g, int k,
                                                 const std::vector<std::vector<long long>>& chain_bounds,
                                                 int max_indices = -1);

// Candidate graphs for a surgery site with k lines and at most max_vertices
// vertices: catalog linear chains, plus Gamma graphs when k = 3.
std::vector<RbdGraph> candidate_graphs(int k, int max_vertices);

}  // namespace plumbfill
