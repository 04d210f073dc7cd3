#pragma once

#include <vector>

#include "gazeff/profile.hpp"
#include "gazeff/types.hpp"

namespace gazeff {

struct RatePlan {
    std::vector<int> rates;       // per-segment integer speed-up, aligned with the segments
    double target_speedup = 0.0;  // F
    double emphasis_cap = 0.0;    // F/2; relevant segments are pushed below this
    double objective = 0.0;       // J at the returned rates
    // Set when even the all-p_max plan cannot shrink the video to the target
    // length; the boundary plan is returned instead of failing.
    bool saturated = false;
};

struct SelectionResult {
    std::vector<int> selected;  // strictly increasing frame indices
    RatePlan plan;
    std::vector<Segment> segments;
    double achieved_speedup = 0.0;
};

// J = |sum L_k/p_k - sum L_k/F|
//     + lambda * sum_{relevant} L_k * max(0, p_k - F/2) / sum L_k
double allocation_objective(const std::vector<Segment>& segments, const std::vector<int>& rates,
                            double target_speedup, double lambda);

// Integer rates minimizing the objective above. Exhaustive enumeration for
// up to four segments (while the search space stays small), coordinate
// descent from several fixed starts otherwise. Ties go to lower rates on
// relevant segments, then to the lexicographically smaller rate vector.
RatePlan allocate_rates(const std::vector<Segment>& segments, double target_speedup,
                        int p_max, double lambda);

struct DpPath {
    std::vector<int> indices;  // segment-local, starting at 0
    double cost = 0.0;
};

// Exact shortest path over the segment frames with edges i -> j for
// 1 <= j-i <= 2*rate and cost ((j-i) - rate)^2 + gamma * (1 - score[j]).
// The path starts at node 0 and ends within the last `rate` nodes.
DpPath dp_select(const std::vector<double>& scores, int rate, double gamma);

// DpPath over the segment's slice of s_hat, shifted to absolute frame indices.
std::vector<int> sample_frames(const Segment& seg, int rate, const std::vector<double>& s_hat,
                               double gamma);

// Concatenates per-segment picks, dropping duplicates at joints; throws
// std::logic_error if the result is not strictly increasing.
SelectionResult assemble(const std::vector<std::vector<int>>& per_segment, int n_frames,
                         RatePlan plan, std::vector<Segment> segments);

struct SelectParams {
    double target_speedup = 8.0;
    int p_max = 32;
    double lambda_emphasis = 10.0;
    double gamma_semantic = 0.5;
    int jobs = 1;  // worker threads for the per-segment passes
};

SelectionResult select_frames(const std::vector<Segment>& segments,
                              const std::vector<double>& s_hat, const SelectParams& params);

}  // namespace gazeff
