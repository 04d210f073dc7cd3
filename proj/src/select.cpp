#include "gazeff/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace gazeff {

namespace {

long long total_length(const std::vector<Segment>& segments) {
    long long n = 0;
    for (const Segment& s : segments) n += s.length();
    return n;
}

struct PlanCmp {
    const std::vector<Segment>& segments;

    long long relevant_sum(const std::vector<int>& rates) const {
        long long sum = 0;
        for (size_t k = 0; k < rates.size(); ++k)
            if (segments[k].label == SegmentLabel::Relevant) sum += rates[k];
        return sum;
    }

    bool better(double ja, const std::vector<int>& a, double jb,
                const std::vector<int>& b) const {
        if (ja != jb) return ja < jb;
        const long long ra = relevant_sum(a);
        const long long rb = relevant_sum(b);
        if (ra != rb) return ra < rb;
        return a < b;
    }
};

// Odometer enumeration of [1, p_max]^K.
void exhaustive_search(const std::vector<Segment>& segments, double F, int p_max,
                       double lambda, std::vector<int>& best, double& best_j) {
    const size_t K = segments.size();
    PlanCmp cmp{segments};
    std::vector<int> rates(K, 1);
    while (true) {
        const double j = allocation_objective(segments, rates, F, lambda);
        if (best.empty() || cmp.better(j, rates, best_j, best)) {
            best = rates;
            best_j = j;
        }
        size_t pos = 0;
        while (pos < K && rates[pos] == p_max) rates[pos++] = 1;
        if (pos == K) break;
        ++rates[pos];
    }
}

void coordinate_descent(const std::vector<Segment>& segments, double F, int p_max,
                        double lambda, std::vector<int> rates, std::vector<int>& best,
                        double& best_j) {
    const size_t K = segments.size();
    PlanCmp cmp{segments};
    double j = allocation_objective(segments, rates, F, lambda);
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps++ < 200) {
        improved = false;
        for (size_t k = 0; k < K; ++k) {
            std::vector<int> cand = rates;
            for (int p = 1; p <= p_max; ++p) {
                cand[k] = p;
                const double cj = allocation_objective(segments, cand, F, lambda);
                if (cmp.better(cj, cand, j, rates)) {
                    rates = cand;
                    j = cj;
                    improved = true;
                }
            }
        }
    }
    if (best.empty() || cmp.better(j, rates, best_j, best)) {
        best = rates;
        best_j = j;
    }
}

}  // namespace

double allocation_objective(const std::vector<Segment>& segments, const std::vector<int>& rates,
                            double target_speedup, double lambda) {
    const double total = static_cast<double>(total_length(segments));
    const double cap = target_speedup / 2.0;
    double out_len = 0.0;
    double penalty = 0.0;
    for (size_t k = 0; k < segments.size(); ++k) {
        const double len = segments[k].length();
        out_len += len / rates[k];
        if (segments[k].label == SegmentLabel::Relevant)
            penalty += len * std::max(0.0, rates[k] - cap);
    }
    return std::abs(out_len - total / target_speedup) + lambda * penalty / total;
}

RatePlan allocate_rates(const std::vector<Segment>& segments, double target_speedup,
                        int p_max, double lambda) {
    if (segments.empty()) throw std::invalid_argument("no segments to allocate");
    if (!(target_speedup > 1.0)) throw ConfigError("target_speedup must exceed 1");
    if (p_max < 1) throw ConfigError("p_max must be >= 1");
    if (lambda < 0.0) throw ConfigError("lambda_emphasis must be >= 0");

    const size_t K = segments.size();
    RatePlan plan;
    plan.target_speedup = target_speedup;
    plan.emphasis_cap = target_speedup / 2.0;

    if (p_max < target_speedup) {
        // Even the most aggressive plan cannot reach the target length.
        plan.rates.assign(K, p_max);
        plan.objective = allocation_objective(segments, plan.rates, target_speedup, lambda);
        plan.saturated = true;
        return plan;
    }

    std::vector<int> best;
    double best_j = std::numeric_limits<double>::infinity();
    const double space = std::pow(static_cast<double>(p_max), static_cast<double>(K));
    if (K <= 4 && space <= double(1 << 24)) {
        exhaustive_search(segments, target_speedup, p_max, lambda, best, best_j);
    } else {
        const int round_f = std::clamp(static_cast<int>(std::lround(target_speedup)), 1, p_max);
        const int half_f = std::clamp(static_cast<int>(target_speedup / 2.0), 1, p_max);
        std::vector<std::vector<int>> starts;
        starts.emplace_back(K, round_f);
        starts.emplace_back(K, 1);
        starts.emplace_back(K, p_max);
        std::vector<int> emphasized(K, round_f);
        for (size_t k = 0; k < K; ++k)
            if (segments[k].label == SegmentLabel::Relevant) emphasized[k] = half_f;
        starts.push_back(std::move(emphasized));
        for (auto& s : starts)
            coordinate_descent(segments, target_speedup, p_max, lambda, std::move(s), best,
                               best_j);
    }

    plan.rates = std::move(best);
    plan.objective = best_j;
    return plan;
}

DpPath dp_select(const std::vector<double>& scores, int rate, double gamma) {
    const int len = static_cast<int>(scores.size());
    if (len == 0) throw std::invalid_argument("empty segment");
    if (rate < 1) throw ConfigError("rate must be >= 1");
    if (gamma < 0.0) throw ConfigError("gamma_semantic must be >= 0");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(len, inf);
    std::vector<int> pred(len, -1);
    dist[0] = 0.0;
    const int max_step = 2 * rate;
    for (int j = 1; j < len; ++j) {
        const double node_cost = gamma * (1.0 - scores[j]);
        for (int i = std::max(0, j - max_step); i < j; ++i) {
            if (dist[i] == inf) continue;
            const double gap = static_cast<double>(j - i) - rate;
            const double c = dist[i] + gap * gap + node_cost;
            if (c < dist[j]) {
                dist[j] = c;
                pred[j] = i;
            }
        }
    }

    // Terminal anywhere in the last `rate` nodes; earliest wins ties.
    int end = -1;
    for (int j = std::max(0, len - rate); j < len; ++j) {
        if (dist[j] == inf) continue;
        if (end < 0 || dist[j] < dist[end]) end = j;
    }

    DpPath path;
    path.cost = dist[end];
    for (int j = end; j >= 0; j = pred[j]) path.indices.push_back(j);
    std::reverse(path.indices.begin(), path.indices.end());
    return path;
}

std::vector<int> sample_frames(const Segment& seg, int rate, const std::vector<double>& s_hat,
                               double gamma) {
    if (seg.start_frame < 0 || seg.end_frame >= static_cast<int>(s_hat.size()) ||
        seg.start_frame > seg.end_frame)
        throw std::invalid_argument("segment outside profile");
    std::vector<double> slice(s_hat.begin() + seg.start_frame,
                              s_hat.begin() + seg.end_frame + 1);
    DpPath path = dp_select(slice, rate, gamma);
    std::vector<int> out;
    out.reserve(path.indices.size());
    for (int j : path.indices) out.push_back(seg.start_frame + j);
    return out;
}

SelectionResult assemble(const std::vector<std::vector<int>>& per_segment, int n_frames,
                         RatePlan plan, std::vector<Segment> segments) {
    SelectionResult result;
    result.plan = std::move(plan);
    result.segments = std::move(segments);
    for (const auto& sel : per_segment) {
        for (int f : sel) {
            if (!result.selected.empty()) {
                if (f == result.selected.back()) continue;  // shared joint frame
                if (f < result.selected.back())
                    throw std::logic_error("selection not strictly increasing");
            }
            if (f < 0 || f >= n_frames) throw std::logic_error("selected frame out of range");
            result.selected.push_back(f);
        }
    }
    if (result.selected.empty()) throw std::logic_error("empty selection");
    result.achieved_speedup =
        static_cast<double>(n_frames) / static_cast<double>(result.selected.size());
    return result;
}

SelectionResult select_frames(const std::vector<Segment>& segments,
                              const std::vector<double>& s_hat, const SelectParams& params) {
    if (segments.empty()) throw std::invalid_argument("no segments");
    if (params.jobs < 1) throw ConfigError("jobs must be >= 1");

    RatePlan plan = allocate_rates(segments, params.target_speedup, params.p_max,
                                   params.lambda_emphasis);

    const size_t K = segments.size();
    std::vector<std::vector<int>> picks(K);
    auto run_range = [&](size_t begin, size_t step) {
        for (size_t k = begin; k < K; k += step)
            picks[k] = sample_frames(segments[k], plan.rates[k], s_hat, params.gamma_semantic);
    };
    const size_t workers = std::min<size_t>(params.jobs, K);
    if (workers <= 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
        for (auto& th : pool) th.join();
    }

    const int n_frames = segments.back().end_frame + 1;
    return assemble(picks, n_frames, std::move(plan), segments);
}

}  // namespace gazeff
