#include "gazeff/eval.hpp"

#include <cmath>
#include <unordered_set>

namespace gazeff {

std::vector<HighAttentionTask> high_attention_tasks(const std::vector<TaskAnnotation>& tasks,
                                                    const std::vector<GazeSample>& gaze) {
    std::unordered_set<int> fixation_frames;
    for (const GazeSample& g : gaze)
        if (g.pattern == GazePattern::Fixation) fixation_frames.insert(g.frame);

    std::vector<HighAttentionTask> out;
    for (const TaskAnnotation& t : tasks) {
        int hits = 0;
        for (int f = t.start_frame; f <= t.end_frame; ++f)
            if (fixation_frames.count(f)) ++hits;
        const double ratio = static_cast<double>(hits) / static_cast<double>(t.length());
        if (ratio >= 0.5) out.push_back({t, ratio});
    }
    return out;
}

std::vector<EmphasizedSegment> emphasized_segments(const SelectionResult& result,
                                                   double target_speedup) {
    if (result.plan.rates.size() != result.segments.size())
        throw std::logic_error("selection result has mismatched rates and segments");
    std::vector<EmphasizedSegment> out;
    const double cap = target_speedup / 2.0;
    for (size_t k = 0; k < result.segments.size(); ++k) {
        if (static_cast<double>(result.plan.rates[k]) < cap) {
            out.push_back({result.segments[k].start_frame, result.segments[k].end_frame,
                           result.plan.rates[k]});
        }
    }
    return out;
}

EaResult emphasized_actions(const std::vector<EmphasizedSegment>& emphasized,
                            const std::vector<HighAttentionTask>& high_attention) {
    EaResult res;
    if (high_attention.empty()) return res;
    res.defined = true;
    for (const HighAttentionTask& h : high_attention) {
        for (const EmphasizedSegment& e : emphasized) {
            if (spans_overlap(e.start_frame, e.end_frame, h.task.start_frame,
                              h.task.end_frame)) {
                ++res.count;
                break;
            }
        }
    }
    res.ratio = static_cast<double>(res.count) / static_cast<double>(high_attention.size());
    return res;
}

double speedup_error(const SelectionResult& result, double target_speedup) {
    return std::abs(result.achieved_speedup - target_speedup);
}

double jitter(const std::vector<int>& selected) {
    if (selected.size() < 2)
        throw std::invalid_argument("jitter needs at least two selected frames");
    std::vector<double> gaps;
    gaps.reserve(selected.size() - 1);
    for (size_t i = 1; i < selected.size(); ++i)
        gaps.push_back(static_cast<double>(selected[i] - selected[i - 1]));
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    return std::sqrt(var) / mean;
}

EvalReport evaluate(const SelectionResult& result, double target_speedup,
                    const std::vector<TaskAnnotation>& tasks,
                    const std::vector<GazeSample>& gaze) {
    EvalReport report;
    report.high_attention = high_attention_tasks(tasks, gaze);
    report.emphasized = emphasized_segments(result, target_speedup);
    report.ea = emphasized_actions(report.emphasized, report.high_attention);
    report.speedup_error = speedup_error(result, target_speedup);
    report.jitter = jitter(result.selected);
    return report;
}

}  // namespace gazeff
