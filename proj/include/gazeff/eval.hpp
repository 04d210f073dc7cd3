#pragma once

#include <vector>

#include "gazeff/select.hpp"
#include "gazeff/types.hpp"

namespace gazeff {

struct HighAttentionTask {
    TaskAnnotation task;
    double fixation_ratio = 0.0;
};

struct EmphasizedSegment {
    int start_frame = 0;
    int end_frame = 0;
    int rate = 0;
};

struct EaResult {
    int count = 0;
    double ratio = 0.0;
    bool defined = false;  // false when there are no high-attention tasks
};

struct EvalReport {
    std::vector<HighAttentionTask> high_attention;
    std::vector<EmphasizedSegment> emphasized;
    EaResult ea;
    double speedup_error = 0.0;
    double jitter = 0.0;
};

// Tasks whose span is at least half gaze-fixation frames. Frames without a
// gaze record count as non-fixation.
std::vector<HighAttentionTask> high_attention_tasks(const std::vector<TaskAnnotation>& tasks,
                                                    const std::vector<GazeSample>& gaze);

// Segments whose rate is strictly below half the required speed-up.
std::vector<EmphasizedSegment> emphasized_segments(const SelectionResult& result,
                                                   double target_speedup);

// A task counts as emphasized when any emphasized segment overlaps it by at
// least one frame.
EaResult emphasized_actions(const std::vector<EmphasizedSegment>& emphasized,
                            const std::vector<HighAttentionTask>& high_attention);

double speedup_error(const SelectionResult& result, double target_speedup);

// Coefficient of variation (population std over mean) of the gaps between
// consecutive selected frames. Needs at least two selected frames.
double jitter(const std::vector<int>& selected);

EvalReport evaluate(const SelectionResult& result, double target_speedup,
                    const std::vector<TaskAnnotation>& tasks,
                    const std::vector<GazeSample>& gaze);

}  // namespace gazeff
