#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "gazeff/types.hpp"

namespace gazeff {

// Gaze CSV: header "frame,x,y,pattern"; pattern is fixation/saccade/blink
// (case-insensitive); x,y may be empty on blink rows only.
// Output is sorted by frame; duplicate frames are an error.
std::vector<GazeSample> parse_gaze(std::istream& in);
std::vector<GazeSample> parse_gaze(const std::string& text);
void write_gaze_csv(std::ostream& out, const std::vector<GazeSample>& samples);

struct DetectionSet {
    std::map<int, std::vector<Detection>> by_frame;
    // Boxes with non-positive dimensions (before or after clipping) are
    // dropped rather than rejected; this counts them.
    int skipped = 0;
};

// Detections JSONL, one object per line:
//   {"frame":int,"boxes":[{"x":num,"y":num,"w":num,"h":num,"class":int,"conf":num}]}
// Boxes are clipped to the frame rectangle. Repeated frame lines concatenate.
DetectionSet parse_detections(std::istream& in, int frame_width, int frame_height);
DetectionSet parse_detections(const std::string& text, int frame_width, int frame_height);
void write_detections_jsonl(std::ostream& out, const DetectionSet& set);

// Tasks CSV: header "start,end,label". Output sorted by start; overlaps allowed.
std::vector<TaskAnnotation> parse_tasks(std::istream& in);
std::vector<TaskAnnotation> parse_tasks(const std::string& text);
void write_tasks_csv(std::ostream& out, const std::vector<TaskAnnotation>& tasks);

// One context per frame in [0, n_frames). Frames without a gaze record get
// GazePattern::Missing. Records at frame >= n_frames are an error.
std::vector<FrameContext> align(const std::vector<GazeSample>& gaze,
                                const DetectionSet& detections,
                                int n_frames, int width, int height);

}  // namespace gazeff
