#pragma once

#include <utility>
#include <vector>

#include "gazeff/attention.hpp"
#include "gazeff/types.hpp"

namespace gazeff {

// Maximal span of sustained visual interaction with one object identity.
struct FocusTrack {
    int track_id = 0;
    int class_id = 0;
    int start_frame = 0;
    int end_frame = 0;
    // (frame, box) for the frames actually associated to this track;
    // interior frames where focus momentarily left the object are not listed.
    std::vector<std::pair<int, BBox>> boxes;
    int gap_frames = 0;

    int duration() const { return end_frame - start_frame + 1; }
};

struct TrackAssignment {
    // track id per frame, -1 when the frame has no associated track
    std::vector<int> track_of_frame;

    int at(int frame) const {
        if (frame < 0 || frame >= static_cast<int>(track_of_frame.size())) return -1;
        return track_of_frame[frame];
    }
};

// Greedy association over the per-frame focus stream: a focused box joins an
// open track of the same class when IoU with the track's last box is at least
// iou_min and at most gap_tolerance frames of absent/other focus intervene.
// A track whose gap budget is exceeded is closed; a later return to the same
// physical object starts a new track.
std::pair<std::vector<FocusTrack>, TrackAssignment> build_tracks(
    const std::vector<FocusResolution>& resolutions, double iou_min, int gap_tolerance);

// Longest track duration in frames; 0 when there are no tracks.
int t_max(const std::vector<FocusTrack>& tracks);

// Duration of the frame's track over T_max; 0 for unfocused frames.
double temporal_relevance(int frame, const TrackAssignment& assignment,
                          const std::vector<FocusTrack>& tracks, int T_max);

// Conditional exponential decay on the focus elapsed time, in seconds:
// 1 while elapsed < alpha_s, exp(-(elapsed - alpha_s)/2) after. Unfocused
// frames return the neutral 1.0 (v already zeroes their fused score).
double novelty(int frame, const TrackAssignment& assignment,
               const std::vector<FocusTrack>& tracks, double alpha_s, double fps);

}  // namespace gazeff
