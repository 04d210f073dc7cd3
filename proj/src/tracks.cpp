#include "gazeff/tracks.hpp"

#include <algorithm>
#include <cmath>

namespace gazeff {

namespace {

struct OpenTrack {
    FocusTrack track;
    BBox last_box;
    int last_frame = 0;
};

}  // namespace

std::pair<std::vector<FocusTrack>, TrackAssignment> build_tracks(
    const std::vector<FocusResolution>& resolutions, double iou_min, int gap_tolerance) {
    if (!(iou_min > 0.0 && iou_min <= 1.0)) throw ConfigError("iou_min must be in (0,1]");
    if (gap_tolerance < 0) throw ConfigError("gap_tolerance must be >= 0");

    std::vector<FocusTrack> done;
    std::vector<OpenTrack> open;
    TrackAssignment assignment;
    assignment.track_of_frame.assign(resolutions.size(), -1);
    int next_id = 0;

    auto close = [&](OpenTrack& ot) { done.push_back(std::move(ot.track)); };

    for (const FocusResolution& res : resolutions) {
        const int i = res.frame;

        // Retire tracks that can no longer accept frame i.
        for (auto it = open.begin(); it != open.end();) {
            if (i - it->last_frame - 1 > gap_tolerance) {
                close(*it);
                it = open.erase(it);
            } else {
                ++it;
            }
        }

        if (!res.focused.has_value()) continue;
        const Detection& det = *res.focused;

        // Best matching open track: highest IoU, then most recently updated,
        // then lowest id.
        int best = -1;
        double best_iou = 0.0;
        for (size_t k = 0; k < open.size(); ++k) {
            if (open[k].track.class_id != det.class_id) continue;
            const double ov = iou(open[k].last_box, det.bbox);
            if (ov < iou_min) continue;
            if (best < 0 || ov > best_iou ||
                (ov == best_iou && open[k].last_frame > open[best].last_frame) ||
                (ov == best_iou && open[k].last_frame == open[best].last_frame &&
                 open[k].track.track_id < open[best].track.track_id)) {
                best = static_cast<int>(k);
                best_iou = ov;
            }
        }

        if (best >= 0) {
            OpenTrack& ot = open[best];
            ot.track.gap_frames += i - ot.last_frame - 1;
            ot.track.end_frame = i;
            ot.track.boxes.emplace_back(i, det.bbox);
            ot.last_box = det.bbox;
            ot.last_frame = i;
            assignment.track_of_frame[i] = ot.track.track_id;
        } else {
            OpenTrack ot;
            ot.track.track_id = next_id++;
            ot.track.class_id = det.class_id;
            ot.track.start_frame = i;
            ot.track.end_frame = i;
            ot.track.boxes.emplace_back(i, det.bbox);
            ot.last_box = det.bbox;
            ot.last_frame = i;
            assignment.track_of_frame[i] = ot.track.track_id;
            open.push_back(std::move(ot));
        }
    }

    for (OpenTrack& ot : open) close(ot);
    std::sort(done.begin(), done.end(),
              [](const FocusTrack& a, const FocusTrack& b) { return a.track_id < b.track_id; });
    return {std::move(done), std::move(assignment)};
}

int t_max(const std::vector<FocusTrack>& tracks) {
    int best = 0;
    for (const FocusTrack& t : tracks) best = std::max(best, t.duration());
    return best;
}

double temporal_relevance(int frame, const TrackAssignment& assignment,
                          const std::vector<FocusTrack>& tracks, int T_max) {
    const int id = assignment.at(frame);
    if (id < 0 || T_max <= 0) return 0.0;
    return static_cast<double>(tracks[id].duration()) / static_cast<double>(T_max);
}

double novelty(int frame, const TrackAssignment& assignment,
               const std::vector<FocusTrack>& tracks, double alpha_s, double fps) {
    if (!(alpha_s > 0.0)) throw ConfigError("alpha_s must be positive");
    if (!(fps > 0.0)) throw ConfigError("fps must be positive");
    const int id = assignment.at(frame);
    if (id < 0) return 1.0;
    const double elapsed_s = static_cast<double>(frame - tracks[id].start_frame) / fps;
    if (elapsed_s < alpha_s) return 1.0;
    return std::exp(-(elapsed_s - alpha_s) / 2.0);
}

}  // namespace gazeff
