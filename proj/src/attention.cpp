#include "gazeff/attention.hpp"

namespace gazeff {

FocusResolution resolve_focus(const FrameContext& ctx) {
    FocusResolution res;
    res.frame = ctx.frame;

    const GazeSample& g = ctx.gaze;
    if (g.pattern == GazePattern::Blink || g.pattern == GazePattern::Missing ||
        !g.has_position) {
        return res;
    }

    int best = -1;
    for (size_t i = 0; i < ctx.detections.size(); ++i) {
        const Detection& d = ctx.detections[i];
        if (!d.bbox.contains(g.x, g.y)) continue;
        ++res.candidates_hit;
        if (best < 0) {
            best = static_cast<int>(i);
            continue;
        }
        const Detection& cur = ctx.detections[best];
        const double da = d.bbox.area();
        const double ca = cur.bbox.area();
        if (da < ca ||
            (da == ca && (d.confidence > cur.confidence ||
                          (d.confidence == cur.confidence && d.class_id < cur.class_id)))) {
            best = static_cast<int>(i);
        }
    }
    if (best >= 0) res.focused = ctx.detections[best];
    return res;
}

double visual_interaction(const FrameContext& ctx, const FocusResolution& res) {
    if (!res.focused.has_value()) return 0.0;
    switch (ctx.gaze.pattern) {
        case GazePattern::Fixation: return 1.0;
        case GazePattern::Saccade: return 0.5;
        default: return 0.0;
    }
}

}  // namespace gazeff
